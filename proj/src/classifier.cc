#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "stylefmt/model.hpp"

namespace stylefmt {

namespace {

std::string cache_key(std::span<const std::int32_t> x) {
  return std::string(reinterpret_cast<const char*>(x.data()), x.size_bytes());
}

template <typename Space, typename Features, typename Label>
void add_exemplar(Space& space, std::unordered_map<std::string, int>& index,
                  const Features& x, std::int32_t type, const Label& label) {
  auto key = cache_key(x);
  auto [it, inserted] = index.emplace(key, static_cast<int>(space.contexts.size()));
  if (inserted) {
    space.contexts.emplace_back();
    space.contexts.back().features.assign(x.begin(), x.end());
    space.by_type[type].push_back(it->second);
  }
  auto& ctx = space.contexts[it->second];
  ++ctx.votes[label];
  ++ctx.count;
  ++space.frequency[label];
}

int max_differences(double threshold, int width) {
  return static_cast<int>(std::floor(threshold * width + 1e-9));
}

}  // namespace

double vote_weight(double distance) { return 1.0 - std::cbrt(distance); }

Classifier::Classifier(const FormattingModel& model, std::optional<int> k,
                       std::optional<double> threshold)
    : model_(model), k_(k.value_or(model.k)), threshold_(threshold.value_or(model.threshold)) {
  if (k_ < 1) throw std::invalid_argument("k must be at least 1");
  if (!(threshold_ > 0.0 && threshold_ <= 1.0)) {
    throw std::invalid_argument("threshold must be in (0, 1]");
  }
  ws_.width = kWsFeatureCount;
  hpos_.width = kHposFeatureCount;
  ws_.max_diff = max_differences(threshold_, kWsFeatureCount);
  hpos_.max_diff = max_differences(threshold_, kHposFeatureCount);

  std::unordered_map<std::string, int> ws_index;
  std::unordered_map<std::string, int> hpos_index;
  for (const Exemplar& e : model.exemplars) {
    const std::int32_t type = e.features[kType];
    add_exemplar(ws_, ws_index, ws_subset(e.features), type, e.ws);
    if (e.starts_line && e.hpos) {
      add_exemplar(hpos_, hpos_index, hpos_subset(e.features), type, *e.hpos);
    }
  }
}

template <typename Label>
Label Classifier::predict(const Space<Label>& space, std::span<const std::int32_t> x,
                          std::int32_t type, const Label& fallback) const {
  if (space.contexts.empty()) return fallback;
  const std::string key = cache_key(x);
  {
    std::shared_lock lock(space.cache_mutex);
    if (auto it = space.cache.find(key); it != space.cache.end()) return it->second;
  }

  struct Hit {
    int diff;
    int context;
  };
  std::vector<Hit> hits;
  int within_count = 0;
  auto scan = [&](auto&& indices) {
    hits.clear();
    within_count = 0;
    for (int c : indices) {
      int d = l0_differences(x, space.contexts[c].features);
      if (d <= space.max_diff) {
        hits.push_back({d, c});
        within_count += space.contexts[c].count;
      }
    }
  };
  auto all_contexts = [&] {
    std::vector<int> all(space.contexts.size());
    for (std::size_t c = 0; c < all.size(); ++c) all[c] = static_cast<int>(c);
    return all;
  };

  if (auto bucket = space.by_type.find(type); bucket != space.by_type.end()) {
    scan(bucket->second);
  }
  if (within_count < k_) scan(all_contexts());

  if (hits.empty()) {
    // Nothing within the threshold: the nearest exemplars decide.
    int best = space.width + 1;
    for (std::size_t c = 0; c < space.contexts.size(); ++c) {
      int d = l0_differences(x, space.contexts[c].features);
      if (d < best) {
        best = d;
        hits.clear();
      }
      if (d == best) hits.push_back({d, static_cast<int>(c)});
    }
  } else {
    // k nearest, keeping every exemplar tied with the k-th.
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
      return a.diff != b.diff ? a.diff < b.diff : a.context < b.context;
    });
    int taken = 0;
    std::size_t end = 0;
    while (end < hits.size()) {
      if (taken >= k_ && hits[end].diff != hits[end - 1].diff) break;
      taken += space.contexts[hits[end].context].count;
      ++end;
    }
    hits.resize(end);
  }

  std::map<Label, double> score;
  for (const Hit& h : hits) {
    const double w = vote_weight(static_cast<double>(h.diff) / space.width);
    for (const auto& [label, n] : space.contexts[h.context].votes) {
      score[label] += w * n;
    }
  }
  const Label* best = nullptr;
  double best_score = 0;
  for (const auto& [label, s] : score) {
    if (best == nullptr) {
      best = &label;
      best_score = s;
      continue;
    }
    constexpr double kEps = 1e-9;
    bool better = s > best_score + kEps;
    if (!better && std::abs(s - best_score) <= kEps) {
      // Ties go to the more frequent directive, then to the smaller one.
      better = space.frequency.at(label) > space.frequency.at(*best);
    }
    if (better) {
      best = &label;
      best_score = s;
    }
  }
  Label result = *best;
  std::unique_lock lock(space.cache_mutex);
  space.cache.emplace(key, result);
  return result;
}

WsDirective Classifier::predict_ws(const FeatureVector& v) const {
  WsFeatures x = ws_subset(v);
  return predict(ws_, x, v[kType], WsDirective::none());
}

HposDirective Classifier::predict_hpos(const FeatureVector& v) const {
  HposFeatures x = hpos_subset(v);
  return predict(hpos_, x, v[kType], HposDirective::align_prev_line());
}

}  // namespace stylefmt
