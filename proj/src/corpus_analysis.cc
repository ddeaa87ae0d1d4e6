#include "stylefmt/corpus_analysis.hpp"

#include <algorithm>
#include <array>
#include <string_view>

namespace stylefmt {

namespace {

template <typename Fn>
void for_each_rule_node(const ParseTree& tree, Fn&& fn) {
  // Node ids are assigned in preorder.
  for (NodeId n = 0; n < static_cast<NodeId>(tree.size()); ++n) {
    if (!tree.is_leaf(n)) fn(n);
  }
}

bool is_literal_leaf(const Document& doc, NodeId n) {
  return doc.tree.is_leaf(n) && doc.tokens[doc.tree.token(n)].is_literal;
}

constexpr std::array<std::pair<std::string_view, std::string_view>, 4> kCommonPairs{{
    {"(", ")"}, {"[", "]"}, {"{", "}"}, {"<", ">"}}};

}  // namespace

PairTable compute_pairs(std::span<const Document* const> corpus) {
  PairTable pairs;
  std::map<NodeLabel, std::set<int>> repeats;
  for (const Document* doc : corpus) {
    const ParseTree& tree = doc->tree;
    if (tree.empty()) continue;
    for_each_rule_node(tree, [&](NodeId n) {
      std::vector<int> literals;
      for (NodeId c : tree.children(n)) {
        if (is_literal_leaf(*doc, c)) literals.push_back(tree.token_type(c));
      }
      NodeLabel label = tree.label(n);
      auto& set = pairs[label];
      std::map<int, int> counts;
      for (std::size_t a = 0; a < literals.size(); ++a) {
        if (++counts[literals[a]] == 2) repeats[label].insert(literals[a]);
        for (std::size_t b = a + 1; b < literals.size(); ++b) {
          set.emplace(literals[a], literals[b]);
        }
      }
    });
  }
  for (auto& [label, set] : pairs) {
    auto rep = repeats.find(label);
    if (rep == repeats.end()) continue;
    std::erase_if(set, [&](const std::pair<int, int>& p) {
      return rep->second.contains(p.first) || rep->second.contains(p.second);
    });
  }
  std::erase_if(pairs, [](const auto& entry) { return entry.second.empty(); });
  return pairs;
}

std::optional<int> paired_token(const PairTable& table, const Document& doc, int i) {
  const ParseTree& tree = doc.tree;
  NodeId leaf = tree.leaf_of(i);
  NodeId parent = tree.parent(leaf);
  if (parent == kNoNode) return std::nullopt;
  auto entry = table.find(tree.label(parent));
  if (entry == table.end()) return std::nullopt;

  const int type = doc.tokens[i].type;
  auto siblings = tree.children(parent);
  const int pos = tree.position_in_parent(leaf);
  auto last_before = [&](int left_type) -> std::optional<int> {
    for (int s = pos - 1; s >= 0; --s) {
      if (tree.is_leaf(siblings[s]) && tree.token_type(siblings[s]) == left_type) {
        return tree.token(siblings[s]);
      }
    }
    return std::nullopt;
  };

  // Viable pairs end in this token's type and start at an earlier sibling.
  std::vector<std::pair<int, int>> viable;  // (left type, left token index)
  for (const auto& [left, right] : entry->second) {
    if (right != type) continue;
    if (auto at = last_before(left)) viable.emplace_back(left, *at);
  }
  if (viable.empty()) return std::nullopt;
  if (viable.size() == 1) return viable.front().second;

  const std::string& right_text = doc.tokens[i].text;
  for (const auto& [left, at] : viable) {
    for (const auto& [open, close] : kCommonPairs) {
      if (doc.tokens[at].text == open && right_text == close) return at;
    }
  }
  if (right_text.size() == 1) {
    for (const auto& [left, at] : viable) {
      if (doc.tokens[at].text.size() == 1) return at;
    }
  }
  return viable.front().second;
}

std::vector<int> paired_tokens(const PairTable& table, const Document& doc) {
  std::vector<int> out(doc.tokens.size(), -1);
  if (doc.tree.empty()) return out;
  for (int i = 0; i < doc.size(); ++i) {
    if (auto p = paired_token(table, doc, i)) out[i] = *p;
  }
  return out;
}

std::vector<ListInstance> find_lists(const Document& doc) {
  std::vector<ListInstance> lists;
  const ParseTree& tree = doc.tree;
  if (tree.empty()) return lists;

  for_each_rule_node(tree, [&](NodeId n) {
    auto kids = tree.children(n);
    const std::size_t count = kids.size();
    std::size_t start = 0;
    while (start + 2 < count) {
      NodeId first = kids[start];
      NodeId sep = kids[start + 1];
      NodeId second = kids[start + 2];
      if (tree.is_leaf(first) || !is_literal_leaf(doc, sep) || tree.is_leaf(second) ||
          tree.rule(first) != tree.rule(second)) {
        ++start;
        continue;
      }
      const int rule = tree.rule(first);
      const int sep_type = tree.token_type(sep);
      std::size_t end = start + 2;  // index of the last member
      while (end + 2 < count && is_literal_leaf(doc, kids[end + 1]) &&
             tree.token_type(kids[end + 1]) == sep_type && !tree.is_leaf(kids[end + 2]) &&
             tree.rule(kids[end + 2]) == rule) {
        end += 2;
      }

      ListInstance list;
      list.parent = n;
      list.key = {tree.rule(n), rule, sep_type};
      for (std::size_t m = start; m <= end; m += 2) list.members.push_back(kids[m]);
      for (std::size_t s = start + 1; s < end; s += 2) list.separators.push_back(tree.token(kids[s]));
      if (start > 0 && tree.is_leaf(kids[start - 1])) list.prefix = tree.token(kids[start - 1]);
      if (end + 1 < count && tree.is_leaf(kids[end + 1])) list.suffix = tree.token(kids[end + 1]);
      list.first_token = tree.leftmost_leaf(kids[start]);
      list.last_token = tree.rightmost_leaf(kids[end]);
      for (int t = list.first_token; t <= list.last_token; ++t) {
        list.length += static_cast<int>(doc.tokens[t].text.size());
      }
      lists.push_back(std::move(list));
      start = end + 1;
    }
  });
  return lists;
}

bool spans_lines(const Document& doc, const ListInstance& list) {
  return doc.tokens[list.first_token].line != doc.tokens[list.last_token].line;
}

int lower_median(std::vector<int> values) {
  if (values.empty()) return 0;
  std::size_t mid = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  return values[mid];
}

ListStats collect_list_stats(std::span<const Document* const> corpus) {
  std::map<ListKey, std::pair<std::vector<int>, std::vector<int>>> lengths;
  for (const Document* doc : corpus) {
    for (const ListInstance& list : find_lists(*doc)) {
      auto& [reg, big] = lengths[list.key];
      (spans_lines(*doc, list) ? big : reg).push_back(list.length);
    }
  }
  ListStats stats;
  for (auto& [key, pops] : lengths) {
    ListPopulation p;
    p.n_reg = static_cast<int>(pops.first.size());
    p.n_big = static_cast<int>(pops.second.size());
    p.median_reg = lower_median(std::move(pops.first));
    p.median_big = lower_median(std::move(pops.second));
    stats.emplace(key, p);
  }
  return stats;
}

ListKind predict_oversize(const ListStats& stats, const ListKey& key, int length) {
  auto it = stats.find(key);
  if (it == stats.end()) return ListKind::kRegular;
  const ListPopulation& p = it->second;
  if (p.n_reg + p.n_big == 0 || p.n_big == 0) return ListKind::kRegular;
  if (p.n_reg == 0) return ListKind::kOversize;

  const double n = p.n_reg + p.n_big;
  const double p_reg = p.n_reg / n;
  const double p_big = p.n_big / n;
  double ll = length;
  // Outside the span between the medians the nearer median always wins.
  if (p.median_reg <= p.median_big) {
    ll = std::clamp(ll, static_cast<double>(p.median_reg), static_cast<double>(p.median_big));
  }
  const double dr = ll - p.median_reg;
  const double db = ll - p.median_big;
  const double dist_reg = dr * dr * (1.0 - p_reg);
  const double dist_big = db * db * (1.0 - p_big);
  return dist_big < dist_reg ? ListKind::kOversize : ListKind::kRegular;
}

std::vector<ListTag> tag_lists(const Document& doc, const ListStats* stats) {
  std::vector<ListTag> tags(doc.tokens.size());
  for (const ListInstance& list : find_lists(doc)) {
    ListKind kind = stats ? predict_oversize(*stats, list.key, list.length)
                          : (spans_lines(doc, list) ? ListKind::kOversize : ListKind::kRegular);
    auto latch = [&](int token, ListComponent component) {
      if (tags[token].kind == ListKind::kNotInList) tags[token] = {kind, component};
    };
    if (list.prefix) latch(*list.prefix, ListComponent::kPrefix);
    for (std::size_t m = 0; m < list.members.size(); ++m) {
      latch(doc.tree.leftmost_leaf(list.members[m]),
            m == 0 ? ListComponent::kFirstMember : ListComponent::kMember);
    }
    for (std::size_t s = 0; s < list.separators.size(); ++s) {
      latch(list.separators[s], s == 0 ? ListComponent::kFirstSeparator : ListComponent::kSeparator);
    }
    if (list.suffix) latch(*list.suffix, ListComponent::kSuffix);
  }
  return tags;
}

}  // namespace stylefmt
