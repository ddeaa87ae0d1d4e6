// Model file: one header line
//   stylefmt-model <version> <token vocabulary> <rule vocabulary>
// followed by a JSON document with named fields.

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stylefmt/model.hpp"

namespace stylefmt {

namespace {

using json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 3> kWsKinds{"none", "newline", "space"};
constexpr std::array<std::string_view, 4> kHposKinds{"align_to", "indent_from",
                                                      "align_prev_line", "indent_prev_line"};

template <std::size_t N>
int kind_index(const std::array<std::string_view, N>& names, const std::string& name) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  throw ModelError(ModelError::Kind::kCorrupt, "unknown directive kind '" + name + "'");
}

json ws_to_json(const WsDirective& ws) {
  json j;
  j["kind"] = kWsKinds[static_cast<int>(ws.kind)];
  if (ws.kind != WsKind::kNone) j["n"] = ws.n;
  return j;
}

WsDirective ws_from_json(const json& j) {
  WsDirective ws;
  ws.kind = static_cast<WsKind>(kind_index(kWsKinds, j.at("kind").get<std::string>()));
  if (ws.kind != WsKind::kNone) ws.n = j.at("n").get<int>();
  return ws;
}

json hpos_to_json(const HposDirective& h) {
  json j;
  j["kind"] = kHposKinds[static_cast<int>(h.kind)];
  if (h.targets_token()) {
    j["delta"] = h.delta;
    j["child"] = h.child;
  }
  return j;
}

HposDirective hpos_from_json(const json& j) {
  HposDirective h;
  h.kind = static_cast<HposKind>(kind_index(kHposKinds, j.at("kind").get<std::string>()));
  if (h.targets_token()) {
    h.delta = j.at("delta").get<int>();
    h.child = j.at("child").get<int>();
  }
  return h;
}

json to_json(const FormattingModel& m) {
  json j;
  j["provider"] = m.provider_id;
  j["indent_size"] = m.indent_size;
  j["k"] = m.k;
  j["threshold"] = m.threshold;
  j["final_newline"] = m.final_newline;
  j["features"] = json::array();
  for (auto name : feature_names()) j["features"].push_back(name);
  j["documents"] = m.documents;

  json pairs = json::array();
  for (const auto& [label, set] : m.pairs) {
    json entry;
    entry["rule"] = label.rule;
    entry["alt"] = label.alt;
    entry["pairs"] = json::array();
    for (const auto& [l, r] : set) entry["pairs"].push_back({l, r});
    pairs.push_back(std::move(entry));
  }
  j["pairs"] = std::move(pairs);

  json lists = json::array();
  for (const auto& [key, p] : m.list_stats) {
    lists.push_back({{"parent_rule", key.parent_rule},
                     {"child_rule", key.child_rule},
                     {"separator", key.separator},
                     {"n_reg", p.n_reg},
                     {"median_reg", p.median_reg},
                     {"n_big", p.n_big},
                     {"median_big", p.median_big}});
  }
  j["list_stats"] = std::move(lists);

  json exemplars = json::array();
  for (const Exemplar& e : m.exemplars) {
    json x;
    x["features"] = e.features;
    x["ws"] = ws_to_json(e.ws);
    if (e.hpos) x["hpos"] = hpos_to_json(*e.hpos);
    x["starts_line"] = e.starts_line;
    x["doc"] = e.doc;
    x["token"] = e.token;
    exemplars.push_back(std::move(x));
  }
  j["exemplars"] = std::move(exemplars);
  return j;
}

FormattingModel from_json(const json& j) {
  FormattingModel m;
  m.provider_id = j.at("provider").get<std::string>();
  m.indent_size = j.at("indent_size").get<int>();
  m.k = j.at("k").get<int>();
  m.threshold = j.at("threshold").get<double>();
  m.final_newline = j.at("final_newline").get<bool>();
  if (j.at("features").size() != kFeatureCount) {
    throw ModelError(ModelError::Kind::kCorrupt, "unexpected feature count");
  }
  m.documents = j.at("documents").get<std::vector<std::string>>();
  for (const json& entry : j.at("pairs")) {
    auto& set = m.pairs[NodeLabel{entry.at("rule").get<int>(), entry.at("alt").get<int>()}];
    for (const json& p : entry.at("pairs")) set.emplace(p.at(0).get<int>(), p.at(1).get<int>());
  }
  for (const json& e : j.at("list_stats")) {
    ListKey key{e.at("parent_rule").get<int>(), e.at("child_rule").get<int>(),
                e.at("separator").get<int>()};
    m.list_stats[key] = {e.at("n_reg").get<int>(), e.at("median_reg").get<int>(),
                         e.at("n_big").get<int>(), e.at("median_big").get<int>()};
  }
  for (const json& x : j.at("exemplars")) {
    Exemplar e;
    e.features = x.at("features").get<FeatureVector>();
    e.ws = ws_from_json(x.at("ws"));
    if (x.contains("hpos")) e.hpos = hpos_from_json(x.at("hpos"));
    e.starts_line = x.at("starts_line").get<bool>();
    e.doc = x.at("doc").get<int>();
    e.token = x.at("token").get<int>();
    m.exemplars.push_back(e);
  }
  if (m.indent_size < 1 || m.k < 1 || !(m.threshold > 0 && m.threshold <= 1)) {
    throw ModelError(ModelError::Kind::kCorrupt, "model parameters out of range");
  }
  return m;
}

}  // namespace

void save_model(const FormattingModel& model, std::ostream& out) {
  out << kModelMagic << ' ' << kModelVersion << ' ' << model.token_fingerprint << ' '
      << model.rule_fingerprint << '\n';
  out << to_json(model).dump() << '\n';
}

void save_model(const FormattingModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  save_model(model, out);
  if (!out) throw std::runtime_error("error writing " + path);
}

void check_vocabulary(const FormattingModel& model, const TreeProvider& provider) {
  if (model.token_fingerprint != provider.token_vocabulary().fingerprint() ||
      model.rule_fingerprint != provider.rule_vocabulary().fingerprint()) {
    throw ModelError(ModelError::Kind::kVocabularyMismatch,
                     "model vocabularies do not match language '" +
                         std::string(provider.id()) + "'");
  }
}

FormattingModel load_model(std::istream& in, const TreeProvider* provider) {
  std::string header;
  if (!std::getline(in, header)) throw ModelError(ModelError::Kind::kCorrupt, "empty model file");
  std::istringstream words(header);
  std::string magic;
  int version = 0;
  if (!(words >> magic >> version) || magic != kModelMagic) {
    throw ModelError(ModelError::Kind::kCorrupt, "not a model file");
  }
  if (version != kModelVersion) {
    throw ModelError(ModelError::Kind::kVersionMismatch,
                     "model format version " + std::to_string(version) + ", expected " +
                         std::to_string(kModelVersion));
  }
  FormattingModel header_only;
  if (!(words >> header_only.token_fingerprint >> header_only.rule_fingerprint)) {
    throw ModelError(ModelError::Kind::kCorrupt, "model header lacks vocabulary fingerprints");
  }
  if (provider) check_vocabulary(header_only, *provider);

  FormattingModel model;
  try {
    model = from_json(json::parse(in));
  } catch (const ModelError&) {
    throw;
  } catch (const std::exception& e) {
    throw ModelError(ModelError::Kind::kCorrupt, std::string("corrupt model file: ") + e.what());
  }
  model.token_fingerprint = std::move(header_only.token_fingerprint);
  model.rule_fingerprint = std::move(header_only.rule_fingerprint);
  return model;
}

FormattingModel load_model(const std::string& path, const TreeProvider* provider) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError(ModelError::Kind::kCorrupt, "cannot read " + path);
  return load_model(in, provider);
}

}  // namespace stylefmt
