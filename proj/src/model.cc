#include <map>
#include <set>
#include <stdexcept>

#include "stylefmt/model.hpp"

namespace stylefmt {

DocumentAnalysis analyze(const Document& doc, const PairTable& pairs, const ListStats* stats) {
  return {tag_lists(doc, stats), paired_tokens(pairs, doc)};
}

FormattingModel train(std::span<const Document* const> corpus, const TreeProvider& provider,
                      int indent_size) {
  if (corpus.empty()) throw std::invalid_argument("empty corpus");
  if (indent_size < 1) throw std::invalid_argument("indent size must be at least 1");

  FormattingModel model;
  model.provider_id = std::string(provider.id());
  model.token_fingerprint = provider.token_vocabulary().fingerprint();
  model.rule_fingerprint = provider.rule_vocabulary().fingerprint();
  model.indent_size = indent_size;
  model.pairs = compute_pairs(corpus);
  model.list_stats = collect_list_stats(corpus);

  int with_newline = 0;
  for (const Document* doc : corpus) {
    if (!doc->text.empty() && doc->text.back() == '\n') ++with_newline;
  }
  model.final_newline = 2 * with_newline >= static_cast<int>(corpus.size());

  for (std::size_t d = 0; d < corpus.size(); ++d) {
    const Document& doc = *corpus[d];
    model.documents.push_back(doc.name);
    DocumentAnalysis analysis = analyze(doc, model.pairs, nullptr);
    std::vector<Position> layout = doc.original_layout();
    FeatureContext ctx{doc, analysis.tags, analysis.paired, layout};
    for (int i = 1; i < doc.size(); ++i) {
      Exemplar e;
      e.features = compute_features(ctx, i);
      e.ws = capture_ws(doc, i);
      e.starts_line = e.ws.kind == WsKind::kNewline;
      if (e.starts_line) e.hpos = capture_hpos(doc, i, indent_size);
      e.doc = static_cast<int>(d);
      e.token = i;
      model.exemplars.push_back(e);
    }
  }
  return model;
}

ModelStats model_stats(const FormattingModel& model) {
  ModelStats s;
  s.exemplars = model.exemplars.size();
  std::map<WsFeatures, std::set<WsDirective>> ws;
  std::map<HposFeatures, std::set<HposDirective>> hpos;
  for (const Exemplar& e : model.exemplars) {
    ws[ws_subset(e.features)].insert(e.ws);
    if (e.hpos) {
      ++s.line_start_exemplars;
      hpos[hpos_subset(e.features)].insert(*e.hpos);
    }
  }
  auto percent = [](std::size_t part, std::size_t whole) {
    return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
  };
  auto ambiguous = [](const auto& contexts) {
    std::size_t n = 0;
    for (const auto& [x, directives] : contexts) n += directives.size() > 1;
    return n;
  };
  s.unique_ws_contexts = ws.size();
  s.unique_hpos_contexts = hpos.size();
  s.unique_ws_percent = percent(ws.size(), s.exemplars);
  s.unique_hpos_percent = percent(hpos.size(), s.line_start_exemplars);
  s.ambiguous_ws_percent = percent(ambiguous(ws), ws.size());
  s.ambiguous_hpos_percent = percent(ambiguous(hpos), hpos.size());
  return s;
}

}  // namespace stylefmt
