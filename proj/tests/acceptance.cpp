// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "stylefmt/formatter.hpp"
#include "support.hpp"

using namespace stylefmt;
using testing::fixture_corpus;
using testing::parse;
using testing::variant_a;
using testing::variant_b;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fixed(double v, int digits = 4) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << v;
  return out.str();
}

std::vector<Document> fixture_docs(const TreeProvider& provider) {
  return parse_corpus(fixture_corpus(), provider);
}

// Error rates seen by any evaluation run in this suite.
std::vector<double>& observed_errors() {
  static std::vector<double> errors;
  return errors;
}

void observe(const EvalResult& r) {
  for (const auto& d : r.documents) observed_errors().push_back(d.error());
}

Outcome consistent_corpus_fidelity() {
  auto start = Clock::now();
  EvalResult r = leave_one_out(fixture_corpus(), variant_a(), 4);
  double elapsed = seconds_since(start);
  observe(r);
  return {r.median_error <= 0.02 && elapsed < 30.0,
          "median error " + fixed(r.median_error) + " (<= 0.02), " + fixed(elapsed, 2) +
              " s (< 30 s)"};
}

Outcome memorization_fixpoint() {
  auto docs = fixture_docs(variant_a());
  FormattingModel model = testing::train_on(docs);
  int identical = 0;
  double worst = 0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::string out = format(model, testing::flatten(docs[d]), variant_a());
    double dist = normalized_edit_distance(out, fixture_corpus()[d].text);
    worst = std::max(worst, dist);
    identical += out == fixture_corpus()[d].text;
  }
  return {identical == static_cast<int>(docs.size()),
          std::to_string(identical) + "/" + std::to_string(docs.size()) +
              " byte-identical, max edit distance " + fixed(worst)};
}

Outcome grammar_invariance_ab() {
  InvarianceResult r = grammar_invariance(fixture_corpus(), variant_a(), variant_b(), 4);
  return {r.median <= 0.01, "median edit distance A vs B " + fixed(r.median) + " (<= 0.01)"};
}

Outcome knn_arithmetic() {
  bool weights = vote_weight(0.0) == 1.0 && vote_weight(1.0) == 0.0 && vote_weight(0.125) == 0.5;

  FormattingModel model;
  FeatureVector exact;
  exact.fill(1);
  Exemplar match;
  match.features = exact;
  match.ws = WsDirective::newline(1);
  model.exemplars.push_back(match);
  for (int e = 0; e < 10; ++e) {
    Exemplar far;
    far.features.fill(100 + e);
    far.ws = WsDirective::space(1);
    model.exemplars.push_back(far);
  }
  Classifier classifier(model, 11, 1.0);
  bool exact_wins = classifier.predict_ws(exact) == WsDirective::newline(1);
  return {weights && exact_wins, std::string("weights ") + (weights ? "exact" : "wrong") +
                                     ", distance-0 vote " + (exact_wins ? "wins" : "loses") +
                                     " against ten at distance 1"};
}

Outcome oversize_classifier() {
  const ListKey key{0, 1, 2};
  ListStats stats{{key, {7, 10, 7, 40}}};
  const int inputs[] = {10, 20, 39, 40};
  const ListKind expected[] = {ListKind::kRegular, ListKind::kRegular, ListKind::kOversize,
                               ListKind::kOversize};
  bool ok = true;
  std::string got;
  for (int t = 0; t < 4; ++t) {
    double ll = inputs[t];
    double dist_reg = (ll - 10) * (ll - 10) * 0.5;
    double dist_big = (ll - 40) * (ll - 40) * 0.5;
    ListKind formula = dist_big < dist_reg ? ListKind::kOversize : ListKind::kRegular;
    ListKind predicted = predict_oversize(stats, key, inputs[t]);
    ok = ok && predicted == expected[t] && formula == expected[t];
    got += predicted == ListKind::kOversize ? "over " : "reg ";
  }
  ListStats all_big{{key, {0, 0, 5, 40}}};
  bool forced = true;
  for (int ll = 0; ll <= 200; ++ll) forced = forced && predict_oversize(all_big, key, ll) == ListKind::kOversize;
  return {ok && forced, "ll {10,20,39,40} -> " + got + "; p(big)=1 " +
                            (forced ? "always oversize" : "not forced")};
}

Outcome directive_replay() {
  int line_starts = 0, nonstandard = 0, mismatches = 0;
  for (const TreeProvider* p : {static_cast<const TreeProvider*>(&variant_a()),
                                static_cast<const TreeProvider*>(&variant_b())}) {
    for (const Document& doc : fixture_docs(*p)) {
      auto layout = doc.original_layout();
      for (int i = 1; i < doc.size(); ++i) {
        if (doc.tokens[i - 1].line == doc.tokens[i].line) continue;
        ++line_starts;
        HposDirective h = capture_hpos(doc, i, 4);
        int replayed = resolve_column(doc.tree, i, h, layout, 4);
        if (replayed == doc.tokens[i].col) continue;
        if (h.kind == HposKind::kIndentPrevLine) {
          ++nonstandard;
        } else {
          ++mismatches;
        }
      }
    }
  }
  double share = line_starts ? static_cast<double>(nonstandard) / line_starts : 0;
  return {mismatches == 0 && share < 0.05,
          std::to_string(line_starts) + " line starts, " + std::to_string(mismatches) +
              " replay mismatches, " + std::to_string(nonstandard) +
              " nonstandard plain indents (" + fixed(100 * share, 2) + "% < 5%)"};
}

std::size_t full_matrix_levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
    }
  }
  return d[a.size()][b.size()];
}

Outcome metric_properties() {
  std::mt19937_64 rng(1000);
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::string a = testing::random_string(rng, 12, "ab c\n");
    std::string b = testing::random_string(rng, 12, "abc d");
    double d = normalized_edit_distance(a, b);
    bool ok = d >= 0.0 && d <= 1.0 && d == normalized_edit_distance(b, a) &&
              (d == 0.0) == (a == b) && levenshtein(a, b) == full_matrix_levenshtein(a, b);
    failures += !ok;
  }
  int out_of_range = 0;
  for (double e : observed_errors()) out_of_range += e < 0.0 || e > 1.0;
  return {failures == 0 && out_of_range == 0 && !observed_errors().empty(),
          std::to_string(failures) + "/1000 string pairs violate, " +
              std::to_string(out_of_range) + "/" + std::to_string(observed_errors().size()) +
              " error rates outside [0,1]"};
}

Outcome corpus_size_and_k() {
  auto sizes = corpus_size_experiment(fixture_corpus(), variant_a(), 4, {10, 14}, 10, 2024);
  double gap = std::abs(sizes[0].median_error - sizes[1].median_error);
  auto ks = k_sweep(fixture_corpus(), variant_a(), 4, {5, 11, 21, 51});
  double lo = 1, hi = 0;
  for (const auto& p : ks) {
    lo = std::min(lo, p.median_error);
    hi = std::max(hi, p.median_error);
  }
  std::string detail = "size 10 " + fixed(sizes[0].median_error) + " vs size 14 " +
                       fixed(sizes[1].median_error) + " (gap <= 0.02); k in {";
  for (const auto& p : ks) detail += std::to_string(p.k) + ":" + fixed(p.median_error) + " ";
  detail.back() = '}';
  detail += " spread " + fixed(hi - lo) + " (<= 0.03)";
  return {gap <= 0.02 && hi - lo <= 0.03, detail};
}

// Replaces every whitespace run with random whitespace, keeping a newline
// after line comments so the text still means the same thing.
std::string perturb(const Document& doc, std::mt19937_64& rng) {
  auto noise = [&](bool need_newline) {
    std::string s;
    int n = static_cast<int>(rng() % 4);
    for (int c = 0; c < n; ++c) s += "  \n\t"[rng() % 4];
    if (need_newline) s += '\n';
    if (s.empty()) s = " ";
    return s;
  };
  std::string out;
  auto emit_hidden = [&](int i) {
    bool after_line_comment = false;
    for (const Token& h : doc.hidden[i]) {
      if (h.is_comment()) {
        out += noise(after_line_comment);
        out += h.text;
        after_line_comment = h.type == blocklang::kLineComment;
      }
    }
    return after_line_comment;
  };
  for (int i = 0; i <= doc.size(); ++i) {
    bool newline = emit_hidden(i);
    if (i == doc.size()) break;
    if (i > 0 || newline) out += noise(newline);
    out += doc.tokens[i].text;
  }
  return out;
}

Outcome token_preservation() {
  auto docs = fixture_docs(variant_a());
  FormattingModel model = testing::train_on(docs);
  Classifier classifier(model);
  std::mt19937_64 rng(500);
  int failures = 0;
  for (int trial = 0; trial < 500; ++trial) {
    StyleConfig style;
    style.indent = 2 + static_cast<int>(rng() % 4);
    style.brace_on_new_line = rng() % 2;
    SourceFile f = generate_file(style, rng(), GeneratorOptions{1, 3, 0, true});
    Document original = parse(f.text);
    Document input = parse(perturb(original, rng));
    std::string out = format_document(classifier, input, variant_a()).text;
    Document result = parse(out);
    // Noise after a line comment becomes part of its text, so comments are
    // compared with the formatter's input.
    bool ok = testing::token_texts(result) == testing::token_texts(original) &&
              testing::token_texts(input) == testing::token_texts(original) &&
              testing::comment_texts(result) == testing::comment_texts(input);
    failures += !ok;
  }
  return {failures == 0, std::to_string(500 - failures) + "/500 perturbed documents keep tokens "
                                                          "and comments in order"};
}

Outcome throughput() {
  auto docs = fixture_docs(variant_a());
  FormattingModel model = testing::train_on(docs);
  SourceFile big = generate_file(StyleConfig{}, 5000, GeneratorOptions{1, 1, 5000, true});
  int lines = static_cast<int>(std::count(big.text.begin(), big.text.end(), '\n'));
  auto start = Clock::now();
  std::string out = format(model, big.text, variant_a());
  double elapsed = seconds_since(start);
  return {elapsed < 3.0 && lines >= 5000 && !out.empty(),
          std::to_string(lines) + " lines in " + fixed(elapsed, 3) + " s (< 3 s)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"consistent-corpus fidelity", consistent_corpus_fidelity},
      {"memorization fixpoint", memorization_fixpoint},
      {"grammar invariance", grammar_invariance_ab},
      {"kNN arithmetic", knn_arithmetic},
      {"oversize mini-classifier", oversize_classifier},
      {"directive replay", directive_replay},
      {"metric properties", metric_properties},
      {"corpus size and k stability", corpus_size_and_k},
      {"token preservation", token_preservation},
      {"throughput", throughput},
  };
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    Outcome o;
    try {
      o = criteria[c].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", c + 1, criteria[c].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
