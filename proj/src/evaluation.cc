#include "stylefmt/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "stylefmt/formatter.hpp"

namespace stylefmt {

namespace fs = std::filesystem;

std::vector<SourceFile> read_corpus(const fs::path& dir, std::string_view extension) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw DataError("corpus directory not found: " + dir.string());
  std::vector<fs::path> paths;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == extension) {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<SourceFile> files;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot read " + p.string());
    std::ostringstream text;
    text << in.rdbuf();
    files.push_back({fs::relative(p, dir).generic_string(), text.str()});
  }
  return files;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t substitute = prev[j - 1] + (a[i - 1] != b[j - 1]);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitute});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double normalized_edit_distance(std::string_view a, std::string_view b) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

double DocumentEval::error() const {
  int decisions = ws_decisions + hpos_decisions;
  if (decisions == 0) return 0.0;
  return static_cast<double>(ws_errors + hpos_errors) / decisions;
}

DocumentEval evaluate_document(const Classifier& classifier, const Document& original,
                               const TreeProvider& provider) {
  FormatOptions options;
  options.trace_hpos = true;
  FormatResult out = format_document(classifier, original, provider, options);
  const int indent = classifier.model().indent_size;
  DocumentEval e;
  e.name = original.name;
  for (int i = 1; i < original.size(); ++i) {
    WsDirective actual = capture_ws(original, i);
    ++e.ws_decisions;
    e.ws_errors += out.ws[i] != actual;
    if (actual.kind == WsKind::kNewline) {
      ++e.hpos_decisions;
      e.hpos_errors += out.hpos[i] != capture_hpos(original, i, indent);
    }
  }
  e.edit_distance = normalized_edit_distance(out.text, original.text);
  e.formatted = std::move(out.text);
  return e;
}

std::vector<Document> parse_corpus(const std::vector<SourceFile>& files,
                                   const TreeProvider& provider) {
  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const SourceFile& f : files) {
    try {
      docs.push_back(parse_document(provider, f.name, f.text));
    } catch (const SyntaxError& e) {
      throw DataError(f.name + ": " + e.what());
    }
  }
  return docs;
}

EvalResult summarize(std::vector<DocumentEval> documents) {
  EvalResult r;
  std::vector<double> errors, distances;
  for (const auto& d : documents) {
    errors.push_back(d.error());
    distances.push_back(d.edit_distance);
  }
  r.documents = std::move(documents);
  r.median_error = median(std::move(errors));
  r.median_edit_distance = median(std::move(distances));
  return r;
}

namespace {

std::vector<const Document*> all_but(const std::vector<Document>& docs, std::size_t skip) {
  std::vector<const Document*> out;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (d != skip) out.push_back(&docs[d]);
  }
  return out;
}

void require_two(const std::vector<SourceFile>& files) {
  if (files.size() < 2) throw DataError("corpus too small");
}

}  // namespace

EvalResult leave_one_out(const std::vector<SourceFile>& files, const TreeProvider& provider,
                         int indent_size, int k, double threshold) {
  require_two(files);
  std::vector<Document> docs = parse_corpus(files, provider);
  std::vector<DocumentEval> evals;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    FormattingModel model = train(all_but(docs, d), provider, indent_size);
    Classifier classifier(model, k, threshold);
    evals.push_back(evaluate_document(classifier, docs[d], provider));
  }
  return summarize(std::move(evals));
}

InvarianceResult grammar_invariance(const std::vector<SourceFile>& files,
                                    const TreeProvider& a, const TreeProvider& b,
                                    int indent_size) {
  require_two(files);
  for (const SourceFile& f : files) {
    std::string failure;
    bool ok_a = true, ok_b = true;
    try {
      parse_document(a, f.name, f.text);
    } catch (const SyntaxError& e) {
      ok_a = false;
      failure = e.what();
    }
    try {
      parse_document(b, f.name, f.text);
    } catch (const SyntaxError& e) {
      ok_b = false;
      failure = e.what();
    }
    if (ok_a != ok_b) {
      throw DataError(f.name + ": accepted by " + std::string(ok_a ? a.id() : b.id()) +
                      " but rejected by " + std::string(ok_a ? b.id() : a.id()) + ": " + failure);
    }
    if (!ok_a) throw DataError(f.name + ": " + failure);
  }

  std::vector<Document> docs_a = parse_corpus(files, a);
  std::vector<Document> docs_b = parse_corpus(files, b);
  InvarianceResult r;
  std::vector<double> distances;
  for (std::size_t d = 0; d < files.size(); ++d) {
    FormattingModel model_a = train(all_but(docs_a, d), a, indent_size);
    FormattingModel model_b = train(all_but(docs_b, d), b, indent_size);
    Classifier ca(model_a);
    Classifier cb(model_b);
    std::string out_a = format_document(ca, docs_a[d], a).text;
    std::string out_b = format_document(cb, docs_b[d], b).text;
    double dist = normalized_edit_distance(out_a, out_b);
    r.documents.emplace_back(files[d].name, dist);
    distances.push_back(dist);
  }
  r.median = median(std::move(distances));
  return r;
}

std::vector<SizePoint> corpus_size_experiment(const std::vector<SourceFile>& files,
                                              const TreeProvider& provider, int indent_size,
                                              const std::vector<int>& sizes, int trials,
                                              std::uint64_t seed) {
  require_two(files);
  const int n = static_cast<int>(files.size());
  for (int s : sizes) {
    if (s < 1 || s > n - 1) {
      throw std::invalid_argument("corpus size " + std::to_string(s) + " outside [1, " +
                                  std::to_string(n - 1) + "]");
    }
  }
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  std::vector<Document> docs = parse_corpus(files, provider);
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> errors(sizes.size());
  for (int t = 0; t < trials; ++t) {
    const int held_out = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    std::vector<int> order;
    for (int d = 0; d < n; ++d) {
      if (d != held_out) order.push_back(d);
    }
    for (std::size_t i = order.size(); i > 1; --i) {
      std::size_t j = rng() % i;
      std::swap(order[i - 1], order[j]);
    }
    for (std::size_t s = 0; s < sizes.size(); ++s) {
      std::vector<const Document*> corpus;
      for (int c = 0; c < sizes[s]; ++c) corpus.push_back(&docs[order[c]]);
      FormattingModel model = train(corpus, provider, indent_size);
      Classifier classifier(model);
      errors[s].push_back(evaluate_document(classifier, docs[held_out], provider).error());
    }
  }
  std::vector<SizePoint> points;
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    points.push_back({sizes[s], trials, median(std::move(errors[s]))});
  }
  return points;
}

std::vector<KPoint> k_sweep(const std::vector<SourceFile>& files, const TreeProvider& provider,
                            int indent_size, const std::vector<int>& ks, double threshold) {
  require_two(files);
  std::vector<Document> docs = parse_corpus(files, provider);
  std::vector<std::vector<double>> errors(ks.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    FormattingModel model = train(all_but(docs, d), provider, indent_size);
    for (std::size_t k = 0; k < ks.size(); ++k) {
      Classifier classifier(model, ks[k], threshold);
      errors[k].push_back(evaluate_document(classifier, docs[d], provider).error());
    }
  }
  std::vector<KPoint> points;
  for (std::size_t k = 0; k < ks.size(); ++k) {
    points.push_back({ks[k], median(std::move(errors[k]))});
  }
  return points;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_eval_csv(std::ostream& out, const EvalResult& result) {
  out << "file,ws_errors,ws_decisions,hpos_errors,hpos_decisions,error,edit_distance\n";
  for (const auto& d : result.documents) {
    out << csv_field(d.name) << ',' << d.ws_errors << ',' << d.ws_decisions << ','
        << d.hpos_errors << ',' << d.hpos_decisions << ',' << d.error() << ','
        << d.edit_distance << '\n';
  }
}

void write_invariance_csv(std::ostream& out, const InvarianceResult& result) {
  out << "file,edit_distance\n";
  for (const auto& [name, dist] : result.documents) out << csv_field(name) << ',' << dist << '\n';
}

void write_size_csv(std::ostream& out, const std::vector<SizePoint>& points) {
  out << "corpus_size,trials,median_error\n";
  for (const auto& p : points) out << p.size << ',' << p.trials << ',' << p.median_error << '\n';
}

void write_k_csv(std::ostream& out, const std::vector<KPoint>& points) {
  out << "k,median_error,default\n";
  for (const auto& p : points) {
    out << p.k << ',' << p.median_error << ',' << (p.k == kDefaultK ? "yes" : "no") << '\n';
  }
}

}  // namespace stylefmt
