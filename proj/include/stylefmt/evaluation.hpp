#pragma once

// Error rates, edit distance, leave-one-out validation and the corpus-size,
// k and grammar-invariance experiments.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stylefmt/model.hpp"
#include "stylefmt/syntax.hpp"

namespace stylefmt {

struct SourceFile {
  std::string name;
  std::string text;
};

// Bad input data: unparsable files, unreadable corpora, provider conflicts.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Files under `dir` with the given extension, recursively, sorted by path.
// Names are paths relative to `dir`.
std::vector<SourceFile> read_corpus(const std::filesystem::path& dir,
                                    std::string_view extension = ".bl");

std::size_t levenshtein(std::string_view a, std::string_view b);
// Levenshtein distance over the longer length; 0 for two empty strings.
double normalized_edit_distance(std::string_view a, std::string_view b);

// Conventional median (mean of the middle two for even sizes); 0 when empty.
double median(std::vector<double> values);

struct DocumentEval {
  std::string name;
  int ws_errors = 0;
  int hpos_errors = 0;
  int ws_decisions = 0;
  int hpos_decisions = 0;
  double edit_distance = 0;
  std::string formatted;

  double error() const;
};

struct EvalResult {
  std::vector<DocumentEval> documents;
  double median_error = 0;
  double median_edit_distance = 0;
};

// Formats `original` and compares every executed ws directive, and the
// predicted hpos of every token that starts a line in the original, with the
// directives captured from the original.
DocumentEval evaluate_document(const Classifier& classifier, const Document& original,
                               const TreeProvider& provider);

// Wraps SyntaxError in DataError naming the file.
std::vector<Document> parse_corpus(const std::vector<SourceFile>& files,
                                   const TreeProvider& provider);

EvalResult summarize(std::vector<DocumentEval> documents);

// Throws DataError("corpus too small") below two files.
EvalResult leave_one_out(const std::vector<SourceFile>& files, const TreeProvider& provider,
                         int indent_size, int k = kDefaultK,
                         double threshold = kDefaultThreshold);

struct InvarianceResult {
  std::vector<std::pair<std::string, double>> documents;
  double median = 0;
};

// Leave-one-out outputs under two providers compared per file.
InvarianceResult grammar_invariance(const std::vector<SourceFile>& files,
                                    const TreeProvider& a, const TreeProvider& b,
                                    int indent_size);

struct SizePoint {
  int size = 0;
  int trials = 0;
  double median_error = 0;
};

// Per trial: one held-out file and a random order of the others; size s
// trains on the first s of that order.
std::vector<SizePoint> corpus_size_experiment(const std::vector<SourceFile>& files,
                                              const TreeProvider& provider, int indent_size,
                                              const std::vector<int>& sizes, int trials,
                                              std::uint64_t seed);

struct KPoint {
  int k = 0;
  double median_error = 0;
};

std::vector<KPoint> k_sweep(const std::vector<SourceFile>& files, const TreeProvider& provider,
                            int indent_size, const std::vector<int>& ks,
                            double threshold = kDefaultThreshold);

void write_eval_csv(std::ostream& out, const EvalResult& result);
void write_invariance_csv(std::ostream& out, const InvarianceResult& result);
void write_size_csv(std::ostream& out, const std::vector<SizePoint>& points);
void write_k_csv(std::ostream& out, const std::vector<KPoint>& points);

}  // namespace stylefmt
