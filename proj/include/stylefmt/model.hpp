#pragma once

// Training, the weighted kNN classifier and model persistence.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "stylefmt/corpus_analysis.hpp"
#include "stylefmt/directives.hpp"
#include "stylefmt/features.hpp"
#include "stylefmt/syntax.hpp"

namespace stylefmt {

inline constexpr int kDefaultK = 11;
inline constexpr double kDefaultThreshold = 0.15;

struct Exemplar {
  FeatureVector features{};
  WsDirective ws;
  std::optional<HposDirective> hpos;  // set iff ws is a newline
  bool starts_line = false;
  int doc = 0;    // index into FormattingModel::documents
  int token = 0;
  bool operator==(const Exemplar&) const = default;
};

struct FormattingModel {
  std::string provider_id;
  std::string token_fingerprint;
  std::string rule_fingerprint;
  int indent_size = 4;
  int k = kDefaultK;
  double threshold = kDefaultThreshold;
  bool final_newline = true;
  PairTable pairs;
  ListStats list_stats;
  std::vector<std::string> documents;
  std::vector<Exemplar> exemplars;
  bool operator==(const FormattingModel&) const = default;
};

// Per-document analysis shared by training, formatting and evaluation.
struct DocumentAnalysis {
  std::vector<ListTag> tags;
  std::vector<int> paired;
};

// List tags come from the original layout when `stats` is null.
DocumentAnalysis analyze(const Document& doc, const PairTable& pairs, const ListStats* stats);

// Two passes: pairs and list statistics over the whole corpus, then one
// exemplar per token after the first. Throws std::invalid_argument for an
// empty corpus or indent_size < 1.
FormattingModel train(std::span<const Document* const> corpus, const TreeProvider& provider,
                      int indent_size);

// 1 - cbrt(d).
double vote_weight(double distance);

class Classifier {
 public:
  // k and threshold default to the model's values.
  explicit Classifier(const FormattingModel& model, std::optional<int> k = std::nullopt,
                      std::optional<double> threshold = std::nullopt);

  WsDirective predict_ws(const FeatureVector& v) const;
  HposDirective predict_hpos(const FeatureVector& v) const;

  const FormattingModel& model() const { return model_; }
  int k() const { return k_; }
  double threshold() const { return threshold_; }

 private:
  // Exemplars with identical projections collapse into one context.
  template <typename Label>
  struct Context {
    std::vector<std::int32_t> features;
    std::map<Label, int> votes;  // directive -> exemplar count
    int count = 0;
  };

  template <typename Label>
  struct Space {
    int width = 0;
    int max_diff = 0;  // threshold as a count of differing slots
    std::vector<Context<Label>> contexts;
    std::unordered_map<std::int32_t, std::vector<int>> by_type;  // slot 2 -> contexts
    std::map<Label, int> frequency;
    mutable std::shared_mutex cache_mutex;
    mutable std::unordered_map<std::string, Label> cache;
  };

  template <typename Label>
  Label predict(const Space<Label>& space, std::span<const std::int32_t> x, std::int32_t type,
                const Label& fallback) const;

  const FormattingModel& model_;
  int k_;
  double threshold_;
  Space<WsDirective> ws_;
  Space<HposDirective> hpos_;
};

struct ModelStats {
  std::size_t exemplars = 0;
  std::size_t line_start_exemplars = 0;
  std::size_t unique_ws_contexts = 0;
  std::size_t unique_hpos_contexts = 0;
  double unique_ws_percent = 0;
  double unique_hpos_percent = 0;
  double ambiguous_ws_percent = 0;
  double ambiguous_hpos_percent = 0;
};

ModelStats model_stats(const FormattingModel& model);

class ModelError : public std::runtime_error {
 public:
  enum class Kind { kCorrupt, kVersionMismatch, kVocabularyMismatch };
  ModelError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr std::string_view kModelMagic = "stylefmt-model";
inline constexpr int kModelVersion = 1;

void save_model(const FormattingModel& model, std::ostream& out);
void save_model(const FormattingModel& model, const std::string& path);
// Throws ModelError. When `provider` is given its vocabularies must match.
FormattingModel load_model(std::istream& in, const TreeProvider* provider = nullptr);
FormattingModel load_model(const std::string& path, const TreeProvider* provider = nullptr);

// Throws ModelError(kVocabularyMismatch) unless the provider matches.
void check_vocabulary(const FormattingModel& model, const TreeProvider& provider);

}  // namespace stylefmt
