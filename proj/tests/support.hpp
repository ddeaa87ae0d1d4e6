#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "stylefmt/blocklang.hpp"
#include "stylefmt/evaluation.hpp"
#include "stylefmt/formatter.hpp"
#include "stylefmt/generator.hpp"
#include "stylefmt/model.hpp"
#include "stylefmt/syntax.hpp"

namespace testing {

using namespace stylefmt;

inline const blocklang::Provider& variant_a() {
  static const blocklang::Provider p(blocklang::Variant::kA);
  return p;
}

inline const blocklang::Provider& variant_b() {
  static const blocklang::Provider p(blocklang::Variant::kB);
  return p;
}

inline Document parse(std::string_view text, const TreeProvider& provider = variant_a()) {
  return parse_document(provider, "test.bl", text);
}

// Index of the n-th token (0-based) with the given text.
inline int token_at(const Document& doc, std::string_view text, int nth = 0) {
  for (int i = 0; i < doc.size(); ++i) {
    if (doc.tokens[i].text == text && nth-- == 0) return i;
  }
  return -1;
}

inline std::vector<std::string> token_texts(const Document& doc) {
  std::vector<std::string> out;
  for (const Token& t : doc.tokens) out.push_back(t.text);
  return out;
}

inline std::vector<std::string> comment_texts(const Document& doc) {
  std::vector<std::string> out;
  for (const auto& run : doc.hidden) {
    for (const Token& h : run) {
      if (h.is_comment()) out.push_back(h.text);
    }
  }
  return out;
}

// The consistent 15-file fixture corpus shared by the heavier tests.
inline const std::vector<SourceFile>& fixture_corpus() {
  static const std::vector<SourceFile> files = generate_corpus(StyleConfig{}, 15, 7);
  return files;
}

inline std::vector<const Document*> pointers(const std::vector<Document>& docs) {
  std::vector<const Document*> out;
  for (const Document& d : docs) out.push_back(&d);
  return out;
}

inline FormattingModel train_on(const std::vector<Document>& docs,
                                const TreeProvider& provider = variant_a(), int indent = 4) {
  return train(pointers(docs), provider, indent);
}

// The document with every layout decision removed: tokens joined by single
// spaces, except that hidden runs holding comments are kept as written.
inline std::string flatten(const Document& doc) {
  auto run = [&](int i) {
    std::string text;
    bool comment = false;
    for (const Token& h : doc.hidden[i]) {
      text += h.text;
      comment = comment || h.is_comment();
    }
    return comment ? text : std::string();
  };
  std::string out = run(0);
  for (int i = 0; i < doc.size(); ++i) {
    if (i > 0) {
      std::string r = run(i);
      out += r.empty() ? " " : r;
    }
    out += doc.tokens[i].text;
  }
  return out + run(doc.size());
}

inline std::string random_string(std::mt19937_64& rng, int max_length, std::string_view alphabet) {
  int length = static_cast<int>(rng() % static_cast<std::uint64_t>(max_length + 1));
  std::string s;
  for (int c = 0; c < length; ++c) s += alphabet[rng() % alphabet.size()];
  return s;
}

}  // namespace testing
