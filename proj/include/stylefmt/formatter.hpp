#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stylefmt/directives.hpp"
#include "stylefmt/model.hpp"
#include "stylefmt/syntax.hpp"

namespace stylefmt {

struct FormatOptions {
  // Also predict hpos for tokens that do not start a line (for evaluation).
  bool trace_hpos = false;
  // Overrides the provider's single-line comment type; an empty inner value
  // disables the newline after comments.
  std::optional<std::optional<int>> line_comment;
};

struct FormatResult {
  std::string text;
  std::vector<Position> layout;  // emitted position of every token
  std::vector<WsDirective> ws;   // executed directive per token; [0] unused
  // Predicted hpos for line-starting tokens, or for every token i >= 1 when
  // tracing.
  std::vector<std::optional<HposDirective>> hpos;
};

// Re-lays out `doc`, ignoring its whitespace except the runs that precede
// comments.
FormatResult format_document(const Classifier& classifier, const Document& doc,
                             const TreeProvider& provider, const FormatOptions& options = {});

// Parses and formats `text`. Throws ModelError on a vocabulary mismatch and
// SyntaxError when the text does not parse.
std::string format(const FormattingModel& model, std::string_view text,
                   const TreeProvider& provider, const FormatOptions& options = {});

}  // namespace stylefmt
