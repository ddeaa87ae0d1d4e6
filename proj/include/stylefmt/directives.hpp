#pragma once

// Whitespace (ws) and horizontal-position (hpos) directives: capture from an
// original document and resolution against an emitted layout.

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "stylefmt/syntax.hpp"

namespace stylefmt {

enum class WsKind : std::uint8_t { kNone, kNewline, kSpace };

struct WsDirective {
  WsKind kind = WsKind::kNone;
  int n = 0;

  static constexpr WsDirective none() { return {}; }
  static constexpr WsDirective newline(int n) { return {WsKind::kNewline, n}; }
  static constexpr WsDirective space(int n) { return {WsKind::kSpace, n}; }
  auto operator<=>(const WsDirective&) const = default;
};

enum class HposKind : std::uint8_t {
  kAlignTo,
  kIndentFrom,
  kAlignPrevLine,
  kIndentPrevLine,
};

// For kAlignTo/kIndentFrom the target is the leftmost leaf of child `child` of
// the node `delta` levels above left_ancestor(t); delta 0 is the left
// ancestor itself.
struct HposDirective {
  HposKind kind = HposKind::kAlignPrevLine;
  int delta = 0;
  int child = 0;

  static constexpr HposDirective align_to(int delta, int child) {
    return {HposKind::kAlignTo, delta, child};
  }
  static constexpr HposDirective indent_from(int delta, int child) {
    return {HposKind::kIndentFrom, delta, child};
  }
  static constexpr HposDirective align_prev_line() { return {HposKind::kAlignPrevLine, 0, 0}; }
  static constexpr HposDirective indent_prev_line() { return {HposKind::kIndentPrevLine, 0, 0}; }

  bool targets_token() const {
    return kind == HposKind::kAlignTo || kind == HposKind::kIndentFrom;
  }
  auto operator<=>(const HposDirective&) const = default;
};

std::string to_string(const WsDirective& ws);
std::string to_string(const HposDirective& hpos);

// Line structure of default-channel tokens [0, layout.size()).
class LayoutView {
 public:
  explicit LayoutView(std::span<const Position> layout) : layout_(layout) {}

  int size() const { return static_cast<int>(layout_.size()); }
  const Position& at(int i) const { return layout_[i]; }
  bool starts_line(int i) const { return i == 0 || layout_[i - 1].line != layout_[i].line; }
  // Only meaningful when token i+1 is part of the view.
  bool ends_line(int i) const { return layout_[i + 1].line != layout_[i].line; }
  // First token on the line of token i.
  int first_on_line_of(int i) const;

 private:
  std::span<const Position> layout_;
};

// Whitespace before tokens[i], measured from the end of the last hidden
// comment between tokens[i-1] and tokens[i] when there is one.
WsDirective capture_ws(const Document& doc, int i);

// How tokens[i], which must start its line, is positioned.
HposDirective capture_hpos(const Document& doc, int i, int indent_size);

// Token index a locator refers to, or -1 when it does not resolve to a token
// before `i` in this tree.
int locate_token(const ParseTree& tree, int i, const HposDirective& hpos);

// Target column for tokens[i] placed at the start of a new line, given the
// positions of tokens [0, i). Locators that do not resolve degrade to the
// corresponding previous-line form.
int resolve_column(const ParseTree& tree, int i, const HposDirective& hpos,
                   std::span<const Position> layout, int indent_size);

}  // namespace stylefmt
