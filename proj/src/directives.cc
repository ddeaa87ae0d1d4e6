#include "stylefmt/directives.hpp"

#include <stdexcept>

namespace stylefmt {

std::string to_string(const WsDirective& ws) {
  switch (ws.kind) {
    case WsKind::kNone: return "none";
    case WsKind::kNewline: return "nl:" + std::to_string(ws.n);
    case WsKind::kSpace: return "sp:" + std::to_string(ws.n);
  }
  return "?";
}

std::string to_string(const HposDirective& h) {
  auto locator = [&] {
    return "(" + std::to_string(h.delta) + "," + std::to_string(h.child) + ")";
  };
  switch (h.kind) {
    case HposKind::kAlignTo: return "align" + locator();
    case HposKind::kIndentFrom: return "indent" + locator();
    case HposKind::kAlignPrevLine: return "align";
    case HposKind::kIndentPrevLine: return "indent";
  }
  return "?";
}

int LayoutView::first_on_line_of(int i) const {
  while (i > 0 && layout_[i - 1].line == layout_[i].line) --i;
  return i;
}

WsDirective capture_ws(const Document& doc, int i) {
  if (i < 1 || i >= doc.size()) throw std::invalid_argument("no previous token");
  Position from = doc.tokens[i - 1].end();
  for (const Token& h : doc.hidden[i]) {
    if (h.is_comment()) from = h.end();
  }
  const Token& t = doc.tokens[i];
  if (t.line > from.line) return WsDirective::newline(t.line - from.line);
  int gap = t.col - from.col;
  return gap > 0 ? WsDirective::space(gap) : WsDirective::none();
}

HposDirective capture_hpos(const Document& doc, int i, int indent_size) {
  if (i == 0) return HposDirective::align_prev_line();
  const ParseTree& tree = doc.tree;
  const int col = doc.tokens[i].col;
  auto starts_line = [&](int j) {
    return j == 0 || doc.tokens[j - 1].line != doc.tokens[j].line;
  };

  NodeId node = left_ancestor(tree, i);
  for (int delta = 0; node != kNoNode; ++delta, node = tree.parent(node)) {
    int align_child = -1;
    int indent_child = -1;
    auto kids = tree.children(node);
    for (int c = 0; c < static_cast<int>(kids.size()); ++c) {
      int leaf = tree.leftmost_leaf(kids[c]);
      if (leaf >= i) break;
      int leaf_col = doc.tokens[leaf].col;
      if (indent_child < 0 && leaf_col + indent_size == col && starts_line(leaf)) {
        indent_child = c;
      }
      if (align_child < 0 && leaf_col == col) align_child = c;
    }
    if (indent_child >= 0) return HposDirective::indent_from(delta, indent_child);
    if (align_child >= 0) return HposDirective::align_to(delta, align_child);
  }

  int prev = i - 1;
  while (prev > 0 && doc.tokens[prev - 1].line == doc.tokens[prev].line) --prev;
  return col > doc.tokens[prev].col ? HposDirective::indent_prev_line()
                                    : HposDirective::align_prev_line();
}

int locate_token(const ParseTree& tree, int i, const HposDirective& hpos) {
  if (!hpos.targets_token() || tree.empty()) return -1;
  NodeId node = ancestor(tree, left_ancestor(tree, i), hpos.delta);
  if (node == kNoNode || tree.is_leaf(node)) return -1;
  auto kids = tree.children(node);
  if (hpos.child < 0 || hpos.child >= static_cast<int>(kids.size())) return -1;
  int leaf = tree.leftmost_leaf(kids[hpos.child]);
  return leaf < i ? leaf : -1;
}

int resolve_column(const ParseTree& tree, int i, const HposDirective& hpos,
                   std::span<const Position> layout, int indent_size) {
  bool indent = hpos.kind == HposKind::kIndentFrom || hpos.kind == HposKind::kIndentPrevLine;
  if (hpos.targets_token()) {
    int target = locate_token(tree, i, hpos);
    if (target >= 0) return layout[target].col + (indent ? indent_size : 0);
  }
  if (i == 0) return 0;
  LayoutView view(layout.first(static_cast<std::size_t>(i)));
  int first = view.first_on_line_of(i - 1);
  return layout[first].col + (indent ? indent_size : 0);
}

}  // namespace stylefmt
