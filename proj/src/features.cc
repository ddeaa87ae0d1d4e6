#include "stylefmt/features.hpp"

#include <stdexcept>

#include "stylefmt/directives.hpp"

namespace stylefmt {

static_assert(kWsSlots.size() == 11 && kHposSlots.size() == 17 && kFeatureCount == 21);

namespace {

constexpr std::array<std::string_view, kFeatureCount> kNames{
    "prev_type",          "type",          "prev_starts_line", "pair_starts_line",
    "pair_ends_line",     "list_kind",     "list_component",   "child_index",
    "prev_right_ancestor", "left_ancestor", "left_ancestor_child",
    "parent1",            "parent1_child", "parent2",          "parent2_child",
    "parent3",            "parent3_child", "parent4",          "parent4_child",
    "parent5",            "parent5_child"};

std::int32_t node_child_index(const ParseTree& tree, NodeId n) {
  if (n == kNoNode || tree.parent(n) == kNoNode) return kUnset;
  return child_index(tree, n, true);
}

template <std::size_t N>
std::array<std::int32_t, N> project(const FeatureVector& v, const std::array<int, N>& slots) {
  std::array<std::int32_t, N> out{};
  for (std::size_t s = 0; s < N; ++s) out[s] = v[slots[s]];
  return out;
}

}  // namespace

std::span<const std::string_view> feature_names() { return kNames; }

std::int32_t encode_label(NodeLabel label) {
  if (label.is_none()) return kUnset;
  return (label.rule + 1) * 1024 + label.alt;
}

FeatureVector compute_features(const FeatureContext& ctx, int i) {
  FeatureVector v;
  v.fill(kUnset);
  const Document& doc = ctx.doc;
  const ParseTree& tree = doc.tree;
  LayoutView layout(ctx.layout);

  v[kType] = doc.tokens[i].type;
  if (i >= 1) {
    v[kPrevType] = doc.tokens[i - 1].type;
    v[kPrevStartsLine] = layout.starts_line(i - 1);
    v[kPrevRightAncestor] = encode_label(tree.label(right_ancestor(tree, i - 1)));
  }
  if (int j = ctx.paired[i]; j >= 0) {
    v[kPairStartsLine] = layout.starts_line(j);
    // Whether j ends its line is still undecided when j directly precedes i.
    v[kPairEndsLine] = j + 1 < i ? layout.ends_line(j) : 1;
  }
  v[kListKind] = static_cast<std::int32_t>(ctx.tags[i].kind);
  v[kListComponent] = static_cast<std::int32_t>(ctx.tags[i].component);
  v[kChildIndex] = node_child_index(tree, tree.leaf_of(i));

  NodeId left = left_ancestor(tree, i);
  v[kLeftAncestor] = encode_label(tree.label(left));
  v[kLeftAncestorChild] = node_child_index(tree, left);
  NodeId p = left;
  for (int k = 0; k < 5; ++k) {
    p = p == kNoNode ? kNoNode : tree.parent(p);
    if (p == kNoNode) break;
    v[kParent1 + 2 * k] = encode_label(tree.label(p));
    v[kParent1Child + 2 * k] = node_child_index(tree, p);
  }
  return v;
}

WsFeatures ws_subset(const FeatureVector& v) { return project(v, kWsSlots); }
HposFeatures hpos_subset(const FeatureVector& v) { return project(v, kHposSlots); }

int l0_differences(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("feature vectors differ in length");
  int d = 0;
  for (std::size_t s = 0; s < a.size(); ++s) d += a[s] != b[s];
  return d;
}

double l0_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  int d = l0_differences(a, b);
  return a.empty() ? 0.0 : static_cast<double>(d) / static_cast<double>(a.size());
}

}  // namespace stylefmt
