#pragma once

// 21-slot token context vector and its ws/hpos projections.
//
//   1  previous token type            12 label of parent_1(left ancestor)
//   2  current token type             13 child index of parent_1
//   3  previous token starts line     14 label of parent_2
//   4  paired token starts line       15 child index of parent_2
//   5  paired token ends line         16 label of parent_3
//   6  enclosing list kind            17 child index of parent_3
//   7  list component                 18 label of parent_4
//   8  child index of the token       19 child index of parent_4
//   9  label of right_ancestor(prev)  20 label of parent_5
//  10  label of left_ancestor(token)  21 child index of parent_5
//  11  child index of left ancestor
//
// Child indices use star mode.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "stylefmt/corpus_analysis.hpp"
#include "stylefmt/syntax.hpp"

namespace stylefmt {

inline constexpr int kFeatureCount = 21;
inline constexpr int kWsFeatureCount = 11;
inline constexpr int kHposFeatureCount = 17;

inline constexpr std::int32_t kUnset = -1;
inline constexpr std::int32_t kStar = kStarIndex;

using FeatureVector = std::array<std::int32_t, kFeatureCount>;
using WsFeatures = std::array<std::int32_t, kWsFeatureCount>;
using HposFeatures = std::array<std::int32_t, kHposFeatureCount>;

// 0-based slot numbers.
enum Slot : int {
  kPrevType,
  kType,
  kPrevStartsLine,
  kPairStartsLine,
  kPairEndsLine,
  kListKind,
  kListComponent,
  kChildIndex,
  kPrevRightAncestor,
  kLeftAncestor,
  kLeftAncestorChild,
  kParent1,
  kParent1Child,
  kParent2,
  kParent2Child,
  kParent3,
  kParent3Child,
  kParent4,
  kParent4Child,
  kParent5,
  kParent5Child,
};

inline constexpr std::array<int, kWsFeatureCount> kWsSlots{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 11};
inline constexpr std::array<int, kHposFeatureCount> kHposSlots{
    1, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20};

std::span<const std::string_view> feature_names();

// Integer encoding of a node label for label slots.
std::int32_t encode_label(NodeLabel label);

struct FeatureContext {
  const Document& doc;
  std::span<const ListTag> tags;
  std::span<const int> paired;  // from paired_tokens()
  // Positions of at least tokens [0, i); only those are consulted.
  std::span<const Position> layout;
};

FeatureVector compute_features(const FeatureContext& ctx, int i);

WsFeatures ws_subset(const FeatureVector& v);
HposFeatures hpos_subset(const FeatureVector& v);

// Number of differing slots. Throws std::invalid_argument on length mismatch.
int l0_differences(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
// Fraction of differing slots.
double l0_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

}  // namespace stylefmt
