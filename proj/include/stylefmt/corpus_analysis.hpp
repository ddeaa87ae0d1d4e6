#pragma once

// Corpus preprocessing: plausible paired tokens per rule, list detection and
// tagging, list-length statistics and the regular/oversize mini-classifier.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "stylefmt/syntax.hpp"

namespace stylefmt {

// label -> ordered (left type, right type) pairs.
using PairTable = std::map<NodeLabel, std::set<std::pair<int, int>>>;

PairTable compute_pairs(std::span<const Document* const> corpus);

// Index of the token paired with tokens[i], if any.
std::optional<int> paired_token(const PairTable& table, const Document& doc, int i);
// paired_token() for every token, -1 where absent.
std::vector<int> paired_tokens(const PairTable& table, const Document& doc);

struct ListKey {
  int parent_rule = -1;
  int child_rule = -1;
  int separator = -1;
  auto operator<=>(const ListKey&) const = default;
};

struct ListPopulation {
  int n_reg = 0;
  int median_reg = 0;
  int n_big = 0;
  int median_big = 0;
  bool operator==(const ListPopulation&) const = default;
};

using ListStats = std::map<ListKey, ListPopulation>;

enum class ListKind : std::uint8_t { kNotInList, kRegular, kOversize };
enum class ListComponent : std::uint8_t {
  kNone,
  kPrefix,
  kFirstMember,
  kFirstSeparator,
  kMember,
  kSeparator,
  kSuffix,
};

struct ListTag {
  ListKind kind = ListKind::kNotInList;
  ListComponent component = ListComponent::kNone;
  bool operator==(const ListTag&) const = default;
};

// One run of >= 2 same-rule siblings separated by a single literal of one
// token type.
struct ListInstance {
  NodeId parent = kNoNode;
  ListKey key;
  std::vector<NodeId> members;
  std::vector<int> separators;  // token indices
  std::optional<int> prefix;
  std::optional<int> suffix;
  int first_token = 0;  // leftmost leaf of the first member
  int last_token = 0;   // rightmost leaf of the last member
  int length = 0;       // characters of token text, whitespace excluded
};

// All lists of `doc`, outer lists before the lists nested inside them.
std::vector<ListInstance> find_lists(const Document& doc);

// Whether the list covers more than one line of the original text.
bool spans_lines(const Document& doc, const ListInstance& list);

ListStats collect_list_stats(std::span<const Document* const> corpus);

// Lower-middle element after sorting; 0 for an empty population.
int lower_median(std::vector<int> values);

ListKind predict_oversize(const ListStats& stats, const ListKey& key, int length);

// Per-token list tags. Without stats, oversize means the list spans lines of
// the original text; with stats, predict_oversize() decides. A token in
// nested lists keeps the tag of the outermost one.
std::vector<ListTag> tag_lists(const Document& doc, const ListStats* stats = nullptr);

}  // namespace stylefmt
