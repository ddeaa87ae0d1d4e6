#pragma once

// Language-neutral token and parse-tree model plus the adapter contract every
// parser backend implements. Trees are immutable once built; navigation
// helpers below are pure functions over them.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stylefmt {

enum class Channel : std::uint8_t { kDefault, kHidden };
enum class HiddenKind : std::uint8_t { kNone, kWhitespace, kComment };

struct Position {
  int line = 0;
  int col = 0;
  auto operator<=>(const Position&) const = default;
};

// Position just past the last character of `text` when it starts at `start`.
Position end_position(Position start, std::string_view text);

struct Token {
  int type = 0;
  std::string text;
  int index = -1;  // position among default-channel tokens, -1 when hidden
  int line = 0;
  int col = 0;
  Channel channel = Channel::kDefault;
  bool is_literal = false;
  HiddenKind hidden_kind = HiddenKind::kNone;

  Position start() const { return {line, col}; }
  Position end() const { return end_position(start(), text); }
  bool is_hidden() const { return channel == Channel::kHidden; }
  bool is_comment() const { return hidden_kind == HiddenKind::kComment; }
  bool is_whitespace() const { return hidden_kind == HiddenKind::kWhitespace; }
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, int line, int col);
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Names for token types or grammar rules, indexed by id.
struct Vocabulary {
  std::vector<std::string> names;

  std::string_view name(int id) const;
  std::optional<int> find(std::string_view name) const;
  // FNV-1a over the newline-joined names, rendered as 16 hex digits.
  std::string fingerprint() const;
};

// (rule, alternative) identity of an interior node.
struct NodeLabel {
  int rule = -1;
  int alt = 0;

  static constexpr NodeLabel none() { return {}; }
  bool is_none() const { return rule < 0; }
  auto operator<=>(const NodeLabel&) const = default;
};

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;
// child_index() result for a repeated sibling that is not the first repeat.
inline constexpr int kStarIndex = -2;

class ParseTree {
 public:
  enum class Kind : std::uint8_t { kRule, kLeaf };

  ParseTree() = default;

  bool empty() const { return root_ == kNoNode; }
  NodeId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  int token_count() const { return static_cast<int>(leaf_of_token_.size()); }

  Kind kind(NodeId n) const { return nodes_[n].kind; }
  bool is_leaf(NodeId n) const { return nodes_[n].kind == Kind::kLeaf; }
  int rule(NodeId n) const { return nodes_[n].rule; }
  int alt(NodeId n) const { return nodes_[n].alt; }
  NodeLabel label(NodeId n) const;
  // Token index wrapped by a leaf.
  int token(NodeId n) const { return nodes_[n].token; }
  int token_type(NodeId n) const { return nodes_[n].token_type; }
  NodeId parent(NodeId n) const { return nodes_[n].parent; }
  int position_in_parent(NodeId n) const { return nodes_[n].position; }
  std::span<const NodeId> children(NodeId n) const;
  NodeId leaf_of(int token_index) const { return leaf_of_token_[token_index]; }
  // Token indices of the first and last leaves under `n`.
  int leftmost_leaf(NodeId n) const { return nodes_[n].first_token; }
  int rightmost_leaf(NodeId n) const { return nodes_[n].last_token; }
  // Precomputed star-mode child index (see child_index()).
  int starred_position(NodeId n) const { return nodes_[n].starred_position; }

 private:
  friend class TreeBuilder;

  struct Node {
    Kind kind = Kind::kRule;
    int rule = -1;
    int alt = 0;
    int token = -1;
    int token_type = -1;
    NodeId parent = kNoNode;
    int position = 0;
    int starred_position = 0;
    std::int32_t child_begin = 0;
    std::int32_t child_count = 0;
    int first_token = -1;
    int last_token = -1;
  };

  std::vector<Node> nodes_;
  std::vector<NodeId> child_ids_;
  std::vector<NodeId> leaf_of_token_;
  NodeId root_ = kNoNode;
};

// Incremental construction for recursive-descent parsers. Rule nodes that end
// up with no children are dropped, so every rule node in the finished tree has
// at least one leaf.
class TreeBuilder {
 public:
  void open(int rule, int alt = 1);
  void set_alt(int alt);
  // Opens a new rule node that adopts the most recently closed child of the
  // current node (left-recursive binary operators).
  void open_wrapping_last(int rule, int alt);
  void leaf(int token_index, int token_type);
  void close();
  ParseTree finish();

 private:
  struct Pending {
    ParseTree::Kind kind = ParseTree::Kind::kRule;
    int rule = -1;
    int alt = 1;
    int token = -1;
    int token_type = -1;
    std::vector<int> children;
  };

  std::vector<Pending> pending_;
  std::vector<int> open_;
  std::vector<int> roots_;
};

// Identity used to decide whether siblings repeat: same rule for interior
// nodes, same token type for leaves.
bool same_sibling_kind(const ParseTree& tree, NodeId a, NodeId b);

// Token index of the first leaf in `node`'s subtree.
int leftmost_leaf(const ParseTree& tree, NodeId node);
// Oldest ancestor whose leftmost leaf is the token; the token's parent when no
// ancestor above the parent qualifies.
NodeId left_ancestor(const ParseTree& tree, int token_index);
// Mirror of left_ancestor() over rightmost leaves.
NodeId right_ancestor(const ParseTree& tree, int token_index);
// Position of `node` among its parent's children. In star mode, repeated
// siblings after the first report kStarIndex. Throws std::invalid_argument
// for the root.
int child_index(const ParseTree& tree, NodeId node, bool star_for_repeats);
// The `levels`-th ancestor of `node` (0 is the node itself), or kNoNode.
NodeId ancestor(const ParseTree& tree, NodeId node, int levels);

// Adapter contract for parser backends.
class TreeProvider {
 public:
  virtual ~TreeProvider() = default;

  virtual std::string_view id() const = 0;
  virtual const Vocabulary& token_vocabulary() const = 0;
  virtual const Vocabulary& rule_vocabulary() const = 0;
  // All tokens of `text`, default and hidden channels, in source order.
  virtual std::vector<Token> tokenize(std::string_view text) const = 0;
  // Parses the default-channel tokens (indices 0..n-1).
  virtual ParseTree parse(std::span<const Token> tokens) const = 0;
  virtual std::optional<int> line_comment_type() const { return std::nullopt; }
};

// Newlines normalized to '\n'; tabs expanded to the next multiple of
// `tab_width` columns.
std::string normalize_text(std::string_view text, int tab_width = 4);

struct Document {
  std::string name;
  std::string text;  // normalized
  std::vector<Token> tokens;  // default channel, tokens[i].index == i
  // hidden[i] holds hidden tokens between tokens[i-1] and tokens[i];
  // hidden[tokens.size()] holds those after the last token.
  std::vector<std::vector<Token>> hidden;
  ParseTree tree;

  int size() const { return static_cast<int>(tokens.size()); }
  std::vector<Position> original_layout() const;
  // Concatenation of every token's text in source order.
  std::string reconstruct() const;
};

// Tokenizes and parses `text`; SyntaxError propagates unchanged.
Document parse_document(const TreeProvider& provider, std::string name,
                        std::string_view text);

// Provider registry. The two blocklang variants are always present.
void register_provider(std::unique_ptr<TreeProvider> provider);
const TreeProvider* find_provider(std::string_view id);
std::vector<std::string> provider_ids();

}  // namespace stylefmt
