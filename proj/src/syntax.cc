#include "stylefmt/syntax.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <mutex>

#include "stylefmt/blocklang.hpp"

namespace stylefmt {

Position end_position(Position start, std::string_view text) {
  Position p = start;
  for (char c : text) {
    if (c == '\n') {
      ++p.line;
      p.col = 0;
    } else {
      ++p.col;
    }
  }
  return p;
}

namespace {

std::string describe_location(const std::string& message, int line, int col) {
  return "line " + std::to_string(line + 1) + ":" + std::to_string(col + 1) +
         ": " + message;
}

}  // namespace

SyntaxError::SyntaxError(const std::string& message, int line, int col)
    : std::runtime_error(describe_location(message, line, col)),
      line_(line),
      col_(col) {}

std::string_view Vocabulary::name(int id) const {
  if (id < 0 || id >= static_cast<int>(names.size())) return "<invalid>";
  return names[id];
}

std::optional<int> Vocabulary::find(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::string Vocabulary::fingerprint() const {
  std::uint64_t hash = 14695981039346656037ull;
  auto mix = [&hash](unsigned char c) {
    hash ^= c;
    hash *= 1099511628211ull;
  };
  for (const auto& n : names) {
    for (char c : n) mix(static_cast<unsigned char>(c));
    mix('\n');
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

NodeLabel ParseTree::label(NodeId n) const {
  if (n == kNoNode || is_leaf(n)) return NodeLabel::none();
  return {nodes_[n].rule, nodes_[n].alt};
}

std::span<const NodeId> ParseTree::children(NodeId n) const {
  const Node& node = nodes_[n];
  return {child_ids_.data() + node.child_begin,
          static_cast<std::size_t>(node.child_count)};
}

void TreeBuilder::open(int rule, int alt) {
  Pending p;
  p.rule = rule;
  p.alt = alt;
  pending_.push_back(std::move(p));
  open_.push_back(static_cast<int>(pending_.size()) - 1);
}

void TreeBuilder::set_alt(int alt) {
  if (open_.empty()) throw std::logic_error("set_alt with no open node");
  pending_[open_.back()].alt = alt;
}

void TreeBuilder::open_wrapping_last(int rule, int alt) {
  if (open_.empty() || pending_[open_.back()].children.empty()) {
    throw std::logic_error("open_wrapping_last needs a closed child to adopt");
  }
  int adopted = pending_[open_.back()].children.back();
  pending_[open_.back()].children.pop_back();
  open(rule, alt);
  pending_[open_.back()].children.push_back(adopted);
}

void TreeBuilder::leaf(int token_index, int token_type) {
  if (open_.empty()) throw std::logic_error("leaf outside of any rule node");
  Pending p;
  p.kind = ParseTree::Kind::kLeaf;
  p.token = token_index;
  p.token_type = token_type;
  pending_.push_back(std::move(p));
  int id = static_cast<int>(pending_.size()) - 1;
  pending_[open_.back()].children.push_back(id);
}

void TreeBuilder::close() {
  if (open_.empty()) throw std::logic_error("close with no open node");
  int id = open_.back();
  open_.pop_back();
  if (pending_[id].children.empty()) return;
  if (open_.empty()) {
    roots_.push_back(id);
  } else {
    pending_[open_.back()].children.push_back(id);
  }
}

ParseTree TreeBuilder::finish() {
  if (!open_.empty()) throw std::logic_error("unclosed rule nodes");
  if (roots_.size() > 1) throw std::logic_error("multiple root nodes");
  ParseTree tree;
  if (roots_.empty()) return tree;

  // Preorder copy; children of a node are laid out contiguously.
  struct Frame {
    int pending;
    NodeId parent;
    int position;
  };
  std::vector<Frame> stack{{roots_.front(), kNoNode, 0}};
  std::vector<NodeId> ids_for_pending(pending_.size(), kNoNode);
  int max_token = -1;
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const Pending& p = pending_[f.pending];
    NodeId id = static_cast<NodeId>(tree.nodes_.size());
    ids_for_pending[f.pending] = id;
    ParseTree::Node node;
    node.kind = p.kind;
    node.rule = p.rule;
    node.alt = p.alt;
    node.token = p.token;
    node.token_type = p.token_type;
    node.parent = f.parent;
    node.position = f.position;
    tree.nodes_.push_back(node);
    if (p.kind == ParseTree::Kind::kLeaf) max_token = std::max(max_token, p.token);
    for (int c = static_cast<int>(p.children.size()) - 1; c >= 0; --c) {
      stack.push_back({p.children[c], id, c});
    }
  }
  for (std::size_t pid = 0; pid < pending_.size(); ++pid) {
    NodeId id = ids_for_pending[pid];
    if (id == kNoNode) continue;
    auto& node = tree.nodes_[id];
    node.child_begin = static_cast<std::int32_t>(tree.child_ids_.size());
    node.child_count = static_cast<std::int32_t>(pending_[pid].children.size());
    for (int c : pending_[pid].children) tree.child_ids_.push_back(ids_for_pending[c]);
  }
  tree.root_ = 0;

  tree.leaf_of_token_.assign(max_token + 1, kNoNode);
  // Reverse preorder visits children before parents.
  for (NodeId id = static_cast<NodeId>(tree.nodes_.size()) - 1; id >= 0; --id) {
    auto& node = tree.nodes_[id];
    if (node.kind == ParseTree::Kind::kLeaf) {
      node.first_token = node.last_token = node.token;
      tree.leaf_of_token_[node.token] = id;
      continue;
    }
    auto kids = tree.children(id);
    node.first_token = tree.nodes_[kids.front()].first_token;
    node.last_token = tree.nodes_[kids.back()].last_token;

    for (std::size_t c = 0; c < kids.size(); ++c) {
      bool seen_before = false;
      for (std::size_t o = 0; o < c && !seen_before; ++o) {
        seen_before = same_sibling_kind(tree, kids[c], kids[o]);
      }
      tree.nodes_[kids[c]].starred_position =
          seen_before ? kStarIndex : static_cast<int>(c);
    }
  }
  tree.nodes_[0].starred_position = 0;

  // Leaves must cover tokens 0..n-1 in order.
  int expected = 0;
  for (const auto& node : tree.nodes_) {
    if (node.kind != ParseTree::Kind::kLeaf) continue;
    if (node.token != expected) throw std::logic_error("leaves out of token order");
    ++expected;
  }
  return tree;
}

bool same_sibling_kind(const ParseTree& tree, NodeId a, NodeId b) {
  if (tree.kind(a) != tree.kind(b)) return false;
  if (tree.is_leaf(a)) return tree.token_type(a) == tree.token_type(b);
  return tree.rule(a) == tree.rule(b);
}

int leftmost_leaf(const ParseTree& tree, NodeId node) {
  return tree.leftmost_leaf(node);
}

NodeId left_ancestor(const ParseTree& tree, int token_index) {
  NodeId leaf = tree.leaf_of(token_index);
  NodeId node = leaf;
  while (tree.parent(node) != kNoNode &&
         tree.leftmost_leaf(tree.parent(node)) == token_index) {
    node = tree.parent(node);
  }
  return node == leaf ? tree.parent(leaf) : node;
}

NodeId right_ancestor(const ParseTree& tree, int token_index) {
  NodeId leaf = tree.leaf_of(token_index);
  NodeId node = leaf;
  while (tree.parent(node) != kNoNode &&
         tree.rightmost_leaf(tree.parent(node)) == token_index) {
    node = tree.parent(node);
  }
  return node == leaf ? tree.parent(leaf) : node;
}

int child_index(const ParseTree& tree, NodeId node, bool star_for_repeats) {
  if (tree.parent(node) == kNoNode) throw std::invalid_argument("no parent");
  return star_for_repeats ? tree.starred_position(node)
                          : tree.position_in_parent(node);
}

NodeId ancestor(const ParseTree& tree, NodeId node, int levels) {
  while (levels-- > 0 && node != kNoNode) node = tree.parent(node);
  return node;
}

std::string normalize_text(std::string_view text, int tab_width) {
  std::string out;
  out.reserve(text.size());
  int col = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') continue;
      c = '\n';
    }
    if (c == '\n') {
      out.push_back('\n');
      col = 0;
    } else if (c == '\t') {
      int width = tab_width - (col % tab_width);
      out.append(static_cast<std::size_t>(width), ' ');
      col += width;
    } else {
      out.push_back(c);
      ++col;
    }
  }
  return out;
}

std::vector<Position> Document::original_layout() const {
  std::vector<Position> layout;
  layout.reserve(tokens.size());
  for (const auto& t : tokens) layout.push_back(t.start());
  return layout;
}

std::string Document::reconstruct() const {
  std::string out;
  for (std::size_t i = 0; i <= tokens.size(); ++i) {
    for (const auto& h : hidden[i]) out += h.text;
    if (i < tokens.size()) out += tokens[i].text;
  }
  return out;
}

Document parse_document(const TreeProvider& provider, std::string name,
                        std::string_view text) {
  Document doc;
  doc.name = std::move(name);
  doc.text = normalize_text(text);
  std::vector<Token> all = provider.tokenize(doc.text);
  doc.hidden.emplace_back();
  for (auto& t : all) {
    if (t.is_hidden()) {
      doc.hidden.back().push_back(std::move(t));
    } else {
      t.index = static_cast<int>(doc.tokens.size());
      doc.tokens.push_back(std::move(t));
      doc.hidden.emplace_back();
    }
  }
  doc.tree = provider.parse(doc.tokens);
  return doc;
}

namespace {

struct Registry {
  std::mutex mutex;
  std::map<std::string, std::unique_ptr<TreeProvider>, std::less<>> providers;

  Registry() {
    add(std::make_unique<blocklang::Provider>(blocklang::Variant::kA));
    add(std::make_unique<blocklang::Provider>(blocklang::Variant::kB));
  }
  void add(std::unique_ptr<TreeProvider> p) {
    std::string id(p->id());
    providers[id] = std::move(p);
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

void register_provider(std::unique_ptr<TreeProvider> provider) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  r.add(std::move(provider));
}

const TreeProvider* find_provider(std::string_view id) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  auto it = r.providers.find(id);
  return it == r.providers.end() ? nullptr : it->second.get();
}

std::vector<std::string> provider_ids() {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  std::vector<std::string> ids;
  for (const auto& [id, p] : r.providers) ids.push_back(id);
  return ids;
}

}  // namespace stylefmt
