#include "sumtrees/core.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

namespace sumtrees {

NodePtr Node::leaf(std::string label) {
  auto n = std::shared_ptr<Node>(new Node());
  n->label_ = std::move(label);
  n->leaf_count_ = 1;
  return n;
}

NodePtr Node::branch(NodePtr left, NodePtr right) {
  if (!left || !right) throw std::invalid_argument("branch: null child");
  auto n = std::shared_ptr<Node>(new Node());
  n->leaf_count_ = left->leaf_count() + right->leaf_count();
  n->left_ = std::move(left);
  n->right_ = std::move(right);
  return n;
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos); }

  NodePtr expr() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      std::size_t open = pos;
      ++pos;
      NodePtr l = expr();
      skip_ws();
      if (pos >= text.size() || text[pos] != '+') fail("expected '+'");
      ++pos;
      NodePtr r = expr();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') {
        pos = open;
        fail("unbalanced parenthesis");
      }
      ++pos;
      return Node::branch(std::move(l), std::move(r));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      return Node::leaf(std::string(text.substr(start, pos - start)));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      // Nonnegative integer index labels.
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      return Node::leaf(std::string(text.substr(start, pos - start)));
    }
    fail("expected label or '('");
  }
};

void collect_labels(const NodePtr& t, std::vector<std::string>& out) {
  if (t->is_leaf()) {
    out.push_back(t->label());
    return;
  }
  collect_labels(t->left(), out);
  collect_labels(t->right(), out);
}

void check_distinct_labels(const NodePtr& t) {
  std::vector<std::string> labels;
  collect_labels(t, labels);
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second)
      throw ParseError("duplicate leaf label: " + l, 0);
}

void serialize_into(const NodePtr& t, std::string& out, bool as_shape) {
  if (t->is_leaf()) {
    out += as_shape ? "x" : t->label();
    return;
  }
  out += '(';
  serialize_into(t->left(), out, as_shape);
  out += '+';
  serialize_into(t->right(), out, as_shape);
  out += ')';
}

NodePtr erase_labels(const NodePtr& t) {
  if (t->is_leaf()) return Node::leaf("x");
  return Node::branch(erase_labels(t->left()), erase_labels(t->right()));
}

// Orders children by (leaf_count, serialization of the canonicalized child).
NodePtr canonicalize(const NodePtr& t) {
  if (t->is_leaf()) return t;
  NodePtr l = canonicalize(t->left());
  NodePtr r = canonicalize(t->right());
  if (l->leaf_count() > r->leaf_count()) std::swap(l, r);
  else if (l->leaf_count() == r->leaf_count() && serialize(l) > serialize(r)) std::swap(l, r);
  return Node::branch(std::move(l), std::move(r));
}

void sd_labels_into(const NodePtr& t, std::vector<SDLabel>& out) {
  if (t->is_leaf()) return;
  out.push_back(t->left()->leaf_count() == t->right()->leaf_count() ? SDLabel::S : SDLabel::D);
  sd_labels_into(t->left(), out);
  sd_labels_into(t->right(), out);
}

NodePtr build_balanced(std::span<const std::string> labels,
                       NodePtr (*rec)(std::span<const std::string>)) {
  if (labels.empty()) throw std::invalid_argument("empty label sequence");
  if (labels.size() == 1) return Node::leaf(labels[0]);
  std::size_t left_n = (labels.size() + 1) / 2;
  return Node::branch(rec(labels.first(left_n)), rec(labels.subspan(left_n)));
}

}  // namespace

NodePtr parse(std::string_view text) {
  Parser p{text};
  p.skip_ws();
  if (p.pos >= text.size()) throw ParseError("empty input", 0);
  NodePtr t = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  check_distinct_labels(t);
  return t;
}

std::string serialize(const NodePtr& tree) {
  std::string out;
  serialize_into(tree, out, false);
  return out;
}

std::string serialize(const Shape& shape) {
  std::string out;
  serialize_into(shape.root, out, true);
  return out;
}

Shape shape_of(const NodePtr& tree) { return Shape{erase_labels(tree)}; }

Shape parse_shape(std::string_view text) {
  Parser p{text};
  p.skip_ws();
  if (p.pos >= text.size()) throw ParseError("empty input", 0);
  NodePtr t = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return Shape{erase_labels(t)};
}

std::vector<SDLabel> sd_labels(const NodePtr& tree) {
  std::vector<SDLabel> out;
  sd_labels_into(tree, out);
  return out;
}

std::vector<SDLabel> sd_labels(const Shape& shape) { return sd_labels(shape.root); }

int s_node_count(const NodePtr& tree) {
  if (tree->is_leaf()) return 0;
  int self = tree->left()->leaf_count() == tree->right()->leaf_count() ? 1 : 0;
  return self + s_node_count(tree->left()) + s_node_count(tree->right());
}

int s_node_count(const Shape& shape) { return s_node_count(shape.root); }

int interior_count(const NodePtr& tree) { return tree->leaf_count() - 1; }

Shape canonical_shape(const Shape& shape) { return Shape{canonicalize(shape.root)}; }

NodePtr canonical_labeled(const NodePtr& tree) { return canonicalize(tree); }

NodePtr ladder(std::span<const std::string> labels) {
  if (labels.empty()) throw std::invalid_argument("empty label sequence");
  NodePtr t = Node::leaf(labels[0]);
  for (std::size_t i = 1; i < labels.size(); ++i)
    t = Node::branch(std::move(t), Node::leaf(labels[i]));
  return t;
}

NodePtr pairwise(std::span<const std::string> labels) {
  return build_balanced(labels, &pairwise);
}

NodePtr mu_tree(std::span<const std::string> labels) {
  if (labels.empty()) throw std::invalid_argument("empty label sequence");
  if (labels.size() == 1) return Node::leaf(labels[0]);
  std::size_t pow2 = 1;
  while (pow2 * 2 <= labels.size()) pow2 *= 2;
  if (pow2 == labels.size()) return pairwise(labels);
  return Node::branch(pairwise(labels.first(pow2)), mu_tree(labels.subspan(pow2)));
}

namespace {
// k is the preorder index of the interior node to flip within t.
NodePtr swap_rec(const NodePtr& t, int k) {
  if (k == 0) return Node::branch(t->right(), t->left());
  int left_interior = interior_count(t->left());
  if (k - 1 < left_interior)
    return Node::branch(swap_rec(t->left(), k - 1), t->right());
  return Node::branch(t->left(), swap_rec(t->right(), k - 1 - left_interior));
}
}  // namespace

NodePtr swap_children_at(const NodePtr& tree, int interior_preorder_index) {
  if (interior_preorder_index < 0 || interior_preorder_index >= interior_count(tree))
    throw std::out_of_range("interior node index out of range");
  return swap_rec(tree, interior_preorder_index);
}

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::string s(1, static_cast<char>('a' + i % 26));
    if (i >= 26) s += std::to_string(i / 26);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace sumtrees
