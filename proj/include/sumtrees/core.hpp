// Summation trees: construction, parsing, SD labeling, canonical forms.
//
// A summation is modeled as a rooted full binary tree whose leaves carry the
// summand labels and whose interior nodes are additions.  Trees are immutable
// and shared via shared_ptr, so any value may be handed between threads.

#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sumtrees {

class Node;
using NodePtr = std::shared_ptr<const Node>;

// One node of a summation tree.  Either a leaf (label, no children) or an
// interior node (two children, no label).  leaf_count is cached at
// construction so SD labeling is O(1) per node.
class Node {
public:
  static NodePtr leaf(std::string label);
  static NodePtr branch(NodePtr left, NodePtr right);

  bool is_leaf() const { return !left_; }
  const std::string& label() const { return label_; }
  const NodePtr& left() const { return left_; }
  const NodePtr& right() const { return right_; }
  int leaf_count() const { return leaf_count_; }

private:
  Node() = default;
  std::string label_;
  NodePtr left_;
  NodePtr right_;
  int leaf_count_ = 1;
};

// A parenthetic form: a summation tree with the leaf labels erased.  All
// leaves of the underlying tree carry the placeholder label "x".  Two shapes
// are equal iff their canonical serializations are equal.
struct Shape {
  NodePtr root;
};

enum class SDLabel { S, D };

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position(position) {}
  std::size_t position;
};

// Parses the grammar  expr := label | '(' expr '+' expr ')'  with optional
// whitespace between tokens.  Labels match [A-Za-z_][A-Za-z0-9_]*.  Throws
// ParseError on malformed input and on duplicate leaf labels.
NodePtr parse(std::string_view text);

// Fully parenthesized text, inverse of parse.  Shape leaves print as "x".
std::string serialize(const NodePtr& tree);
std::string serialize(const Shape& shape);

// Erases leaf labels, keeping the structure.
Shape shape_of(const NodePtr& tree);

// Parses a shape expression; leaf labels are ignored (each leaf becomes "x").
Shape parse_shape(std::string_view text);

// SD labels of the interior nodes in preorder.  An interior node is S iff its
// children have the same number of descendant leaves.
std::vector<SDLabel> sd_labels(const NodePtr& tree);
std::vector<SDLabel> sd_labels(const Shape& shape);

int s_node_count(const NodePtr& tree);
int s_node_count(const Shape& shape);

int interior_count(const NodePtr& tree);

// Recursively reorders children so that (leaf_count, serialization) of the
// left child never exceeds that of the right.  Idempotent; two shapes are
// isomorphic iff their canonical forms serialize identically.
Shape canonical_shape(const Shape& shape);

// Same reordering over labeled trees, keyed by (leaf_count, labeled
// serialization).  Two summations are computationally equivalent iff their
// canonical forms serialize identically.
NodePtr canonical_labeled(const NodePtr& tree);

// Left-deep fold: (((a+b)+c)+d).  C's default left-to-right associativity.
NodePtr ladder(std::span<const std::string> labels);

// Recursive halving; for odd counts the left child takes the larger half.
NodePtr pairwise(std::span<const std::string> labels);

// Bound-attaining form: with n = 2^k + r, 0 <= r < 2^k, joins the perfect
// tree on the first 2^k labels with mu_tree of the remaining r.
NodePtr mu_tree(std::span<const std::string> labels);

// Returns a copy of the tree with the children of the interior node at the
// given preorder index swapped.  Used by equivalence checks and tests.
NodePtr swap_children_at(const NodePtr& tree, int interior_preorder_index);

// Convenience label sequences a, b, ..., then a1, b1, ... past 26.
std::vector<std::string> default_labels(int n);

}  // namespace sumtrees
