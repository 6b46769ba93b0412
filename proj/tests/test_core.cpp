#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <queue>
#include <set>

#include "sumtrees/core.hpp"
#include "test_util.hpp"

using namespace sumtrees;
using namespace sumtrees::testutil;

TEST_CASE("parse accepts the grammar and round-trips") {
  NodePtr t = parse("(((a+b)+c)+d)");
  CHECK(t->leaf_count() == 4);
  CHECK(serialize(t) == "(((a+b)+c)+d)");
  CHECK(serialize(parse(" ( ( ( a + b ) + c ) + d ) ")) == "(((a+b)+c)+d)");

  NodePtr leaf = parse("x");
  CHECK(leaf->is_leaf());
  CHECK(leaf->leaf_count() == 1);
  CHECK(serialize(leaf) == "x");
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse("((a+b)+(c+d)"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("   "), ParseError);
  CHECK_THROWS_AS(parse("(a+a)"), ParseError);  // duplicate label
  CHECK_THROWS_AS(parse("(a+b))"), ParseError);
  CHECK_THROWS_AS(parse("(a b)"), ParseError);
  CHECK_THROWS_AS(parse("(.+b)"), ParseError);
  CHECK(serialize(parse("(0+1)")) == "(0+1)");  // integer index labels

  try {
    parse("((a+b)+");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position <= 7);
  }
}

TEST_CASE("constructors match the documented forms") {
  auto labels = default_labels(4);
  CHECK(serialize(ladder(labels)) == "(((a+b)+c)+d)");
  CHECK(serialize(pairwise(labels)) == "((a+b)+(c+d))");
  CHECK(serialize(parse(serialize(pairwise(labels)))) == "((a+b)+(c+d))");

  auto one = default_labels(1);
  CHECK(serialize(ladder(one)) == "a");

  std::vector<std::string> none;
  CHECK_THROWS_AS(ladder(none), std::invalid_argument);
  CHECK_THROWS_AS(pairwise(none), std::invalid_argument);
  CHECK_THROWS_AS(mu_tree(none), std::invalid_argument);
}

TEST_CASE("sd_labels follows the equal-leaf-count rule") {
  auto t = parse("(((a+b)+c)+((d+e)+f))");
  auto labels = sd_labels(t);
  CHECK(labels == std::vector<SDLabel>{SDLabel::S, SDLabel::D, SDLabel::S, SDLabel::D,
                                       SDLabel::S});

  CHECK(sd_labels(parse("(a+b)")) == std::vector<SDLabel>{SDLabel::S});

  auto l5 = sd_labels(ladder(default_labels(5)));
  CHECK(std::count(l5.begin(), l5.end(), SDLabel::S) == 1);
  CHECK(l5.back() == SDLabel::S);  // only the deepest interior node
}

TEST_CASE("s_node_count on the figure trees") {
  CHECK(s_node_count(shape_of(pairwise(default_labels(8)))) == 7);
  CHECK(s_node_count(shape_of(pairwise(default_labels(5)))) == 2);
  CHECK(s_node_count(shape_of(pairwise(default_labels(7)))) == 4);
  CHECK(s_node_count(shape_of(pairwise(default_labels(6)))) == 3);
  for (int n = 2; n <= 64; ++n)
    CHECK(s_node_count(shape_of(ladder(default_labels(n)))) == 1);
  CHECK(s_node_count(parse("x")) == 0);
}

TEST_CASE("pairwise split puts the larger half on the left") {
  auto t = pairwise(default_labels(6));
  auto sd = sd_labels(t);
  CHECK(sd[0] == SDLabel::S);  // root
  CHECK(t->left()->leaf_count() == 3);
  CHECK(sd_labels(t->left())[0] == SDLabel::D);
  CHECK(sd_labels(t->right())[0] == SDLabel::D);

  auto t7 = pairwise(default_labels(7));
  CHECK(t7->left()->leaf_count() == 4);
  CHECK(t7->right()->leaf_count() == 3);
}

TEST_CASE("canonical_shape identifies isomorphic shapes") {
  CHECK(serialize(canonical_shape(parse_shape("((a+b)+c)"))) ==
        serialize(canonical_shape(parse_shape("(c+(a+b))"))));

  // The two non-isomorphic 6-leaf shapes with 2 S-nodes and 3 D-nodes.
  Shape first = parse_shape("((((x+x)+x)+x)+(x+x))");
  Shape second = parse_shape("((((x+x)+x)+(x+x))+x)");
  CHECK(s_node_count(first) == 2);
  CHECK(s_node_count(second) == 2);
  CHECK(serialize(canonical_shape(first)) != serialize(canonical_shape(second)));
}

TEST_CASE("canonical_shape is idempotent and swap-invariant") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 12);
    auto labels = default_labels(n);
    Shape s = shape_of(random_tree(rng, labels));
    Shape c = canonical_shape(s);
    CHECK(serialize(canonical_shape(c)) == serialize(c));
    if (n >= 2) {
      int idx = static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
      Shape swapped{swap_children_at(s.root, idx)};
      CHECK(serialize(canonical_shape(swapped)) == serialize(c));
    }
  }
}

TEST_CASE("canonical_labeled separates the motivating examples") {
  auto canon = [](const char* s) { return serialize(canonical_labeled(parse(s))); };
  CHECK(canon("(a+(b+c))") == canon("((b+c)+a)"));
  CHECK(canon("(((a+b)+c)+((d+e)+f))") != canon("(((e+d)+c)+(f+(b+a)))"));
  CHECK(canon("((a+b)+c)") != canon("((b+c)+a)"));  // same shape, inequivalent
}

TEST_CASE("canonical_labeled is idempotent and swap-invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 2 + static_cast<int>(rng() % 9);
    auto labels = default_labels(n);
    NodePtr t = random_tree(rng, labels);
    NodePtr c = canonical_labeled(t);
    CHECK(serialize(canonical_labeled(c)) == serialize(c));
    int idx = static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    CHECK(serialize(canonical_labeled(swap_children_at(t, idx))) == serialize(c));
  }
}

TEST_CASE("swap closure equals canonical-key equality for n <= 5") {
  for (int n = 2; n <= 5; ++n) {
    auto labels = default_labels(n);
    auto universe = all_labeled_trees(labels);
    std::map<std::string, std::set<std::string>> by_key;
    std::map<std::string, NodePtr> by_text;
    for (const auto& t : universe) {
      by_key[serialize(canonical_labeled(t))].insert(serialize(t));
      by_text[serialize(t)] = t;
    }
    // BFS over child swaps from one representative per class.
    for (const auto& [key, members] : by_key) {
      NodePtr start = by_text.at(*members.begin());
      std::set<std::string> reached{serialize(start)};
      std::queue<NodePtr> frontier;
      frontier.push(start);
      while (!frontier.empty()) {
        NodePtr cur = frontier.front();
        frontier.pop();
        for (int idx = 0; idx < interior_count(cur); ++idx) {
          NodePtr next = swap_children_at(cur, idx);
          if (reached.insert(serialize(next)).second) frontier.push(next);
        }
      }
      CHECK(reached == members);
    }
  }
}

TEST_CASE("mu_tree attains the perfect-tree decomposition") {
  CHECK(serialize(shape_of(mu_tree(default_labels(8)))) ==
        serialize(shape_of(pairwise(default_labels(8)))));
  CHECK(s_node_count(shape_of(mu_tree(default_labels(8)))) == 7);

  CHECK(serialize(mu_tree(default_labels(3))) == "((a+b)+c)");
  CHECK(s_node_count(shape_of(mu_tree(default_labels(3)))) == 1);

  auto m12 = mu_tree(default_labels(12));
  CHECK(m12->left()->leaf_count() == 8);
  CHECK(m12->right()->leaf_count() == 4);
  CHECK(sd_labels(m12)[0] == SDLabel::D);
  CHECK(s_node_count(m12) == 10);
}

TEST_CASE("full-binary invariant holds after construction and parse") {
  std::mt19937_64 rng(3);
  auto check_full = [](const NodePtr& t, auto&& self) -> void {
    if (t->is_leaf()) {
      CHECK(t->leaf_count() == 1);
      return;
    }
    CHECK(t->leaf_count() == t->left()->leaf_count() + t->right()->leaf_count());
    self(t->left(), self);
    self(t->right(), self);
  };
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    auto labels = default_labels(n);
    check_full(random_tree(rng, labels), check_full);
    check_full(ladder(labels), check_full);
    check_full(pairwise(labels), check_full);
    check_full(mu_tree(labels), check_full);
  }
  check_full(parse("((a+(b+c))+((d+e)+f))"), check_full);
}

TEST_CASE("isomorphic shapes keep S and D counts") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 9);
    NodePtr t = random_tree(rng, default_labels(n));
    Shape s = shape_of(t);
    int idx = static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    Shape swapped{swap_children_at(s.root, idx)};
    CHECK(s_node_count(swapped) == s_node_count(s));
    auto d_count = [](const Shape& sh) {
      auto l = sd_labels(sh);
      return std::count(l.begin(), l.end(), SDLabel::D);
    };
    CHECK(d_count(swapped) == d_count(s));
  }
}
