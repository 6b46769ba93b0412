// Duplicate-free generation of parenthetic forms and class representatives,
// plus the brute-force counting oracles that validate the closed formulas.
//
// The oracles exist in two builds of the same computation: a serial reference
// and an OpenMP kernel parallelized over permutation-rank blocks.  Both
// produce identical counts; the test suite compares them and the bench tool
// times them against each other.

#pragma once

#include <optional>

#include "sumtrees/core.hpp"
#include "sumtrees/enumerate.hpp"

namespace sumtrees {

// Largest n accepted by the per-shape brute-force oracle (n! assignments).
inline constexpr int kMaxOracleShapeN = 8;
// Largest n accepted by the total oracle (Catalan(n-1) * n! candidates).
inline constexpr int kMaxOracleTotalN = 7;

// Emits every canonical shape with n leaves exactly once, ordered by left
// subtree size ascending, then recursively.  With s_filter set, only shapes
// with exactly that many S-nodes are emitted.  State is O(depth) plus one
// shape per open recursion level.
class ShapeStream {
public:
  explicit ShapeStream(int n, std::optional<int> s_filter = std::nullopt);
  ShapeStream(ShapeStream&&) noexcept;
  ShapeStream& operator=(ShapeStream&&) noexcept;
  ~ShapeStream();

  std::optional<Shape> next();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::optional<int> s_filter_;
};

// Collects all shapes of a stream into a vector.
std::vector<Shape> all_shapes(int n, std::optional<int> s_filter = std::nullopt);

// One canonical representative per computational-equivalence class, emitted
// in serialized-text order.  The one-shape form covers the classes whose
// trees are isomorphic to that shape; the all-shapes form covers every class
// on n leaves, shape by shape in ShapeStream order.
class ClassStream {
public:
  ClassStream(const Shape& shape, std::vector<std::string> labels);
  ClassStream(int n, std::vector<std::string> labels);
  ClassStream(ClassStream&&) noexcept;
  ClassStream& operator=(ClassStream&&) noexcept;
  ~ClassStream();

  std::optional<NodePtr> next();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Counts classes by materializing every leaf assignment of the shape and
// deduplicating by canonical form.  n <= kMaxOracleShapeN.
BigCount oracle_class_count(const Shape& shape, std::span<const std::string> labels);
BigCount oracle_class_count_serial(const Shape& shape, std::span<const std::string> labels);

// Counts classes over all parenthesizations of all orderings.
// n <= kMaxOracleTotalN.
BigCount oracle_total_count(int n, std::span<const std::string> labels);
BigCount oracle_total_count_serial(int n, std::span<const std::string> labels);

// Writes the k-th (factorial-number-system rank) permutation of 0..n-1.
void permutation_by_rank(std::uint64_t rank, int n, std::span<int> out);

}  // namespace sumtrees
