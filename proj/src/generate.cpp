#include "sumtrees/generate.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace sumtrees {

namespace {

NodePtr shape_leaf() { return Node::leaf("x"); }

std::uint64_t factorial_u64(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

void check_labels(std::span<const std::string> labels, int expected_n, const char* what) {
  if (static_cast<int>(labels.size()) != expected_n)
    throw std::invalid_argument(std::string(what) + ": label count mismatch");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (static_cast<int>(seen.size()) != expected_n)
    throw std::invalid_argument(std::string(what) + ": duplicate labels");
}

// Fills the leaves of the shape left to right with labels[perm[k]].
NodePtr assign_labels(const NodePtr& shape, std::span<const std::string> labels,
                      std::span<const int> perm, int& k) {
  if (shape->is_leaf()) return Node::leaf(labels[perm[k++]]);
  NodePtr l = assign_labels(shape->left(), labels, perm, k);
  NodePtr r = assign_labels(shape->right(), labels, perm, k);
  return Node::branch(std::move(l), std::move(r));
}

std::string canonical_key(const NodePtr& shape, std::span<const std::string> labels,
                          std::span<const int> perm) {
  int k = 0;
  return serialize(canonical_labeled(assign_labels(shape, labels, perm, k)));
}

// All plane shapes (every parenthesization, not deduplicated by isomorphism).
std::vector<NodePtr> plane_shapes(int n) {
  if (n == 1) return {shape_leaf()};
  std::vector<NodePtr> out;
  for (int i = 1; i < n; ++i)
    for (const auto& l : plane_shapes(i))
      for (const auto& r : plane_shapes(n - i)) out.push_back(Node::branch(l, r));
  return out;
}

// Deduplicates canonical keys over the permutation rank range [begin, end).
void collect_keys(const NodePtr& shape, std::span<const std::string> labels,
                  std::uint64_t begin, std::uint64_t end,
                  std::unordered_set<std::string>& keys) {
  int n = static_cast<int>(labels.size());
  std::vector<int> perm(n);
  for (std::uint64_t rank = begin; rank < end; ++rank) {
    permutation_by_rank(rank, n, perm);
    keys.insert(canonical_key(shape, labels, perm));
  }
}

BigCount class_count_over_shapes(const std::vector<NodePtr>& shapes,
                                 std::span<const std::string> labels, bool parallel) {
  int n = static_cast<int>(labels.size());
  std::uint64_t total = factorial_u64(n);
  std::unordered_set<std::string> keys;
  if (!parallel) {
    for (const auto& sh : shapes) collect_keys(sh, labels, 0, total, keys);
    return BigCount(static_cast<unsigned long>(keys.size()));
  }
#pragma omp parallel
  {
    std::unordered_set<std::string> local;
    for (const auto& sh : shapes) {
#pragma omp for schedule(static) nowait
      for (std::int64_t block = 0; block < static_cast<std::int64_t>(total); block += 1024) {
        std::uint64_t begin = static_cast<std::uint64_t>(block);
        std::uint64_t end = std::min<std::uint64_t>(begin + 1024, total);
        collect_keys(sh, labels, begin, end, local);
      }
    }
#pragma omp critical
    keys.merge(local);
  }
  return BigCount(static_cast<unsigned long>(keys.size()));
}

}  // namespace

void permutation_by_rank(std::uint64_t rank, int n, std::span<int> out) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::uint64_t f = factorial_u64(n);
  for (int i = 0; i < n; ++i) {
    f /= static_cast<std::uint64_t>(n - i);
    std::uint64_t digit = rank / f;
    rank %= f;
    out[i] = pool[digit];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
}

struct ShapeStream::Impl {
  int n;
  int i = 1;
  bool leaf_done = false;
  std::unique_ptr<Impl> left;
  std::unique_ptr<Impl> right;
  std::optional<Shape> current_left;

  explicit Impl(int n) : n(n) {}

  std::optional<Shape> next_raw() {
    if (n == 1) {
      if (leaf_done) return std::nullopt;
      leaf_done = true;
      return Shape{shape_leaf()};
    }
    for (;;) {
      if (i > n / 2) return std::nullopt;
      if (!left) left = std::make_unique<Impl>(i);
      if (!current_left) {
        current_left = left->next_raw();
        if (!current_left) {
          ++i;
          left.reset();
          continue;
        }
        right = std::make_unique<Impl>(n - i);
      }
      auto r = right->next_raw();
      if (!r) {
        current_left.reset();
        continue;
      }
      // For the even split, keep only pairs in canonical order.
      if (2 * i == n && serialize(*r) < serialize(*current_left)) continue;
      return Shape{Node::branch(current_left->root, r->root)};
    }
  }
};

ShapeStream::ShapeStream(int n, std::optional<int> s_filter) : s_filter_(s_filter) {
  if (n < 1) throw std::domain_error("ShapeStream: n must be >= 1");
  if (s_filter && *s_filter < 0)
    throw std::domain_error("ShapeStream: s_filter must be >= 0");
  impl_ = std::make_unique<Impl>(n);
}

ShapeStream::ShapeStream(ShapeStream&&) noexcept = default;
ShapeStream& ShapeStream::operator=(ShapeStream&&) noexcept = default;
ShapeStream::~ShapeStream() = default;

std::optional<Shape> ShapeStream::next() {
  for (;;) {
    auto s = impl_->next_raw();
    if (!s) return std::nullopt;
    if (!s_filter_ || s_node_count(*s) == *s_filter_) return s;
  }
}

std::vector<Shape> all_shapes(int n, std::optional<int> s_filter) {
  ShapeStream stream(n, s_filter);
  std::vector<Shape> out;
  while (auto s = stream.next()) out.push_back(std::move(*s));
  return out;
}

struct ClassStream::Impl {
  std::vector<std::string> labels;
  std::optional<ShapeStream> remaining_shapes;  // all-shapes mode only
  std::optional<Shape> pending_shape;
  std::vector<NodePtr> buffer;
  std::size_t pos = 0;

  // Every assignment of labels to the shape, deduplicated by canonical form,
  // sorted by serialized text.
  void fill_buffer(const Shape& shape) {
    buffer.clear();
    pos = 0;
    int n = static_cast<int>(labels.size());
    std::map<std::string, NodePtr> reps;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
      int k = 0;
      NodePtr canon = canonical_labeled(assign_labels(shape.root, labels, perm, k));
      reps.emplace(serialize(canon), canon);
    } while (std::next_permutation(perm.begin(), perm.end()));
    buffer.reserve(reps.size());
    for (auto& [text, tree] : reps) buffer.push_back(std::move(tree));
  }
};

ClassStream::ClassStream(const Shape& shape, std::vector<std::string> labels) {
  int n = shape.root->leaf_count();
  check_labels(labels, n, "ClassStream");
  if (n > kMaxOracleShapeN) throw std::domain_error("ClassStream: n exceeds cap");
  impl_ = std::make_unique<Impl>();
  impl_->labels = std::move(labels);
  impl_->pending_shape = canonical_shape(shape);
}

ClassStream::ClassStream(int n, std::vector<std::string> labels) {
  check_labels(labels, n, "ClassStream");
  if (n > kMaxOracleTotalN) throw std::domain_error("ClassStream: n exceeds cap");
  impl_ = std::make_unique<Impl>();
  impl_->labels = std::move(labels);
  impl_->remaining_shapes.emplace(n);
}

ClassStream::ClassStream(ClassStream&&) noexcept = default;
ClassStream& ClassStream::operator=(ClassStream&&) noexcept = default;
ClassStream::~ClassStream() = default;

std::optional<NodePtr> ClassStream::next() {
  auto& im = *impl_;
  for (;;) {
    if (im.pos < im.buffer.size()) return im.buffer[im.pos++];
    if (im.pending_shape) {
      im.fill_buffer(*im.pending_shape);
      im.pending_shape.reset();
      continue;
    }
    if (im.remaining_shapes) {
      auto s = im.remaining_shapes->next();
      if (!s) return std::nullopt;
      im.fill_buffer(*s);
      continue;
    }
    return std::nullopt;
  }
}

BigCount oracle_class_count(const Shape& shape, std::span<const std::string> labels) {
  int n = shape.root->leaf_count();
  check_labels(labels, n, "oracle_class_count");
  if (n > kMaxOracleShapeN) throw std::domain_error("oracle_class_count: n exceeds cap");
  return class_count_over_shapes({shape.root}, labels, /*parallel=*/true);
}

BigCount oracle_class_count_serial(const Shape& shape, std::span<const std::string> labels) {
  int n = shape.root->leaf_count();
  check_labels(labels, n, "oracle_class_count");
  if (n > kMaxOracleShapeN) throw std::domain_error("oracle_class_count: n exceeds cap");
  return class_count_over_shapes({shape.root}, labels, /*parallel=*/false);
}

BigCount oracle_total_count(int n, std::span<const std::string> labels) {
  check_labels(labels, n, "oracle_total_count");
  if (n > kMaxOracleTotalN) throw std::domain_error("oracle_total_count: n exceeds cap");
  return class_count_over_shapes(plane_shapes(n), labels, /*parallel=*/true);
}

BigCount oracle_total_count_serial(int n, std::span<const std::string> labels) {
  check_labels(labels, n, "oracle_total_count");
  if (n > kMaxOracleTotalN) throw std::domain_error("oracle_total_count: n exceeds cap");
  return class_count_over_shapes(plane_shapes(n), labels, /*parallel=*/false);
}

}  // namespace sumtrees
