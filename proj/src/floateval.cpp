#include "sumtrees/floateval.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "sumtrees/generate.hpp"

namespace sumtrees {

namespace {

double parse_literal64(const std::string& label, const std::string& text) {
  const char* s = text.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0')
    throw EvalError("bad numeric literal for '" + label + "': " + text);
  if (!std::isfinite(v)) throw EvalError("non-finite value for '" + label + "'");
  return v;
}

float parse_literal32(const std::string& label, const std::string& text) {
  const char* s = text.c_str();
  char* end = nullptr;
  float v = std::strtof(s, &end);
  if (end == s || *end != '\0')
    throw EvalError("bad numeric literal for '" + label + "': " + text);
  if (!std::isfinite(v)) throw EvalError("non-finite value for '" + label + "'");
  return v;
}

template <typename Float>
Float eval_tree(const NodePtr& t, const Binding& b) {
  if (t->is_leaf()) {
    if constexpr (std::is_same_v<Float, float>)
      return b.value32(t->label());
    else
      return b.value64(t->label());
  }
  Float sum = eval_tree<Float>(t->left(), b) + eval_tree<Float>(t->right(), b);
  if (!std::isfinite(sum)) throw EvalError("overflow while evaluating " + serialize(t));
  return sum;
}

template <typename Float>
void exact_leaf_sum(const NodePtr& t, const Binding& b, mpq_class& acc) {
  if (t->is_leaf()) {
    Float v = eval_tree<Float>(t, b);
    acc += mpq_class(static_cast<double>(v));
    return;
  }
  exact_leaf_sum<Float>(t->left(), b, acc);
  exact_leaf_sum<Float>(t->right(), b, acc);
}

template <typename Float>
Float kahan(std::span<const double> values) {
  Float sum = 0, c = 0;
  for (double dv : values) {
    Float v = static_cast<Float>(dv);
    if (!std::isfinite(v)) throw EvalError("non-finite input to compensated_sum");
    Float y = v - c;
    Float t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  if (!std::isfinite(sum)) throw EvalError("overflow in compensated_sum");
  return sum;
}

struct SurveyAccum {
  BigCount classes = 0;
  std::set<std::uint64_t> patterns;
  std::optional<mpq_class> min_err, max_err;
  mpq_class err_sum = 0;
  std::string argmin, argmax;

  void add(const EvalReport& r) {
    classes += 1;
    patterns.insert(bit_pattern(r.rounded, r.precision));
    err_sum += r.abs_error;
    if (!min_err || r.abs_error < *min_err ||
        (r.abs_error == *min_err && r.tree < argmin)) {
      min_err = r.abs_error;
      argmin = r.tree;
    }
    if (!max_err || r.abs_error > *max_err ||
        (r.abs_error == *max_err && r.tree < argmax)) {
      max_err = r.abs_error;
      argmax = r.tree;
    }
  }

  void merge(const SurveyAccum& o) {
    classes += o.classes;
    patterns.insert(o.patterns.begin(), o.patterns.end());
    err_sum += o.err_sum;
    if (o.min_err && (!min_err || *o.min_err < *min_err ||
                      (*o.min_err == *min_err && o.argmin < argmin))) {
      min_err = o.min_err;
      argmin = o.argmin;
    }
    if (o.max_err && (!max_err || *o.max_err > *max_err ||
                      (*o.max_err == *max_err && o.argmax < argmax))) {
      max_err = o.max_err;
      argmax = o.argmax;
    }
  }
};

std::vector<NodePtr> survey_representatives(int n, const Binding& binding,
                                            Selector selector, const Shape* single_shape) {
  auto labels = binding.labels();
  if (static_cast<int>(labels.size()) != n)
    throw EvalError("binding labels do not match n");
  switch (selector) {
    case Selector::all: {
      ClassStream stream(n, labels);
      std::vector<NodePtr> out;
      while (auto t = stream.next()) out.push_back(std::move(*t));
      return out;
    }
    case Selector::ladder:
    case Selector::pairwise: {
      NodePtr t = selector == Selector::ladder ? ladder(labels) : pairwise(labels);
      ClassStream stream(shape_of(t), labels);
      std::vector<NodePtr> out;
      while (auto r = stream.next()) out.push_back(std::move(*r));
      return out;
    }
    case Selector::single_shape: {
      if (!single_shape) throw EvalError("single_shape selector requires a shape");
      ClassStream stream(*single_shape, labels);
      std::vector<NodePtr> out;
      while (auto r = stream.next()) out.push_back(std::move(*r));
      return out;
    }
  }
  throw EvalError("bad selector");
}

SurveyReport finish_report(int n, Selector selector, const SurveyAccum& acc) {
  SurveyReport rep;
  rep.n = n;
  rep.selector = selector;
  rep.classes = acc.classes;
  rep.distinct = acc.patterns.size();
  rep.min_abs_error = acc.min_err.value_or(mpq_class(0));
  rep.max_abs_error = acc.max_err.value_or(mpq_class(0));
  rep.mean_abs_error = acc.classes == 0 ? mpq_class(0)
                                        : acc.err_sum / mpq_class(acc.classes);
  rep.argmin_tree = acc.argmin;
  rep.argmax_tree = acc.argmax;
  return rep;
}

SurveyReport survey_impl(int n, const Binding& binding, Precision precision,
                         Selector selector, const Shape* single_shape, bool parallel) {
  std::vector<NodePtr> reps = survey_representatives(n, binding, selector, single_shape);
  SurveyAccum acc;
  if (!parallel) {
    for (const auto& t : reps) acc.add(eval(t, binding, precision));
    return finish_report(n, selector, acc);
  }
#pragma omp parallel
  {
    SurveyAccum local;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(reps.size()); ++i)
      local.add(eval(reps[static_cast<std::size_t>(i)], binding, precision));
#pragma omp critical
    acc.merge(local);
  }
  return finish_report(n, selector, acc);
}

}  // namespace

Binding Binding::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EvalError("cannot open binding file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

Binding Binding::from_text(std::string_view text) {
  Binding b;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw EvalError("bad binding line: " + line);
      continue;
    }
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string label = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (label.empty() || value.empty()) throw EvalError("bad binding line: " + line);
    b.set(label, value);
  }
  return b;
}

void Binding::set(const std::string& label, const std::string& literal) {
  parse_literal64(label, literal);  // validate eagerly
  literals_[label] = literal;
}

bool Binding::has(const std::string& label) const { return literals_.count(label) > 0; }

double Binding::value64(const std::string& label) const {
  auto it = literals_.find(label);
  if (it == literals_.end()) throw EvalError("unbound label: " + label);
  return parse_literal64(label, it->second);
}

float Binding::value32(const std::string& label) const {
  auto it = literals_.find(label);
  if (it == literals_.end()) throw EvalError("unbound label: " + label);
  return parse_literal32(label, it->second);
}

std::vector<std::string> Binding::labels() const {
  std::vector<std::string> out;
  out.reserve(literals_.size());
  for (const auto& [k, v] : literals_) out.push_back(k);
  return out;
}

EvalReport eval(const NodePtr& tree, const Binding& binding, Precision precision) {
  EvalReport rep;
  rep.tree = serialize(tree);
  rep.precision = precision;
  mpq_class exact = 0;
  if (precision == Precision::binary32) {
    rep.rounded = static_cast<double>(eval_tree<float>(tree, binding));
    exact_leaf_sum<float>(tree, binding, exact);
  } else {
    rep.rounded = eval_tree<double>(tree, binding);
    exact_leaf_sum<double>(tree, binding, exact);
  }
  rep.exact = exact;
  rep.abs_error = abs(mpq_class(rep.rounded) - exact);
  if (exact == 0)
    rep.relative_error = rep.rounded == 0.0 ? 0.0 : INFINITY;
  else
    rep.relative_error = std::abs(mpq_class(rep.abs_error / abs(exact)).get_d());
  return rep;
}

double compensated_sum(std::span<const double> values, Precision precision) {
  if (precision == Precision::binary32) return static_cast<double>(kahan<float>(values));
  return kahan<double>(values);
}

SurveyReport survey(int n, const Binding& binding, Precision precision,
                    Selector selector, const Shape* single_shape) {
  return survey_impl(n, binding, precision, selector, single_shape, /*parallel=*/true);
}

SurveyReport survey_serial(int n, const Binding& binding, Precision precision,
                           Selector selector, const Shape* single_shape) {
  return survey_impl(n, binding, precision, selector, single_shape, /*parallel=*/false);
}

bool swap_invariance_check(const NodePtr& tree, const Binding& binding,
                           Precision precision, int trials, std::uint64_t seed) {
  std::uint64_t reference = bit_pattern(eval(tree, binding, precision).rounded, precision);
  std::mt19937_64 rng(seed);
  int interior = interior_count(tree);
  if (interior == 0) return true;
  std::uniform_int_distribution<int> node_dist(0, interior - 1);
  std::uniform_int_distribution<int> len_dist(1, 2 * tree->leaf_count());
  for (int t = 0; t < trials; ++t) {
    NodePtr cur = tree;
    int swaps = len_dist(rng);
    for (int s = 0; s < swaps; ++s) cur = swap_children_at(cur, node_dist(rng));
    if (bit_pattern(eval(cur, binding, precision).rounded, precision) != reference)
      return false;
  }
  return true;
}

std::uint64_t bit_pattern(double value, Precision precision) {
  if (precision == Precision::binary32) {
    float f = static_cast<float>(value);
    std::uint32_t bits;
    std::memcpy(&bits, &f, sizeof bits);
    return bits;
  }
  std::uint64_t bits;
  std::memcpy(&bits, &value, sizeof bits);
  return bits;
}

std::string hex_float(double value, Precision precision) {
  char buf[64];
  if (precision == Precision::binary32)
    std::snprintf(buf, sizeof buf, "%a", static_cast<double>(static_cast<float>(value)));
  else
    std::snprintf(buf, sizeof buf, "%a", value);
  return buf;
}

}  // namespace sumtrees
