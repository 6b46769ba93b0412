// IEEE-754 evaluation of summation trees against an exact rational reference.
//
// Rounding model: each input literal is rounded once into the target format,
// then every interior node performs a single correctly rounded addition in
// that format.  binary32 evaluation adds in float directly, never through
// double.  The exact reference is the rational sum of the post-rounding
// inputs, so the reported error is purely summation-order error.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>

#include "sumtrees/core.hpp"
#include "sumtrees/enumerate.hpp"

namespace sumtrees {

enum class Precision { binary32, binary64 };

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Maps leaf labels to numeric literals (decimal or C99 hex-float).  Literals
// are kept as text and rounded into the requested format on use, so binary32
// values are parsed directly to float with no intermediate double rounding.
class Binding {
public:
  static Binding from_file(const std::filesystem::path& path);
  // One "label = value" entry per line; '#' starts a comment.
  static Binding from_text(std::string_view text);

  void set(const std::string& label, const std::string& literal);
  bool has(const std::string& label) const;
  double value64(const std::string& label) const;
  float value32(const std::string& label) const;
  std::vector<std::string> labels() const;  // sorted

private:
  std::map<std::string, std::string> literals_;
};

struct EvalReport {
  std::string tree;
  Precision precision;
  double rounded;        // the binary32 result is widened exactly
  mpq_class exact;       // rational sum of the post-rounding inputs
  mpq_class abs_error;   // |rounded - exact|, exact
  double relative_error; // 0 when exact == 0 == rounded, inf when exact == 0 only
};

EvalReport eval(const NodePtr& tree, const Binding& binding, Precision precision);

// Kahan compensated summation in the given precision; reference line only.
double compensated_sum(std::span<const double> values, Precision precision);

enum class Selector { all, ladder, pairwise, single_shape };

struct SurveyReport {
  int n = 0;
  Selector selector = Selector::all;
  BigCount classes;          // evaluated class representatives
  std::size_t distinct = 0;  // distinct rounded bit patterns
  mpq_class min_abs_error;
  mpq_class max_abs_error;
  mpq_class mean_abs_error;
  std::string argmin_tree;
  std::string argmax_tree;
};

// Evaluates one representative per equivalence class.  The parallel build
// farms representatives to OpenMP threads and reduces deterministically
// (error ties broken by serialized text); the serial build is the reference.
SurveyReport survey(int n, const Binding& binding, Precision precision,
                    Selector selector, const Shape* single_shape = nullptr);
SurveyReport survey_serial(int n, const Binding& binding, Precision precision,
                           Selector selector, const Shape* single_shape = nullptr);

// True iff `trials` random child-swap sequences all evaluate bit-identically
// to the original tree.
bool swap_invariance_check(const NodePtr& tree, const Binding& binding,
                           Precision precision, int trials, std::uint64_t seed = 1);

std::uint64_t bit_pattern(double value, Precision precision);
std::string hex_float(double value, Precision precision);

}  // namespace sumtrees
