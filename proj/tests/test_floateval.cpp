#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "fp_oracle.hpp"
#include "sumtrees/floateval.hpp"
#include "sumtrees/generate.hpp"
#include "test_util.hpp"

using namespace sumtrees;
using namespace sumtrees::testutil;

namespace {

Binding big_small3() {
  return Binding::from_text("a = 1\nb = 1e16\nc = -1e16\n");
}

std::string hex_literal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

// Random binding with exactly representable literals in both formats.
Binding random_binding(std::mt19937_64& rng, std::span<const std::string> labels) {
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> exp(-30, 30);
  Binding b;
  for (const auto& l : labels) {
    float v = static_cast<float>(std::ldexp(mant(rng), exp(rng)));
    b.set(l, hex_literal(static_cast<double>(v)));
  }
  return b;
}

}  // namespace

TEST_CASE("order determines the rounded result on the motivating inputs") {
  Binding b = big_small3();

  auto left = eval(parse("((a+b)+c)"), b, Precision::binary64);
  CHECK(left.rounded == 0.0);
  CHECK(left.exact == 1);
  CHECK(left.abs_error == 1);
  CHECK(left.relative_error == doctest::Approx(1.0));

  auto right = eval(parse("(a+(b+c))"), b, Precision::binary64);
  CHECK(right.rounded == 1.0);
  CHECK(right.abs_error == 0);
  CHECK(right.relative_error == 0.0);

  Binding zeros = Binding::from_text("a = 0\nb = 0\nc = 0\n");
  auto z = eval(parse("((a+b)+c)"), zeros, Precision::binary64);
  CHECK(z.rounded == 0.0);
  CHECK(z.exact == 0);
  CHECK(z.relative_error == 0.0);
}

TEST_CASE("binary32 literals are rounded once, not through double") {
  // This decimal rounds differently via double than directly to float.
  Binding b = Binding::from_text("a = 1.0000000596046448e0\nb = 0\n");
  float direct = std::strtof("1.0000000596046448e0", nullptr);
  auto r = eval(parse("(a+b)"), b, Precision::binary32);
  CHECK(static_cast<float>(r.rounded) == direct);
  CHECK(bit_pattern(r.rounded, Precision::binary32) ==
        bit_pattern(static_cast<double>(direct), Precision::binary32));
}

TEST_CASE("evaluation matches the correctly rounded oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto labels = default_labels(n);
    Binding b = random_binding(rng, labels);
    NodePtr t = random_tree(rng, labels);
    for (Precision p : {Precision::binary32, Precision::binary64}) {
      double got = eval(t, b, p).rounded;
      double want = oracle_eval(t, b, p);
      CHECK(bit_pattern(got, p) == bit_pattern(want, p));
    }
  }
}

TEST_CASE("exact reference is the rational sum of rounded inputs") {
  Binding b = Binding::from_text("a = 0.1\nb = 0.2\nc = 0.3\n");
  auto r = eval(parse("((a+b)+c)"), b, Precision::binary64);
  mpq_class want = mpq_class(0.1) + mpq_class(0.2) + mpq_class(0.3);
  CHECK(r.exact == want);
  CHECK(r.abs_error == abs(mpq_class(r.rounded) - want));
}

TEST_CASE("compensated_sum stays within one ulp on the classic case") {
  std::vector<double> values(10000, 0.1);
  double s32 = compensated_sum(values, Precision::binary32);
  mpq_class exact32 = mpq_class(static_cast<double>(0.1f)) * 10000;
  double ulp32 = static_cast<double>(std::nextafterf(static_cast<float>(s32), INFINITY) -
                                     static_cast<float>(s32));
  CHECK(abs(mpq_class(s32) - exact32) <= mpq_class(ulp32));

  double s64 = compensated_sum(values, Precision::binary64);
  mpq_class exact64 = mpq_class(0.1) * 10000;
  double ulp64 = std::nextafter(s64, INFINITY) - s64;
  CHECK(abs(mpq_class(s64) - exact64) <= mpq_class(ulp64));

  CHECK(compensated_sum({}, Precision::binary64) == 0.0);
}

TEST_CASE("survey separates the three classes on three summands") {
  auto rep = survey(3, big_small3(), Precision::binary64, Selector::all);
  CHECK(rep.classes == 3);
  CHECK(rep.distinct == 2);
  CHECK(rep.min_abs_error == 0);
  CHECK(rep.max_abs_error == 1);
  CHECK(rep.argmin_tree == "(a+(b+c))");
  CHECK(rep.argmax_tree == "(b+(a+c))");  // error tie against (c+(a+b)), text order
}

TEST_CASE("survey over the ladder shape covers n!/2 classes") {
  Binding b = Binding::from_text("a = 0.1\nb = 0.2\nc = 0.3\nd = 0.4\n");
  auto rep = survey(4, b, Precision::binary64, Selector::ladder);
  CHECK(rep.classes == count_ladder(4));
  CHECK(rep.classes == 12);
  CHECK(rep.distinct >= 1);
  CHECK(rep.min_abs_error <= rep.mean_abs_error);
  CHECK(rep.mean_abs_error <= rep.max_abs_error);
}

TEST_CASE("two summands round within half an ulp") {
  std::mt19937_64 rng(9);
  auto labels = default_labels(2);
  for (int trial = 0; trial < 200; ++trial) {
    Binding b = random_binding(rng, labels);
    auto rep = survey(2, b, Precision::binary64, Selector::all);
    CHECK(rep.classes == 1);
    auto r = eval(parse("(a+b)"), b, Precision::binary64);
    if (r.rounded != 0.0) {
      double ulp = std::abs(std::nextafter(r.rounded, INFINITY) - r.rounded);
      CHECK(r.abs_error * 2 <= mpq_class(ulp));
    }
  }
}

TEST_CASE("parallel survey equals the serial reference") {
  std::mt19937_64 rng(77);
  for (int n : {3, 4, 5, 6}) {
    auto labels = default_labels(n);
    Binding b = random_binding(rng, labels);
    for (Precision p : {Precision::binary32, Precision::binary64}) {
      auto par = survey(n, b, p, Selector::all);
      auto ser = survey_serial(n, b, p, Selector::all);
      CHECK(par.classes == ser.classes);
      CHECK(par.distinct == ser.distinct);
      CHECK(par.min_abs_error == ser.min_abs_error);
      CHECK(par.max_abs_error == ser.max_abs_error);
      CHECK(par.mean_abs_error == ser.mean_abs_error);
      CHECK(par.argmin_tree == ser.argmin_tree);
      CHECK(par.argmax_tree == ser.argmax_tree);
    }
  }
}

TEST_CASE("survey single_shape selector") {
  auto labels = default_labels(4);
  std::mt19937_64 rng(5);
  Binding b = random_binding(rng, labels);
  Shape sh = shape_of(pairwise(labels));
  auto rep = survey(4, b, Precision::binary64, Selector::single_shape, &sh);
  CHECK(rep.classes == 3);
  CHECK_THROWS_AS(survey(4, b, Precision::binary64, Selector::single_shape, nullptr),
                  EvalError);
}

TEST_CASE("swap invariance of the rounded value") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto labels = default_labels(n);
    Binding b = random_binding(rng, labels);
    NodePtr t = random_tree(rng, labels);
    CHECK(swap_invariance_check(t, b, Precision::binary64, 20, rng()));
    CHECK(swap_invariance_check(t, b, Precision::binary32, 20, rng()));
  }
}

TEST_CASE("error paths") {
  Binding b = Binding::from_text("a = 1\n");
  CHECK_THROWS_AS(eval(parse("(a+b)"), b, Precision::binary64), EvalError);

  CHECK_THROWS_AS(Binding::from_text("a = \n"), EvalError);
  CHECK_THROWS_AS(Binding::from_text("a = bogus\n"), EvalError);
  CHECK_THROWS_AS(Binding::from_text("a = inf\n"), EvalError);
  CHECK_THROWS_AS(Binding::from_text("stray line\n"), EvalError);
  CHECK_THROWS_AS(Binding::from_file("/nonexistent/bindings.txt"), EvalError);

  Binding huge = Binding::from_text("a = 3e38\nb = 3e38\n");
  CHECK_THROWS_AS(eval(parse("(a+b)"), huge, Precision::binary32), EvalError);
  CHECK_NOTHROW(eval(parse("(a+b)"), huge, Precision::binary64));

  Binding wrong = Binding::from_text("a = 1\nb = 2\n");
  CHECK_THROWS_AS(survey(3, wrong, Precision::binary64, Selector::all), EvalError);
}

TEST_CASE("binding parsing accepts comments, blanks and hex floats") {
  Binding b = Binding::from_text(
      "# header comment\n"
      "\n"
      "a = 0x1.8p+1   # three\n"
      "b = -2.5e-1\n");
  CHECK(b.has("a"));
  CHECK_FALSE(b.has("z"));
  CHECK(b.value64("a") == 3.0);
  CHECK(b.value32("a") == 3.0f);
  CHECK(b.value64("b") == -0.25);
  CHECK(b.labels() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("bit_pattern and hex_float round-trip") {
  CHECK(bit_pattern(0.0, Precision::binary64) == 0);
  CHECK(bit_pattern(-0.0, Precision::binary64) != 0);
  CHECK(bit_pattern(1.0f, Precision::binary32) == 0x3f800000u);
  CHECK(hex_float(0.0, Precision::binary64) == "0x0p+0");
  CHECK(std::strtod(hex_float(0.1, Precision::binary64).c_str(), nullptr) == 0.1);
  float f = 0.1f;
  CHECK(std::strtof(hex_float(f, Precision::binary32).c_str(), nullptr) == f);
}
