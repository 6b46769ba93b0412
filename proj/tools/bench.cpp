// Times the serial reference implementations against the OpenMP kernels.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "sumtrees/core.hpp"
#include "sumtrees/floateval.hpp"
#include "sumtrees/generate.hpp"

using namespace sumtrees;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  auto end = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(end - start).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s serial %8.1f ms   openmp %8.1f ms   speedup %.2fx\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  {
    auto labels = default_labels(8);
    Shape shape = shape_of(pairwise(labels));
    BigCount serial_result, parallel_result;
    double ts = time_ms([&] { serial_result = oracle_class_count_serial(shape, labels); });
    double tp = time_ms([&] { parallel_result = oracle_class_count(shape, labels); });
    if (serial_result != parallel_result) {
      std::printf("MISMATCH in oracle_class_count\n");
      return 1;
    }
    report("oracle_class_count n=8", ts, tp);
  }

  {
    auto labels = default_labels(7);
    BigCount serial_result, parallel_result;
    double ts = time_ms([&] { serial_result = oracle_total_count_serial(7, labels); });
    double tp = time_ms([&] { parallel_result = oracle_total_count(7, labels); });
    if (serial_result != parallel_result) {
      std::printf("MISMATCH in oracle_total_count\n");
      return 1;
    }
    report("oracle_total_count n=7", ts, tp);
  }

  {
    Binding b = Binding::from_text(
        "a=1\nb=1e16\nc=-1e16\nd=3.5\ne=-0.125\nf=1e-8\ng=42");
    SurveyReport rs, rp;
    double ts = time_ms([&] { rs = survey_serial(7, b, Precision::binary64, Selector::all); });
    double tp = time_ms([&] { rp = survey(7, b, Precision::binary64, Selector::all); });
    if (rs.distinct != rp.distinct || rs.max_abs_error != rp.max_abs_error ||
        rs.argmax_tree != rp.argmax_tree) {
      std::printf("MISMATCH in survey\n");
      return 1;
    }
    report("survey all n=7", ts, tp);
  }

  return 0;
}
