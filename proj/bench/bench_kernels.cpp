// Timing of the behavior kernels.
//
//   bench_kernels [reps] [naive_max_n]
//
// naive_max_n defaults to 4; the dense evaluator takes about 30 s at n = 5.
//
// Prints one row per case: naive vs chain contraction for quantum chains,
// serial vs parallel chain contraction, and hidden-variable model evaluation.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "netlocal/evaluator.hpp"
#include "netlocal/hvmodels.hpp"
#include "netlocal/parallel.hpp"

using namespace netlocal;

namespace {

// Best wall time over reps, in milliseconds.
double time_ms(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double dt = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    best = dt < best ? dt : best;
  }
  return best;
}

void row(const std::string& name, double a, double b) {
  std::printf("%-34s %12.3f %12.3f %9.2fx\n", name.c_str(), a, b, b > 0.0 ? a / b : 0.0);
}

const char* kname(ScenarioKind k) { return k == ScenarioKind::P22 ? "p22" : "p14"; }

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  const int naive_max = argc > 2 ? std::clamp(std::atoi(argv[2]), 2, kNaiveMaxSources) : 4;
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  configure_threads_from_env();
  std::printf("threads %d, best of %d\n\n", max_threads(), reps);

  std::printf("%-34s %12s %12s %10s\n", "naive vs chain", "naive ms", "chain ms", "speedup");
  for (auto kind : {ScenarioKind::P22, ScenarioKind::P14})
    for (int n = 2; n <= naive_max; ++n) {
      const auto s = standard_scenario(n, kind, 0.9);
      const double a = time_ms(reps, [&] { evaluate_naive(s); });
      const double b = time_ms(reps, [&] { evaluate_chain(s, false); });
      row(std::string(kname(kind)) + " n=" + std::to_string(n), a, b);
    }

  std::printf("\n%-34s %12s %12s %10s\n", "chain serial vs parallel", "serial ms", "parallel ms", "speedup");
  for (auto kind : {ScenarioKind::P22, ScenarioKind::P14})
    for (int n : {6, 8, 10, 12}) {
      if (kind == ScenarioKind::P14 && n > 6) break;
      const auto s = standard_scenario(n, kind, 0.9);
      const double a = time_ms(reps, [&] { evaluate_chain(s, false); });
      const double b = time_ms(reps, [&] { evaluate_chain(s, true); });
      row(std::string(kname(kind)) + " n=" + std::to_string(n), a, b);
    }

  std::printf("\n%-34s %12s %12s %10s\n", "hidden-variable models", "serial ms", "parallel ms", "speedup");
  for (auto kind : {ScenarioKind::P22, ScenarioKind::P14})
    for (int n : {3, 4, 6}) {
      if (kind == ScenarioKind::P14 && n > 4) break;
      for (int K : {2, 4}) {
        const auto m = sample_random_model(n, K, kind, 1);
        const double a = time_ms(reps, [&] { behavior_of_model(m, false); });
        const double b = time_ms(reps, [&] { behavior_of_model(m, true); });
        row(std::string(kname(kind)) + " n=" + std::to_string(n) + " K=" + std::to_string(K), a, b);
      }
    }
  return 0;
}
