#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "qroof/capacity.hpp"
#include "qroof/channel.hpp"
#include "qroof/parallel.hpp"
#include "qroof/roof_oracle.hpp"

using namespace qroof;

namespace {

// Best of `repeat` wall-clock runs, in milliseconds.
double time_ms(int repeat, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

int mismatches = 0;

void row(const char* name, double serial, double parallel, bool identical) {
  if (!identical) ++mismatches;
  std::printf("%-22s %12.2f %12.2f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
              identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial reference against OpenMP kernels"};
  int threads = 0, repeat = 3, samples = 20000;
  app.add_option("--threads", threads, "OpenMP threads (default: runtime setting)");
  app.add_option("--repeat", repeat, "Timed repetitions per kernel (best is reported)")->check(CLI::PositiveNumber);
  app.add_option("--samples", samples, "Samples per kernel call")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  configure_threads_from_env();
  if (threads > 0) omp_set_num_threads(threads);

  const QubitMap m = axial({0.8, 0.2127, 0.4});
  const State s(0.1, 0.0, 0.2);
  const PureFunctional g = output_entropy_functional(m);

  std::printf("threads: %d\n", max_threads());
  std::printf("%-22s %12s %12s %9s\n", "kernel", "serial ms", "parallel ms", "speedup");

  {
    const auto dirs = fibonacci_sphere(samples);
    std::vector<double> a(dirs.size()), b(dirs.size());
    const double ts = time_ms(repeat, [&] { evaluate_chords(s, g, dirs, a, Execution::Serial); });
    const double tp = time_ms(repeat, [&] { evaluate_chords(s, g, dirs, b, Execution::Parallel); });
    row("chords", ts, tp, a == b);
  }
  {
    std::vector<double> a(samples), b(samples);
    const double ts = time_ms(repeat, [&] { evaluate_random_triangles(s, g, 1, a, Execution::Serial); });
    const double tp = time_ms(repeat, [&] { evaluate_random_triangles(s, g, 1, b, Execution::Parallel); });
    row("triangles", ts, tp, a == b);
  }
  {
    std::vector<double> a(samples), b(samples);
    const double ts = time_ms(repeat, [&] { evaluate_random_tetrahedra(s, g, 1, a, Execution::Serial); });
    const double tp = time_ms(repeat, [&] { evaluate_random_tetrahedra(s, g, 1, b, Execution::Parallel); });
    row("tetrahedra", ts, tp, a == b);
  }
  {
    Budget serial, parallel;
    serial.execution = Execution::Serial;
    RoofResult a, b;
    const double ts = time_ms(repeat, [&] { a = minimize_roof(s, g, 4, serial); });
    const double tp = time_ms(repeat, [&] { b = minimize_roof(s, g, 4, parallel); });
    row("minimize_roof (m=4)", ts, tp, a.value == b.value && a.best_by_length == b.best_by_length);
  }
  {
    const std::vector<double> betas{0.0, 0.1, 0.2, 0.21, 0.215, 0.22, 0.3, 0.5, 0.7, 0.9};
    std::vector<SweepPoint> a, b;
    const double ts = time_ms(1, [&] { a = capacity_sweep(0.8, 0.4, betas, {}, Execution::Serial); });
    const double tp = time_ms(1, [&] { b = capacity_sweep(0.8, 0.4, betas, {}, Execution::Parallel); });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].chi == b[i].chi;
    row("capacity_sweep (10)", ts, tp, same);
  }
  return mismatches == 0 ? 0 : 1;
}
