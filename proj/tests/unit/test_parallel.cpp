#include <doctest.h>

#include <cstdlib>
#include <set>
#include <vector>

#include <omp.h>

#include "../support/random_maps.hpp"
#include "qroof/capacity.hpp"
#include "qroof/parallel.hpp"
#include "qroof/roof_oracle.hpp"

using namespace qroof;

namespace {

// Forces a real team even on single-core machines so the parallel path is exercised.
struct ThreadScope {
  int saved = omp_get_max_threads();
  explicit ThreadScope(int n) { omp_set_num_threads(n); }
  ~ThreadScope() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_SUITE("parallel") {
  TEST_CASE("counter generator is reproducible and stream separated") {
    CounterRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t x = a.next();
      CHECK(x == b.next());
      seen.insert(x);
      seen.insert(c.next());
      seen.insert(d.next());
    }
    CHECK(seen.size() == 3000);
    CounterRng u(1, 1);
    double mean = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double x = u.uniform();
      REQUIRE(x >= 0.0);
      REQUIRE(x < 1.0);
      mean += x;
    }
    CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));
  }

  TEST_CASE("thread cap from the environment") {
    ThreadScope scope(1);
    ::setenv("QROOF_THREADS", "3", 1);
    configure_threads_from_env();
    CHECK(max_threads() == 3);
    ::setenv("QROOF_THREADS", "junk", 1);
    configure_threads_from_env();
    CHECK(max_threads() == 3);
    ::unsetenv("QROOF_THREADS");
  }

  TEST_CASE("kernels match the serial reference with a real thread team") {
    ThreadScope scope(4);
    testing::Rng rng(401);
    for (int k = 0; k < 5; ++k) {
      const QubitMap m = testing::random_positive_map(rng);
      const State s = testing::random_state(rng);
      const PureFunctional g = output_entropy_functional(m);
      const auto dirs = fibonacci_sphere(500);
      std::vector<double> a(dirs.size()), b(dirs.size());
      evaluate_chords(s, g, dirs, a, Execution::Serial);
      evaluate_chords(s, g, dirs, b, Execution::Parallel);
      CHECK(a == b);
      std::vector<double> t1(3000), t2(3000);
      evaluate_random_triangles(s, g, 99, t1, Execution::Serial);
      evaluate_random_triangles(s, g, 99, t2, Execution::Parallel);
      CHECK(t1 == t2);
      std::vector<double> q1(800), q2(800);
      evaluate_random_tetrahedra(s, g, 99, q1, Execution::Serial);
      evaluate_random_tetrahedra(s, g, 99, q2, Execution::Parallel);
      CHECK(q1 == q2);
      CHECK(indexed_argmin(t1) == indexed_argmin(t2));
    }
  }

  TEST_CASE("minimizer and sweep are bit-identical across modes") {
    ThreadScope scope(4);
    testing::Rng rng(409);
    Budget serial, parallel;
    serial.execution = Execution::Serial;
    serial.direction_grid = parallel.direction_grid = 500;
    serial.triangles = parallel.triangles = 2000;
    serial.tetrahedra = parallel.tetrahedra = 500;
    for (int k = 0; k < 4; ++k) {
      const QubitMap m = testing::random_positive_map(rng);
      const State s = testing::random_state(rng);
      const RoofResult a = minimize_roof(s, output_entropy_functional(m), 4, serial);
      const RoofResult b = minimize_roof(s, output_entropy_functional(m), 4, parallel);
      CHECK(a.value == b.value);
      CHECK(a.best_by_length == b.best_by_length);
      REQUIRE(a.decomposition.size() == b.decomposition.size());
      for (std::size_t i = 0; i < a.decomposition.size(); ++i) {
        CHECK(a.decomposition.members[i].weight == b.decomposition.members[i].weight);
        CHECK(a.decomposition.members[i].direction == b.decomposition.members[i].direction);
      }
    }
    const std::vector<double> betas{0.1, 0.22, 0.4, 0.7};
    const auto x = capacity_sweep(0.8, 0.4, betas, {}, Execution::Serial);
    const auto y = capacity_sweep(0.8, 0.4, betas, {}, Execution::Parallel);
    for (std::size_t i = 0; i < betas.size(); ++i) {
      CHECK(x[i].chi == y[i].chi);
      CHECK(x[i].phase == y[i].phase);
    }
  }

  TEST_CASE("argmin breaks ties by index") {
    const std::vector<double> v{3.0, 1.0, 2.0, 1.0};
    CHECK(indexed_argmin(v) == 1);
  }
}
