#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "qroof/bloch.hpp"
#include "qroof/channel.hpp"
#include "qroof/parallel.hpp"

namespace qroof {

/// g(pi) for a pure state given by its Bloch direction. Must be safe to call
/// concurrently.
using PureFunctional = std::function<double(const Vec3&)>;

struct Member {
  double weight = 0.0;
  Vec3 direction = Vec3::UnitZ();
};

/// Convex combination of pure states.
struct Decomposition {
  std::vector<Member> members;

  std::size_t size() const { return members.size(); }
  double total_weight() const;
  /// sum_j w_j (1, n_j)
  MinkowskiVector barycenter() const;
  double value(const PureFunctional& g) const;
  /// max_j g(n_j) - min_j g(n_j) over members with non-negligible weight.
  double spread(const PureFunctional& g) const;
};

/// The chord through `s` along `direction`, as a length-2 decomposition.
/// Throws PureInput when s is on the sphere.
Decomposition length2_family(const State& s, const Vec3& direction);

struct Budget {
  std::uint64_t seed = 0x5EED;
  int direction_grid = 2000;   // Fibonacci directions for length-2 chords
  int nm_iterations = 200;     // simplex refinement on (theta, phi)
  int nm_iterations_long = 600;  // refinement on triangle / tetrahedron parameters
  int triangles = 10000;
  int tetrahedra = 2000;
  int refine_top = 4;          // best random samples refined per stage
  Execution execution = Execution::Parallel;
  /// Extra starting decompositions (any length 2..4) refined alongside the samples.
  std::vector<Decomposition> seeds;
};

struct RoofResult {
  double value = std::numeric_limits<double>::infinity();
  Decomposition decomposition;
  bool flat = false;
  double spread = 0.0;
  /// Best value found by the exact-length-m parametrization, m = 2, 3, 4
  /// (infinity when that length was not searched).
  std::array<double, 3> best_by_length{std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity()};
};

/// Brute-force minimum of sum_j p_j g(pi_j) over decompositions of `s` with at most
/// `max_length` (2..4) members. Deterministic given budget.seed for either execution mode.
RoofResult minimize_roof(const State& s, const PureFunctional& g, int max_length, const Budget& budget = {});

/// Whether the best length-2 concurrence decomposition found is flat (tol::flat_roof).
/// The search is seeded with the analytic leaf through `s`.
bool leaf_scan(const QubitMap& m, const State& s, const Budget& budget = {});

/// Generic form: flatness of the best decomposition of `g` with at most `max_length` members.
bool leaf_scan(const State& s, const PureFunctional& g, int max_length, const Budget& budget = {});

/// Leaf chords of the concurrence foliation through `s` (one per flat direction, or the
/// chord through the apex).
std::vector<Decomposition> concurrence_leaf_seeds(const QubitMap& m, const State& s);

PureFunctional concurrence_functional(const QubitMap& m);
/// S(Phi(pi)) in the given log base.
PureFunctional output_entropy_functional(const QubitMap& m, double base = 2.0);

/// Quasi-uniform directions on the unit sphere.
std::vector<Vec3> fibonacci_sphere(int n);

// Data-parallel kernels behind minimize_roof. `out[i]` is the objective for sample i
// (+infinity when infeasible); serial and parallel modes produce identical output.
void evaluate_chords(const State& s, const PureFunctional& g, std::span<const Vec3> directions,
                     std::span<double> out, Execution exec);
void evaluate_random_triangles(const State& s, const PureFunctional& g, std::uint64_t seed,
                               std::span<double> out, Execution exec);
void evaluate_random_tetrahedra(const State& s, const PureFunctional& g, std::uint64_t seed,
                                std::span<double> out, Execution exec);

/// Index of the minimum, ties broken by the lower index.
std::size_t indexed_argmin(std::span<const double> values);

}  // namespace qroof
