#pragma once

#include <utility>
#include <vector>

#include "qroof/channel.hpp"
#include "qroof/entanglement.hpp"
#include "qroof/roof_oracle.hpp"

namespace qroof {

/// chi*(s) = S(Phi(s)) - E(s), in bits.
double holevo_quantity(const QubitMap& m, const State& s, const Budget& budget = {});

struct CapacityOptions {
  Budget budget;            // forwarded to every entanglement evaluation
  double z_tolerance = 1e-8;
  int multistart = 32;      // Fibonacci ball points for general maps
  int refine = 4;           // best multistart points refined by simplex descent
  int nm_iterations = 80;
};

struct CapacityResult {
  double chi = 0.0;  // bits
  State argmax_state;
  /// Sampled (z, chi*) pairs along the axis when the search was one-dimensional.
  std::vector<std::pair<double, double>> profile;
};

/// One-shot product-state capacity: closed form for unital maps, a search along the
/// symmetry axis for axial maps, multistart over the ball otherwise.
CapacityResult hsw_capacity(const QubitMap& m, const CapacityOptions& options = {});

/// The axial and general searches, callable for any map (used for cross-checks).
CapacityResult capacity_axis_search(const QubitMap& m, const CapacityOptions& options = {});
CapacityResult capacity_multistart(const QubitMap& m, const CapacityOptions& options = {});

/// 1 - H((1 + sqrt(w))/2, (1 - sqrt(w))/2) for a unital map with critical value w.
double unital_capacity(double w);

/// Closed-form chi* of amplitude damping on the axis state z (bits), and its maximum
/// over z.
double amplitude_damping_holevo(double alpha, double z);
std::pair<double, double> amplitude_damping_capacity(double alpha);

struct SweepPoint {
  double beta = 0.0;
  double chi = 0.0;
  double argmax_z = 0.0;
  PhaseLabel phase = PhaseLabel::Ia;
};

/// Capacity of axial(alpha, beta, gamma) for each beta; parallel over the grid,
/// assembled by index. Throws NotPositive if any beta leaves the positive region.
std::vector<SweepPoint> capacity_sweep(double alpha, double gamma, const std::vector<double>& betas,
                                       const CapacityOptions& options = {},
                                       Execution exec = Execution::Parallel);

}  // namespace qroof
