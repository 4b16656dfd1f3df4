#pragma once

#include <utility>

#include "qroof/channel.hpp"
#include "qroof/roof_oracle.hpp"

namespace qroof {

/// xi(x) = H((1-y)/2, (1+y)/2) with y = sqrt(1 - x^2). Throws DomainError for |x| > 1.
double xi(double x, double base = 2.0);

/// Closed-form second derivative of xi in nats; +infinity at x = 0.
double xi_second_derivative(double x);

struct ConvexityCertificate {
  double max_violation = 0.0;   // max |central difference - closed form|
  double min_closed_form = 0.0;
};

/// Compares the closed form of xi'' against central differences (h = 1e-4) on n grid
/// points of [-0.99, 0.99] with |x| >= 0.01 removed.
ConvexityCertificate xi_convexity_certificate(int n);

/// (xi(C), C log_base 2): lower and upper bounds on the entanglement entropy.
std::pair<double, double> entanglement_bounds(const QubitMap& m, const State& s, double base = 2.0);

struct EntanglementResult {
  double value = 0.0;
  double concurrence = 0.0;
  /// True when s is a certified flat roof point of the concurrence and value = xi(C).
  bool closed_form = false;
  /// Whether the optimal decomposition found has equal member values.
  bool flat = false;
  Decomposition decomposition;
  std::array<double, 3> best_by_length{};
};

EntanglementResult entanglement_detail(const QubitMap& m, const State& s, double base = 2.0,
                                       const Budget& budget = {});
double entanglement(const QubitMap& m, const State& s, double base = 2.0, const Budget& budget = {});

struct BifurcationBetas {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta_c = 0.0;
  bool orientation_flipped = false;

  /// beta2 <= beta1 <= beta_c within `slack`.
  bool ordered(double slack = 1e-9) const {
    return beta2 <= beta1 + slack && beta1 <= beta_c + slack;
  }
};

/// Closed-form phase boundaries of the axial family at fixed (alpha, gamma).
/// Throws DegenerateFamily when alpha = gamma or alpha + gamma = 1.
BifurcationBetas bifurcation_betas(double alpha, double gamma);

/// beta1^2 and beta2^2 in the oriented coordinates x = 2 alpha - 1, y = 2 gamma - 1.
double beta1_sq(double x, double y);
double beta2_sq(double x, double y);
/// The same bracketed expression for beta1^2 without rationalization (loses accuracy
/// near x = 0; kept for cross-checking).
double beta1_sq_unrationalized(double x, double y);

/// Independent numerical boundaries: roots in beta of the leading phi^2 coefficient of
/// the difference between competing decompositions near the poles (phi step 0.05,
/// Richardson refined).
double beta1_numeric(double alpha, double gamma);
double beta2_numeric(double alpha, double gamma);

enum class PhaseLabel { Ia, Ib, II, III, DegenerateUnital, DegeneratePlanar };

const char* to_string(PhaseLabel p);

/// Throws NotPositive for parameters outside the positive region.
PhaseLabel classify_phase(const AxialParams& p);

}  // namespace qroof
