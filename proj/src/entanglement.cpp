#include "qroof/entanglement.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <limits>

#include "qroof/concurrence.hpp"
#include "qroof/errors.hpp"

namespace qroof {

namespace {

constexpr double kDegenerate = 1e-12;

/// a log(b) with the convention 0 log 0 = 0.
double xlog(double a, double b) { return a == 0.0 ? 0.0 : a * std::log(b); }

/// x + (x^2 - 1) artanh(x), by its series where the closed form cancels.
double bifurcation_d(double x) {
  if (std::abs(x) >= 1.0) return x;
  if (std::abs(x) < 1e-2) {
    double sum = 0.0, power = x;
    const double x2 = x * x;
    for (int k = 1; k <= 12; ++k) {
      power *= x2;
      sum += 2.0 * power / ((2.0 * k - 1.0) * (2.0 * k + 1.0));
    }
    return sum;
  }
  return x + (x * x - 1.0) * std::atanh(x);
}

struct Oriented {
  double alpha, gamma;
  bool flipped;
};

Oriented orient(double alpha, double gamma) {
  if (std::abs(alpha - gamma) < kDegenerate)
    throw DegenerateFamily("alpha = gamma: the channel is unital");
  if (std::abs(alpha + gamma - 1.0) < kDegenerate)
    throw DegenerateFamily("alpha + gamma = 1: the channel range is degenerate");
  if ((alpha - gamma) * (alpha + gamma - 1.0) < 0.0) return {gamma, alpha, true};
  return {alpha, gamma, false};
}

// Output entropy (nats) of the pure input at polar cosine c.
double pure_output_entropy(const Oriented& o, double beta, double c) {
  const double t = o.alpha - o.gamma, lambda = o.alpha + o.gamma - 1.0;
  const double z = t + lambda * c;
  return entropy_from_radius(std::sqrt(std::max(0.0, beta * beta * (1.0 - c * c) + z * z)), std::numbers::e);
}

/// Leading coefficient of f(h) ~ c h^order (even expansion), two Richardson levels from h0.
template <class F>
double leading_coefficient(F&& f, int order, double h0) {
  auto c = [&](double h) { return f(h) / std::pow(h, order); };
  const double c0 = c(h0), c1 = c(h0 / 2.0), c2 = c(h0 / 4.0);
  const double r1 = (4.0 * c1 - c0) / 3.0, r2 = (4.0 * c2 - c1) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

constexpr double kPhiStep = 0.05;

// Three-point decomposition through the north pole against the two-point one. The
// phi^2 terms of the two agree identically, so they first differ at phi^4.
double north_coefficient(const Oriented& o, double beta) {
  const double s_pole = pure_output_entropy(o, beta, 1.0);
  return leading_coefficient(
      [&](double phi) {
        const double c = std::cos(phi);
        return s_pole / 3.0 + 2.0 * pure_output_entropy(o, beta, c) / 3.0 -
               pure_output_entropy(o, beta, 1.0 / 3.0 + 2.0 * c / 3.0);
      },
      4, kPhiStep);
}

// Polar (axis) decomposition against the horizontal chord near the south pole.
double south_coefficient(const Oriented& o, double beta) {
  const double s_north = pure_output_entropy(o, beta, 1.0), s_south = pure_output_entropy(o, beta, -1.0);
  return leading_coefficient(
      [&](double e) {
        const double c = -std::cos(e);
        return 0.5 * (1.0 + c) * s_north + 0.5 * (1.0 - c) * s_south - pure_output_entropy(o, beta, c);
      },
      2, kPhiStep);
}

/// Largest root in (0, beta_c] of a coefficient function, by grid bracketing and bisection.
template <class F>
double largest_root(F&& f, double beta_c) {
  constexpr int kGrid = 200;
  double hi = beta_c, f_hi = f(hi);
  for (int k = kGrid - 1; k >= 1; --k) {
    const double lo = beta_c * k / kGrid;
    const double f_lo = f(lo);
    if ((f_lo <= 0.0) != (f_hi <= 0.0)) {
      double a = lo, b = hi, fa = f_lo;
      for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        const double mid = 0.5 * (a + b), fm = f(mid);
        if ((fm <= 0.0) == (fa <= 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    hi = lo;
    f_hi = f_lo;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double xi(double x, double base) {
  if (!(std::abs(x) <= 1.0 + 1e-12)) {
    char msg[64];
    std::snprintf(msg, sizeof msg, "xi needs |x| <= 1, got %.6g", x);
    throw DomainError(msg);
  }
  const double x2 = std::min(x * x, 1.0);
  const double y = std::sqrt(1.0 - x2);
  // (1 - y)/2 written without cancellation
  return binary_entropy(x2 / (2.0 * (1.0 + y)), base);
}

double xi_second_derivative(double x) {
  const double y = std::sqrt(std::max(0.0, 1.0 - x * x));
  if (y >= 1.0) return std::numeric_limits<double>::infinity();
  if (y == 0.0) return std::numeric_limits<double>::infinity();
  return std::log((1.0 + y) / (1.0 - y)) / (2.0 * y * y * y) - 1.0 / (y * y);
}

ConvexityCertificate xi_convexity_certificate(int n) {
  if (n < 3) throw DomainError("convexity certificate needs at least 3 grid points");
  constexpr double h = 1e-4;
  ConvexityCertificate cert{0.0, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < n; ++i) {
    const double x = -0.99 + 1.98 * i / (n - 1);
    if (std::abs(x) < 0.01) continue;
    const double e = std::numbers::e;
    const double fd = (xi(x + h, e) - 2.0 * xi(x, e) + xi(x - h, e)) / (h * h);
    const double closed = xi_second_derivative(x);
    cert.max_violation = std::max(cert.max_violation, std::abs(fd - closed));
    cert.min_closed_form = std::min(cert.min_closed_form, closed);
  }
  return cert;
}

std::pair<double, double> entanglement_bounds(const QubitMap& m, const State& s, double base) {
  const double c = concurrence(m, s);
  return {xi(c, base), c * std::log(2.0) / std::log(base)};
}

EntanglementResult entanglement_detail(const QubitMap& m, const State& s, double base, const Budget& budget) {
  const ConcurrenceForm form(m);
  EntanglementResult r;
  r.concurrence = form(s);

  auto closed = [&]() {
    r.value = xi(r.concurrence, base);
    r.closed_form = true;
    r.flat = true;
    return r;
  };
  if (s.is_pure()) {
    r.decomposition.members.push_back({1.0, s.bloch().normalized()});
    return closed();
  }
  // On a flat foliation the concurrence is constant along the leaf through s.
  if (form.foliation().is_flat()) {
    r.decomposition = concurrence_leaf_seeds(m, s).front();
    return closed();
  }
  if (leaf_scan(m, s, budget)) return closed();

  Budget b = budget;
  for (auto& d : concurrence_leaf_seeds(m, s)) b.seeds.push_back(std::move(d));
  const RoofResult roof = minimize_roof(s, output_entropy_functional(m, base), 4, b);
  r.value = roof.value;
  r.flat = roof.flat;
  r.decomposition = roof.decomposition;
  r.best_by_length = roof.best_by_length;
  return r;
}

double entanglement(const QubitMap& m, const State& s, double base, const Budget& budget) {
  return entanglement_detail(m, s, base, budget).value;
}

double beta1_sq(double x, double y) {
  const double d = bifurcation_d(x);
  const double inner = std::max(0.0, (x - d) * (x * x * x - y * y * d));
  return x * x * (x + y) * (x + y) / (2.0 * (x * x + y * d + std::sqrt(inner)));
}

double beta1_sq_unrationalized(double x, double y) {
  const double a = std::atanh(x);
  const double pre = x / (2.0 * (x + (x * x - 1.0) * a));
  const double inner = (1.0 - x * x) * a * (x * x * x - x * y * y - (x * x - 1.0) * y * y * a);
  return pre * (x * x + x * y + (x * x - 1.0) * y * a - std::sqrt(std::max(0.0, inner)));
}

double beta2_sq(double x, double y) {
  if (y >= 1.0) return 0.5 * (1.0 + x);
  if (y <= -1.0) return 0.5 * (1.0 - x);
  const double num = xlog(1.0 + x, 1.0 - y) + xlog(1.0 - x, 1.0 + y) - xlog(1.0 + x, 1.0 + x) - xlog(1.0 - x, 1.0 - x);
  // y / (log(1 - y) - log(1 + y)) = -y / (2 artanh y), which tends to -1/2 at y = 0
  const double ratio = std::abs(y) < 1e-300 ? -0.5 : -y / (2.0 * std::atanh(y));
  return 0.5 * ratio * num;
}

BifurcationBetas bifurcation_betas(double alpha, double gamma) {
  const Oriented o = orient(alpha, gamma);
  const double x = 2.0 * o.alpha - 1.0, y = 2.0 * o.gamma - 1.0;
  BifurcationBetas b;
  b.orientation_flipped = o.flipped;
  b.beta1 = std::sqrt(std::max(0.0, beta1_sq(x, y)));
  b.beta2 = std::sqrt(std::max(0.0, beta2_sq(x, y)));
  b.beta_c = std::sqrt(std::max(0.0, axial_beta_c_sq(alpha, gamma)));
  return b;
}

double beta1_numeric(double alpha, double gamma) {
  const Oriented o = orient(alpha, gamma);
  const double bc = std::sqrt(std::max(0.0, axial_beta_c_sq(alpha, gamma)));
  return largest_root([&](double beta) { return north_coefficient(o, beta); }, bc);
}

double beta2_numeric(double alpha, double gamma) {
  const Oriented o = orient(alpha, gamma);
  const double bc = std::sqrt(std::max(0.0, axial_beta_c_sq(alpha, gamma)));
  return largest_root([&](double beta) { return south_coefficient(o, beta); }, bc);
}

const char* to_string(PhaseLabel p) {
  switch (p) {
    case PhaseLabel::Ia: return "Ia";
    case PhaseLabel::Ib: return "Ib";
    case PhaseLabel::II: return "II";
    case PhaseLabel::III: return "III";
    case PhaseLabel::DegenerateUnital: return "degenerate-unital";
    case PhaseLabel::DegeneratePlanar: return "degenerate-planar";
  }
  return "?";
}

PhaseLabel classify_phase(const AxialParams& p) {
  const PositivityReport report = positivity_report(p);
  if (report.cls == PositivityClass::NotPositive) throw NotPositive(report.violation);
  if (std::abs(p.alpha - p.gamma) < kDegenerate) return PhaseLabel::DegenerateUnital;
  if (std::abs(p.alpha + p.gamma - 1.0) < kDegenerate) return PhaseLabel::DegeneratePlanar;
  const BifurcationBetas b = bifurcation_betas(p.alpha, p.gamma);
  const double beta = std::abs(p.beta);
  if (beta >= b.beta_c) return PhaseLabel::Ia;
  if (beta >= b.beta1) return PhaseLabel::Ib;
  if (beta > b.beta2) return PhaseLabel::II;
  return PhaseLabel::III;
}

}  // namespace qroof
