#include "qroof/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qroof/concurrence.hpp"
#include "qroof/errors.hpp"
#include "qroof/nelder_mead.hpp"

namespace qroof {

namespace {

double eta_log2(double x) { return x <= 0.0 ? 0.0 : -x * std::log2(x); }

Vec3 into_ball(const std::vector<double>& x) {
  Vec3 v(x[0], x[1], x[2]);
  const double n = v.norm();
  return n > 1.0 ? Vec3(v / n) : v;
}

}  // namespace

double holevo_quantity(const QubitMap& m, const State& s, const Budget& budget) {
  const double out = von_neumann_entropy(State(m.apply_bloch(s.bloch())), 2.0);
  return out - entanglement(m, s, 2.0, budget);
}

double unital_capacity(double w) {
  const double r = std::sqrt(std::clamp(w, 0.0, 1.0));
  return 1.0 - entropy_from_radius(r, 2.0);
}

double amplitude_damping_holevo(double alpha, double z) {
  const double p = 0.5 * (1.0 + z) * alpha;
  return eta_log2(p) + eta_log2(1.0 - p) - xi((1.0 + z) * std::sqrt(alpha * (1.0 - alpha)), 2.0);
}

std::pair<double, double> amplitude_damping_capacity(double alpha) {
  const auto [z, chi] = golden_maximize([&](double z) { return amplitude_damping_holevo(alpha, z); }, -1.0, 1.0, 1e-10);
  return {chi, z};
}

CapacityResult capacity_axis_search(const QubitMap& m, const CapacityOptions& options) {
  CapacityResult r;
  auto chi = [&](double z) {
    const double v = holevo_quantity(m, State(0.0, 0.0, z), options.budget);
    r.profile.emplace_back(z, v);
    return v;
  };
  const auto [z, value] = golden_maximize(chi, -1.0, 1.0, options.z_tolerance);
  r.chi = std::max(0.0, value);
  r.argmax_state = State(0.0, 0.0, z);
  std::sort(r.profile.begin(), r.profile.end());
  return r;
}

CapacityResult capacity_multistart(const QubitMap& m, const CapacityOptions& options) {
  // Fibonacci directions at radii spreading the points evenly through the volume.
  const auto dirs = fibonacci_sphere(options.multistart);
  std::vector<Vec3> points;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    points.push_back(std::cbrt((i + 0.5) / static_cast<double>(dirs.size())) * dirs[i]);
  std::vector<double> values(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) values[i] = holevo_quantity(m, State(points[i]), options.budget);

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] > values[b]; });

  CapacityResult r;
  r.chi = -std::numeric_limits<double>::infinity();
  auto objective = [&](const std::vector<double>& x) { return -holevo_quantity(m, State(into_ball(x)), options.budget); };
  const auto refine = std::min<std::size_t>(order.size(), static_cast<std::size_t>(std::max(options.refine, 0)));
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Vec3& p = points[order[k]];
    double value = values[order[k]];
    Vec3 at = p;
    if (k < refine) {
      const NelderMeadResult nm = nelder_mead(objective, {p(0), p(1), p(2)}, 0.1, options.nm_iterations, 1e-12);
      if (-nm.value > value) {
        value = -nm.value;
        at = into_ball(nm.x);
      }
    }
    if (value > r.chi) {
      r.chi = value;
      r.argmax_state = State(at);
    }
  }
  r.chi = std::max(0.0, r.chi);
  return r;
}

CapacityResult hsw_capacity(const QubitMap& m, const CapacityOptions& options) {
  if (is_unital(m, 1e-12)) {
    CapacityResult r;
    r.chi = unital_capacity(critical_w(m));
    r.argmax_state = State(0.0, 0.0, 0.0);
    return r;
  }
  if (as_axial(m, 1e-12)) return capacity_axis_search(m, options);
  return capacity_multistart(m, options);
}

std::vector<SweepPoint> capacity_sweep(double alpha, double gamma, const std::vector<double>& betas,
                                       const CapacityOptions& options, Execution exec) {
  for (double beta : betas) {
    const PositivityReport report = positivity_report(AxialParams{alpha, beta, gamma});
    if (report.cls == PositivityClass::NotPositive) throw NotPositive(report.violation);
  }
  std::vector<SweepPoint> out(betas.size());
  CapacityOptions inner = options;
  inner.budget.execution = Execution::Serial;
  auto run = [&](std::size_t i) {
    const AxialParams p{alpha, betas[i], gamma};
    const CapacityResult c = hsw_capacity(axial(p), inner);
    out[i] = {betas[i], c.chi, c.argmax_state.bloch()(2), classify_phase(p)};
  };
  const auto n = static_cast<std::ptrdiff_t>(betas.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) run(static_cast<std::size_t>(i));
  }
  return out;
}

}  // namespace qroof
