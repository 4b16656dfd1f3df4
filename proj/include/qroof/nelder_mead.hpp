#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qroof {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Downhill simplex with the standard coefficients (1, 2, 0.5, 0.5). Stops after
/// `max_iterations` or when the spread of simplex values drops below `f_tolerance`.
template <class F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> start, double step, int max_iterations,
                             double f_tolerance = 1e-15) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex(n + 1, start);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto blend = [&](std::vector<double>& out, double t, const std::vector<double>& from) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (from[j] - centroid[j]);
  };

  int it = 0;
  for (; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (std::abs(values[worst] - values[best]) <= f_tolerance) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);

    blend(trial, -1.0, simplex[worst]);
    const double fr = f(trial);
    if (fr < values[best]) {
      blend(trial2, -2.0, simplex[worst]);
      const double fe = f(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = trial;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    blend(trial2, outside ? -0.5 : 0.5, simplex[worst]);
    const double fc = f(trial2);
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = trial2;
      values[worst] = fc;
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
      values[i] = f(simplex[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], it};
}

/// Golden-section search for the maximum of a unimodal function on [lo, hi], followed by
/// one parabolic step through the final bracket.
template <class F>
std::pair<double, double> golden_maximize(F&& f, double lo, double hi, double x_tolerance) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > x_tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  double best_x = fc >= fd ? c : d;
  double best_f = std::max(fc, fd);

  // Parabola through (c, fc), (m, fm), (d, fd).
  const double m = 0.5 * (c + d);
  if (d - c > 0.0) {
    const double fm = f(m);
    if (fm > best_f) {
      best_x = m;
      best_f = fm;
    }
    const double denom = (m - c) * (fm - fd) - (m - d) * (fm - fc);
    if (std::abs(denom) > 0.0) {
      const double xp = m - 0.5 * ((m - c) * (m - c) * (fm - fd) - (m - d) * (m - d) * (fm - fc)) / denom;
      if (xp > lo && xp < hi && std::isfinite(xp)) {
        const double fp = f(xp);
        if (fp > best_f) {
          best_x = xp;
          best_f = fp;
        }
      }
    }
  }
  for (double edge : {lo, hi}) {
    const double fe = f(edge);
    if (fe > best_f) {
      best_x = edge;
      best_f = fe;
    }
  }
  return {best_x, best_f};
}

}  // namespace qroof
