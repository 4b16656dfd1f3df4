#include "qroof/roof_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include "qroof/concurrence.hpp"
#include "qroof/errors.hpp"
#include "qroof/nelder_mead.hpp"

namespace qroof {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kWeightSlack = 1e-12;
constexpr double kMemberWeightFloor = 1e-9;
constexpr double kReconstruction = 1e-10;
constexpr double kOptimalTie = 1e-8;
constexpr double kInfeasiblePenalty = 1e3;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class Fn>
void indexed_fill(std::span<double> out, Execution exec, Fn&& fn) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  }
}

Vec3 spherical(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::pair<double, double> angles_of(const Vec3& d) {
  const Vec3 n = d.normalized();
  return {std::acos(std::clamp(n(2), -1.0, 1.0)), std::atan2(n(1), n(0))};
}

Vec3 random_direction(CounterRng& rng) {
  const double z = 2.0 * rng.uniform() - 1.0;
  const double phi = kTwoPi * rng.uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

/// Orthonormal basis of the plane perpendicular to v.
std::pair<Vec3, Vec3> perpendicular_basis(const Vec3& v) {
  const Vec3 n = v.normalized();
  Vec3 a = std::abs(n(0)) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  Vec3 b1 = (a - a.dot(n) * n).normalized();
  return {b1, n.cross(b1)};
}

/// Up to four pure points with barycentric weights reproducing a state.
struct Polytope {
  std::array<Vec3, 4> points;
  std::array<double, 4> weights{};
  int size = 0;
  double negativity = 0.0;  // sum of negative weights; > kWeightSlack means s is outside
  bool solvable = false;

  bool feasible() const { return solvable && negativity <= kWeightSlack; }

  double value(const PureFunctional& g) const {
    double v = 0.0;
    for (int i = 0; i < size; ++i) v += std::max(weights[i], 0.0) * g(points[i]);
    return v;
  }

  /// Objective for simplex refinement: the value when feasible, a penalty otherwise.
  double penalized(const PureFunctional& g) const {
    if (!solvable) return 2.0 * kInfeasiblePenalty;
    if (negativity > kWeightSlack) return kInfeasiblePenalty + negativity;
    return value(g);
  }

  Decomposition decomposition() const {
    Decomposition d;
    double total = 0.0;
    for (int i = 0; i < size; ++i)
      if (weights[i] > 0.0) total += weights[i];
    for (int i = 0; i < size; ++i)
      if (weights[i] > 0.0) d.members.push_back({weights[i] / total, points[i]});
    return d;
  }
};

struct CircleFrame {
  Vec3 u, e1, e2, center;
  double radius = 0.0;
};

// The plane through s with normal u(theta, phi) cuts the sphere in a circle.
CircleFrame circle_frame(const Vec3& s, double theta, double phi) {
  CircleFrame f;
  f.u = spherical(theta, phi);
  f.e1 = {std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta)};
  f.e2 = {-std::sin(phi), std::cos(phi), 0.0};
  const double h = f.u.dot(s);
  f.center = h * f.u;
  f.radius = std::sqrt(std::max(0.0, 1.0 - h * h));
  return f;
}

double circle_angle(const CircleFrame& f, const Vec3& p) {
  const Vec3 q = p - f.center;
  return std::atan2(q.dot(f.e2), q.dot(f.e1));
}

// params: theta_u, phi_u, a1, a2, a3
Polytope triangle(const Vec3& s, const double* p) {
  Polytope t;
  t.size = 3;
  const CircleFrame f = circle_frame(s, p[0], p[1]);
  if (f.radius < 1e-12) return t;
  const Vec3 q = s - f.center;
  Eigen::Matrix3d A;
  for (int i = 0; i < 3; ++i) {
    const double c = std::cos(p[2 + i]), sn = std::sin(p[2 + i]);
    A(0, i) = 1.0;
    A(1, i) = c;
    A(2, i) = sn;
    t.points[i] = f.center + f.radius * (c * f.e1 + sn * f.e2);
  }
  const double det = A.determinant();
  if (!(std::abs(det) > 1e-12)) return t;
  const Vec3 w = A.inverse() * Vec3(1.0, q.dot(f.e1) / f.radius, q.dot(f.e2) / f.radius);
  t.solvable = true;
  for (int i = 0; i < 3; ++i) {
    t.weights[i] = w(i);
    if (w(i) < 0.0) t.negativity -= w(i);
  }
  return t;
}

// params: (theta_i, phi_i) for four vertices
Polytope tetrahedron(const Vec3& s, const double* p) {
  Polytope t;
  t.size = 4;
  Eigen::Matrix4d A;
  for (int i = 0; i < 4; ++i) {
    t.points[i] = spherical(p[2 * i], p[2 * i + 1]);
    A(0, i) = 1.0;
    A.block<3, 1>(1, i) = t.points[i];
  }
  const Eigen::PartialPivLU<Eigen::Matrix4d> lu(A);
  if (!(std::abs(lu.determinant()) > 1e-12)) return t;
  Vec4 rhs;
  rhs << 1.0, s;
  const Vec4 w = lu.solve(rhs);
  t.solvable = true;
  for (int i = 0; i < 4; ++i) {
    t.weights[i] = w(i);
    if (w(i) < 0.0) t.negativity -= w(i);
  }
  return t;
}

Polytope chord(const Vec3& s, const Vec3& direction) {
  Polytope t;
  t.size = 2;
  const Vec3 d = direction.normalized();
  const double b = s.dot(d);
  const double disc = std::sqrt(std::max(0.0, b * b + 1.0 - s.squaredNorm()));
  const double tp = -b + disc, tm = -b - disc;
  if (!(tp - tm > 0.0)) return t;
  t.points[0] = s + tp * d;
  t.points[1] = s + tm * d;
  t.weights[0] = -tm / (tp - tm);
  t.weights[1] = tp / (tp - tm);
  t.solvable = true;
  return t;
}

std::array<double, 5> triangle_params_from_sample(CounterRng& rng) {
  const Vec3 u = random_direction(rng);
  const auto [th, ph] = angles_of(u);
  return {th, ph, kTwoPi * rng.uniform(), kTwoPi * rng.uniform(), kTwoPi * rng.uniform()};
}

std::array<double, 8> tetrahedron_params_from_sample(CounterRng& rng) {
  std::array<double, 8> p{};
  for (int i = 0; i < 4; ++i) {
    const auto [th, ph] = angles_of(random_direction(rng));
    p[2 * i] = th;
    p[2 * i + 1] = ph;
  }
  return p;
}

constexpr std::uint64_t kTriangleStream = 1ULL << 32;
constexpr std::uint64_t kTetraStream = 2ULL << 32;

struct Candidate {
  double value = kInf;
  double spread = 0.0;
  Decomposition decomposition;
};

/// Top-k feasible indices by value (ties by index).
std::vector<std::size_t> best_indices(std::span<const double> values, int k) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (std::isfinite(values[i])) idx.push_back(i);
  const auto kk = std::min<std::size_t>(idx.size(), static_cast<std::size_t>(std::max(k, 0)));
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(kk), idx.end(), [&](auto a, auto b) {
    return values[a] < values[b] || (values[a] == values[b] && a < b);
  });
  idx.resize(kk);
  return idx;
}

bool reconstructs(const Decomposition& d, const Vec3& s) {
  const MinkowskiVector b = d.barycenter();
  return std::abs(b.x0 - 1.0) <= kReconstruction && (b.x - s).cwiseAbs().maxCoeff() <= kReconstruction;
}

/// Runs the simplex refinements for all starts (indexed, optionally in parallel) and
/// returns the resulting polytopes in start order.
template <class Build>
std::vector<Polytope> refine_all(const std::vector<std::vector<double>>& starts, double step, int iterations,
                                 const PureFunctional& g, Execution exec, Build&& build) {
  std::vector<Polytope> out(starts.size());
  auto run = [&](std::size_t i) {
    auto objective = [&](const std::vector<double>& x) { return build(x.data()).penalized(g); };
    const NelderMeadResult r = nelder_mead(objective, starts[i], step, iterations);
    out[i] = build(r.x.data());
  };
  const auto n = static_cast<std::ptrdiff_t>(starts.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) run(static_cast<std::size_t>(i));
  }
  return out;
}

std::vector<double> chord_params(const Decomposition& d) {
  const auto [th, ph] = angles_of(d.members[0].direction - d.members[1].direction);
  return {th, ph};
}

std::vector<double> triangle_params(const Vec3& s, const Vec3& u, const std::array<Vec3, 3>& pts) {
  const auto [th, ph] = angles_of(u);
  const CircleFrame f = circle_frame(s, th, ph);
  return {th, ph, circle_angle(f, pts[0]), circle_angle(f, pts[1]), circle_angle(f, pts[2])};
}

/// Triangles with a chord as one edge; the third vertex carries zero weight.
void triangle_seeds_from_chord(const Vec3& s, const Decomposition& d, std::vector<std::vector<double>>& out) {
  const Vec3 a = d.members[0].direction, b = d.members[1].direction;
  const auto [b1, b2] = perpendicular_basis(a - b);
  for (int k = 0; k < 4; ++k) {
    const double psi = k * std::numbers::pi / 4.0;
    const Vec3 u = std::cos(psi) * b1 + std::sin(psi) * b2;
    const auto [th, ph] = angles_of(u);
    const CircleFrame f = circle_frame(s, th, ph);
    const double aa = circle_angle(f, a), ab = circle_angle(f, b);
    const double third = std::atan2(std::sin(aa) + std::sin(ab), std::cos(aa) + std::cos(ab)) + std::numbers::pi;
    out.push_back({th, ph, aa, ab, third});
  }
}

/// Triangles with one vertex at a pole (cones with apex at the pole).
void pole_triangle_seeds(const Vec3& s, std::vector<std::vector<double>>& out) {
  for (double pole_z : {1.0, -1.0}) {
    const Vec3 P(0.0, 0.0, pole_z);
    const Vec3 v = s - P;
    if (v.norm() < 1e-9) continue;
    const double lambda = -2.0 * P.dot(v) / v.squaredNorm();
    const Vec3 X = P + lambda * v;  // second intersection of the line P -> s
    const auto [b1, b2] = perpendicular_basis(v);
    for (int k = 0; k < 4; ++k) {
      const double psi = k * std::numbers::pi / 4.0;
      const Vec3 u = std::cos(psi) * b1 + std::sin(psi) * b2;
      const auto [th, ph] = angles_of(u);
      const CircleFrame f = circle_frame(s, th, ph);
      const double ap = circle_angle(f, P), ax = circle_angle(f, X);
      for (double delta : {0.6, 1.2}) out.push_back({th, ph, ap, ax + delta, ax - delta});
    }
  }
}

void tetrahedron_seeds_from_triangle(const Decomposition& d, std::vector<std::vector<double>>& out) {
  const Vec3 a = d.members[0].direction, b = d.members[1].direction, c = d.members[2].direction;
  const Vec3 normal = (b - a).cross(c - a);
  if (normal.norm() < 1e-12) return;
  for (double sign : {1.0, -1.0}) {
    std::vector<double> p;
    for (const Vec3& v : {a, b, c, Vec3(sign * normal.normalized())}) {
      const auto [th, ph] = angles_of(v);
      p.push_back(th);
      p.push_back(ph);
    }
    out.push_back(std::move(p));
  }
}

}  // namespace

double Decomposition::total_weight() const {
  double t = 0.0;
  for (const auto& m : members) t += m.weight;
  return t;
}

MinkowskiVector Decomposition::barycenter() const {
  MinkowskiVector b(0.0, Vec3::Zero());
  for (const auto& m : members) b = b + m.weight * MinkowskiVector(1.0, m.direction);
  return b;
}

double Decomposition::value(const PureFunctional& g) const {
  double v = 0.0;
  for (const auto& m : members) v += m.weight * g(m.direction);
  return v;
}

double Decomposition::spread(const PureFunctional& g) const {
  double lo = kInf, hi = -kInf;
  for (const auto& m : members) {
    if (m.weight <= kMemberWeightFloor) continue;
    const double v = g(m.direction);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi >= lo ? hi - lo : 0.0;
}

Decomposition length2_family(const State& s, const Vec3& direction) {
  if (s.is_pure()) throw PureInput("a pure state has only the trivial decomposition");
  const Polytope c = chord(s.bloch(), direction);
  if (!c.solvable) throw DomainError("chord direction must be non-zero");
  return c.decomposition();
}

std::vector<Vec3> fibonacci_sphere(int n) {
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    out.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return out;
}

std::size_t indexed_argmin(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[best]) best = i;
  return best;
}

void evaluate_chords(const State& s, const PureFunctional& g, std::span<const Vec3> directions,
                     std::span<double> out, Execution exec) {
  const Vec3 x = s.bloch();
  indexed_fill(out, exec, [&](std::size_t i) {
    const Polytope c = chord(x, directions[i]);
    return c.solvable ? c.value(g) : kInf;
  });
}

void evaluate_random_triangles(const State& s, const PureFunctional& g, std::uint64_t seed,
                               std::span<double> out, Execution exec) {
  const Vec3 x = s.bloch();
  indexed_fill(out, exec, [&](std::size_t i) {
    CounterRng rng(seed, kTriangleStream + i);
    const auto p = triangle_params_from_sample(rng);
    const Polytope t = triangle(x, p.data());
    return t.feasible() ? t.value(g) : kInf;
  });
}

void evaluate_random_tetrahedra(const State& s, const PureFunctional& g, std::uint64_t seed,
                                std::span<double> out, Execution exec) {
  const Vec3 x = s.bloch();
  indexed_fill(out, exec, [&](std::size_t i) {
    CounterRng rng(seed, kTetraStream + i);
    const auto p = tetrahedron_params_from_sample(rng);
    const Polytope t = tetrahedron(x, p.data());
    return t.feasible() ? t.value(g) : kInf;
  });
}

RoofResult minimize_roof(const State& s, const PureFunctional& g, int max_length, const Budget& budget) {
  if (max_length < 2 || max_length > 4) throw DomainError("max_length must be in [2, 4]");
  RoofResult result;
  const Vec3 x = s.bloch();

  if (s.is_pure()) {
    const Vec3 n = x.normalized();
    result.decomposition.members.push_back({1.0, n});
    result.value = g(n);
    result.flat = true;
    return result;
  }

  std::vector<Candidate> candidates;
  auto consider = [&](const Polytope& p, int length) {
    if (!p.feasible()) return;
    Decomposition d = p.decomposition();
    if (d.members.empty() || !reconstructs(d, x)) return;
    const double v = d.value(g);
    result.best_by_length[static_cast<std::size_t>(length - 2)] =
        std::min(result.best_by_length[static_cast<std::size_t>(length - 2)], v);
    candidates.push_back({v, d.spread(g), std::move(d)});
  };

  std::vector<Decomposition> seeds2, seeds3, seeds4;
  for (const auto& d : budget.seeds) {
    if (d.size() == 2) seeds2.push_back(d);
    if (d.size() == 3) seeds3.push_back(d);
    if (d.size() == 4) seeds4.push_back(d);
  }

  // Length 2: Fibonacci grid of chord directions, simplex refinement of the best.
  const auto dirs = fibonacci_sphere(budget.direction_grid);
  std::vector<double> chord_values(dirs.size());
  evaluate_chords(s, g, dirs, chord_values, budget.execution);
  std::vector<std::vector<double>> starts;
  for (std::size_t i : best_indices(chord_values, budget.refine_top)) {
    consider(chord(x, dirs[i]), 2);
    const auto [th, ph] = angles_of(dirs[i]);
    starts.push_back({th, ph});
  }
  for (const auto& d : seeds2) {
    consider(chord(x, d.members[0].direction - d.members[1].direction), 2);
    starts.push_back(chord_params(d));
  }
  const double grid_step = std::sqrt(4.0 * std::numbers::pi / std::max(budget.direction_grid, 1));
  for (const auto& p : refine_all(starts, 0.5 * grid_step, budget.nm_iterations, g, budget.execution,
                                  [&](const double* q) { return chord(x, spherical(q[0], q[1])); }))
    consider(p, 2);

  auto best_of_length = [&](std::size_t n, int count) {
    std::vector<const Candidate*> pool;
    for (const auto& c : candidates)
      if (c.decomposition.size() == n) pool.push_back(&c);
    std::stable_sort(pool.begin(), pool.end(), [](auto a, auto b) { return a->value < b->value; });
    if (pool.size() > static_cast<std::size_t>(count)) pool.resize(static_cast<std::size_t>(count));
    return pool;
  };

  if (max_length >= 3) {
    std::vector<double> tri_values(static_cast<std::size_t>(std::max(budget.triangles, 0)));
    evaluate_random_triangles(s, g, budget.seed, tri_values, budget.execution);
    starts.clear();
    for (std::size_t i : best_indices(tri_values, budget.refine_top)) {
      CounterRng rng(budget.seed, kTriangleStream + i);
      const auto p = triangle_params_from_sample(rng);
      starts.emplace_back(p.begin(), p.end());
    }
    for (const Candidate* c : best_of_length(2, 2)) triangle_seeds_from_chord(x, c->decomposition, starts);
    pole_triangle_seeds(x, starts);
    for (const auto& d : seeds2) triangle_seeds_from_chord(x, d, starts);
    for (const auto& d : seeds3) {
      const Vec3 a = d.members[0].direction, b = d.members[1].direction, c = d.members[2].direction;
      const Vec3 u = (b - a).cross(c - a);
      if (u.norm() > 1e-12) starts.push_back(triangle_params(x, u.normalized(), {a, b, c}));
    }
    for (const auto& p : refine_all(starts, 0.1, budget.nm_iterations_long, g, budget.execution,
                                    [&](const double* q) { return triangle(x, q); }))
      consider(p, 3);
  }

  if (max_length >= 4) {
    std::vector<double> tet_values(static_cast<std::size_t>(std::max(budget.tetrahedra, 0)));
    evaluate_random_tetrahedra(s, g, budget.seed, tet_values, budget.execution);
    starts.clear();
    for (std::size_t i : best_indices(tet_values, budget.refine_top)) {
      CounterRng rng(budget.seed, kTetraStream + i);
      const auto p = tetrahedron_params_from_sample(rng);
      starts.emplace_back(p.begin(), p.end());
    }
    for (const Candidate* c : best_of_length(3, 2)) tetrahedron_seeds_from_triangle(c->decomposition, starts);
    for (const auto& d : seeds3) tetrahedron_seeds_from_triangle(d, starts);
    for (const auto& d : seeds4) {
      std::vector<double> p;
      for (const auto& m : d.members) {
        const auto [th, ph] = angles_of(m.direction);
        p.push_back(th);
        p.push_back(ph);
      }
      starts.push_back(std::move(p));
    }
    for (const auto& p : refine_all(starts, 0.1, budget.nm_iterations_long, g, budget.execution,
                                    [&](const double* q) { return tetrahedron(x, q); }))
      consider(p, 4);
  }

  if (candidates.empty()) throw Error("roof search found no feasible decomposition");

  // Deterministic reduction: minimum value; candidates within the optimizer noise of
  // it count as optimal, and among those the flattest wins.
  double best_value = kInf;
  for (const auto& c : candidates) best_value = std::min(best_value, c.value);
  const double tie = kOptimalTie * std::max(1.0, std::abs(best_value));
  const Candidate* chosen = nullptr;
  for (const auto& c : candidates) {
    if (c.value > best_value + tie) continue;
    if (!chosen || c.spread < chosen->spread) chosen = &c;
  }
  result.value = chosen->value;
  result.decomposition = chosen->decomposition;
  result.spread = chosen->spread;
  result.flat = chosen->spread <= tol::flat_roof;
  return result;
}

PureFunctional concurrence_functional(const QubitMap& m) {
  return [m](const Vec3& n) { return pure_concurrence(m, n); };
}

PureFunctional output_entropy_functional(const QubitMap& m, double base) {
  return [m, base](const Vec3& n) { return entropy_from_radius(m.apply_bloch(n).norm(), base); };
}

std::vector<Decomposition> concurrence_leaf_seeds(const QubitMap& m, const State& s) {
  std::vector<Decomposition> out;
  if (s.is_pure()) return out;
  const Foliation f = foliation(m);
  if (f.is_flat()) {
    for (const Vec3& d : f.flat().directions) out.push_back(length2_family(s, d));
  } else {
    const Vec3 d = f.leaf_direction(s.bloch());
    if (d.allFinite()) out.push_back(length2_family(s, d));
  }
  return out;
}

bool leaf_scan(const State& s, const PureFunctional& g, int max_length, const Budget& budget) {
  return minimize_roof(s, g, max_length, budget).flat;
}

bool leaf_scan(const QubitMap& m, const State& s, const Budget& budget) {
  Budget b = budget;
  for (auto& d : concurrence_leaf_seeds(m, s)) b.seeds.push_back(std::move(d));
  return minimize_roof(s, concurrence_functional(m), 2, b).flat;
}

}  // namespace qroof
