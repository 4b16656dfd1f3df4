#include "qroof/bipartite.hpp"

#include <cmath>

#include <Eigen/LU>

#include "qroof/concurrence.hpp"
#include "qroof/errors.hpp"

namespace qroof {

namespace {

constexpr double kOrthonormal = 1e-12;

}  // namespace

Subspace2::Subspace2(int dim_b_, VecXc b0_, VecXc b1_) : dim_b(dim_b_), b0(std::move(b0_)), b1(std::move(b1_)) {
  if (dim_b < 1 || b0.size() != 2 * dim_b || b1.size() != 2 * dim_b)
    throw DomainError("subspace basis vectors must have dimension 2n");
  if (std::abs(b0.norm() - 1.0) > kOrthonormal || std::abs(b1.norm() - 1.0) > kOrthonormal ||
      std::abs(b0.dot(b1)) > kOrthonormal)
    throw DomainError("subspace basis is not orthonormal");
}

Subspace2 Subspace2::span(int dim_b, const VecXc& v0, const VecXc& v1) {
  const VecXc e0 = v0.normalized();
  VecXc e1 = v1 - e0.dot(v1) * e0;
  if (e1.norm() < 1e-10) throw DomainError("vectors do not span a 2-dimensional subspace");
  e1.normalize();
  return {dim_b, e0, e1};
}

MatXc Subspace2::isometry() const {
  MatXc v(b0.size(), 2);
  v.col(0) = b0;
  v.col(1) = b1;
  return v;
}

MatXc Subspace2::embed(const Mat2c& rho) const {
  const MatXc v = isometry();
  return v * rho * v.adjoint();
}

Subspace2 Subspace2::rotated(const Mat2c& u) const {
  return {dim_b, u(0, 0) * b0 + u(1, 0) * b1, u(0, 1) * b0 + u(1, 1) * b1};
}

Mat2c partial_trace_b(const MatXc& rho, int dim_b) {
  Mat2c out;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) out(a, c) = rho.block(a * dim_b, c * dim_b, dim_b, dim_b).trace();
  return out;
}

VecXc ghz_state() {
  VecXc v = VecXc::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return v;
}

VecXc w_state() {
  VecXc v = VecXc::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return v;
}

Subspace2 ghz_w_subspace() { return {4, w_state(), ghz_state()}; }

VecXc product_vector(const VecXc& a, const VecXc& b) {
  VecXc v(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) v.segment(i * b.size(), b.size()) = a(i) * b;
  return v;
}

QubitMap induced_map(const Subspace2& sub) {
  return from_action([&](const Mat2c& rho) { return partial_trace_b(sub.embed(rho), sub.dim_b); });
}

SubspaceInvariant subspace_w(const Subspace2& sub) { return {critical_w(induced_map(sub))}; }

double rank2_concurrence(const Subspace2& sub, const Mat2c& rho) {
  const double w = subspace_w(sub).w;
  const Mat2c a = partial_trace_b(sub.embed(rho), sub.dim_b);
  const double q = 4.0 * (a.determinant().real() - w * rho.determinant().real());
  return std::sqrt(std::max(0.0, q));
}

double bilinear_q(const MatXc& rho1, const MatXc& rho2, double w, int dim_b) {
  const Mat2c a1 = partial_trace_b(rho1, dim_b), a2 = partial_trace_b(rho2, dim_b);
  return 2.0 * (1.0 - w) * rho1.trace().real() * rho2.trace().real() +
         2.0 * (w * (rho1 * rho2).trace().real() - (a1 * a2).trace().real());
}

double e2(const MatXc& x) {
  const Complex tr = x.trace();
  return 0.5 * (tr * tr - (x * x).trace()).real();
}

double e2_lower_bound(const HermitianMap& map, const MatXc& rho, double w) {
  const double q = e2(map.apply(rho)) - w * e2(rho);
  if (q < -tol::psd) throw NegativeForm("e2(Phi(rho)) - w e2(rho) is negative");
  return 2.0 * std::sqrt(std::max(0.0, q));
}

HermitianMap diagonal_map(int dim) {
  return {dim, [](const MatXc& rho) { return MatXc(rho.diagonal().asDiagonal()); }};
}

HermitianMap choi_map(double mu) {
  if (!(mu >= 1.0)) throw DomainError("the Choi family needs mu >= 1");
  return {3, [mu](const MatXc& x) {
            MatXc y = -x;
            y(0, 0) = x(0, 0) + mu * x(2, 2);
            y(1, 1) = x(1, 1) + mu * x(0, 0);
            y(2, 2) = x(2, 2) + mu * x(1, 1);
            return MatXc(y / (1.0 + mu));
          }};
}

double choi_map_w(double mu) { return (1.0 - mu + mu * mu) / ((1.0 + mu) * (1.0 + mu)); }

double choi_bound_sq(double mu, const MatXc& rho) {
  const double tr = rho.trace().real();
  const double off = std::norm(rho(0, 1)) + std::norm(rho(0, 2)) + std::norm(rho(1, 2));
  return 4.0 * mu / ((1.0 + mu) * (1.0 + mu)) * (tr * tr + (mu - 1.0) * off);
}

MatXc subspace_operator(const VecXc& u0, const VecXc& u1, const Mat2c& rho) {
  MatXc v(u0.size(), 2);
  v.col(0) = u0;
  v.col(1) = u1;
  return v * rho * v.adjoint();
}

PureFunctional subspace_e2_functional(const HermitianMap& map, const VecXc& u0, const VecXc& u1) {
  return [map, u0, u1](const Vec3& n) {
    const Eigen::Vector2cd psi = spinor(n);
    const VecXc v = psi(0) * u0 + psi(1) * u1;
    return 2.0 * std::sqrt(std::max(0.0, e2(map.apply(v * v.adjoint()))));
  };
}

}  // namespace qroof
