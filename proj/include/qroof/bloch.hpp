#pragma once

#include "qroof/types.hpp"

namespace qroof {

/// A Hermitian 2x2 matrix written as (x0, x) with rho = (x0 I + x.sigma) / 2.
struct MinkowskiVector {
  double x0 = 0.0;
  Vec3 x = Vec3::Zero();

  MinkowskiVector() = default;
  MinkowskiVector(double x0_, const Vec3& x_) : x0(x0_), x(x_) {}
  MinkowskiVector(double a, double b, double c, double d) : x0(a), x(b, c, d) {}
  explicit MinkowskiVector(const Vec4& v) : x0(v(0)), x(v.tail<3>()) {}

  Vec4 as_vector() const {
    Vec4 v;
    v << x0, x;
    return v;
  }

  MinkowskiVector operator+(const MinkowskiVector& o) const { return {x0 + o.x0, x + o.x}; }
  MinkowskiVector operator-(const MinkowskiVector& o) const { return {x0 - o.x0, x - o.x}; }
  MinkowskiVector operator*(double s) const { return {s * x0, s * x}; }
  friend MinkowskiVector operator*(double s, const MinkowskiVector& v) { return v * s; }
};

/// Normalized direction on the Bloch sphere.
class PureState {
 public:
  explicit PureState(const Vec3& direction);

  const Vec3& direction() const { return direction_; }
  MinkowskiVector minkowski() const { return {1.0, direction_}; }

 private:
  Vec3 direction_;
};

/// Point of the Bloch ball (x0 = 1).
class State {
 public:
  State() = default;
  /// Throws DomainError when |bloch| > 1 + tol::pure.
  explicit State(const Vec3& bloch);
  State(double x, double y, double z) : State(Vec3(x, y, z)) {}
  explicit State(const PureState& p) : bloch_(p.direction()) {}

  static State center() { return State(); }

  const Vec3& bloch() const { return bloch_; }
  double radius() const { return bloch_.norm(); }
  bool is_pure() const;
  MinkowskiVector minkowski() const { return {1.0, bloch_}; }

 private:
  Vec3 bloch_ = Vec3::Zero();
};

double minkowski_dot(const MinkowskiVector& a, const MinkowskiVector& b);

/// Determinant of the associated 2x2 matrix, minkowski_dot(v, v) / 4.
double det4(const MinkowskiVector& v);

Mat2c to_matrix(const MinkowskiVector& v);

/// Inverse of to_matrix; anti-Hermitian parts are dropped.
MinkowskiVector from_matrix(const Mat2c& rho);

/// Same linear isomorphism extended to complex coefficients, used for non-Hermitian
/// matrix units when building Choi matrices and induced maps.
Eigen::Vector4cd complex_coordinates(const Mat2c& m);
Mat2c complex_matrix(const Eigen::Vector4cd& c);

/// Binary entropy H(p, 1-p) in the given log base, with 0 log 0 = 0.
double binary_entropy(double p, double base = 2.0);

/// Entropy of a qubit state with Bloch radius r: H((1-r)/2, (1+r)/2).
double entropy_from_radius(double r, double base = 2.0);

double von_neumann_entropy(const State& s, double base = 2.0);

/// Spinor |psi> with |psi><psi| = (I + n.sigma) / 2.
Eigen::Vector2cd spinor(const Vec3& direction);

}  // namespace qroof
