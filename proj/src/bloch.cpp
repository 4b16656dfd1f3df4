#include "qroof/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qroof/errors.hpp"

namespace qroof {

namespace {
const Complex kI(0.0, 1.0);
}

PureState::PureState(const Vec3& direction) {
  const double n = direction.norm();
  if (!(n > 0.0)) throw DomainError("pure state direction must be non-zero");
  direction_ = direction / n;
}

State::State(const Vec3& bloch) : bloch_(bloch) {
  const double r = bloch.norm();
  if (!std::isfinite(r) || r > 1.0 + tol::pure) {
    std::ostringstream os;
    os << "Bloch vector has length " << r << " > 1";
    throw DomainError(os.str());
  }
}

bool State::is_pure() const { return std::abs(radius() - 1.0) <= tol::pure; }

double minkowski_dot(const MinkowskiVector& a, const MinkowskiVector& b) {
  return a.x0 * b.x0 - a.x.dot(b.x);
}

double det4(const MinkowskiVector& v) { return 0.25 * minkowski_dot(v, v); }

Mat2c to_matrix(const MinkowskiVector& v) {
  Mat2c m;
  m(0, 0) = 0.5 * (v.x0 + v.x(2));
  m(1, 1) = 0.5 * (v.x0 - v.x(2));
  m(0, 1) = 0.5 * Complex(v.x(0), -v.x(1));
  m(1, 0) = 0.5 * Complex(v.x(0), v.x(1));
  return m;
}

MinkowskiVector from_matrix(const Mat2c& rho) {
  const Eigen::Vector4cd c = complex_coordinates(rho);
  return MinkowskiVector(c.real());
}

Eigen::Vector4cd complex_coordinates(const Mat2c& m) {
  // x_mu = Tr(sigma_mu m) with sigma_0 = I.
  Eigen::Vector4cd c;
  c(0) = m(0, 0) + m(1, 1);
  c(1) = m(0, 1) + m(1, 0);
  c(2) = kI * (m(0, 1) - m(1, 0));
  c(3) = m(0, 0) - m(1, 1);
  return c;
}

Mat2c complex_matrix(const Eigen::Vector4cd& c) {
  Mat2c m;
  m(0, 0) = 0.5 * (c(0) + c(3));
  m(1, 1) = 0.5 * (c(0) - c(3));
  m(0, 1) = 0.5 * (c(1) - kI * c(2));
  m(1, 0) = 0.5 * (c(1) + kI * c(2));
  return m;
}

double binary_entropy(double p, double base) {
  auto term = [](double q) { return q > 0.0 ? -q * std::log(q) : 0.0; };
  return (term(p) + term(1.0 - p)) / std::log(base);
}

double entropy_from_radius(double r, double base) {
  r = std::clamp(r, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 - r), base);
}

double von_neumann_entropy(const State& s, double base) {
  return entropy_from_radius(s.radius(), base);
}

Eigen::Vector2cd spinor(const Vec3& direction) {
  const Vec3 n = direction.normalized();
  Eigen::Vector2cd psi;
  if (n(2) > -1.0 + 1e-15) {
    const double c = std::sqrt(0.5 * (1.0 + n(2)));
    psi(0) = c;
    psi(1) = Complex(n(0), n(1)) / (2.0 * c);
  } else {
    psi << 0.0, 1.0;
  }
  return psi;
}

}  // namespace qroof
