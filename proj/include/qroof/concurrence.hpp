#pragma once

#include <array>
#include <variant>
#include <vector>

#include "qroof/channel.hpp"

namespace qroof {

/// Q_w = Q_0 - w eta, the matrix of 4 (det Phi(rho) - w det rho).
Mat4 q_matrix(const QubitMap& m, double w);

/// Real eigenvalues of eta Q_0, descending. Throws NonRealEigenvalues.
std::array<double, 4> eigen_flow(const QubitMap& m);

/// w0 = second largest eigenvalue of eta Q_0.
double critical_w(const QubitMap& m);

/// Leaves are chords parallel to the span of `directions`.
struct FlatLeaves {
  std::vector<Vec3> directions;
};

/// Leaves are chords through `point` (x0 = 1, outside or on the Bloch sphere).
struct ApexLeaves {
  MinkowskiVector point;
};

struct Foliation {
  std::variant<FlatLeaves, ApexLeaves> leaves;
  /// Orthonormal basis of Ker Q_{w0}; more than one vector means a degenerate kernel.
  std::vector<Vec4> kernel;

  bool is_flat() const { return std::holds_alternative<FlatLeaves>(leaves); }
  const FlatLeaves& flat() const { return std::get<FlatLeaves>(leaves); }
  const ApexLeaves& apex() const { return std::get<ApexLeaves>(leaves); }

  /// Direction of the leaf chord through an interior point.
  Vec3 leaf_direction(const Vec3& bloch) const;
};

/// Everything needed to evaluate C_Phi for one map; computed once, immutable.
class ConcurrenceForm {
 public:
  /// Throws NonRealEigenvalues or NotPositive (when Q_{w2} is indefinite).
  explicit ConcurrenceForm(const QubitMap& m);

  const QubitMap& map() const { return map_; }
  const Mat4& q0() const { return q0_; }
  const std::array<double, 4>& w_flow() const { return flow_; }
  double w0() const { return flow_[1]; }
  const Mat4& q_w0() const { return qw0_; }
  const Foliation& foliation() const { return foliation_; }

  /// v . Q_{w0} . v
  double quadratic(const MinkowskiVector& v) const;

  /// sqrt(q_{w0}(s)); throws NegativeForm below -tol::psd.
  double operator()(const State& s) const;
  double operator()(const Vec3& bloch) const;

 private:
  QubitMap map_;
  Mat4 q0_;
  std::array<double, 4> flow_{};
  Mat4 qw0_;
  Foliation foliation_;
};

double concurrence(const QubitMap& m, const State& s);

/// 2 sqrt(det Phi(pi)) for a pure input direction.
double pure_concurrence(const QubitMap& m, const Vec3& direction);

Foliation foliation(const QubitMap& m);

/// Orthonormal kernel basis of a symmetric 4x4 matrix (|eigenvalue| <= tolerance).
std::vector<Vec4> kernel_basis(const Mat4& q, double tolerance);

struct AffineZ {
  double slope = 0.0;
  double intercept = 0.0;
  double operator()(double z) const { return slope * z + intercept; }
};

/// C(z) at beta = beta_c, where the concurrence is affine on the whole ball.
/// Throws NotAtBifurcation when |beta - beta_c| > 1e-9.
AffineZ linear_concurrence_check(const AxialParams& p);

}  // namespace qroof
