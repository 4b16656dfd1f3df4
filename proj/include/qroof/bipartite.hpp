#pragma once

#include <functional>

#include <Eigen/Core>

#include "qroof/channel.hpp"
#include "qroof/roof_oracle.hpp"

namespace qroof {

using VecXc = Eigen::VectorXcd;
using MatXc = Eigen::MatrixXcd;

/// A 2-dimensional subspace of C^2 (x) C^n. Coordinates use the A (x) B index
/// convention: component a * n + b for |a> (x) |b>.
struct Subspace2 {
  int dim_b = 1;
  VecXc b0, b1;

  /// Validates orthonormality within 1e-12; throws DomainError.
  Subspace2(int dim_b, VecXc b0, VecXc b1);

  /// Gram-Schmidt basis of span{v0, v1}; throws DomainError if they are dependent.
  static Subspace2 span(int dim_b, const VecXc& v0, const VecXc& v1);

  /// 2n x 2 isometry with the basis vectors as columns.
  MatXc isometry() const;
  /// V rho V^dagger for a 2x2 coordinate matrix.
  MatXc embed(const Mat2c& rho) const;
  /// Basis rotated by a 2x2 unitary: b'_j = sum_i U_ij b_i.
  Subspace2 rotated(const Mat2c& u) const;
};

/// Tr_B of an operator on C^2 (x) C^n.
Mat2c partial_trace_b(const MatXc& rho, int dim_b);

/// GHZ/W subspace of three qubits (n = 4), basis order (W, GHZ).
Subspace2 ghz_w_subspace();
VecXc ghz_state();
VecXc w_state();

VecXc product_vector(const VecXc& a, const VecXc& b);

/// The qubit map rho -> Tr_B(V rho V^dagger) in (Lambda, t) form.
QubitMap induced_map(const Subspace2& sub);

struct SubspaceInvariant {
  double w = 0.0;
};

SubspaceInvariant subspace_w(const Subspace2& sub);

/// sqrt(4 (det rho^A - w det rho)) for a state given in subspace coordinates.
double rank2_concurrence(const Subspace2& sub, const Mat2c& rho);

/// 2(1-w) Tr r1 Tr r2 + 2 [w Tr(r1 r2) - Tr(r1^A r2^A)] for operators on C^2 (x) C^n.
double bilinear_q(const MatXc& rho1, const MatXc& rho2, double w, int dim_b);

/// Second elementary symmetric polynomial of the eigenvalues, ((Tr X)^2 - Tr X^2)/2.
double e2(const MatXc& x);

/// Linear map on m x m matrices.
struct HermitianMap {
  int dim = 0;
  std::function<MatXc(const MatXc&)> apply;
};

/// 2 sqrt(e2(Phi(rho)) - w e2(rho)); throws NegativeForm below -tol::psd.
double e2_lower_bound(const HermitianMap& map, const MatXc& rho, double w);

/// Cancels off-diagonal elements; its recipe value of w is 1.
HermitianMap diagonal_map(int dim);
inline constexpr double diagonal_map_w = 1.0;

/// The 3x3 Choi family with prefactor 1/(1+mu). Throws DomainError for mu < 1.
HermitianMap choi_map(double mu);
/// w for which the e2 recipe reproduces the closed-form Choi bound.
double choi_map_w(double mu);
/// 4 mu/(1+mu)^2 [(Tr rho)^2 + (mu - 1) sum_{j<k} |x_jk|^2], the squared bound.
double choi_bound_sq(double mu, const MatXc& rho);

/// Pure-state functional 2 sqrt(e2(Phi(pi))) on the Bloch sphere of span{u0, u1}, for
/// running the roof oracle on rank-2 states.
PureFunctional subspace_e2_functional(const HermitianMap& map, const VecXc& u0, const VecXc& u1);
/// The operator sum_ij rho_ij |u_i><u_j|.
MatXc subspace_operator(const VecXc& u0, const VecXc& u1, const Mat2c& rho);

}  // namespace qroof
