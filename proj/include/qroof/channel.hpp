#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qroof/bloch.hpp"

namespace qroof {

/// Trace-preserving linear map (x0, x) -> (x0, x0 t + Lambda x) on Hermitian 2x2 matrices.
struct QubitMap {
  Mat3 lambda = Mat3::Identity();
  Vec3 t = Vec3::Zero();

  MinkowskiVector apply(const MinkowskiVector& v) const { return {v.x0, v.x0 * t + lambda * v.x}; }
  Vec3 apply_bloch(const Vec3& x) const { return t + lambda * x; }

  /// The same linear map acting on arbitrary complex 2x2 matrices.
  Mat2c apply_matrix(const Mat2c& m) const;
};

/// Maps commuting with rotations about the z axis, in the (alpha, beta, gamma) form.
struct AxialParams {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
};

enum class PositivityClass { NotPositive, Positive, CompletelyPositive };

const char* to_string(PositivityClass c);

struct PositivityReport {
  PositivityClass cls = PositivityClass::NotPositive;
  /// Names the violated condition when cls == NotPositive, empty otherwise.
  std::string violation;
};

QubitMap axial(const AxialParams& p);
QubitMap unital(double l1, double l2, double l3);

/// Ruskai normal form of a length-2 channel. When cos u < cos v the angles are
/// swapped and `swapped` is set.
struct Kraus2Map {
  QubitMap map;
  bool swapped = false;
};
Kraus2Map kraus2(double u, double v);

QubitMap depolarizing(double p);
QubitMap phase_damping(double p);
QubitMap amplitude_damping(double alpha);

/// Recovers (alpha, beta, gamma) when the map has the axial structure
/// Lambda = diag(b, b, l3) (b of either sign), t = (0, 0, t3).
std::optional<AxialParams> as_axial(const QubitMap& m, double tolerance = 1e-14);

bool is_unital(const QubitMap& m, double tolerance = 1e-14);

/// Builds (Lambda, t) from any trace-preserving linear action on 2x2 matrices.
QubitMap from_action(const std::function<Mat2c(const Mat2c&)>& action);
QubitMap from_kraus(const std::vector<Mat2c>& kraus);

/// Choi matrix sum_ij |i><j| (x) Phi(|i><j|).
Eigen::Matrix4cd choi_matrix(const QubitMap& m);

double axial_beta_max_sq(double alpha, double gamma);
double axial_beta_c_sq(double alpha, double gamma);

PositivityReport positivity_report(const QubitMap& m);
PositivityReport positivity_report(const AxialParams& p);
/// Eigenvalue test used for maps without axial structure: real spectrum of eta Q0,
/// w2 >= 0 and Q_{w2} >= 0; complete positivity from the Choi matrix.
PositivityReport positivity_report_general(const QubitMap& m);
PositivityClass classify_positivity(const QubitMap& m);
PositivityClass classify_positivity(const AxialParams& p);

}  // namespace qroof
