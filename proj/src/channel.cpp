#include "qroof/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Eigenvalues>

#include "qroof/concurrence.hpp"
#include "qroof/errors.hpp"

namespace qroof {

namespace {

// Slack on the closed-form axial inequalities, so boundary maps (amplitude damping,
// beta = beta_max) classify as positive despite rounding.
constexpr double kAxialSlack = 1e-12;

std::string format_value(const char* fmt, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

const char* to_string(PositivityClass c) {
  switch (c) {
    case PositivityClass::NotPositive:
      return "NotPositive";
    case PositivityClass::Positive:
      return "Positive";
    case PositivityClass::CompletelyPositive:
      return "CompletelyPositive";
  }
  return "?";
}

Mat2c QubitMap::apply_matrix(const Mat2c& m) const {
  const Eigen::Vector4cd c = complex_coordinates(m);
  Eigen::Vector4cd out;
  out(0) = c(0);
  out.tail<3>() = c(0) * t.cast<Complex>() + lambda.cast<Complex>() * c.tail<3>();
  return complex_matrix(out);
}

QubitMap axial(const AxialParams& p) {
  QubitMap m;
  m.lambda = Vec3(p.beta, p.beta, p.alpha + p.gamma - 1.0).asDiagonal();
  m.t = Vec3(0.0, 0.0, p.alpha - p.gamma);
  return m;
}

QubitMap unital(double l1, double l2, double l3) {
  QubitMap m;
  m.lambda = Vec3(l1, l2, l3).asDiagonal();
  m.t.setZero();
  return m;
}

Kraus2Map kraus2(double u, double v) {
  Kraus2Map out;
  if (std::cos(u) < std::cos(v)) {
    std::swap(u, v);
    out.swapped = true;
  }
  out.map.lambda = Vec3(std::cos(u), std::cos(v), std::cos(u) * std::cos(v)).asDiagonal();
  out.map.t = Vec3(0.0, 0.0, std::sin(u) * std::sin(v));
  return out;
}

QubitMap depolarizing(double p) { return unital(p, p, p); }
QubitMap phase_damping(double p) { return unital(p, p, 1.0); }
QubitMap amplitude_damping(double alpha) {
  return axial({alpha, std::sqrt(std::max(alpha, 0.0)), 1.0});
}

std::optional<AxialParams> as_axial(const QubitMap& m, double tolerance) {
  const Mat3& L = m.lambda;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && std::abs(L(i, j)) > tolerance) return std::nullopt;
  if (std::abs(L(0, 0) - L(1, 1)) > tolerance) return std::nullopt;
  if (std::abs(m.t(0)) > tolerance || std::abs(m.t(1)) > tolerance) return std::nullopt;
  AxialParams p;
  p.beta = std::abs(L(0, 0));
  p.alpha = 0.5 * (1.0 + L(2, 2) + m.t(2));
  p.gamma = 0.5 * (1.0 + L(2, 2) - m.t(2));
  return p;
}

bool is_unital(const QubitMap& m, double tolerance) { return m.t.cwiseAbs().maxCoeff() <= tolerance; }

QubitMap from_action(const std::function<Mat2c(const Mat2c&)>& action) {
  QubitMap m;
  m.t = complex_coordinates(action(to_matrix({1.0, Vec3::Zero()}))).real().tail<3>();
  for (int j = 0; j < 3; ++j) {
    const Mat2c out = action(to_matrix({0.0, Vec3::Unit(j)}));
    m.lambda.col(j) = complex_coordinates(out).real().tail<3>();
  }
  return m;
}

QubitMap from_kraus(const std::vector<Mat2c>& kraus) {
  return from_action([&](const Mat2c& rho) {
    Mat2c out = Mat2c::Zero();
    for (const auto& k : kraus) out += k * rho * k.adjoint();
    return out;
  });
}

Eigen::Matrix4cd choi_matrix(const QubitMap& m) {
  Eigen::Matrix4cd J = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Mat2c unit = Mat2c::Zero();
      unit(i, j) = 1.0;
      J.block<2, 2>(2 * i, 2 * j) = m.apply_matrix(unit);
    }
  }
  return J;
}

double axial_beta_max_sq(double alpha, double gamma) {
  const double root = std::sqrt(std::max(0.0, alpha * (1 - alpha) * gamma * (1 - gamma)));
  return 1.0 + 2.0 * alpha * gamma - alpha - gamma + 2.0 * root;
}

double axial_beta_c_sq(double alpha, double gamma) {
  const double root = std::sqrt(std::max(0.0, alpha * (1 - alpha) * gamma * (1 - gamma)));
  return std::max(0.0, 1.0 + 2.0 * alpha * gamma - alpha - gamma - 2.0 * root);
}

PositivityReport positivity_report(const AxialParams& p) {
  PositivityReport r;
  if (p.alpha < -kAxialSlack || p.alpha > 1.0 + kAxialSlack) {
    r.violation = format_value("alpha=%.6g outside [0,1]", p.alpha);
    return r;
  }
  if (p.gamma < -kAxialSlack || p.gamma > 1.0 + kAxialSlack) {
    r.violation = format_value("gamma=%.6g outside [0,1]", p.gamma);
    return r;
  }
  const double b2 = p.beta * p.beta;
  const double bmax2 = axial_beta_max_sq(p.alpha, p.gamma);
  if (b2 > bmax2 + kAxialSlack) {
    r.violation = format_value("beta exceeds beta_max=%.6f", std::sqrt(bmax2));
    return r;
  }
  r.cls = b2 <= p.alpha * p.gamma + kAxialSlack ? PositivityClass::CompletelyPositive
                                                : PositivityClass::Positive;
  return r;
}


PositivityReport positivity_report(const QubitMap& m) {
  if (auto p = as_axial(m)) return positivity_report(*p);
  return positivity_report_general(m);
}

PositivityReport positivity_report_general(const QubitMap& m) {
  PositivityReport r;
  std::array<double, 4> flow{};
  try {
    flow = eigen_flow(m);
  } catch (const NonRealEigenvalues&) {
    r.violation = "eta*Q0 has non-real eigenvalues";
    return r;
  }
  const double w2 = flow[1];
  if (w2 < -tol::psd) {
    r.violation = format_value("critical value w2=%.6g is negative", w2);
    return r;
  }
  const Mat4 q = q_matrix(m, w2);
  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  const double min_eig = Eigen::SelfAdjointEigenSolver<Mat4>(q, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (min_eig < -tol::psd * scale) {
    r.violation = format_value("Q_w2 is not positive semidefinite (min eigenvalue %.3g)", min_eig);
    return r;
  }
  const double choi_min =
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(choi_matrix(m), Eigen::EigenvaluesOnly).eigenvalues()(0);
  r.cls = choi_min >= -tol::psd ? PositivityClass::CompletelyPositive : PositivityClass::Positive;
  return r;
}

PositivityClass classify_positivity(const QubitMap& m) { return positivity_report(m).cls; }
PositivityClass classify_positivity(const AxialParams& p) { return positivity_report(p).cls; }

}  // namespace qroof
