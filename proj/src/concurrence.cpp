#include "qroof/concurrence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qroof/errors.hpp"

namespace qroof {

namespace {

const Mat4 kEta = Vec4(1.0, -1.0, -1.0, -1.0).asDiagonal();

double kernel_tolerance(const Mat4& q) { return tol::psd * std::max(1.0, q.cwiseAbs().maxCoeff()); }

}  // namespace

Mat4 q_matrix(const QubitMap& m, double w) {
  const Eigen::RowVector3d tl = m.t.transpose() * m.lambda;
  Mat4 q;
  q(0, 0) = 1.0 - m.t.squaredNorm() - w;
  q.block<1, 3>(0, 1) = -tl;
  q.block<3, 1>(1, 0) = -tl.transpose();
  q.block<3, 3>(1, 1) = w * Mat3::Identity() - m.lambda.transpose() * m.lambda;
  return q;
}

std::array<double, 4> eigen_flow(const QubitMap& m) {
  // Extended precision keeps Jordan-block splitting (amplitude damping, Kraus-2 maps)
  // near sqrt(eps_ld) ~ 3e-10, well below tol::imag.
  using Mat4l = Eigen::Matrix<long double, 4, 4>;
  const Mat4l a = (kEta * q_matrix(m, 0.0)).cast<long double>();
  Eigen::EigenSolver<Mat4l> solver(a, false);
  const auto ev = solver.eigenvalues();

  std::array<double, 4> w{};
  for (int i = 0; i < 4; ++i) {
    if (std::abs(static_cast<double>(ev(i).imag())) > tol::imag) {
      std::ostringstream os;
      os << "eta*Q0 has eigenvalue " << static_cast<double>(ev(i).real()) << " + "
         << static_cast<double>(ev(i).imag()) << "i";
      throw NonRealEigenvalues(os.str());
    }
    w[i] = static_cast<double>(ev(i).real());
  }
  std::stable_sort(w.begin(), w.end(), std::greater<>());

  // Collapse near-ties onto their mean; a split Jordan pair has an accurate mean.
  for (int i = 0; i < 4;) {
    int j = i + 1;
    while (j < 4 && w[j - 1] - w[j] < tol::degenerate) ++j;
    if (j - i > 1) {
      double mean = 0.0;
      for (int k = i; k < j; ++k) mean += w[k];
      mean /= (j - i);
      for (int k = i; k < j; ++k) w[k] = mean;
    }
    i = j;
  }
  return w;
}

double critical_w(const QubitMap& m) { return eigen_flow(m)[1]; }

std::vector<Vec4> kernel_basis(const Mat4& q, double tolerance) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(q);
  std::vector<Vec4> out;
  int smallest = 0;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(es.eigenvalues()(i)) < std::abs(es.eigenvalues()(smallest))) smallest = i;
    if (std::abs(es.eigenvalues()(i)) <= tolerance) out.push_back(es.eigenvectors().col(i));
  }
  if (out.empty()) out.push_back(es.eigenvectors().col(smallest));
  return out;
}

namespace {

Foliation build_foliation(const Mat4& qw0) {
  Foliation f;
  f.kernel = kernel_basis(qw0, kernel_tolerance(qw0));

  if (f.kernel.size() == 1) {
    Vec4 n = f.kernel.front();
    n /= n.cwiseAbs().maxCoeff();
    if (std::abs(n(0)) < tol::flat_n0) {
      f.leaves = FlatLeaves{{n.tail<3>().normalized()}};
    } else {
      f.leaves = ApexLeaves{MinkowskiVector(Vec4(n / n(0)))};
    }
    return f;
  }

  // A kernel of dimension k >= 2 always meets {n0 = 0} in a (k-1)-dimensional subspace.
  const int k = static_cast<int>(f.kernel.size());
  Eigen::Matrix<double, 4, Eigen::Dynamic> K(4, k);
  for (int i = 0; i < k; ++i) K.col(i) = f.kernel[i];
  const Eigen::RowVectorXd first = K.row(0);
  Eigen::MatrixXd null_basis;
  if (first.norm() < tol::flat_n0) {
    null_basis = Eigen::MatrixXd::Identity(k, k);
  } else {
    // Complement of the first row inside R^k.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(first.transpose());
    null_basis = Eigen::MatrixXd(qr.householderQ()).rightCols(k - 1);
  }
  Eigen::MatrixXd spatial = (K * null_basis).bottomRows(3);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(spatial);
  const Eigen::MatrixXd Qs = Eigen::MatrixXd(qr.householderQ()).leftCols(spatial.cols());
  FlatLeaves flat;
  for (int i = 0; i < Qs.cols(); ++i) flat.directions.emplace_back(Qs.col(i));
  f.leaves = std::move(flat);
  return f;
}

}  // namespace

Vec3 Foliation::leaf_direction(const Vec3& bloch) const {
  if (is_flat()) return flat().directions.front();
  const Vec3 d = bloch - apex().point.x;
  return d.normalized();
}

ConcurrenceForm::ConcurrenceForm(const QubitMap& m) : map_(m), q0_(q_matrix(m, 0.0)), flow_(eigen_flow(m)) {
  qw0_ = q_matrix(m, w0());
  const double min_eig = Eigen::SelfAdjointEigenSolver<Mat4>(qw0_, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (min_eig < -tol::psd * std::max(1.0, qw0_.cwiseAbs().maxCoeff())) {
    std::ostringstream os;
    os << "Q_w0 is indefinite (min eigenvalue " << min_eig << "); the map is not positive";
    throw NotPositive(os.str());
  }
  foliation_ = build_foliation(qw0_);
}

double ConcurrenceForm::quadratic(const MinkowskiVector& v) const {
  const Vec4 x = v.as_vector();
  return x.dot(qw0_ * x);
}

double ConcurrenceForm::operator()(const Vec3& bloch) const {
  const double q = quadratic({1.0, bloch});
  if (q < -tol::psd) {
    std::ostringstream os;
    os << "concurrence form is negative (" << q << ")";
    throw NegativeForm(os.str());
  }
  return std::sqrt(std::max(0.0, q));
}

double ConcurrenceForm::operator()(const State& s) const { return (*this)(s.bloch()); }

double concurrence(const QubitMap& m, const State& s) { return ConcurrenceForm(m)(s); }

double pure_concurrence(const QubitMap& m, const Vec3& direction) {
  // Near pure outputs 1 - r^2 cancels badly and the square root amplifies the
  // rounding, so the output radius is formed in extended precision.
  using L = long double;
  const L nx = direction(0), ny = direction(1), nz = direction(2);
  const L norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  L r2 = 0;
  for (int i = 0; i < 3; ++i) {
    const L y = (m.lambda(i, 0) * nx + m.lambda(i, 1) * ny + m.lambda(i, 2) * nz) / norm + m.t(i);
    r2 += y * y;
  }
  return static_cast<double>(std::sqrt(std::max(L(0), 1 - r2)));
}

Foliation foliation(const QubitMap& m) { return ConcurrenceForm(m).foliation(); }

AffineZ linear_concurrence_check(const AxialParams& p) {
  const double bc = std::sqrt(axial_beta_c_sq(p.alpha, p.gamma));
  if (std::abs(p.beta - bc) > 1e-9) {
    std::ostringstream os;
    os << "beta=" << p.beta << " is not at the bifurcation beta_c=" << bc;
    throw NotAtBifurcation(os.str());
  }
  const double a = std::sqrt(p.alpha * (1.0 - p.alpha));
  const double g = std::sqrt(p.gamma * (1.0 - p.gamma));
  return {a - g, a + g};
}

}  // namespace qroof
