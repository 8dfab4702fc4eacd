// Dense complex linear algebra helpers shared by all modules.
// Everything here works on small matrices (dim <= 16).

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace spinqc {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kEigClipTol = 1e-9;
inline constexpr double kUnitaryTol = 1e-9;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  return out;
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const Mat& m, double tol = kHermitianTol) {
  return max_abs(m - m.adjoint()) <= tol;
}

inline bool is_unitary(const Mat& m, double tol = kUnitaryTol) {
  return max_abs(m.adjoint() * m - Mat::Identity(m.rows(), m.cols())) <= tol;
}

// Subsystem A is the leftmost tensor factor (slowest-varying index).
// Index (r, c) of a (dA*dB)-dim matrix splits as r = m*dB + mu, c = n*dB + nu.
inline Mat partial_trace(const Mat& rho, int d_a, int d_b, int keep) {
  if (rho.rows() != Eigen::Index(d_a) * d_b || rho.rows() != rho.cols())
    throw std::invalid_argument("partial_trace: dimension does not factor as d_a*d_b");
  if (keep == 0) {
    Mat out = Mat::Zero(d_a, d_a);
    for (int m = 0; m < d_a; ++m)
      for (int n = 0; n < d_a; ++n)
        for (int mu = 0; mu < d_b; ++mu) out(m, n) += rho(m * d_b + mu, n * d_b + mu);
    return out;
  }
  Mat out = Mat::Zero(d_b, d_b);
  for (int mu = 0; mu < d_b; ++mu)
    for (int nu = 0; nu < d_b; ++nu)
      for (int m = 0; m < d_a; ++m) out(mu, nu) += rho(m * d_b + mu, m * d_b + nu);
  return out;
}

// rho^{T_B}_{m mu, n nu} = rho_{m nu, n mu}; over=0 transposes subsystem A instead.
inline Mat partial_transpose(const Mat& rho, int d_a, int d_b, int over) {
  if (rho.rows() != Eigen::Index(d_a) * d_b || rho.rows() != rho.cols())
    throw std::invalid_argument("partial_transpose: dimension does not factor as d_a*d_b");
  Mat out(rho.rows(), rho.cols());
  for (int m = 0; m < d_a; ++m)
    for (int n = 0; n < d_a; ++n)
      for (int mu = 0; mu < d_b; ++mu)
        for (int nu = 0; nu < d_b; ++nu) {
          if (over == 1)
            out(m * d_b + mu, n * d_b + nu) = rho(m * d_b + nu, n * d_b + mu);
          else
            out(m * d_b + mu, n * d_b + nu) = rho(n * d_b + mu, m * d_b + nu);
        }
  return out;
}

// Square root of a Hermitian PSD matrix; eigenvalues clipped at 0.
inline Mat hermitian_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) > 0 ? std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * ev.asDiagonal().toDenseMatrix().cast<cxd>() *
         es.eigenvectors().adjoint();
}

// ||A||_1 = tr sqrt(A^dag A); for Hermitian A this is the sum of |eigenvalues|.
inline double trace_norm(const Mat& a) {
  if (is_hermitian(a)) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues().sum();
}

// max |A - e^{i phi} B| minimized over the global phase phi.
inline double global_phase_distance(const Mat& a, const Mat& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  cxd ratio = a(r, c) / b(r, c);
  double mag = std::abs(ratio);
  cxd phase = mag > 0 ? ratio / mag : cxd(1, 0);
  return max_abs(a - phase * b);
}

inline double global_phase_distance(const Vec& a, const Vec& b) {
  Eigen::Index r = 0;
  b.cwiseAbs().maxCoeff(&r);
  cxd ratio = a(r) / b(r);
  double mag = std::abs(ratio);
  cxd phase = mag > 0 ? ratio / mag : cxd(1, 0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace spinqc
