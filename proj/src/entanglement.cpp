#include "spinqc/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace spinqc {

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("concurrence: requires a 2-qubit state");
  Mat yy = kron(gates2::pauli_y(), gates2::pauli_y());
  // Spin flip in the fixed computational basis {|00>,|01>,|10>,|11>}. The
  // spectrum of R = sqrt(sqrt(rho) rho~ sqrt(rho)) equals the singular
  // values of sqrt(rho) (Y⊗Y) sqrt(rho)*, which avoids squaring near-zero
  // eigenvalues on rank-deficient inputs.
  Mat sq = hermitian_sqrt(rho.entries());
  Mat m = sq * yy * sq.conjugate();
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& l = svd.singularValues();  // descending
  double c = l(0) - l(1) - l(2) - l(3);
  return std::max(0.0, c);
}

double entanglement_of_formation(const DensityMatrix& rho) {
  double c = concurrence(rho);
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

double negativity(const DensityMatrix& rho, int d_a, int d_b) {
  Mat pt = partial_transpose(rho.entries(), d_a, d_b, 1);
  Eigen::SelfAdjointEigenSolver<Mat> es(pt);
  double neg_sum = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) < 0) neg_sum -= es.eigenvalues()(i);
  double via_norm = 0.5 * (trace_norm(pt) - 1.0);
  if (std::abs(neg_sum - via_norm) > 1e-9)
    throw std::runtime_error("negativity: eigenvalue-sum and trace-norm routes disagree");
  return neg_sum;
}

double log_negativity(const DensityMatrix& rho, int d_a, int d_b) {
  Mat pt = partial_transpose(rho.entries(), d_a, d_b, 1);
  return std::log2(trace_norm(pt));
}

PptResult is_ppt(const DensityMatrix& rho, int d_a, int d_b) {
  Mat pt = partial_transpose(rho.entries(), d_a, d_b, 1);
  Eigen::SelfAdjointEigenSolver<Mat> es(pt);
  double min_ev = es.eigenvalues().minCoeff();
  return {min_ev >= -1e-9, min_ev};
}

double entropy_of_entanglement(const PureState& psi, int d_a, int d_b) {
  auto terms = schmidt_decompose(psi, d_a, d_b);
  double s = 0.0;
  for (const auto& t : terms) {
    double p = t.lambda * t.lambda;
    if (p > 1e-15) s -= p * std::log2(p);
  }
  return s;
}

double witness_expectation(const DensityMatrix& rho, const Operator& w) {
  if (!w.hermitian() || !is_hermitian(w.entries()))
    throw std::invalid_argument("witness_expectation: W must be Hermitian");
  if (w.dim() != rho.dim())
    throw std::invalid_argument("witness_expectation: dimension mismatch");
  cxd tr = (w.entries() * rho.entries()).trace();
  if (std::abs(tr.imag()) > 1e-9)
    throw std::runtime_error("witness_expectation: non-real trace");
  return tr.real();
}

EntanglementReport entanglement_report(const DensityMatrix& rho) {
  if (rho.dim() != 4)
    throw std::invalid_argument("entanglement_report: requires a 2-qubit state");
  EntanglementReport r;
  r.concurrence = concurrence(rho);
  r.eof_bits = entanglement_of_formation(rho);
  r.negativity = negativity(rho, 2, 2);
  r.log_negativity_bits = log_negativity(rho, 2, 2);
  auto ppt = is_ppt(rho, 2, 2);
  r.ppt = ppt.ppt;
  r.min_pt_eigenvalue = ppt.min_eigenvalue;
  r.entangled = r.concurrence > 1e-9;
  return r;
}

}  // namespace spinqc
