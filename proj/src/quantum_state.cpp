#include "spinqc/quantum_state.hpp"

#include <algorithm>
#include <cmath>

namespace spinqc {

namespace {

constexpr double kLog2 = 0.6931471805599453;  // ln 2

double log2_safe(double p) { return std::log(p) / kLog2; }

}  // namespace

PureState::PureState(Vec amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() < 1) throw std::invalid_argument("PureState: empty amplitude vector");
  double norm2 = amp_.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-9)
    throw std::invalid_argument("PureState: amplitudes not normalized");
}

PureState PureState::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw std::out_of_range("PureState::basis: bad index");
  Vec v = Vec::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

double PureState::overlap(const PureState& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("overlap: dimension mismatch");
  return std::abs(amp_.dot(other.amp_));
}

DensityMatrix::DensityMatrix(Mat entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw std::invalid_argument("DensityMatrix: not square");
  if (!is_hermitian(m_)) throw std::invalid_argument("DensityMatrix: not Hermitian");
  double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) throw std::invalid_argument("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(m_);
  double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < -kEigClipTol)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
  if (min_ev < 0) {
    // Repair float noise: clip eigenvalues in [-1e-9, 0) to zero, renormalize.
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    ev /= ev.sum();
    m_ = es.eigenvectors() * ev.asDiagonal().toDenseMatrix().cast<cxd>() *
         es.eigenvectors().adjoint();
    m_ = 0.5 * (m_ + m_.adjoint().eval());
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Vec& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(Mat::Identity(dim, dim) / double(dim));
}

DensityMatrix DensityMatrix::diagonal(const Eigen::VectorXd& populations) {
  Mat m = Mat::Zero(populations.size(), populations.size());
  for (Eigen::Index i = 0; i < populations.size(); ++i) m(i, i) = populations(i);
  return DensityMatrix(std::move(m));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(m_);
  return es.eigenvalues();
}

Eigen::VectorXd DensityMatrix::populations() const { return m_.diagonal().real(); }

Operator::Operator(Mat entries, bool hermitian_flag)
    : m_(std::move(entries)), hermitian_(hermitian_flag) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw std::invalid_argument("Operator: not square");
  if (hermitian_ && !is_hermitian(m_))
    throw std::invalid_argument("Operator: hermitian_flag set but matrix is not Hermitian");
}

Operator Operator::identity(int dim) { return Operator(Mat::Identity(dim, dim), true); }

PureState tensor_product(const PureState& a, const PureState& b) {
  return PureState(kron(a.amplitudes(), b.amplitudes()));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.entries(), b.entries()));
}

Operator tensor_product(const Operator& a, const Operator& b) {
  return Operator(kron(a.entries(), b.entries()), a.hermitian() && b.hermitian());
}

DensityMatrix partial_trace(const DensityMatrix& rho, int d_a, int d_b, Subsystem keep) {
  return DensityMatrix(partial_trace(rho.entries(), d_a, d_b, int(keep)));
}

Operator partial_transpose(const DensityMatrix& rho, int d_a, int d_b, Subsystem over) {
  return Operator(partial_transpose(rho.entries(), d_a, d_b, int(over)), true);
}

std::vector<SchmidtTerm> schmidt_decompose(const PureState& psi, int d_a, int d_b) {
  if (psi.dim() != d_a * d_b)
    throw std::invalid_argument("schmidt_decompose: dimension does not factor");
  Mat c(d_a, d_b);
  for (int i = 0; i < d_a; ++i)
    for (int j = 0; j < d_b; ++j) c(i, j) = psi.amplitude(i * d_b + j);
  Eigen::JacobiSVD<Mat> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  std::vector<SchmidtTerm> terms;
  int k_max = int(std::min(d_a, d_b));
  for (int k = 0; k < k_max; ++k) {
    double lambda = svd.singularValues()(k);
    Vec va = svd.matrixU().col(k);
    Vec vb = svd.matrixV().col(k).conjugate();
    terms.push_back({lambda, PureState(va), PureState(vb)});
  }
  return terms;  // JacobiSVD singular values are already descending
}

int schmidt_rank(const std::vector<SchmidtTerm>& terms, double tol) {
  return int(std::count_if(terms.begin(), terms.end(),
                           [tol](const SchmidtTerm& t) { return t.lambda > tol; }));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  Eigen::VectorXd ev = rho.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double p = ev(i);
    if (p > 1e-15) s -= p * log2_safe(p);
  }
  return s;
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  Mat sa = hermitian_sqrt(a.entries());
  Mat inner = sa * b.entries() * sa;
  double f = hermitian_sqrt(inner).trace().real();
  return std::clamp(f, 0.0, 1.0);
}

PureState apply_unitary(const PureState& psi, const Operator& u) {
  if (u.dim() != psi.dim()) throw std::invalid_argument("apply_unitary: dimension mismatch");
  if (!is_unitary(u.entries())) throw std::invalid_argument("apply_unitary: U not unitary");
  return PureState(u.entries() * psi.amplitudes());
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Operator& u) {
  if (u.dim() != rho.dim()) throw std::invalid_argument("apply_unitary: dimension mismatch");
  if (!is_unitary(u.entries())) throw std::invalid_argument("apply_unitary: U not unitary");
  return DensityMatrix(u.entries() * rho.entries() * u.entries().adjoint());
}

std::vector<MeasurementOutcome> measure(const DensityMatrix& rho,
                                        const std::vector<Operator>& ops) {
  if (ops.empty()) throw std::invalid_argument("measure: empty operator set");
  Mat sum = Mat::Zero(rho.dim(), rho.dim());
  for (const auto& m : ops) {
    if (m.dim() != rho.dim()) throw std::invalid_argument("measure: dimension mismatch");
    sum += m.entries().adjoint() * m.entries();
  }
  if (max_abs(sum - Mat::Identity(rho.dim(), rho.dim())) > 1e-9)
    throw std::invalid_argument("measure: operators do not satisfy completeness");
  std::vector<MeasurementOutcome> out;
  for (const auto& m : ops) {
    Mat post = m.entries() * rho.entries() * m.entries().adjoint();
    double p = post.trace().real();
    if (p < 1e-14) {
      out.push_back({std::max(p, 0.0), std::nullopt});  // post-state undefined
    } else {
      out.push_back({p, DensityMatrix(post / p)});
    }
  }
  return out;
}

namespace gates2 {

Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat pauli_y() {
  Mat m(2, 2);
  m << 0, cxd(0, -1), cxd(0, 1), 0;
  return m;
}

Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat hadamard() {
  Mat m(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Mat identity2() { return Mat::Identity(2, 2); }

}  // namespace gates2

// |beta_zx> = (|0,x> + (-1)^z |1,1-x>) / sqrt(2)
PureState bell_state(int z, int x) {
  if ((z != 0 && z != 1) || (x != 0 && x != 1))
    throw std::invalid_argument("bell_state: z,x must be bits");
  Vec v = Vec::Zero(4);
  double s = 1.0 / std::sqrt(2.0);
  v(0 * 2 + x) = s;
  v(1 * 2 + (1 - x)) = (z == 0 ? s : -s);
  return PureState(std::move(v));
}

}  // namespace spinqc
