// Exact state substrate for small 2^n-dimensional systems: pure states,
// density matrices, Hermitian/unitary operators, and the standard
// construction / composition / reduction / measurement operations.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "spinqc/linalg.hpp"

namespace spinqc {

// Normalized complex amplitude vector. Construction enforces sum |a_k|^2 = 1
// within 1e-9.
class PureState {
 public:
  explicit PureState(Vec amplitudes);
  static PureState basis(int dim, int index);

  int dim() const { return int(amp_.size()); }
  const Vec& amplitudes() const { return amp_; }
  cxd amplitude(int k) const { return amp_(k); }

  // |<a|b>|, used for global-phase-insensitive comparison.
  double overlap(const PureState& other) const;

 private:
  Vec amp_;
};

// Hermitian, unit-trace, positive semidefinite matrix. Eigenvalues in
// [-1e-9, 0) are clipped to zero and the trace renormalized; anything worse
// is rejected.
class DensityMatrix {
 public:
  explicit DensityMatrix(Mat entries);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix diagonal(const Eigen::VectorXd& populations);

  int dim() const { return int(m_.rows()); }
  const Mat& entries() const { return m_; }
  cxd entry(int r, int c) const { return m_(r, c); }
  Eigen::VectorXd eigenvalues() const;
  Eigen::VectorXd populations() const;

 private:
  Mat m_;
};

class Operator {
 public:
  Operator(Mat entries, bool hermitian_flag);
  static Operator identity(int dim);

  int dim() const { return int(m_.rows()); }
  const Mat& entries() const { return m_; }
  bool hermitian() const { return hermitian_; }

 private:
  Mat m_;
  bool hermitian_;
};

// Kronecker composition; subsystem order is (first ⊗ second), first factor
// slowest-varying.
PureState tensor_product(const PureState& a, const PureState& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
Operator tensor_product(const Operator& a, const Operator& b);

enum class Subsystem { A = 0, B = 1 };

DensityMatrix partial_trace(const DensityMatrix& rho, int d_a, int d_b, Subsystem keep);
Operator partial_transpose(const DensityMatrix& rho, int d_a, int d_b, Subsystem over);

struct SchmidtTerm {
  double lambda;
  PureState a;
  PureState b;
};

// Terms with descending coefficients; sum lambda_k^2 = 1. Rank counts
// coefficients above 1e-10.
std::vector<SchmidtTerm> schmidt_decompose(const PureState& psi, int d_a, int d_b);
int schmidt_rank(const std::vector<SchmidtTerm>& terms, double tol = 1e-10);

// -sum p log2 p over the spectrum, in bits.
double von_neumann_entropy(const DensityMatrix& rho);

// tr sqrt(sqrt(a) b sqrt(a)); reduces to sqrt(<psi|b|psi>) for pure a.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

PureState apply_unitary(const PureState& psi, const Operator& u);
DensityMatrix apply_unitary(const DensityMatrix& rho, const Operator& u);

struct MeasurementOutcome {
  double probability;
  // Unset when probability is numerically zero.
  std::optional<DensityMatrix> post_state;
};

// Generalized measurement {M_m}; requires sum M^dag M = I within 1e-9.
std::vector<MeasurementOutcome> measure(const DensityMatrix& rho,
                                        const std::vector<Operator>& ops);

// Common fixed operators and states.
namespace gates2 {
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat hadamard();
Mat identity2();
}  // namespace gates2

PureState bell_state(int z, int x);

}  // namespace spinqc
