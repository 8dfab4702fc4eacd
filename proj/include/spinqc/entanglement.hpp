// Computable bipartite entanglement quantities: concurrence, entanglement of
// formation, negativity, logarithmic negativity, PPT test, entropy of
// entanglement, and witness expectation values. Two-qubit unless noted.

#pragma once

#include "spinqc/quantum_state.hpp"

namespace spinqc {

struct EntanglementReport {
  double concurrence = 0.0;
  double eof_bits = 0.0;
  double negativity = 0.0;
  double log_negativity_bits = 0.0;
  bool ppt = true;
  double min_pt_eigenvalue = 0.0;
  bool entangled = false;
};

// Wootters concurrence: C = max(0, l1-l2-l3-l4) from the spin-flipped
// spectrum, rho_tilde = (Y⊗Y) rho* (Y⊗Y).
double concurrence(const DensityMatrix& rho);

// E_f = h((1+sqrt(1-C^2))/2) bits, h the binary entropy.
double entanglement_of_formation(const DensityMatrix& rho);

double binary_entropy(double x);

// Sum of |negative eigenvalues| of the partial transpose; equals
// (||rho^T_B||_1 - 1)/2.
double negativity(const DensityMatrix& rho, int d_a, int d_b);

// log2 ||rho^T_B||_1, bits.
double log_negativity(const DensityMatrix& rho, int d_a, int d_b);

struct PptResult {
  bool ppt;
  double min_eigenvalue;
};

PptResult is_ppt(const DensityMatrix& rho, int d_a, int d_b);

// Entropy of either reduced state, from the Schmidt coefficients, bits.
double entropy_of_entanglement(const PureState& psi, int d_a, int d_b);

// tr(W rho); W must be Hermitian. Imaginary residue above 1e-9 is an error.
double witness_expectation(const DensityMatrix& rho, const Operator& w);

EntanglementReport entanglement_report(const DensityMatrix& rho);

}  // namespace spinqc
