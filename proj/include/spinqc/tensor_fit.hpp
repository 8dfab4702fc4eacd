// Spectroscopic parameter extraction: g / hyperfine tensor principal values
// and direction cosines from angular-dependence data, field-to-g conversion,
// McConnell spin densities, and T1/T2 relaxation fitting.

#pragma once

#include <string>
#include <vector>

#include "spinqc/linalg.hpp"

namespace spinqc {

enum class Plane { XY, YZ, ZX };

struct AngularMeasurement {
  Plane plane;
  double theta_rad;  // from the plane's first axis
  double value;      // effective g (dimensionless) or effective A (MHz)
};

struct PlaneConstants {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double residual_rms = 0.0;
};

// Squared tensor (g^2 or A^2), symmetric by construction.
struct SymmetricTensor3 {
  double xx, yy, zz, xy, yz, zx;

  Mat3 matrix() const;
  static SymmetricTensor3 from_matrix(const Mat3& m);
};

enum class TensorQuantity { G, A };

struct PrincipalSystem {
  Vec3 principal_values;   // ascending: u <= v <= w
  Mat3 direction_cosines;  // rows l_ix, l_iy, l_iz, orthonormal
  bool sign_resolved;      // false for A (squared analysis leaves signs open)
};

struct ConsistencyReport {
  // |estimate1 - estimate2| for the xx, yy, zz entries duplicated across
  // planes.
  Vec3 diagonal_discrepancy;
};

// g = h nu0 / (mu_B H)
double field_to_g(double nu0_hz, double field_tesla);
double g_to_field(double nu0_hz, double g);

// Least squares of value^2 on [1, cos 2 theta, sin 2 theta]; all points must
// come from the same plane, with >= 3 distinct angles mod pi.
PlaneConstants fit_plane_constants(const std::vector<AngularMeasurement>& data);

std::pair<SymmetricTensor3, ConsistencyReport> assemble_squared_tensor(
    const PlaneConstants& xy, const PlaneConstants& yz, const PlaneConstants& zx);

// Eigensolve of the squared tensor; principal values are square roots
// (signed magnitudes for A, with the sign flagged unresolved). Eigenvector
// rows get a first-nonzero-component-positive sign fix.
PrincipalSystem principal_values(const SymmetricTensor3& t, TensorQuantity quantity);

// sqrt(n^T T^2 n) for a unit direction n.
double effective_value(const SymmetricTensor3& t, const Vec3& direction);

// Unit direction in-plane at angle theta from the plane's first axis.
Vec3 plane_direction(Plane plane, double theta_rad);

enum class McConnellRelation { H, N, PI_CH };

// rho = a / constant; constants 1426.2 (H), 84.2 (N), -61.8 (pi C-H), MHz.
double mcconnell_spin_density(double a_mhz, McConnellRelation relation);

struct RelaxationFit {
  double time_constant_s;
  double amplitude;
  double residual_rms;
};

// m(t) = m0 (1 - exp(-t/T1)), Gauss-Newton with half-recovery initialization.
RelaxationFit fit_t1(const std::vector<std::pair<double, double>>& data);

// echo(tau) = A exp(-2 tau / T2), log-linear fit plus one nonlinear polish.
RelaxationFit fit_t2(const std::vector<std::pair<double, double>>& data);

}  // namespace spinqc
