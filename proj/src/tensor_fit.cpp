#include "spinqc/tensor_fit.hpp"

#include <cmath>

#include "spinqc/spin_ensemble.hpp"

namespace spinqc {

Mat3 SymmetricTensor3::matrix() const {
  Mat3 m;
  m << xx, xy, zx, xy, yy, yz, zx, yz, zz;
  return m;
}

SymmetricTensor3 SymmetricTensor3::from_matrix(const Mat3& m) {
  return {m(0, 0), m(1, 1), m(2, 2), 0.5 * (m(0, 1) + m(1, 0)), 0.5 * (m(1, 2) + m(2, 1)),
          0.5 * (m(0, 2) + m(2, 0))};
}

double field_to_g(double nu0_hz, double field_tesla) {
  if (nu0_hz <= 0.0 || field_tesla <= 0.0)
    throw std::domain_error("field_to_g: inputs must be positive");
  return constants::h * nu0_hz / (constants::mu_bohr * field_tesla);
}

double g_to_field(double nu0_hz, double g) {
  if (nu0_hz <= 0.0 || g <= 0.0) throw std::domain_error("g_to_field: inputs must be positive");
  return constants::h * nu0_hz / (constants::mu_bohr * g);
}

PlaneConstants fit_plane_constants(const std::vector<AngularMeasurement>& data) {
  if (data.size() < 3) throw std::invalid_argument("fit_plane_constants: need >= 3 points");
  for (const auto& d : data)
    if (d.plane != data.front().plane)
      throw std::invalid_argument("fit_plane_constants: mixed planes");

  // Normal equations for value^2 = k1 + k2 cos 2t + k3 sin 2t.
  Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
  Eigen::Vector3d atb = Eigen::Vector3d::Zero();
  for (const auto& d : data) {
    Eigen::Vector3d row(1.0, std::cos(2.0 * d.theta_rad), std::sin(2.0 * d.theta_rad));
    ata += row * row.transpose();
    atb += row * (d.value * d.value);
  }
  Eigen::FullPivLU<Eigen::Matrix3d> lu(ata);
  if (lu.rank() < 3)
    throw std::invalid_argument("fit_plane_constants: angles collapse (rank-deficient fit)");
  Eigen::Vector3d k = lu.solve(atb);

  double ss = 0.0;
  for (const auto& d : data) {
    double pred = k(0) + k(1) * std::cos(2.0 * d.theta_rad) + k(2) * std::sin(2.0 * d.theta_rad);
    double r = d.value * d.value - pred;
    ss += r * r;
  }
  return {k(0), k(1), k(2), std::sqrt(ss / double(data.size()))};
}

std::pair<SymmetricTensor3, ConsistencyReport> assemble_squared_tensor(
    const PlaneConstants& xy, const PlaneConstants& yz, const PlaneConstants& zx) {
  // Each diagonal entry is measured in two planes.
  double xx_a = xy.k1 + xy.k2, xx_b = zx.k1 - zx.k2;
  double yy_a = yz.k1 + yz.k2, yy_b = xy.k1 - xy.k2;
  double zz_a = zx.k1 + zx.k2, zz_b = yz.k1 - yz.k2;
  SymmetricTensor3 t{0.5 * (xx_a + xx_b), 0.5 * (yy_a + yy_b), 0.5 * (zz_a + zz_b),
                     xy.k3, yz.k3, zx.k3};
  ConsistencyReport rep{Vec3(std::abs(xx_a - xx_b), std::abs(yy_a - yy_b),
                             std::abs(zz_a - zz_b))};
  return {t, rep};
}

PrincipalSystem principal_values(const SymmetricTensor3& t, TensorQuantity quantity) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(t.matrix());
  Vec3 ev = es.eigenvalues();  // ascending
  PrincipalSystem out;
  out.sign_resolved = quantity == TensorQuantity::G;
  for (int i = 0; i < 3; ++i) {
    double lambda = ev(i);
    if (quantity == TensorQuantity::G && lambda < -1e-9)
      throw std::runtime_error("principal_values: squared g tensor has a negative eigenvalue");
    out.principal_values(i) = std::sqrt(std::max(0.0, std::abs(lambda)));
  }
  Mat3 rows = es.eigenvectors().transpose();
  for (int i = 0; i < 3; ++i) {
    for (int c = 0; c < 3; ++c) {
      if (std::abs(rows(i, c)) > 1e-12) {
        if (rows(i, c) < 0) rows.row(i) = -rows.row(i);
        break;
      }
    }
  }
  out.direction_cosines = rows;
  return out;
}

Vec3 plane_direction(Plane plane, double theta_rad) {
  double c = std::cos(theta_rad), s = std::sin(theta_rad);
  switch (plane) {
    case Plane::XY:
      return Vec3(c, s, 0.0);
    case Plane::YZ:
      return Vec3(0.0, c, s);
    case Plane::ZX:
      return Vec3(s, 0.0, c);
  }
  throw std::invalid_argument("plane_direction: unknown plane");
}

double effective_value(const SymmetricTensor3& t, const Vec3& direction) {
  if (std::abs(direction.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("effective_value: direction must be a unit vector");
  double q = direction.transpose() * t.matrix() * direction;
  if (q < 0) throw std::runtime_error("effective_value: squared tensor not PSD along direction");
  return std::sqrt(q);
}

double mcconnell_spin_density(double a_mhz, McConnellRelation relation) {
  switch (relation) {
    case McConnellRelation::H:
      return a_mhz / 1426.2;
    case McConnellRelation::N:
      return a_mhz / 84.2;
    case McConnellRelation::PI_CH:
      return a_mhz / -61.8;
  }
  throw std::invalid_argument("mcconnell_spin_density: unknown relation");
}

RelaxationFit fit_t1(const std::vector<std::pair<double, double>>& data) {
  if (data.size() < 4) throw std::invalid_argument("fit_t1: need >= 4 points");
  double m0 = 0.0, m_min = std::numeric_limits<double>::infinity();
  for (const auto& [t, m] : data) {
    if (t < 0) throw std::invalid_argument("fit_t1: negative time");
    m0 = std::max(m0, m);
    m_min = std::min(m_min, m);
  }
  if (!(m0 > m_min + 1e-15 * std::abs(m0)) || m0 <= 0.0)
    throw std::runtime_error("fit_t1: no recovery signature in data");

  // T1 init: first time the signal crosses half recovery.
  double t1 = 0.0;
  for (const auto& [t, m] : data)
    if (m >= 0.5 * m0 && t > 0) {
      t1 = t / 0.6931471805599453;  // half recovery at t = T1 ln 2
      break;
    }
  if (t1 <= 0.0) t1 = data.back().first;

  // Gauss-Newton on (m0, T1).
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
    Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
    for (const auto& [t, m] : data) {
      double e = std::exp(-t / t1);
      double model = m0 * (1.0 - e);
      double r = m - model;
      Eigen::Vector2d jac(1.0 - e, -m0 * e * t / (t1 * t1));
      jtj += jac * jac.transpose();
      jtr += jac * r;
    }
    Eigen::Vector2d step = jtj.ldlt().solve(jtr);
    if (!step.allFinite()) throw std::runtime_error("fit_t1: singular normal equations");
    m0 += step(0);
    t1 += step(1);
    if (t1 <= 0.0) throw std::runtime_error("fit_t1: diverged to nonpositive T1");
    double rel = std::abs(step(0)) / std::max(1e-30, std::abs(m0)) +
                 std::abs(step(1)) / std::max(1e-30, std::abs(t1));
    if (rel < 1e-10) break;
    if (iter == 199) throw std::runtime_error("fit_t1: no convergence in 200 iterations");
  }

  double ss = 0.0;
  for (const auto& [t, m] : data) {
    double r = m - m0 * (1.0 - std::exp(-t / t1));
    ss += r * r;
  }
  return {t1, m0, std::sqrt(ss / double(data.size()))};
}

RelaxationFit fit_t2(const std::vector<std::pair<double, double>>& data) {
  if (data.size() < 2) throw std::invalid_argument("fit_t2: need >= 2 points");
  // Linearized fit of log(echo) = log A - 2 tau / T2 on positive echoes.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [tau, echo] : data) {
    if (echo <= 0.0) continue;
    double y = std::log(echo);
    sx += tau;
    sy += y;
    sxx += tau * tau;
    sxy += tau * y;
    ++n;
  }
  if (n < 2) throw std::runtime_error("fit_t2: fewer than two positive echoes");
  double denom = double(n) * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) throw std::runtime_error("fit_t2: degenerate tau values");
  double slope = (double(n) * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / double(n);
  if (slope >= 0.0) throw std::runtime_error("fit_t2: echo does not decay");
  double t2 = -2.0 / slope;
  double a = std::exp(intercept);

  // One Gauss-Newton polish step on the nonlinear model.
  for (int iter = 0; iter < 2; ++iter) {
    Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
    Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
    for (const auto& [tau, echo] : data) {
      double e = std::exp(-2.0 * tau / t2);
      double r = echo - a * e;
      Eigen::Vector2d jac(e, a * e * 2.0 * tau / (t2 * t2));
      jtj += jac * jac.transpose();
      jtr += jac * r;
    }
    Eigen::Vector2d step = jtj.ldlt().solve(jtr);
    if (!step.allFinite()) break;
    a += step(0);
    t2 += step(1);
    if (t2 <= 0.0) throw std::runtime_error("fit_t2: polish diverged");
  }

  double ss = 0.0;
  for (const auto& [tau, echo] : data) {
    double r = echo - a * std::exp(-2.0 * tau / t2);
    ss += r * r;
  }
  return {t2, a, std::sqrt(ss / double(data.size()))};
}

}  // namespace spinqc
