#include "ttspin/qcd_production.hpp"

#include "ttspin/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ttspin {

double beta_of_mass(double m_ttbar, double m_top) {
  if (!(m_top > 0.0))
    throw InvalidKinematics("top mass must be positive");
  if (!(m_ttbar >= 2.0 * m_top)) {
    std::ostringstream os;
    os << "invariant mass " << m_ttbar << " GeV is below the pair threshold " << 2.0 * m_top
       << " GeV";
    throw BelowThreshold(os.str());
  }
  const double ratio = 2.0 * m_top / m_ttbar;
  return std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
}

namespace {
void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    std::ostringstream os;
    os << "production angle " << theta << " outside [0, pi]";
    throw InvalidKinematics(os.str());
  }
}
} // namespace

Kinematics Kinematics::at_mass(double m_ttbar, double theta, double m_top) {
  const double beta = beta_of_mass(m_ttbar, m_top);
  check_theta(theta);
  return Kinematics(m_top, m_ttbar, theta, beta);
}

Kinematics Kinematics::at_beta(double beta, double theta, double m_top) {
  if (!(m_top > 0.0))
    throw InvalidKinematics("top mass must be positive");
  if (!(beta >= 0.0 && beta < 1.0)) {
    std::ostringstream os;
    os << "velocity " << beta << " outside [0, 1)";
    throw InvalidKinematics(os.str());
  }
  check_theta(theta);
  return Kinematics(m_top, 2.0 * m_top / std::sqrt(1.0 - beta * beta), theta, beta);
}

std::string_view to_string(Channel c) { return c == Channel::gg ? "gg" : "qqbar"; }

ProductionCoefficients qqbar_coefficients(const Kinematics &kin) {
  const double b2 = kin.beta() * kin.beta();
  const double s = std::sin(kin.theta());
  const double s2 = s * s;
  const double f = 1.0 / 18.0;

  ProductionCoefficients c;
  c.channel = Channel::qqbar;
  c.f_prefactor = f;
  c.a_tilde = f * (2.0 - b2 * s2);
  c.c_rr = f * (2.0 - b2) * s2;
  c.c_nn = -f * b2 * s2;
  c.c_kk = f * (2.0 - (2.0 - b2) * s2);
  c.c_rk = f * std::sqrt(1.0 - b2) * std::sin(2.0 * kin.theta());
  return c;
}

ProductionCoefficients gg_coefficients(const Kinematics &kin) {
  const double b2 = kin.beta() * kin.beta();
  const double b4 = b2 * b2;
  const double s = std::sin(kin.theta());
  const double cth = std::cos(kin.theta());
  const double s2 = s * s;
  const double sin2t = std::sin(2.0 * kin.theta());
  const double quartic = 1.0 + s2 * s2;
  const double damp = 1.0 - b2 * cth * cth;
  const double f = (7.0 + 9.0 * b2 * cth * cth) / (192.0 * damp * damp);

  ProductionCoefficients c;
  c.channel = Channel::gg;
  c.f_prefactor = f;
  c.a_tilde = f * (1.0 + 2.0 * b2 * s2 - b4 * quartic);
  c.c_rr = -f * (1.0 - b2 * (2.0 - b2) * quartic);
  c.c_nn = -f * (1.0 - 2.0 * b2 + b4 * quartic);
  c.c_kk = -f * (1.0 - b2 * sin2t * sin2t / 2.0 - b4 * quartic);
  c.c_rk = f * std::sqrt(1.0 - b2) * b2 * sin2t * s2;
  return c;
}

ProductionCoefficients channel_coefficients(Channel ch, const Kinematics &kin) {
  return ch == Channel::gg ? gg_coefficients(kin) : qqbar_coefficients(kin);
}

Matrix4 literal_density_matrix(const ProductionCoefficients &c) {
  const double a = c.a_tilde;
  const double rk = c.c_rk, kr = c.c_kr();
  const double rows[4][4] = {
      {a + c.c_kk, kr, rk, c.c_rr - c.c_nn},
      {kr, a - c.c_kk, c.c_rr + c.c_nn, -rk},
      {rk, c.c_rr + c.c_nn, a - c.c_kk, -kr},
      {c.c_rr - c.c_nn, -rk, -kr, a + c.c_kk},
  };
  Matrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      m(i, j) = rows[i][j] / (4.0 * a);
  return m;
}

Matrix4 pauli_density_matrix(const ProductionCoefficients &c) {
  // Correlation matrix indexed in the (k, r, n) order of pauli::frame.
  const double corr[3][3] = {
      {c.c_kk, c.c_kr(), 0.0},
      {c.c_rk, c.c_rr, 0.0},
      {0.0, 0.0, c.c_nn},
  };
  Matrix4 m = Matrix4::identity();
  for (std::size_t i = 0; i < 3; ++i) {
    m += (c.b_plus[i] / c.a_tilde) * kron(pauli::frame[i], pauli::identity);
    m += (c.b_minus[i] / c.a_tilde) * kron(pauli::identity, pauli::frame[i]);
    for (std::size_t j = 0; j < 3; ++j)
      if (corr[i][j] != 0.0)
        m += (corr[i][j] / c.a_tilde) * kron(pauli::frame[i], pauli::frame[j]);
  }
  return 0.25 * m;
}

namespace {
SpinDensityMatrix checked_state(const Matrix4 &m) {
  const EigenSystem<4> eig = hermitian_eigensystem(m);
  if (eig.values[3] < -1e-10) {
    std::ostringstream os;
    os << "production state has eigenvalue " << eig.values[3];
    throw NotPSD(os.str());
  }
  return SpinDensityMatrix::from(m, eig);
}
} // namespace

SpinDensityMatrix assemble_density(const ProductionCoefficients &c) {
  if (!(c.a_tilde > 0.0))
    throw NotPSD("cross-section coefficient a_tilde must be positive");
  return checked_state(literal_density_matrix(c));
}

MixtureWeights MixtureWeights::gluon_fraction(double w_gg) {
  if (!(w_gg >= 0.0 && w_gg <= 1.0))
    throw ValidationError("w_gg", "gluon weight must lie in [0, 1]");
  return MixtureWeights(w_gg);
}

Matrix4 mixed_matrix(const Kinematics &kin, MixtureWeights w) {
  Matrix4 m;
  if (w.gg() > 0.0)
    m += w.gg() * literal_density_matrix(gg_coefficients(kin));
  if (w.qqbar() > 0.0)
    m += w.qqbar() * literal_density_matrix(qqbar_coefficients(kin));
  return m;
}

SpinDensityMatrix mixed_state(const Kinematics &kin, MixtureWeights w) {
  return checked_state(mixed_matrix(kin, w));
}

} // namespace ttspin
