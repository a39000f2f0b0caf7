#pragma once

// Leading-order QCD production spin density matrix of a top-antitop pair.

#include "ttspin/spin_algebra.hpp"

#include <array>
#include <string_view>

namespace ttspin {

inline constexpr double kDefaultTopMass = 173.0; // GeV

/// sqrt(1 - 4 m_top^2 / m_ttbar^2). Throws BelowThreshold when m_ttbar < 2 m_top.
double beta_of_mass(double m_ttbar, double m_top = kDefaultTopMass);

/// One phase-space point: pair invariant mass and production angle between
/// the top direction and the beam axis in the centre-of-mass frame.
class Kinematics {
public:
  static Kinematics at_mass(double m_ttbar, double theta, double m_top = kDefaultTopMass);
  // Invariant mass is derived as 2 m_top / sqrt(1 - beta^2).
  static Kinematics at_beta(double beta, double theta, double m_top = kDefaultTopMass);

  double m_top() const noexcept { return m_top_; }
  double m_ttbar() const noexcept { return m_ttbar_; }
  double theta() const noexcept { return theta_; }
  double beta() const noexcept { return beta_; }

  friend bool operator==(const Kinematics &, const Kinematics &) = default;

private:
  Kinematics(double m_top, double m_ttbar, double theta, double beta)
      : m_top_(m_top), m_ttbar_(m_ttbar), theta_(theta), beta_(beta) {}

  double m_top_;
  double m_ttbar_;
  double theta_;
  double beta_;
};

enum class Channel { qqbar, gg };
std::string_view to_string(Channel c);

/// Un-normalized coefficients of the production spin density matrix.
/// Correlations are stored as produced (C-tilde); divide by a_tilde for the
/// normalized correlation matrix. c_kr equals c_rk at leading order.
struct ProductionCoefficients {
  Channel channel = Channel::gg;
  double a_tilde = 0.0;
  double c_rr = 0.0;
  double c_nn = 0.0;
  double c_kk = 0.0;
  double c_rk = 0.0;
  std::array<double, 3> b_plus{};  // (k, r, n); zero at leading order
  std::array<double, 3> b_minus{};
  double f_prefactor = 0.0;

  double c_kr() const noexcept { return c_rk; }
};

ProductionCoefficients qqbar_coefficients(const Kinematics &kin);
ProductionCoefficients gg_coefficients(const Kinematics &kin);
ProductionCoefficients channel_coefficients(Channel c, const Kinematics &kin);

/// Literal 4x4 matrix (helicity product basis) divided by 4 a_tilde.
Matrix4 literal_density_matrix(const ProductionCoefficients &c);

/// Same state built from the Pauli expansion
/// (I + B+.sigma x I + I x B-.sigma + C_ij sigma_i x sigma_j) / 4
/// with normalized B = b / a_tilde and C = c / a_tilde.
Matrix4 pauli_density_matrix(const ProductionCoefficients &c);

/// Normalized state; throws NotPSD if the coefficients give a negative
/// eigenvalue below -1e-10.
SpinDensityMatrix assemble_density(const ProductionCoefficients &c);

/// Probability of the gluon-fusion channel; the quark-antiquark weight is
/// its complement.
class MixtureWeights {
public:
  // Throws ValidationError unless 0 <= w_gg <= 1.
  static MixtureWeights gluon_fraction(double w_gg);

  double gg() const noexcept { return w_gg_; }
  double qqbar() const noexcept { return 1.0 - w_gg_; }

private:
  explicit MixtureWeights(double w) : w_gg_(w) {}
  double w_gg_;
};

/// w_gg rho_gg + w_qqbar rho_qqbar, each channel normalized by its own
/// 4 a_tilde before mixing.
SpinDensityMatrix mixed_state(const Kinematics &kin, MixtureWeights w);
Matrix4 mixed_matrix(const Kinematics &kin, MixtureWeights w);

} // namespace ttspin
