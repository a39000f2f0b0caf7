#pragma once

// Analytic QMI and REC of the leading-order qqbar/gg mixture, evaluated
// term by term exactly as printed in the source derivation. They serve as a
// validation layer for the spectral route, which stays authoritative.
//
// The first logarithm of both expressions is printed as
//   log[ W_gg P_gg / (4 A_gg) - W_qq P_qq / (4 A_qq) ],  P = A + C_rr - C_nn + C_kk
// while the matching eigenvalue of the mixed state is the weighted *sum*.
// For a pure channel the two agree; for genuine mixtures the printed form
// either leaves the log domain or disagrees with the spectral value. That
// outcome is reported through ClosedFormStatus, never patched here.

#include "ttspin/qcd_production.hpp"

#include <array>
#include <string>
#include <string_view>

namespace ttspin {

class ChannelPairInput {
public:
  // Both channels evaluated at the same phase-space point.
  static ChannelPairInput at(const Kinematics &kin, MixtureWeights w);
  // Arbitrary, possibly unnormalized weights. Only meant for degenerate
  // checks such as the empty mixture.
  static ChannelPairInput with_raw_weights(const Kinematics &kin, double w_gg, double w_qqbar);

  const Kinematics &kinematics() const noexcept { return kin_; }
  const ProductionCoefficients &gg() const noexcept { return gg_; }
  const ProductionCoefficients &qqbar() const noexcept { return qq_; }
  double w_gg() const noexcept { return w_gg_; }
  double w_qqbar() const noexcept { return w_qq_; }

private:
  ChannelPairInput(const Kinematics &kin, double wg, double wq);

  Kinematics kin_;
  ProductionCoefficients gg_;
  ProductionCoefficients qq_;
  double w_gg_;
  double w_qq_;
};

struct Discriminant {
  double f1_gg = 0.0;
  double f1_qq = 0.0;
  double radicand = 0.0;
  double q_value = 0.0;
};

/// Throws NegativeRadicand if the radicand is below -1e-12; values in
/// (-1e-12, 0) are clamped to zero.
Discriminant discriminant(const ChannelPairInput &in);

/// The four logarithm arguments of the entropy terms, in printed order:
/// the (printed) first term, the 1/4 term, then the -Q and +Q terms.
std::array<double, 4> printed_eigenvalue_terms(const ChannelPairInput &in);

/// Throw DomainError when a logarithm argument is non-positive while its
/// prefactor is not (a 0 log 0 term counts as zero).
double qmi_closed(const ChannelPairInput &in);
double rec_closed(const ChannelPairInput &in);

enum class ClosedFormStatus { ok, discrepancy, domain_error };
std::string_view to_string(ClosedFormStatus s);

struct ClosedFormCheck {
  double closed = 0.0;   // NaN when status == domain_error
  double spectral = 0.0;
  ClosedFormStatus status = ClosedFormStatus::ok;
  std::string diagnostic; // empty when ok
};

inline constexpr double kClosedFormTolerance = 1e-8;

ClosedFormCheck check_qmi_closed(const ChannelPairInput &in, double spectral_qmi,
                                 double tolerance = kClosedFormTolerance);
ClosedFormCheck check_rec_closed(const ChannelPairInput &in, double spectral_rec,
                                 double tolerance = kClosedFormTolerance);

/// Worst of two statuses (domain_error > discrepancy > ok).
ClosedFormStatus combine(ClosedFormStatus a, ClosedFormStatus b);

} // namespace ttspin
