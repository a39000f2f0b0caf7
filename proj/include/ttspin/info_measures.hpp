#pragma once

// Entropic information measures of a two-qubit state, all in bits.

#include "ttspin/spin_algebra.hpp"

namespace ttspin {

/// Two single-qubit observables measured on subsystem A, given by their spin
/// axes. c_overlap is the largest squared overlap between their eigenstates,
/// (1 + |q.r|)/2 for unit axes.
class ObservablePair {
public:
  // Normalizes both axes; throws ZeroAxis.
  static ObservablePair from_axes(const Axis &q, const Axis &r);
  // Spin along k and spin along r: mutually unbiased, c = 1/2.
  static ObservablePair helicity_default();

  const Axis &q_axis() const noexcept { return q_; }
  const Axis &r_axis() const noexcept { return r_; }
  double c_overlap() const noexcept { return c_; }

private:
  ObservablePair(Axis q, Axis r, double c) : q_(q), r_(r), c_(c) {}
  Axis q_;
  Axis r_;
  double c_;
};

double mutual_information(const SpinDensityMatrix &rho);
double rel_entropy_coherence(const SpinDensityMatrix &rho);
double conditional_entropy(const SpinDensityMatrix &rho); // S(A|B)
double predictability_joint(const SpinDensityMatrix &rho);

struct CcrAudit {
  double qmi = 0.0;
  double cond_entropy = 0.0;
  double pred_a = 0.0;
  double coh_a = 0.0;
  double ccr_sum = 0.0; // equals log2(d_A) = 1 for every state
};
CcrAudit ccr_audit(const SpinDensityMatrix &rho);

/// S(Q|B): conditional entropy after measuring spin along `axis` on A.
double measured_conditional_entropy(const SpinDensityMatrix &rho, const Axis &axis);

struct UncertaintyAudit {
  double eur_lhs = 0.0; // S(Q|B) + S(R|B)
  double eur_rhs = 0.0; // log2(1/c) + S(A|B)
  double slack() const noexcept { return eur_lhs - eur_rhs; }
};
UncertaintyAudit uncertainty_audit(const SpinDensityMatrix &rho, const ObservablePair &obs);

struct IntrinsicAudit {
  double intrinsic_lhs = 0.0; // S(Q|B) + S(R|B) + S(rho_B) + P_vn(rho_AB) + C_re(rho_AB)
  double intrinsic_rhs = 0.0; // log2(1/c) + log2(d_A d_B)
  double slack() const noexcept { return intrinsic_lhs - intrinsic_rhs; }
};
IntrinsicAudit intrinsic_audit(const SpinDensityMatrix &rho, const ObservablePair &obs);

struct MeasureReport {
  double qmi = 0.0;
  double rec = 0.0;
  double cond_entropy_a_given_b = 0.0;
  double entropy_b = 0.0;
  double pred_joint = 0.0;
  double pred_a = 0.0;
  double coh_a = 0.0;
  double ccr_sum = 0.0;
  double s_q_given_b = 0.0;
  double s_r_given_b = 0.0;
  double eur_lhs = 0.0;
  double eur_rhs = 0.0;
  double intrinsic_lhs = 0.0;
  double intrinsic_rhs = 0.0;
};

/// Every measure at once; each matrix involved is diagonalized exactly once.
MeasureReport measure_all(const SpinDensityMatrix &rho, const ObservablePair &obs);

} // namespace ttspin
