#include "ttspin/info_measures.hpp"

#include <cmath>

namespace ttspin {

ObservablePair ObservablePair::from_axes(const Axis &q, const Axis &r) {
  const Axis qn = q.normalized();
  const Axis rn = r.normalized();
  return ObservablePair(qn, rn, 0.5 * (1.0 + std::abs(qn.dot(rn))));
}

ObservablePair ObservablePair::helicity_default() {
  return ObservablePair(Axis::along_k(), Axis::along_r(), 0.5);
}

namespace {

// Entropies shared by several measures.
struct Entropies {
  double joint;
  double a;
  double b;
  double diagonal;
  double a_diagonal;
};

Entropies entropies_of(const SpinDensityMatrix &rho) {
  const QubitState rho_a = partial_trace(rho, Subsystem::A);
  const QubitState rho_b = partial_trace(rho, Subsystem::B);
  const std::array<double, 4> diag = {rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(),
                                      rho(3, 3).real()};
  const std::array<double, 2> diag_a = {rho_a(0, 0).real(), rho_a(1, 1).real()};
  return {von_neumann_entropy(rho), von_neumann_entropy(rho_a), von_neumann_entropy(rho_b),
          shannon_entropy_bits(diag), shannon_entropy_bits(diag_a)};
}

constexpr double kLog2DimA = 1.0;
constexpr double kLog2DimAB = 2.0;

} // namespace

double mutual_information(const SpinDensityMatrix &rho) {
  const Entropies s = entropies_of(rho);
  return s.a + s.b - s.joint;
}

double rel_entropy_coherence(const SpinDensityMatrix &rho) {
  return von_neumann_entropy(dephase_diagonal(rho)) - von_neumann_entropy(rho);
}

double conditional_entropy(const SpinDensityMatrix &rho) {
  return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, Subsystem::B));
}

double predictability_joint(const SpinDensityMatrix &rho) {
  return kLog2DimAB - von_neumann_entropy(dephase_diagonal(rho));
}

namespace {
CcrAudit ccr_from(const Entropies &s) {
  CcrAudit c;
  c.qmi = s.a + s.b - s.joint;
  c.cond_entropy = s.joint - s.b;
  c.pred_a = kLog2DimA - s.a_diagonal;
  c.coh_a = s.a_diagonal - s.a;
  c.ccr_sum = c.qmi + c.cond_entropy + c.pred_a + c.coh_a;
  return c;
}

double measured_from(const SpinDensityMatrix &rho, const Axis &axis, double entropy_b) {
  return von_neumann_entropy(local_dephase(rho, axis)) - entropy_b;
}
} // namespace

CcrAudit ccr_audit(const SpinDensityMatrix &rho) { return ccr_from(entropies_of(rho)); }

double measured_conditional_entropy(const SpinDensityMatrix &rho, const Axis &axis) {
  const Axis unit = axis.normalized();
  return measured_from(rho, unit, von_neumann_entropy(partial_trace(rho, Subsystem::B)));
}

UncertaintyAudit uncertainty_audit(const SpinDensityMatrix &rho, const ObservablePair &obs) {
  const MeasureReport r = measure_all(rho, obs);
  return {r.eur_lhs, r.eur_rhs};
}

IntrinsicAudit intrinsic_audit(const SpinDensityMatrix &rho, const ObservablePair &obs) {
  const MeasureReport r = measure_all(rho, obs);
  return {r.intrinsic_lhs, r.intrinsic_rhs};
}

MeasureReport measure_all(const SpinDensityMatrix &rho, const ObservablePair &obs) {
  const Entropies s = entropies_of(rho);
  const CcrAudit ccr = ccr_from(s);
  const double log_inv_c = -std::log2(obs.c_overlap());

  MeasureReport r;
  r.qmi = ccr.qmi;
  r.rec = s.diagonal - s.joint;
  r.cond_entropy_a_given_b = ccr.cond_entropy;
  r.entropy_b = s.b;
  r.pred_joint = kLog2DimAB - s.diagonal;
  r.pred_a = ccr.pred_a;
  r.coh_a = ccr.coh_a;
  r.ccr_sum = ccr.ccr_sum;
  r.s_q_given_b = measured_from(rho, obs.q_axis(), s.b);
  r.s_r_given_b = measured_from(rho, obs.r_axis(), s.b);
  r.eur_lhs = r.s_q_given_b + r.s_r_given_b;
  r.eur_rhs = log_inv_c + r.cond_entropy_a_given_b;
  r.intrinsic_lhs = r.eur_lhs + r.entropy_b + r.pred_joint + r.rec;
  r.intrinsic_rhs = log_inv_c + kLog2DimAB;
  return r;
}

} // namespace ttspin
