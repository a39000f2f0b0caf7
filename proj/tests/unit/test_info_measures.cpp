#include "test_support.hpp"

#include "ttspin/closed_forms.hpp"
#include "ttspin/errors.hpp"
#include "ttspin/info_measures.hpp"
#include "ttspin/qcd_production.hpp"

#include <doctest.h>

#include <numbers>

using namespace ttspin;
using namespace ttspin::testing;

namespace {

constexpr double pi = std::numbers::pi;

SpinDensityMatrix mixed() { return SpinDensityMatrix::from(maximally_mixed()); }
SpinDensityMatrix singlet() { return SpinDensityMatrix::from(singlet_projector()); }
SpinDensityMatrix classical() {
  return SpinDensityMatrix::from(Matrix4::diagonal({0.5, 0.0, 0.0, 0.5}));
}
SpinDensityMatrix up_up() { return SpinDensityMatrix::from(Matrix4::diagonal({1.0, 0.0, 0.0, 0.0})); }

const ObservablePair kr = ObservablePair::helicity_default();

bool near(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

} // namespace

TEST_SUITE("info_measures") {

TEST_CASE("observable pairs") {
  CHECK(kr.c_overlap() == 0.5);
  CHECK(ObservablePair::from_axes(Axis::along_k(), Axis::along_n()).c_overlap() == 0.5);
  CHECK(ObservablePair::from_axes(Axis::along_k(), Axis{2.0, 0.0, 0.0}).c_overlap() == 1.0);
  CHECK_THROWS_AS(ObservablePair::from_axes(Axis{}, Axis::along_r()), ZeroAxis);

  // Overlap depends only on the angle between the axes: compare against the
  // largest |<q_i|r_j>|^2 over explicit eigenvectors of the spin operators.
  for (int trial = 0; trial < 100; ++trial) {
    const Axis q = random_axis(), r = random_axis();
    const ObservablePair p = ObservablePair::from_axes(q, r);
    const auto eq = hermitian_eigensystem(spin_along(q));
    const auto er = hermitian_eigensystem(spin_along(r));
    double best = 0.0;
    for (const auto &vq : eq.vectors)
      for (const auto &vr : er.vectors)
        best = std::max(best, std::norm(std::conj(vq[0]) * vr[0] + std::conj(vq[1]) * vr[1]));
    CHECK(near(p.c_overlap(), (1.0 + std::abs(q.dot(r))) / 2.0));
    CHECK(near(p.c_overlap(), best, 1e-12));
  }
}

TEST_CASE("mutual information") {
  CHECK(near(mutual_information(mixed()), 0.0));
  CHECK(near(mutual_information(singlet()), 2.0));
  CHECK(near(mutual_information(classical()), 1.0));
}

TEST_CASE("relative entropy of coherence") {
  CHECK(near(rel_entropy_coherence(classical()), 0.0));
  CHECK(near(rel_entropy_coherence(SpinDensityMatrix::from(Matrix4::diagonal({0.1, 0.2, 0.3, 0.4}))), 0.0));
  CHECK(near(rel_entropy_coherence(singlet()), 1.0));

  const Kinematics k = Kinematics::at_mass(500.0, pi / 3);
  const double spectral = rel_entropy_coherence(assemble_density(gg_coefficients(k)));
  CHECK(near(spectral, 0.17855742074896500961, 1e-12)); // mpmath oracle
  CHECK(near(spectral, rec_closed(ChannelPairInput::at(k, MixtureWeights::gluon_fraction(1.0))),
             1e-8));
}

TEST_CASE("conditional entropy and joint predictability") {
  CHECK(near(conditional_entropy(singlet()), -1.0));
  CHECK(near(conditional_entropy(mixed()), 1.0));
  CHECK(near(conditional_entropy(classical()), 0.0));

  CHECK(near(predictability_joint(mixed()), 0.0));
  CHECK(near(predictability_joint(up_up()), 2.0));
  CHECK(near(predictability_joint(singlet()), 1.0));
}

TEST_CASE("complete complementarity") {
  const CcrAudit s = ccr_audit(singlet());
  CHECK(near(s.qmi, 2.0));
  CHECK(near(s.cond_entropy, -1.0));
  CHECK(near(s.pred_a, 0.0));
  CHECK(near(s.coh_a, 0.0));
  CHECK(near(s.ccr_sum, 1.0));

  const CcrAudit p = ccr_audit(up_up());
  CHECK(near(p.qmi, 0.0));
  CHECK(near(p.cond_entropy, 0.0));
  CHECK(near(p.pred_a, 1.0));
  CHECK(near(p.coh_a, 0.0));
  CHECK(near(p.ccr_sum, 1.0));

  // Holds for every two-qubit state, including ones with coherent marginals.
  for (int trial = 0; trial < 200; ++trial) {
    const CcrAudit r = ccr_audit(SpinDensityMatrix::from(random_density<4>()));
    CHECK(near(r.ccr_sum, 1.0, 1e-10));
  }

  for (double m : {350.0, 500.0, 900.0})
    for (double w : {0.0, 0.4, 1.0}) {
      const CcrAudit lo = ccr_audit(mixed_state(Kinematics::at_mass(m, 0.7),
                                                MixtureWeights::gluon_fraction(w)));
      CHECK(near(lo.pred_a, 0.0));
      CHECK(near(lo.coh_a, 0.0));
      CHECK(near(lo.qmi + lo.cond_entropy, 1.0, 1e-10));
    }
}

TEST_CASE("measured conditional entropy") {
  CHECK(near(measured_conditional_entropy(singlet(), Axis::along_k()), 0.0));
  CHECK(near(measured_conditional_entropy(mixed(), random_axis()), 1.0));
  CHECK(near(measured_conditional_entropy(classical(), Axis::along_r()), 1.0));
  CHECK_THROWS_AS(measured_conditional_entropy(mixed(), Axis{}), ZeroAxis);

  for (int trial = 0; trial < 100; ++trial) {
    const double s = measured_conditional_entropy(SpinDensityMatrix::from(random_density<4>()),
                                                  random_axis());
    CHECK(s >= -1e-12);
    CHECK(s <= 1.0 + 1e-12);
  }
}

TEST_CASE("entropic uncertainty relation") {
  const UncertaintyAudit s = uncertainty_audit(singlet(), kr);
  CHECK(near(s.eur_lhs, 0.0));
  CHECK(near(s.eur_rhs, 0.0));
  const UncertaintyAudit m = uncertainty_audit(mixed(), kr);
  CHECK(near(m.eur_lhs, 2.0));
  CHECK(near(m.eur_rhs, 2.0));
  const UncertaintyAudit c = uncertainty_audit(classical(), kr);
  CHECK(near(c.eur_lhs, 1.0));
  CHECK(near(c.eur_rhs, 1.0));

  for (int trial = 0; trial < 200; ++trial) {
    const auto obs = ObservablePair::from_axes(random_axis(), random_axis());
    CHECK(uncertainty_audit(SpinDensityMatrix::from(random_density<4>()), obs).slack() >= -1e-10);
  }
}

TEST_CASE("intrinsic relation") {
  const IntrinsicAudit s = intrinsic_audit(singlet(), kr);
  CHECK(near(s.intrinsic_lhs, 3.0));
  CHECK(s.intrinsic_rhs == 3.0);
  const IntrinsicAudit m = intrinsic_audit(mixed(), kr);
  CHECK(near(m.intrinsic_lhs, 3.0));

  // Term-by-term against the 60-digit spectral oracle.
  const SpinDensityMatrix gg = assemble_density(gg_coefficients(Kinematics::at_mass(500.0, pi / 4)));
  const MeasureReport r = measure_all(gg, kr);
  CHECK(near(r.s_q_given_b, 0.89814492653935198543));
  CHECK(near(r.s_r_given_b, 0.9824387714423302739));
  CHECK(near(r.entropy_b, 1.0));
  CHECK(near(r.pred_joint, 0.084293054330275018116));
  CHECK(near(r.rec, 0.098081047833257942669));
  CHECK(near(r.intrinsic_lhs, 3.0629578001452152201));
  CHECK(r.intrinsic_lhs > 3.0);
  CHECK(near(intrinsic_audit(gg, kr).intrinsic_lhs, r.intrinsic_lhs, 0.0));
}

TEST_CASE("report fields are mutually consistent and in range") {
  for (int trial = 0; trial < 200; ++trial) {
    const SpinDensityMatrix rho = SpinDensityMatrix::from(random_density<4>());
    const MeasureReport r = measure_all(rho, kr);
    CHECK(r.ccr_sum == r.qmi + r.cond_entropy_a_given_b + r.pred_a + r.coh_a);
    CHECK(r.intrinsic_lhs == r.s_q_given_b + r.s_r_given_b + r.entropy_b + r.pred_joint + r.rec);
    CHECK(near(r.qmi, mutual_information(rho)));
    CHECK(near(r.rec, rel_entropy_coherence(rho)));
    CHECK(near(r.cond_entropy_a_given_b, conditional_entropy(rho)));
    CHECK(near(r.pred_joint, predictability_joint(rho)));
    CHECK(r.qmi >= -1e-12);
    CHECK(r.qmi <= 2.0 + 1e-12);
    CHECK(r.rec >= -1e-12);
    CHECK(r.rec <= 2.0 + 1e-12);
    CHECK(r.cond_entropy_a_given_b >= -1.0 - 1e-12);
    CHECK(r.cond_entropy_a_given_b <= 1.0 + 1e-12);
    CHECK(r.intrinsic_lhs >= r.intrinsic_rhs - 1e-10);
  }
}

} // TEST_SUITE
