#include "ttspin/closed_forms.hpp"

#include "ttspin/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ttspin {

ChannelPairInput::ChannelPairInput(const Kinematics &kin, double wg, double wq)
    : kin_(kin), gg_(gg_coefficients(kin)), qq_(qqbar_coefficients(kin)), w_gg_(wg), w_qq_(wq) {}

ChannelPairInput ChannelPairInput::at(const Kinematics &kin, MixtureWeights w) {
  return ChannelPairInput(kin, w.gg(), w.qqbar());
}

ChannelPairInput ChannelPairInput::with_raw_weights(const Kinematics &kin, double w_gg,
                                                    double w_qqbar) {
  return ChannelPairInput(kin, w_gg, w_qqbar);
}

Discriminant discriminant(const ChannelPairInput &in) {
  const auto &g = in.gg();
  const auto &q = in.qqbar();
  const double wg = in.w_gg(), wq = in.w_qqbar();
  const double dg = g.c_rr - g.c_kk;
  const double dq = q.c_rr - q.c_kk;

  Discriminant d;
  d.f1_gg = wg * wg * q.a_tilde * q.a_tilde * (4.0 * g.c_rk * g.c_rk + dg * dg);
  d.f1_qq = wq * wq * g.a_tilde * g.a_tilde * (4.0 * q.c_rk * q.c_rk + dq * dq);
  d.radicand = d.f1_gg + d.f1_qq +
               2.0 * wg * wq * g.a_tilde * q.a_tilde * (4.0 * g.c_rk * q.c_rk + dq * dg);
  if (d.radicand < -1e-12) {
    std::ostringstream os;
    os << "discriminant radicand " << d.radicand << " is negative";
    throw NegativeRadicand(os.str());
  }
  d.radicand = std::max(0.0, d.radicand);
  d.q_value = std::sqrt(d.radicand);
  return d;
}

namespace {

// Pieces shared by both printed expressions.
struct Terms {
  double denom; // 4 A_gg A_qq
  std::array<double, 4> prefactor;
  std::array<double, 4> argument;
};

Terms entropy_terms(const ChannelPairInput &in) {
  const auto &g = in.gg();
  const auto &q = in.qqbar();
  const double wg = in.w_gg(), wq = in.w_qqbar();
  const double ag = g.a_tilde, aq = q.a_tilde;

  const double pg = ag + g.c_rr - g.c_nn + g.c_kk;
  const double pq = aq + q.c_rr - q.c_nn + q.c_kk;
  const double sg = g.c_rr + g.c_nn + g.c_kk;
  const double sq = q.c_rr + q.c_nn + q.c_kk;
  const double k = wq * ag * (aq + q.c_nn) + wg * aq * (ag + g.c_nn);
  const double qv = discriminant(in).q_value;

  Terms t;
  t.denom = 4.0 * ag * aq;
  t.prefactor = {wg * aq * pg + wq * ag * pq, ag * aq - wg * aq * sg - wq * ag * sq, k - qv,
                 k + qv};
  t.argument = {wg * pg / (4.0 * ag) - wq * pq / (4.0 * aq),
                0.25 - wg * sg / (4.0 * ag) - wq * sq / (4.0 * aq), (k - qv) / t.denom,
                (k + qv) / t.denom};
  return t;
}

constexpr double kZeroTolerance = 1e-12;

// prefactor * ln(argument), with 0 ln 0 = 0. `scale` normalizes the prefactor.
double xlog(double prefactor, double argument, double scale, const char *label) {
  if (argument > 0.0)
    return prefactor * std::log(argument);
  if (std::abs(argument) <= kZeroTolerance && std::abs(prefactor / scale) <= kZeroTolerance)
    return 0.0;
  std::ostringstream os;
  os.precision(17);
  os << label << ": log argument " << argument << " with prefactor " << prefactor / scale;
  throw DomainError(os.str());
}

double eigen_sum(const Terms &t) {
  static constexpr const char *labels[4] = {"first eigenvalue term", "quarter eigenvalue term",
                                            "minus-Q eigenvalue term", "plus-Q eigenvalue term"};
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    s += xlog(t.prefactor[i], t.argument[i], t.denom, labels[i]);
  return s;
}

} // namespace

std::array<double, 4> printed_eigenvalue_terms(const ChannelPairInput &in) {
  return entropy_terms(in).argument;
}

double qmi_closed(const ChannelPairInput &in) {
  const Terms t = entropy_terms(in);
  return 2.0 + eigen_sum(t) / (t.denom * std::numbers::ln2);
}

double rec_closed(const ChannelPairInput &in) {
  const Terms t = entropy_terms(in);
  const auto &g = in.gg();
  const auto &q = in.qqbar();
  const double wg = in.w_gg(), wq = in.w_qqbar();
  const double ag = g.a_tilde, aq = q.a_tilde;
  const double x = wg * g.c_kk / ag + wq * q.c_kk / aq;

  double s = t.denom * std::log(4.0);
  s += xlog(2.0 * (wg * aq * g.c_kk + wq * ag * q.c_kk - ag * aq), 1.0 - x, t.denom,
            "1 - C_kk population term");
  s += xlog(-2.0 * (wg * aq * (ag + g.c_kk) + wq * ag * (aq + q.c_kk)), 1.0 + x, t.denom,
            "1 + C_kk population term");
  s += eigen_sum(t);
  return s / (t.denom * std::numbers::ln2);
}

std::string_view to_string(ClosedFormStatus s) {
  switch (s) {
  case ClosedFormStatus::ok:
    return "ok";
  case ClosedFormStatus::discrepancy:
    return "discrepancy";
  case ClosedFormStatus::domain_error:
    return "domain_error";
  }
  return "unknown";
}

ClosedFormStatus combine(ClosedFormStatus a, ClosedFormStatus b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

namespace {
template <class F>
ClosedFormCheck check(F &&formula, const ChannelPairInput &in, double spectral, double tolerance,
                      const char *name) {
  ClosedFormCheck c;
  c.spectral = spectral;
  try {
    c.closed = formula(in);
  } catch (const DomainError &e) {
    c.closed = std::numeric_limits<double>::quiet_NaN();
    c.status = ClosedFormStatus::domain_error;
    c.diagnostic = std::string(name) + " outside log domain (" + e.what() + ")";
    return c;
  }
  const double diff = c.closed - spectral;
  if (!(std::abs(diff) <= tolerance)) {
    std::ostringstream os;
    os.precision(17);
    os << name << " printed form " << c.closed << " differs from spectral " << spectral << " by "
       << diff;
    c.status = ClosedFormStatus::discrepancy;
    c.diagnostic = os.str();
  }
  return c;
}
} // namespace

ClosedFormCheck check_qmi_closed(const ChannelPairInput &in, double spectral_qmi,
                                 double tolerance) {
  return check(qmi_closed, in, spectral_qmi, tolerance, "qmi_closed");
}

ClosedFormCheck check_rec_closed(const ChannelPairInput &in, double spectral_rec,
                                 double tolerance) {
  return check(rec_closed, in, spectral_rec, tolerance, "rec_closed");
}

} // namespace ttspin
