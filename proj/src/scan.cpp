#include "ttspin/scan.hpp"

#include "ttspin/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

namespace ttspin {

ScanRecord evaluate_point(const Kinematics &kin, MixtureWeights w, const ObservablePair &obs,
                          double closed_form_tolerance) {
  const SpinDensityMatrix rho = mixed_state(kin, w);

  ScanRecord r;
  r.m_ttbar = kin.m_ttbar();
  r.theta = kin.theta();
  r.w_gg = w.gg();
  r.beta = kin.beta();
  r.report = measure_all(rho, obs);
  r.min_eigenvalue = rho.min_eigenvalue();

  const ChannelPairInput pair = ChannelPairInput::at(kin, w);
  const ClosedFormCheck qmi = check_qmi_closed(pair, r.report.qmi, closed_form_tolerance);
  const ClosedFormCheck rec = check_rec_closed(pair, r.report.rec, closed_form_tolerance);
  r.qmi_closed = qmi.closed;
  r.rec_closed = rec.closed;
  r.closed_form_status = combine(qmi.status, rec.status);
  for (const ClosedFormCheck *c : {&qmi, &rec})
    if (!c->diagnostic.empty()) {
      if (!r.closed_form_diagnostic.empty())
        r.closed_form_diagnostic += "; ";
      r.closed_form_diagnostic += c->diagnostic;
    }
  return r;
}

namespace {

bool record_less(const ScanRecord &l, const ScanRecord &r) {
  return std::tie(l.m_ttbar, l.theta, l.w_gg) < std::tie(r.m_ttbar, r.theta, r.w_gg);
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
// thrown by any worker is rethrown on the calling thread.
template <class F> void parallel_for(std::size_t n, unsigned threads, F &&fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error)
            error = std::current_exception();
          failed = true;
        }
      }
    });
  for (auto &th : pool)
    th.join();
  if (error)
    std::rethrow_exception(error);
}

bool is_pure_channel(double w) { return w == 0.0 || w == 1.0; }

// Rows with equal `key`, each ordered by theta.
template <class Key>
std::map<double, std::vector<const ScanRecord *>> rows_by(const std::vector<ScanRecord> &records,
                                                          double w_gg, Key key) {
  std::map<double, std::vector<const ScanRecord *>> rows;
  for (const ScanRecord &r : records)
    if (r.w_gg == w_gg)
      rows[key(r)].push_back(&r);
  for (auto &[_, row] : rows)
    std::sort(row.begin(), row.end(),
              [](const ScanRecord *l, const ScanRecord *r) { return l->theta < r->theta; });
  return rows;
}

template <class Value>
bool monotone(const std::vector<const ScanRecord *> &row, Value value, double tol, bool increasing) {
  for (std::size_t i = 1; i < row.size(); ++i) {
    const double step = value(*row[i]) - value(*row[i - 1]);
    if (increasing ? step < -tol : step > tol)
      return false;
  }
  return true;
}

double rec_of(const ScanRecord &r) { return r.report.rec; }
double intrinsic_of(const ScanRecord &r) { return r.report.intrinsic_lhs; }

} // namespace

std::vector<ScanRecord> fixed_mass_rows(const ScanConfig &config) {
  const ObservablePair obs = config.observables();
  const std::vector<double> thetas = config.theta_grid.values();
  const MixtureWeights gg = MixtureWeights::gluon_fraction(1.0);
  std::vector<ScanRecord> rows;
  for (double m : kFixedMasses) {
    if (m < 2.0 * config.m_top)
      continue;
    for (double th : thetas)
      rows.push_back(evaluate_point(Kinematics::at_mass(m, th, config.m_top), gg, obs,
                                    config.tolerances.closed_form));
  }
  std::sort(rows.begin(), rows.end(), record_less);
  return rows;
}

const TrendCheck *AuditSummary::trend(std::string_view id) const {
  for (const TrendCheck &t : trends)
    if (t.id == id)
      return &t;
  return nullptr;
}

bool AuditSummary::audits_pass(const AuditTolerances &tol) const {
  return max_ccr_deviation <= tol.ccr && max_marginal_measure <= tol.marginal &&
         min_intrinsic_slack >= -tol.inequality && min_eur_slack >= -tol.inequality &&
         min_eigenvalue >= -tol.eigenvalue;
}

AuditSummary summarize_audits(const std::vector<ScanRecord> &records,
                              const std::vector<ScanRecord> &fixed_mass,
                              const AuditTolerances &tol) {
  AuditSummary s;
  s.record_count = records.size();
  if (!records.empty()) {
    s.min_intrinsic_slack = INFINITY;
    s.min_eur_slack = INFINITY;
    s.min_eigenvalue = INFINITY;
  }

  std::map<double, double> max_intrinsic;
  bool unity = true;
  for (const ScanRecord &r : records) {
    const MeasureReport &m = r.report;
    s.max_ccr_deviation = std::max(s.max_ccr_deviation, std::abs(m.ccr_sum - 1.0));
    s.max_marginal_measure =
        std::max({s.max_marginal_measure, std::abs(m.pred_a), std::abs(m.coh_a)});
    s.min_intrinsic_slack = std::min(s.min_intrinsic_slack, m.intrinsic_lhs - m.intrinsic_rhs);
    s.min_eur_slack = std::min(s.min_eur_slack, m.eur_lhs - m.eur_rhs);
    s.min_eigenvalue = std::min(s.min_eigenvalue, r.min_eigenvalue);
    auto [it, inserted] = max_intrinsic.try_emplace(r.w_gg, m.intrinsic_lhs);
    if (!inserted)
      it->second = std::max(it->second, m.intrinsic_lhs);
    if (!(std::abs(m.qmi + m.cond_entropy_a_given_b - 1.0) <= tol.ccr))
      unity = false;

    switch (r.closed_form_status) {
    case ClosedFormStatus::ok:
      ++s.closed_form_ok;
      break;
    case ClosedFormStatus::discrepancy:
      ++s.closed_form_discrepancy;
      break;
    case ClosedFormStatus::domain_error:
      ++s.closed_form_domain_error;
      break;
    }
    if (is_pure_channel(r.w_gg)) {
      if (r.closed_form_status != ClosedFormStatus::ok)
        ++s.pure_channel_closed_form_failures;
      // NaN from a domain error counts as an unbounded miss.
      auto miss = [](double closed, double spectral) {
        return std::isnan(closed) ? INFINITY : std::abs(closed - spectral);
      };
      s.max_pure_channel_qmi_error = std::max(s.max_pure_channel_qmi_error, miss(r.qmi_closed, m.qmi));
      s.max_pure_channel_rec_error = std::max(s.max_pure_channel_rec_error, miss(r.rec_closed, m.rec));
    }
  }
  s.max_intrinsic_by_wgg.assign(max_intrinsic.begin(), max_intrinsic.end());

  auto add = [&](std::string id, std::string description, std::optional<bool> passed,
                 bool informational = false) {
    s.trends.push_back({std::move(id), std::move(description), passed, informational});
  };

  {
    std::optional<bool> ok;
    if (s.max_intrinsic_by_wgg.size() >= 2) {
      ok = true;
      for (std::size_t i = 1; i < s.max_intrinsic_by_wgg.size(); ++i)
        if (s.max_intrinsic_by_wgg[i].second < s.max_intrinsic_by_wgg[i - 1].second - tol.monotone)
          ok = false;
    }
    add("intrinsic_max_nondecreasing_in_wgg",
        "per-w_gg maximum of the intrinsic LHS is nondecreasing in w_gg", ok);
  }

  const auto gg_rows = rows_by(records, 1.0, [](const ScanRecord &r) { return r.m_ttbar; });
  const auto qq_rows = rows_by(records, 0.0, [](const ScanRecord &r) { return r.m_ttbar; });

  {
    std::optional<bool> ok;
    if (!gg_rows.empty() && gg_rows.begin()->second.size() >= 2)
      ok = monotone(gg_rows.begin()->second, rec_of, tol.monotone, false);
    add("gg_rec_nonincreasing_theta_near_threshold",
        "gg REC is nonincreasing in theta along the smallest-mass row", ok);
  }
  {
    std::optional<bool> ok;
    if (!qq_rows.empty() && qq_rows.begin()->second.size() >= 2) {
      ok = true;
      for (const auto &[_, row] : qq_rows)
        if (!monotone(row, rec_of, tol.monotone, true))
          ok = false;
    }
    add("qqbar_rec_nondecreasing_theta", "qqbar REC is nondecreasing in theta at every mass", ok);
  }
  add("qmi_plus_cond_entropy_unity", "QMI + S(A|B) = 1 at every point",
      records.empty() ? std::optional<bool>{} : std::optional<bool>{unity});

  {
    std::optional<bool> ok;
    if (!gg_rows.empty()) {
      const ScanRecord *best = nullptr;
      for (const ScanRecord &r : records)
        if (r.w_gg == 1.0 && (!best || r.report.qmi > best->report.qmi))
          best = &r;
      ok = best->m_ttbar == gg_rows.begin()->first;
    }
    add("gg_qmi_max_at_smallest_mass", "gg QMI maximum lies on the smallest-mass row", ok);
  }
  {
    std::optional<bool> ok;
    if (!qq_rows.empty()) {
      const ScanRecord *best = nullptr;
      double max_theta = 0.0;
      for (const ScanRecord &r : records)
        if (r.w_gg == 0.0) {
          max_theta = std::max(max_theta, r.theta);
          if (!best || r.report.qmi > best->report.qmi)
            best = &r;
        }
      ok = best->m_ttbar == qq_rows.rbegin()->first && best->theta == max_theta;
    }
    add("qqbar_qmi_max_at_large_mass_large_angle",
        "qqbar QMI maximum lies at the largest mass and largest theta", ok);
  }
  {
    std::optional<bool> ok;
    if (!gg_rows.empty() && gg_rows.begin()->second.size() >= 2) {
      ok = true;
      for (const auto &[_, row] : gg_rows)
        if (!monotone(row, intrinsic_of, tol.monotone, true))
          ok = false;
    }
    add("gg_intrinsic_nondecreasing_theta_all_masses",
        "gg intrinsic LHS nondecreasing in theta on every grid mass row", ok, true);
  }

  const auto fixed = rows_by(fixed_mass, 1.0, [](const ScanRecord &r) { return r.m_ttbar; });
  {
    std::optional<bool> ok;
    if (fixed.size() == std::size(kFixedMasses) && fixed.begin()->second.size() >= 2) {
      ok = true;
      for (const auto &[_, row] : fixed)
        if (!monotone(row, intrinsic_of, tol.monotone, true))
          ok = false;
    }
    add("gg_intrinsic_nondecreasing_theta_fixed_mass",
        "gg intrinsic LHS nondecreasing in theta at M = 400, 500, 700 GeV", ok);
  }
  {
    std::optional<bool> ok;
    const auto lo = fixed.find(500.0), hi = fixed.find(700.0);
    if (lo != fixed.end() && hi != fixed.end() && lo->second.size() == hi->second.size()) {
      ok = true;
      for (std::size_t i = 0; i < lo->second.size(); ++i)
        if (!(intrinsic_of(*hi->second[i]) < intrinsic_of(*lo->second[i])))
          ok = false;
    }
    add("gg_intrinsic_lower_at_700_than_500",
        "gg intrinsic LHS at fixed theta is lower at 700 GeV than at 500 GeV", ok);
  }
  return s;
}

ScanResult run_scan(const ScanConfig &config, unsigned threads) {
  validate(config);
  const ObservablePair obs = config.observables();
  const std::vector<double> masses = config.mass_grid.values();
  const std::vector<double> thetas = config.theta_grid.values();
  std::vector<double> weights = config.w_gg_list;
  std::sort(weights.begin(), weights.end());

  const std::size_t nt = thetas.size(), nw = weights.size();
  const std::size_t total = masses.size() * nt * nw;

  ScanResult result;
  result.records.resize(total);
  parallel_for(total, threads, [&](std::size_t idx) {
    const std::size_t im = idx / (nt * nw);
    const std::size_t it = (idx / nw) % nt;
    const std::size_t iw = idx % nw;
    result.records[idx] = evaluate_point(Kinematics::at_mass(masses[im], thetas[it], config.m_top),
                                         MixtureWeights::gluon_fraction(weights[iw]), obs,
                                         config.tolerances.closed_form);
  });
  std::stable_sort(result.records.begin(), result.records.end(), record_less);
  result.fixed_mass = fixed_mass_rows(config);
  result.summary = summarize_audits(result.records, result.fixed_mass, config.tolerances);
  return result;
}

std::string format_double(double x) {
  if (std::isnan(x))
    return "nan";
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream &out, const std::vector<ScanRecord> &records) {
  out << kCsvHeader << '\n';
  for (const ScanRecord &r : records) {
    const MeasureReport &m = r.report;
    const double fields[] = {r.m_ttbar,     r.theta,         r.w_gg,          r.beta,
                             m.qmi,         m.rec,           m.cond_entropy_a_given_b,
                             m.entropy_b,   m.pred_joint,    m.pred_a,        m.coh_a,
                             m.ccr_sum,     m.s_q_given_b,   m.s_r_given_b,   m.eur_lhs,
                             m.eur_rhs,     m.intrinsic_lhs, m.intrinsic_rhs, r.qmi_closed,
                             r.rec_closed};
    for (double f : fields)
      out << format_double(f) << ',';
    out << to_string(r.closed_form_status) << ',' << format_double(r.min_eigenvalue) << '\n';
  }
}

void write_csv(const std::filesystem::path &path, const std::vector<ScanRecord> &records) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw IoError("cannot open " + path.string() + " for writing");
  write_csv(f, records);
  if (!f)
    throw IoError("write to " + path.string() + " failed");
}

void write_summary(std::ostream &out, const AuditSummary &s) {
  out << "record_count=" << s.record_count << '\n'
      << "max_ccr_deviation=" << format_double(s.max_ccr_deviation) << '\n'
      << "max_marginal_measure=" << format_double(s.max_marginal_measure) << '\n'
      << "min_intrinsic_slack=" << format_double(s.min_intrinsic_slack) << '\n'
      << "min_eur_slack=" << format_double(s.min_eur_slack) << '\n'
      << "min_eigenvalue=" << format_double(s.min_eigenvalue) << '\n';
  for (const auto &[w, v] : s.max_intrinsic_by_wgg)
    out << "max_intrinsic_lhs[w_gg=" << format_double(w) << "]=" << format_double(v) << '\n';
  out << "closed_form_ok=" << s.closed_form_ok << '\n'
      << "closed_form_discrepancy=" << s.closed_form_discrepancy << '\n'
      << "closed_form_domain_error=" << s.closed_form_domain_error << '\n'
      << "pure_channel_closed_form_failures=" << s.pure_channel_closed_form_failures << '\n'
      << "max_pure_channel_qmi_error=" << format_double(s.max_pure_channel_qmi_error) << '\n'
      << "max_pure_channel_rec_error=" << format_double(s.max_pure_channel_rec_error) << '\n';
  for (const TrendCheck &t : s.trends) {
    out << "trend." << t.id << '=';
    if (!t.passed)
      out << "n/a";
    else
      out << (*t.passed ? "pass" : "fail");
    if (t.informational)
      out << " (informational)";
    out << "  # " << t.description << '\n';
  }
}

void write_closed_form_diagnostics(std::ostream &out, const std::vector<ScanRecord> &records,
                                   const AuditSummary &s) {
  out << "# Closed-form QMI/REC versus spectral route\n"
      << "# ok=" << s.closed_form_ok << " discrepancy=" << s.closed_form_discrepancy
      << " domain_error=" << s.closed_form_domain_error << '\n';
  if (s.closed_form_discrepancy + s.closed_form_domain_error > 0)
    out << "# The printed expressions disagree with the spectral route whenever w_qqbar > 0.\n"
        << "# Suspected cause: the first logarithm subtracts the qqbar term from the gg term,\n"
        << "# whereas the corresponding eigenvalue of the mixed state is their weighted sum.\n"
        << "# Values are reported as printed and are not corrected.\n";
  out << "m_ttbar,theta,w_gg,status,detail\n";
  for (const ScanRecord &r : records)
    if (r.closed_form_status != ClosedFormStatus::ok)
      out << format_double(r.m_ttbar) << ',' << format_double(r.theta) << ','
          << format_double(r.w_gg) << ',' << to_string(r.closed_form_status) << ",\""
          << r.closed_form_diagnostic << "\"\n";
}

void write_point(std::ostream &out, const ScanRecord &r) {
  const MeasureReport &m = r.report;
  const std::pair<const char *, double> fields[] = {
      {"m_ttbar", r.m_ttbar},
      {"theta", r.theta},
      {"w_gg", r.w_gg},
      {"beta", r.beta},
      {"qmi", m.qmi},
      {"rec", m.rec},
      {"cond_entropy", m.cond_entropy_a_given_b},
      {"entropy_b", m.entropy_b},
      {"pred_joint", m.pred_joint},
      {"pred_a", m.pred_a},
      {"coh_a", m.coh_a},
      {"ccr_sum", m.ccr_sum},
      {"s_q_given_b", m.s_q_given_b},
      {"s_r_given_b", m.s_r_given_b},
      {"eur_lhs", m.eur_lhs},
      {"eur_rhs", m.eur_rhs},
      {"intrinsic_lhs", m.intrinsic_lhs},
      {"intrinsic_rhs", m.intrinsic_rhs},
      {"qmi_closed", r.qmi_closed},
      {"rec_closed", r.rec_closed},
  };
  for (const auto &[k, v] : fields)
    out << k << '=' << format_double(v) << '\n';
  out << "closed_form_status=" << to_string(r.closed_form_status) << '\n'
      << "min_eigenvalue=" << format_double(r.min_eigenvalue) << '\n';
}

} // namespace ttspin
