#pragma once

// Grid scans over (M_ttbar, Theta, w_gg), per-point audits and CSV export.

#include "ttspin/closed_forms.hpp"
#include "ttspin/info_measures.hpp"
#include "ttspin/qcd_production.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ttspin {

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;

  // Evenly spaced, both endpoints included; count == 1 gives {min}.
  std::vector<double> values() const;
};

struct AuditTolerances {
  double ccr = 1e-10;         // |ccr_sum - 1|
  double inequality = 1e-10;  // intrinsic and entropic-uncertainty slack
  double eigenvalue = 1e-10;  // most negative eigenvalue allowed
  double marginal = 1e-12;    // |pred_a|, |coh_a|
  double closed_form = kClosedFormTolerance;
  double monotone = 1e-12;    // allowed wrong-way step in trend checks
};

struct ScanConfig {
  double m_top = kDefaultTopMass;
  GridSpec mass_grid{346.001, 1000.0, 128};
  GridSpec theta_grid{0.001, 1.5707963267948966, 128};
  std::vector<double> w_gg_list{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  Axis q_axis = Axis::along_k();
  Axis r_axis = Axis::along_r();
  std::filesystem::path output_dir = "scan_out";
  AuditTolerances tolerances;

  ObservablePair observables() const { return ObservablePair::from_axes(q_axis, r_axis); }
};

/// Parses the dotted key = value format documented in the README.
/// Throws ParseError for malformed text and ValidationError (naming the key)
/// for unknown keys or out-of-range values.
ScanConfig load_config(std::string_view source);
ScanConfig load_config_file(const std::filesystem::path &path);
void validate(const ScanConfig &config);

struct ScanRecord {
  double m_ttbar = 0.0;
  double theta = 0.0;
  double w_gg = 0.0;
  double beta = 0.0;
  MeasureReport report;
  double qmi_closed = 0.0;
  double rec_closed = 0.0;
  ClosedFormStatus closed_form_status = ClosedFormStatus::ok;
  std::string closed_form_diagnostic;
  double min_eigenvalue = 0.0;
};

/// Evaluates every measure and audit at one point.
ScanRecord evaluate_point(const Kinematics &kin, MixtureWeights w, const ObservablePair &obs,
                          double closed_form_tolerance = kClosedFormTolerance);

struct TrendCheck {
  std::string id;
  std::string description;
  std::optional<bool> passed; // nullopt: the scanned grid lacks the rows it needs
  bool informational = false; // reported, never counted as a failure
};

struct AuditSummary {
  std::size_t record_count = 0;
  double max_ccr_deviation = 0.0;
  double max_marginal_measure = 0.0; // max(|pred_a|, |coh_a|)
  double min_intrinsic_slack = 0.0;
  double min_eur_slack = 0.0;
  double min_eigenvalue = 0.0;
  std::vector<std::pair<double, double>> max_intrinsic_by_wgg; // ascending w_gg
  std::vector<TrendCheck> trends;
  std::size_t closed_form_ok = 0;
  std::size_t closed_form_discrepancy = 0;
  std::size_t closed_form_domain_error = 0;
  std::size_t pure_channel_closed_form_failures = 0;
  double max_pure_channel_qmi_error = 0.0;
  double max_pure_channel_rec_error = 0.0;

  const TrendCheck *trend(std::string_view id) const;
  // Hard per-record audits on the spectral route: conservation, inequalities
  // and PSD. Closed-form agreement and trend checks are reported separately.
  bool audits_pass(const AuditTolerances &tol) const;
};

/// Rows along the config's theta grid for the gg channel at fixed masses,
/// used by the fixed-mass trend checks and figures 8 and 9.
inline constexpr double kFixedMasses[] = {400.0, 500.0, 700.0};
std::vector<ScanRecord> fixed_mass_rows(const ScanConfig &config);

/// Pure fold over records sorted by (m, theta, w). Fixed-mass rows feed the
/// trend checks that need masses off the main grid.
AuditSummary summarize_audits(const std::vector<ScanRecord> &records,
                              const std::vector<ScanRecord> &fixed_mass = {},
                              const AuditTolerances &tol = {});

struct ScanResult {
  std::vector<ScanRecord> records; // sorted by (m_ttbar, theta, w_gg)
  std::vector<ScanRecord> fixed_mass;
  AuditSummary summary;
};

/// Evaluates the full grid, fanning out over `threads` workers.
ScanResult run_scan(const ScanConfig &config, unsigned threads = 1);

inline constexpr std::string_view kCsvHeader =
    "m_ttbar,theta,w_gg,beta,qmi,rec,cond_entropy,entropy_b,pred_joint,pred_a,coh_a,ccr_sum,"
    "s_q_given_b,s_r_given_b,eur_lhs,eur_rhs,intrinsic_lhs,intrinsic_rhs,qmi_closed,rec_closed,"
    "closed_form_status,min_eigenvalue";

/// Shortest round-trip-safe text with 17 significant digits.
std::string format_double(double x);

void write_csv(std::ostream &out, const std::vector<ScanRecord> &records);
void write_csv(const std::filesystem::path &path, const std::vector<ScanRecord> &records);

void write_summary(std::ostream &out, const AuditSummary &summary);
void write_closed_form_diagnostics(std::ostream &out, const std::vector<ScanRecord> &records,
                                   const AuditSummary &summary);

/// Line-oriented key=value dump of one record.
void write_point(std::ostream &out, const ScanRecord &record);

// --- per-figure exports ---------------------------------------------------

struct FigureData {
  std::string id;
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::vector<std::string> figure_ids();
/// Throws ValidationError("id", ...) for unknown ids.
FigureData figure_data(std::string_view id, const ScanConfig &config);
void write_figure(std::ostream &out, const FigureData &fig);

} // namespace ttspin
