#include "ttspin/errors.hpp"
#include "ttspin/scan.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <tuple>
#include <numbers>
#include <sstream>

using namespace ttspin;

namespace {

constexpr double pi = std::numbers::pi;

ScanConfig small_config(std::string extra = "") {
  return load_config("mass_grid.min = 350\nmass_grid.max = 900\nmass_grid.count = 4\n"
                     "theta_grid.min = 0.05\ntheta_grid.max = pi/2\ntheta_grid.count = 5\n"
                     "w_gg_list = [0, 0.5, 1]\n" +
                     extra);
}

std::string csv_of(const std::vector<ScanRecord> &records) {
  std::ostringstream os;
  write_csv(os, records);
  return os.str();
}

std::size_t line_count(const std::string &s) { return std::count(s.begin(), s.end(), '\n'); }

} // namespace

TEST_SUITE("scan_config") {

TEST_CASE("empty document gives defaults") {
  const ScanConfig c = load_config("");
  CHECK(c.m_top == 173.0);
  CHECK(c.mass_grid.min == 346.001);
  CHECK(c.mass_grid.max == 1000.0);
  CHECK(c.mass_grid.count == 128);
  CHECK(c.theta_grid.min == 0.001);
  CHECK(c.theta_grid.max == doctest::Approx(pi / 2).epsilon(1e-16));
  CHECK(c.theta_grid.count == 128);
  CHECK(c.w_gg_list == std::vector<double>{0.0, 0.2, 0.4, 0.6, 0.8, 1.0});
  CHECK(c.q_axis == Axis::along_k());
  CHECK(c.r_axis == Axis::along_r());
  CHECK(c.observables().c_overlap() == 0.5);
  CHECK(load_config("# only a comment\n\n").mass_grid.count == 128);
}

TEST_CASE("explicit values") {
  const ScanConfig c = load_config("w_gg_list = [0.2, 0.4, 0.6, 0.8]\n"
                                   "m_top = 172.5  # trailing comment\n"
                                   "theta_grid.max = 0.5*pi\n"
                                   "axes.q = r\naxes.r = 0, 0.6, 0.8\n"
                                   "output_dir = out/figs\n"
                                   "tolerance.closed_form = 1e-9\n");
  CHECK(c.w_gg_list == std::vector<double>{0.2, 0.4, 0.6, 0.8});
  CHECK(c.m_top == 172.5);
  CHECK(c.theta_grid.max == doctest::Approx(pi / 2));
  CHECK(c.q_axis == Axis::along_r());
  CHECK(c.r_axis == Axis{0.0, 0.6, 0.8});
  CHECK(c.output_dir == "out/figs");
  CHECK(c.tolerances.closed_form == 1e-9);
}

TEST_CASE("validation errors name the field") {
  auto field_of = [](const std::string &doc) {
    try {
      load_config(doc);
    } catch (const ValidationError &e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of("m_top = 173\nmass_grid.min = 300\n") == "mass_grid.min");
  CHECK(field_of("w_gg_list = 0.5, 1.2\n") == "w_gg_list");
  CHECK(field_of("w_gg_list = []\n") == "w_gg_list");
  CHECK(field_of("theta_grid.max = 4\n") == "theta_grid.max");
  CHECK(field_of("mass_grid.count = 0\n") == "mass_grid.count");
  CHECK(field_of("mass_grid.min = 900\nmass_grid.max = 800\n") == "mass_grid.max");
  CHECK(field_of("axes.q = 0, 0, 0\n") == "axes.q");
  CHECK(field_of("colour = blue\n") == "colour");
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(load_config("mass_grid.min 350\n"), ParseError);
  CHECK_THROWS_AS(load_config("mass_grid.min = abc\n"), ParseError);
  CHECK_THROWS_AS(load_config("mass_grid.count = 3.5\n"), ParseError);
  CHECK_THROWS_AS(load_config("m_top = 173\nm_top = 174\n"), ParseError);
  CHECK_THROWS_AS(load_config("w_gg_list = [0.1, 0.2\n"), ParseError);
  CHECK_THROWS_AS(load_config("theta_grid.max = pi*2\n"), ParseError);
  CHECK_THROWS_AS(load_config("axes.q = 1, 0\n"), ParseError);
  CHECK_THROWS_AS(load_config(" = 3\n"), ParseError);
}

TEST_CASE("grid values") {
  CHECK(GridSpec{1.0, 2.0, 1}.values() == std::vector<double>{1.0});
  const auto v = GridSpec{0.0, 1.0, 5}.values();
  CHECK(v.size() == 5);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 1.0);
  CHECK(v[2] == 0.5);
}

} // TEST_SUITE

TEST_SUITE("scan") {

TEST_CASE("records equal direct library calls") {
  ScanConfig c = load_config("mass_grid.min = 400\nmass_grid.max = 800\nmass_grid.count = 2\n"
                             "theta_grid.min = 0.3\ntheta_grid.max = 1.2\ntheta_grid.count = 2\n"
                             "w_gg_list = 1\n");
  const ScanResult res = run_scan(c);
  REQUIRE(res.records.size() == 4);
  const auto obs = ObservablePair::helicity_default();
  std::size_t i = 0;
  for (double m : {400.0, 800.0})
    for (double th : {0.3, 1.2}) {
      const ScanRecord &r = res.records[i++];
      CHECK(r.m_ttbar == m);
      CHECK(r.theta == th);
      CHECK(r.w_gg == 1.0);
      const Kinematics k = Kinematics::at_mass(m, th);
      const SpinDensityMatrix rho = assemble_density(gg_coefficients(k));
      const MeasureReport direct = measure_all(rho, obs);
      CHECK(r.beta == k.beta());
      CHECK(r.report.qmi == direct.qmi);
      CHECK(r.report.rec == direct.rec);
      CHECK(r.report.intrinsic_lhs == direct.intrinsic_lhs);
      CHECK(r.min_eigenvalue == rho.min_eigenvalue());
      CHECK(r.closed_form_status == ClosedFormStatus::ok);
      CHECK(r.qmi_closed == qmi_closed(ChannelPairInput::at(k, MixtureWeights::gluon_fraction(1))));
    }
}

TEST_CASE("record count, ordering and thread independence") {
  const ScanConfig c = small_config();
  const ScanResult one = run_scan(c, 1);
  const ScanResult many = run_scan(c, 3);
  CHECK(one.records.size() == 4 * 5 * 3);
  CHECK(std::is_sorted(one.records.begin(), one.records.end(), [](auto &l, auto &r) {
    return std::tie(l.m_ttbar, l.theta, l.w_gg) < std::tie(r.m_ttbar, r.theta, r.w_gg);
  }));
  CHECK(csv_of(one.records) == csv_of(many.records));

  // Weight order in the config does not matter.
  ScanConfig shuffled = c;
  shuffled.w_gg_list = {1.0, 0.0, 0.5};
  CHECK(csv_of(run_scan(shuffled).records) == csv_of(one.records));
}

TEST_CASE("CSV format") {
  const ScanConfig c = small_config();
  const ScanResult res = run_scan(c);
  const std::vector<ScanRecord> single{res.records.front()};
  const std::string text = csv_of(single);
  CHECK(line_count(text) == 2);
  CHECK(text.substr(0, kCsvHeader.size()) == kCsvHeader);
  CHECK(std::count(kCsvHeader.begin(), kCsvHeader.end(), ',') == 21);
  const std::string row = text.substr(kCsvHeader.size() + 1);
  CHECK(std::count(row.begin(), row.end(), ',') == 21);
  CHECK(csv_of(res.records) == csv_of(run_scan(c).records));
  CHECK(line_count(csv_of(res.records)) == res.records.size() + 1);

  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("mixed weights are classified, pure channels agree") {
  const ScanResult res = run_scan(small_config());
  const AuditSummary &s = res.summary;
  CHECK(s.closed_form_ok + s.closed_form_discrepancy + s.closed_form_domain_error ==
        res.records.size());
  // Every pure qqbar point leaves the log domain; pure gg points agree.
  CHECK(s.pure_channel_closed_form_failures == 4 * 5);
  CHECK(std::isinf(s.max_pure_channel_qmi_error));
  CHECK(std::isinf(s.max_pure_channel_rec_error));
  for (const ScanRecord &r : res.records) {
    if (r.w_gg == 1.0) {
      CHECK(r.closed_form_status == ClosedFormStatus::ok);
      CHECK(std::abs(r.qmi_closed - r.report.qmi) <= 1e-8);
      CHECK(std::abs(r.rec_closed - r.report.rec) <= 1e-8);
    } else {
      CHECK(r.closed_form_status == ClosedFormStatus::domain_error);
    }
  }
  CHECK(s.audits_pass(AuditTolerances{}));
  for (const ScanRecord &r : res.records) {
    if (r.closed_form_status == ClosedFormStatus::domain_error)
      CHECK_FALSE(r.closed_form_diagnostic.empty());
    else {
      CHECK(std::isfinite(r.qmi_closed));
      CHECK(std::isfinite(r.rec_closed));
    }
  }
  std::ostringstream diag;
  write_closed_form_diagnostics(diag, res.records, s);
  CHECK(diag.str().find("weighted sum") != std::string::npos);
}

TEST_CASE("singlet-only degenerate grid") {
  ScanConfig c = load_config("mass_grid.min = 346\nmass_grid.max = 346\nmass_grid.count = 1\n"
                             "theta_grid.count = 7\nw_gg_list = 1\n");
  const ScanResult res = run_scan(c);
  CHECK(res.records.size() == 7);
  CHECK(std::abs(res.summary.min_intrinsic_slack) <= 1e-14);
  CHECK(res.summary.max_ccr_deviation <= 1e-14);
  CHECK(res.summary.audits_pass(c.tolerances));
}

TEST_CASE("summary is a pure fold over the records") {
  const ScanConfig c = small_config();
  const ScanResult res = run_scan(c);
  std::vector<ScanRecord> reversed(res.records.rbegin(), res.records.rend());
  const AuditSummary again = summarize_audits(reversed, res.fixed_mass, c.tolerances);
  std::ostringstream a, b;
  write_summary(a, res.summary);
  write_summary(b, again);
  CHECK(a.str() == b.str());
  CHECK(res.summary.record_count == res.records.size());
  CHECK(res.summary.max_intrinsic_by_wgg.size() == 3);
  CHECK(res.summary.audits_pass(c.tolerances));

  for (const char *id : {"gg_rec_nonincreasing_theta_near_threshold",
                         "qqbar_rec_nondecreasing_theta", "qmi_plus_cond_entropy_unity",
                         "gg_intrinsic_nondecreasing_theta_fixed_mass",
                         "gg_intrinsic_lower_at_700_than_500"}) {
    const TrendCheck *t = res.summary.trend(id);
    REQUIRE(t != nullptr);
    CHECK(t->passed == std::optional<bool>{true});
  }
}

TEST_CASE("trend checks without the rows they need are n/a") {
  ScanConfig c = small_config();
  c.w_gg_list = {0.5};
  const ScanResult res = run_scan(c);
  CHECK_FALSE(res.summary.trend("gg_rec_nonincreasing_theta_near_threshold")->passed);
  CHECK_FALSE(res.summary.trend("qqbar_rec_nondecreasing_theta")->passed);
  CHECK_FALSE(res.summary.trend("intrinsic_max_nondecreasing_in_wgg")->passed);
  CHECK(res.summary.trend("qmi_plus_cond_entropy_unity")->passed == std::optional<bool>{true});
}

TEST_CASE("point report") {
  const ScanRecord r = evaluate_point(Kinematics::at_mass(500.0, pi / 4),
                                      MixtureWeights::gluon_fraction(1.0),
                                      ObservablePair::helicity_default());
  std::ostringstream os;
  write_point(os, r);
  const std::string text = os.str();
  CHECK(line_count(text) == 22);
  CHECK(text.find("intrinsic_lhs=3.06295780014521") != std::string::npos);
  CHECK(text.find("closed_form_status=ok\n") != std::string::npos);
}

TEST_CASE("figure data") {
  const auto ids = figure_ids();
  CHECK(ids.size() == 26);
  for (const char *id : {"1a", "1b", "2a", "2d", "3a", "3b", "4c", "5a", "5d", "6a", "6b", "7b",
                         "8", "9a", "9b", "9c"})
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());

  ScanConfig c = small_config();
  const FigureData grid = figure_data("2b", c);
  CHECK(grid.columns == std::vector<std::string>{"m_ttbar", "theta", "qmi"});
  CHECK(grid.rows.size() == 4 * 5);

  const FigureData ccr = figure_data("5c", c);
  CHECK(ccr.columns == std::vector<std::string>{"theta", "m_ttbar", "qmi", "cond_entropy", "ccr_sum"});
  CHECK(ccr.rows.size() == 5);
  for (const auto &row : ccr.rows) {
    CHECK(row[1] == 500.0);
    CHECK(std::abs(row[4] - 1.0) <= 1e-10);
    CHECK(std::abs(row[2] + row[3] - 1.0) <= 1e-10);
  }

  const FigureData fixed = figure_data("8", c);
  CHECK(fixed.rows.size() == 3 * 5);
  CHECK(fixed.rows.front()[1] == 400.0);
  CHECK(fixed.rows.back()[1] == 700.0);

  CHECK_THROWS_AS(figure_data("10", c), ValidationError);

  std::ostringstream os;
  write_figure(os, grid);
  CHECK(line_count(os.str()) == grid.rows.size() + 2);
}

} // TEST_SUITE
