// ttspin-scan: grid scans, single-point reports and figure data for the
// top-antitop spin density matrix.
//
// Exit codes: 0 success, 1 invalid input or configuration, 2 audit violation.

#include "ttspin/errors.hpp"
#include "ttspin/scan.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitAudit = 2;

ttspin::ScanConfig config_from(const std::string &path) {
  return path.empty() ? ttspin::load_config("") : ttspin::load_config_file(path);
}

std::ofstream open_output(const std::filesystem::path &path) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw ttspin::IoError("cannot open " + path.string() + " for writing");
  return f;
}

int run_scan_command(const std::string &config_path, const std::string &output_override,
                     unsigned threads) {
  ttspin::ScanConfig config = config_from(config_path);
  if (!output_override.empty())
    config.output_dir = output_override;
  std::filesystem::create_directories(config.output_dir);

  const ttspin::ScanResult result = ttspin::run_scan(config, threads);
  ttspin::write_csv(config.output_dir / "scan.csv", result.records);
  {
    auto f = open_output(config.output_dir / "summary.txt");
    ttspin::write_summary(f, result.summary);
  }
  {
    auto f = open_output(config.output_dir / "closed_form_diagnostics.csv");
    ttspin::write_closed_form_diagnostics(f, result.records, result.summary);
  }
  ttspin::write_summary(std::cout, result.summary);
  std::cout << "wrote " << result.records.size() << " records to "
            << (config.output_dir / "scan.csv").string() << '\n';

  if (!result.summary.audits_pass(config.tolerances)) {
    std::cerr << "audit violation: see summary.txt\n";
    return kExitAudit;
  }
  return 0;
}

int run_point_command(const std::string &config_path, double mass, double theta, double w_gg) {
  const ttspin::ScanConfig config = config_from(config_path);
  const auto kin = ttspin::Kinematics::at_mass(mass, theta, config.m_top);
  const ttspin::ScanRecord r =
      ttspin::evaluate_point(kin, ttspin::MixtureWeights::gluon_fraction(w_gg),
                             config.observables(), config.tolerances.closed_form);
  ttspin::write_point(std::cout, r);

  const ttspin::AuditSummary s = ttspin::summarize_audits({r}, {}, config.tolerances);
  return s.audits_pass(config.tolerances) ? 0 : kExitAudit;
}

int run_figure_command(const std::string &config_path, const std::string &id,
                       const std::string &output_override) {
  ttspin::ScanConfig config = config_from(config_path);
  if (!output_override.empty())
    config.output_dir = output_override;
  const ttspin::FigureData fig = ttspin::figure_data(id, config);
  std::filesystem::create_directories(config.output_dir);
  const auto path = config.output_dir / ("fig_" + fig.id + ".csv");
  auto f = open_output(path);
  ttspin::write_figure(f, fig);
  std::cout << "wrote " << fig.rows.size() << " rows to " << path.string() << '\n';
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Quantum-information scans of the leading-order top-antitop spin state"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);

  std::string output_dir;
  unsigned threads = 1;
  auto *scan = app.add_subcommand("scan", "full grid scan: CSV, summary and diagnostics");
  scan->add_option("--output-dir", output_dir, "overrides output_dir from the config");
  scan->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));

  double mass = 0.0, theta = 0.0, w_gg = 1.0;
  auto *point = app.add_subcommand("point", "all measures at one phase-space point");
  point->add_option("--mass", mass, "invariant mass M_ttbar in GeV")->required();
  point->add_option("--theta", theta, "production angle in radians")->required();
  point->add_option("--wgg", w_gg, "gluon-fusion weight in [0, 1]")->required();

  std::string figure_id;
  auto *figure = app.add_subcommand("figure", "per-figure data file");
  figure->add_option("--id", figure_id, "figure panel id")
      ->required()
      ->check(CLI::IsMember(ttspin::figure_ids()));
  figure->add_option("--output-dir", output_dir, "overrides output_dir from the config");

  // Accept --config after the subcommand name as well.
  for (auto *sub : {scan, point, figure})
    sub->add_option("--config", config_path, "key = value configuration file")
        ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*scan)
      return run_scan_command(config_path, output_dir, threads);
    if (*point)
      return run_point_command(config_path, mass, theta, w_gg);
    return run_figure_command(config_path, figure_id, output_dir);
  } catch (const ttspin::ValidationError &e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ttspin::ParseError &e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ttspin::NotADensityMatrix &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitAudit;
  } catch (const ttspin::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::filesystem::filesystem_error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
