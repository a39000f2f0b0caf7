#include "ttspin/errors.hpp"
#include "ttspin/scan.hpp"

#include <functional>
#include <ostream>

namespace ttspin {

namespace {

using Extract = std::function<double(const MeasureReport &)>;

enum class Layout {
  mass_theta_grid, // (m_ttbar, theta, value) over the configured grid
  theta_at_500,    // CCR panels: M fixed to 500 GeV
  fixed_masses,    // (theta, m_ttbar, value) at 400/500/700 GeV, gg
};

struct FigureSpec {
  std::string id;
  std::string title;
  Layout layout;
  double w_gg;
  std::vector<std::pair<const char *, Extract>> values;
};

const std::vector<FigureSpec> &catalogue() {
  static const Extract qmi = [](const MeasureReport &m) { return m.qmi; };
  static const Extract rec = [](const MeasureReport &m) { return m.rec; };
  static const Extract intrinsic = [](const MeasureReport &m) { return m.intrinsic_lhs; };
  static const Extract cond = [](const MeasureReport &m) { return m.cond_entropy_a_given_b; };
  static const Extract ccr = [](const MeasureReport &m) { return m.ccr_sum; };
  static const Extract eur = [](const MeasureReport &m) { return m.eur_lhs; };
  static const Extract pred = [](const MeasureReport &m) { return m.pred_joint; };

  static const std::vector<FigureSpec> specs = [] {
    std::vector<FigureSpec> v;
    const char *mixed_suffix[] = {"a", "b", "c", "d"};
    const double mixed_w[] = {0.2, 0.4, 0.6, 0.8};
    v.push_back({"1a", "QMI, gg", Layout::mass_theta_grid, 1.0, {{"qmi", qmi}}});
    v.push_back({"1b", "QMI, qqbar", Layout::mass_theta_grid, 0.0, {{"qmi", qmi}}});
    auto panel = [&](int figure, int i) { return std::to_string(figure) + mixed_suffix[i]; };
    for (int i = 0; i < 4; ++i)
      v.push_back({panel(2, i), "QMI, mixed", Layout::mass_theta_grid, mixed_w[i],
                   {{"qmi", qmi}}});
    v.push_back({"3a", "REC, gg", Layout::mass_theta_grid, 1.0, {{"rec", rec}}});
    v.push_back({"3b", "REC, qqbar", Layout::mass_theta_grid, 0.0, {{"rec", rec}}});
    for (int i = 0; i < 4; ++i)
      v.push_back({panel(4, i), "REC, mixed", Layout::mass_theta_grid, mixed_w[i],
                   {{"rec", rec}}});
    for (int i = 0; i < 4; ++i)
      v.push_back({panel(5, i), "CCR at M = 500 GeV, mixed", Layout::theta_at_500,
                   mixed_w[i], {{"qmi", qmi}, {"cond_entropy", cond}, {"ccr_sum", ccr}}});
    v.push_back({"6a", "intrinsic LHS, gg", Layout::mass_theta_grid, 1.0,
                 {{"intrinsic_lhs", intrinsic}}});
    v.push_back({"6b", "intrinsic LHS, qqbar", Layout::mass_theta_grid, 0.0,
                 {{"intrinsic_lhs", intrinsic}}});
    for (int i = 0; i < 4; ++i)
      v.push_back({panel(7, i), "intrinsic LHS, mixed", Layout::mass_theta_grid,
                   mixed_w[i], {{"intrinsic_lhs", intrinsic}}});
    v.push_back({"8", "intrinsic LHS at fixed masses, gg", Layout::fixed_masses, 1.0,
                 {{"intrinsic_lhs", intrinsic}}});
    v.push_back({"9a", "S(Q|B) + S(R|B) at fixed masses, gg", Layout::fixed_masses, 1.0,
                 {{"eur_lhs", eur}}});
    v.push_back({"9b", "joint predictability at fixed masses, gg", Layout::fixed_masses, 1.0,
                 {{"pred_joint", pred}}});
    v.push_back({"9c", "REC at fixed masses, gg", Layout::fixed_masses, 1.0, {{"rec", rec}}});
    return v;
  }();
  return specs;
}

const FigureSpec &find_spec(std::string_view id) {
  for (const FigureSpec &s : catalogue())
    if (id == s.id)
      return s;
  throw ValidationError("id", "unknown figure '" + std::string(id) + "'");
}

} // namespace

std::vector<std::string> figure_ids() {
  std::vector<std::string> ids;
  for (const FigureSpec &s : catalogue())
    ids.emplace_back(s.id);
  return ids;
}

FigureData figure_data(std::string_view id, const ScanConfig &config) {
  validate(config);
  const FigureSpec &spec = find_spec(id);
  const ObservablePair obs = config.observables();
  const MixtureWeights w = MixtureWeights::gluon_fraction(spec.w_gg);
  const std::vector<double> thetas = config.theta_grid.values();

  FigureData fig;
  fig.id = spec.id;
  fig.title = spec.title;

  auto emit = [&](double m, double th, double first, double second) {
    const Kinematics kin = Kinematics::at_mass(m, th, config.m_top);
    const MeasureReport r = measure_all(mixed_state(kin, w), obs);
    std::vector<double> row{first, second};
    for (const auto &[_, f] : spec.values)
      row.push_back(f(r));
    fig.rows.push_back(std::move(row));
  };

  switch (spec.layout) {
  case Layout::mass_theta_grid:
    fig.columns = {"m_ttbar", "theta"};
    for (double m : config.mass_grid.values())
      for (double th : thetas)
        emit(m, th, m, th);
    break;
  case Layout::theta_at_500:
    fig.columns = {"theta", "m_ttbar"};
    for (double th : thetas)
      emit(500.0, th, th, 500.0);
    break;
  case Layout::fixed_masses:
    fig.columns = {"theta", "m_ttbar"};
    for (double m : kFixedMasses)
      for (double th : thetas)
        emit(m, th, th, m);
    break;
  }
  for (const auto &[name, _] : spec.values)
    fig.columns.emplace_back(name);
  return fig;
}

void write_figure(std::ostream &out, const FigureData &fig) {
  out << "# figure " << fig.id << ": " << fig.title << '\n';
  for (std::size_t i = 0; i < fig.columns.size(); ++i)
    out << (i ? "," : "") << fig.columns[i];
  out << '\n';
  for (const auto &row : fig.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

} // namespace ttspin
