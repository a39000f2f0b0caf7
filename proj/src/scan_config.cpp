#include "ttspin/errors.hpp"
#include "ttspin/scan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace ttspin {

std::vector<double> GridSpec::values() const {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = min;
    return v;
  }
  const double step = (max - min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i)
    v[i] = min + step * static_cast<double>(i);
  v.back() = max;
  return v;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_fail(const std::string &key, std::string_view text, const char *what) {
  throw ParseError(key + ": cannot read '" + std::string(text) + "' as " + what);
}

double plain_number(const std::string &key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    parse_fail(key, text, "a number");
  return v;
}

// A number, or pi optionally scaled as "pi", "pi/2", "0.25*pi".
double number(const std::string &key, std::string_view text) {
  text = trim(text);
  if (text.empty())
    parse_fail(key, text, "a number");
  const auto pos = text.find("pi");
  if (pos == std::string_view::npos)
    return plain_number(key, text);
  const std::string_view before = trim(text.substr(0, pos));
  const std::string_view after = trim(text.substr(pos + 2));
  double v = std::numbers::pi;
  if (!before.empty()) {
    if (before.back() != '*')
      parse_fail(key, text, "a multiple of pi");
    v *= plain_number(key, trim(before.substr(0, before.size() - 1)));
  }
  if (!after.empty()) {
    if (after.front() != '/')
      parse_fail(key, text, "a fraction of pi");
    v /= plain_number(key, trim(after.substr(1)));
  }
  return v;
}

std::size_t count_value(const std::string &key, std::string_view text) {
  text = trim(text);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    parse_fail(key, text, "a positive integer");
  return v;
}

std::vector<double> number_list(const std::string &key, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']')
      parse_fail(key, text, "a bracketed list");
    text = trim(text.substr(1, text.size() - 2));
  }
  std::vector<double> out;
  if (text.empty())
    return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(number(key, text.substr(start, comma - start)));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

Axis axis_value(const std::string &key, std::string_view text) {
  text = trim(text);
  if (text == "k")
    return Axis::along_k();
  if (text == "r")
    return Axis::along_r();
  if (text == "n")
    return Axis::along_n();
  const std::vector<double> c = number_list(key, text);
  if (c.size() != 3)
    parse_fail(key, text, "k, r, n or three components");
  return {c[0], c[1], c[2]};
}

} // namespace

ScanConfig load_config(std::string_view source) {
  std::map<std::string, std::pair<std::string, int>> entries;
  std::istringstream in{std::string(source)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos)
      view = view.substr(0, hash);
    view = trim(view);
    if (view.empty())
      continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key{trim(view.substr(0, eq))};
    if (key.empty())
      throw ParseError("line " + std::to_string(lineno) + ": empty key");
    if (entries.contains(key))
      throw ParseError("line " + std::to_string(lineno) + ": duplicate key " + key);
    entries.emplace(key, std::pair{std::string(trim(view.substr(eq + 1))), lineno});
  }

  ScanConfig c;
  for (const auto &[key, entry] : entries) {
    const std::string &v = entry.first;
    if (key == "m_top")
      c.m_top = number(key, v);
    else if (key == "mass_grid.min")
      c.mass_grid.min = number(key, v);
    else if (key == "mass_grid.max")
      c.mass_grid.max = number(key, v);
    else if (key == "mass_grid.count")
      c.mass_grid.count = count_value(key, v);
    else if (key == "theta_grid.min")
      c.theta_grid.min = number(key, v);
    else if (key == "theta_grid.max")
      c.theta_grid.max = number(key, v);
    else if (key == "theta_grid.count")
      c.theta_grid.count = count_value(key, v);
    else if (key == "w_gg_list")
      c.w_gg_list = number_list(key, v);
    else if (key == "axes.q")
      c.q_axis = axis_value(key, v);
    else if (key == "axes.r")
      c.r_axis = axis_value(key, v);
    else if (key == "output_dir")
      c.output_dir = v;
    else if (key == "tolerance.ccr")
      c.tolerances.ccr = number(key, v);
    else if (key == "tolerance.inequality")
      c.tolerances.inequality = number(key, v);
    else if (key == "tolerance.eigenvalue")
      c.tolerances.eigenvalue = number(key, v);
    else if (key == "tolerance.marginal")
      c.tolerances.marginal = number(key, v);
    else if (key == "tolerance.closed_form")
      c.tolerances.closed_form = number(key, v);
    else if (key == "tolerance.monotone")
      c.tolerances.monotone = number(key, v);
    else
      throw ValidationError(key, "unknown key (line " + std::to_string(entry.second) + ")");
  }
  validate(c);
  return c;
}

ScanConfig load_config_file(const std::filesystem::path &path) {
  std::ifstream f(path);
  if (!f)
    throw IoError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return load_config(buf.str());
}

void validate(const ScanConfig &c) {
  if (!(c.m_top > 0.0))
    throw ValidationError("m_top", "must be positive");
  auto check_grid = [](const GridSpec &g, const std::string &name) {
    if (g.count == 0)
      throw ValidationError(name + ".count", "must be at least 1");
    if (!(g.min <= g.max))
      throw ValidationError(name + ".max", "must not be below " + name + ".min");
  };
  check_grid(c.mass_grid, "mass_grid");
  check_grid(c.theta_grid, "theta_grid");
  if (!(c.mass_grid.min >= 2.0 * c.m_top))
    throw ValidationError("mass_grid.min", "below the pair threshold 2 * m_top");
  if (!(c.theta_grid.min >= 0.0))
    throw ValidationError("theta_grid.min", "must be >= 0");
  if (!(c.theta_grid.max <= std::numbers::pi))
    throw ValidationError("theta_grid.max", "must be <= pi");
  if (c.w_gg_list.empty())
    throw ValidationError("w_gg_list", "must not be empty");
  for (double w : c.w_gg_list)
    if (!(w >= 0.0 && w <= 1.0))
      throw ValidationError("w_gg_list", "weights must lie in [0, 1]");
  if (!(c.q_axis.norm() >= 1e-12))
    throw ValidationError("axes.q", "zero axis");
  if (!(c.r_axis.norm() >= 1e-12))
    throw ValidationError("axes.r", "zero axis");
  const AuditTolerances &t = c.tolerances;
  for (auto [name, v] : {std::pair{"tolerance.ccr", t.ccr}, {"tolerance.inequality", t.inequality},
                         {"tolerance.eigenvalue", t.eigenvalue}, {"tolerance.marginal", t.marginal},
                         {"tolerance.closed_form", t.closed_form},
                         {"tolerance.monotone", t.monotone}})
    if (!(v >= 0.0))
      throw ValidationError(name, "must be non-negative");
}

} // namespace ttspin
