#include "gapstress/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

namespace gapstress {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string &key, const std::string &text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception &) {
    throw ConfigError("bad numeric value for '" + key + "': '" + text + "'");
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_config(std::istream &in) {
  RunConfig cfg;
  std::string shape = "disk";
  std::optional<double> r0, A, B;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "lambda") {
      cfg.lambda = parse_number(key, value);
    } else if (key == "mu") {
      cfg.mu = parse_number(key, value);
    } else if (key == "shape") {
      if (value != "disk" && value != "ellipse") throw ConfigError("shape must be disk or ellipse");
      shape = value;
    } else if (key == "r0") {
      r0 = parse_number(key, value);
    } else if (key == "A") {
      A = parse_number(key, value);
    } else if (key == "B") {
      B = parse_number(key, value);
    } else if (key == "L2") {
      cfg.L2 = parse_number(key, value);
    } else if (key == "eps_list") {
      cfg.eps_list.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) cfg.eps_list.push_back(parse_number(key, trim(item)));
    } else if (key == "rel_tol_cell") {
      cfg.cell_spec.rel_tol = parse_number(key, value);
    } else if (key == "rel_tol_path") {
      cfg.path_spec.rel_tol = parse_number(key, value);
    } else if (key == "out") {
      cfg.out = value;
    } else {
      throw ConfigError("unknown key '" + key + "' on line " + std::to_string(lineno));
    }
  }

  if (shape == "disk") {
    if (A || B) throw ConfigError("disk shape takes r0, not A/B");
    cfg.shape = InclusionShape::disk(r0.value_or(1.0));
  } else {
    if (r0) throw ConfigError("ellipse shape takes A and B, not r0");
    if (!A || !B) throw ConfigError("ellipse shape needs both A and B");
    cfg.shape = InclusionShape::ellipse(*A, *B);
  }
  if (cfg.eps_list.empty()) throw ConfigError("eps_list is empty");
  for (double e : cfg.eps_list) {
    if (!(e > 0.0)) throw ConfigError("all eps must be positive");
  }
  std::sort(cfg.eps_list.begin(), cfg.eps_list.end(), std::greater<>());
  try {
    cfg.cell_spec.validate();
    cfg.path_spec.validate();
    (void)cfg.material();
    (void)cfg.geometry(cfg.eps_list.front());
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

EffectiveModuli effective_moduli(const GapGeometry &g, const LameMaterial &m, Interval e1, Interval e2) {
  const double ratio = g.L1() / g.L2();
  const double pre = m.constants().prefactor * ratio;
  return {{pre * e1.lo, pre * e1.hi}, {ratio * e2.lo, ratio * e2.hi}};
}

AsymptoticModuli leading_moduli(const GapGeometry &g, const LameMaterial &m) {
  const double common = (g.L1() / g.L2()) * std::numbers::pi / (std::sqrt(g.kappa0()) * std::sqrt(g.eps()));
  return {m.constants().E * common, m.mu() * common};
}

LineFit fit_inverse_sqrt(const std::vector<double> &eps, const std::vector<double> &values, double target) {
  if (eps.size() != values.size()) throw std::invalid_argument("fit: eps and values differ in length");
  const std::set<double> distinct(eps.begin(), eps.end());
  if (distinct.size() < 2) throw std::invalid_argument("fit needs at least two distinct eps values");
  const double n = static_cast<double>(eps.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    sx += 1.0 / std::sqrt(eps[i]);
    sy += values[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double dx = 1.0 / std::sqrt(eps[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (values[i] - my);
  }
  LineFit fit;
  fit.c1 = sxy / sxx;
  fit.c0 = my - fit.c1 * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double r = values[i] - (fit.c1 / std::sqrt(eps[i]) + fit.c0);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.rel_dev = (fit.c1 - target) / target;
  return fit;
}

SweepRow compute_row(const RunConfig &cfg, double eps, int j) {
  const GapGeometry g = cfg.geometry(eps);
  const LameMaterial m = cfg.material();
  SweepRow row;
  row.eps = eps;
  row.j = j;
  row.upper = primal_upper(g, m, j, cfg.cell_spec);
  row.lower = dual_lower(g, m, j, cfg.cell_spec, cfg.path_spec);
  if (!row.upper.converged || !row.lower.converged) {
    throw QuadratureFailure("quadrature did not converge at eps=" + fmt17(eps) + " j=" + std::to_string(j));
  }
  row.upper_scaled = row.upper.value * std::sqrt(eps);
  row.lower_scaled = row.lower.value * std::sqrt(eps);
  row.fk_constant = blowup_constant(m, g.kappa0(), j);
  const Interval energy{row.lower.value, row.upper.value};
  const EffectiveModuli mod = effective_moduli(g, m, energy, energy);
  row.modulus = j == 1 ? mod.E_star : mod.mu_star;
  return row;
}

SweepResult sweep_and_fit(const RunConfig &cfg) {
  std::vector<double> eps = cfg.eps_list;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  if (eps.size() < 3) throw std::invalid_argument("sweep needs at least three eps values");

  std::vector<std::future<SweepRow>> jobs;
  for (double e : eps) {
    for (int j : {1, 2}) jobs.push_back(std::async(std::launch::async, compute_row, std::cref(cfg), e, j));
  }
  SweepResult out;
  for (auto &job : jobs) out.rows.push_back(job.get());

  const LameMaterial m = cfg.material();
  for (int j : {1, 2}) {
    std::vector<double> es, up, lo;
    for (const auto &r : out.rows) {
      if (r.j != j) continue;
      es.push_back(r.eps);
      up.push_back(r.upper.value);
      lo.push_back(r.lower.value);
    }
    const double target = blowup_constant(m, cfg.shape.vertex_curvature(), j);
    out.fits.push_back({j, fit_inverse_sqrt(es, up, target), fit_inverse_sqrt(es, lo, target)});
  }
  return out;
}

std::string csv_row(const SweepRow &row) {
  const BoundDiagnostics &d = row.lower.diagnostics;
  std::string s = fmt17(row.eps) + "," + std::to_string(row.j);
  for (double v : {row.upper.value, row.lower.value, row.upper_scaled, row.lower_scaled, row.fk_constant,
                   d.asymmetry_max, d.bc_residual, d.div_residual, row.quad_err()}) {
    s += "," + fmt17(v);
  }
  return s;
}

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
  out << kCsvHeader << '\n';
  for (const auto &r : rows) out << csv_row(r) << '\n';
}

}  // namespace gapstress
