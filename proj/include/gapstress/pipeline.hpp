#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gapstress/bounds.hpp"
#include "gapstress/elasticity.hpp"
#include "gapstress/geometry.hpp"
#include "gapstress/quadrature.hpp"

namespace gapstress {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double lambda = 1.0;
  double mu = 1.0;
  InclusionShape shape = InclusionShape::disk(1.0);
  double L2 = 1.5;
  std::vector<double> eps_list{1e-2, 1e-3, 1e-4, 1e-5};  ///< sorted descending
  QuadratureSpec cell_spec = QuadratureSpec::cell_default();
  QuadratureSpec path_spec = QuadratureSpec::path_default();
  std::string out;

  LameMaterial material() const { return {lambda, mu}; }
  GapGeometry geometry(double eps) const { return {shape, eps, L2}; }
};

/// Flat `key = value` text; `#` starts a comment. Keys: lambda, mu, shape
/// (disk|ellipse), r0, A, B, L2, eps_list (comma separated), rel_tol_cell,
/// rel_tol_path, out. Throws ConfigError on unknown keys or bad values.
RunConfig parse_config(std::istream &in);
RunConfig load_config(const std::string &path);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct EffectiveModuli {
  Interval E_star;
  Interval mu_star;
};

/// Apply E* = prefactor (L1/L2) E_1 and mu* = (L1/L2) E_2 to energy intervals.
EffectiveModuli effective_moduli(const GapGeometry &g, const LameMaterial &m, Interval e1, Interval e2);

struct AsymptoticModuli {
  double E_star_leading;
  double mu_star_leading;
};

/// Leading terms E (L1/L2) pi / sqrt(kappa0 eps) and mu (L1/L2) pi / sqrt(kappa0 eps).
AsymptoticModuli leading_moduli(const GapGeometry &g, const LameMaterial &m);

struct SweepRow {
  double eps = 0.0;
  int j = 1;
  BoundResult upper;
  BoundResult lower;
  double upper_scaled = 0.0;  ///< upper * sqrt(eps)
  double lower_scaled = 0.0;
  double fk_constant = 0.0;   ///< m_j
  Interval modulus;           ///< E* interval for j = 1, mu* interval for j = 2
  double quad_err() const { return upper.quadrature_err + lower.quadrature_err; }
};

struct LineFit {
  double c1 = 0.0;  ///< coefficient of 1/sqrt(eps)
  double c0 = 0.0;
  double residual = 0.0;  ///< root-mean-square residual
  double rel_dev = 0.0;   ///< (c1 - m_j) / m_j
};

/// Ordinary least squares of values against (1/sqrt(eps), 1). Needs at least
/// two distinct eps; throws std::invalid_argument otherwise.
LineFit fit_inverse_sqrt(const std::vector<double> &eps, const std::vector<double> &values, double target);

struct SweepFit {
  int j = 1;
  LineFit upper;
  LineFit lower;
};

struct SweepResult {
  std::vector<SweepRow> rows;  ///< eps descending, then j ascending
  std::vector<SweepFit> fits;  ///< one per j
};

/// Both bounds for one (eps, j). Throws QuadratureFailure if a quadrature did not converge.
SweepRow compute_row(const RunConfig &cfg, double eps, int j);

/// All rows of the sweep, computed concurrently, plus the per-j fits.
/// Requires at least three eps values.
SweepResult sweep_and_fit(const RunConfig &cfg);

inline constexpr const char *kCsvHeader =
    "eps,j,upper,lower,upper_scaled,lower_scaled,fk_constant,asymmetry_max,bc_residual,div_residual,quad_err";

std::string csv_row(const SweepRow &row);
void write_csv(std::ostream &out, const std::vector<SweepRow> &rows);

}  // namespace gapstress
