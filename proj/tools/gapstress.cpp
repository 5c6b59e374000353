// gapstress: bounds on the effective moduli of a densely packed composite
// with hard inclusions, and checks on the singular stress construction.
//
//   gapstress bounds      --config run.cfg [--eps 1e-4] [--j 1] [--out row.csv]
//   gapstress sweep       --config run.cfg [--out sweep.csv]
//   gapstress verify      --config run.cfg [--eps 1e-3]
//   gapstress kernel-eval --config run.cfg [--eps 1e-3] --point 0.1,0.2 ...

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gapstress/bounds.hpp"
#include "gapstress/kernels.hpp"
#include "gapstress/pipeline.hpp"

namespace {

using namespace gapstress;

enum ExitCode { kOk = 0, kConfigError = 2, kQuadratureFailure = 3, kVerificationFailure = 4 };

struct Options {
  std::string config;
  std::optional<double> eps;
  int j = 1;
  std::string out;
  std::vector<std::string> points;
};

void write_file(const std::string &path, const std::string &content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot open output file '" + path + "'");
  f << content;
  if (!f) throw ConfigError("failed writing '" + path + "'");
}

std::string out_path(const Options &opt, const RunConfig &cfg) { return opt.out.empty() ? cfg.out : opt.out; }

int run_bounds(const Options &opt, const RunConfig &cfg) {
  const double eps = opt.eps.value_or(cfg.eps_list.back());
  const SweepRow row = compute_row(cfg, eps, opt.j);
  const GapGeometry g = cfg.geometry(eps);
  const AsymptoticModuli lead = leading_moduli(g, cfg.material());

  std::printf("eps = %.6g, j = %d, L1 = %.10g, L2 = %.10g, kappa0 = %.10g\n", eps, opt.j, g.L1(), g.L2(), g.kappa0());
  std::printf("  %-26s %.12g  (x sqrt(eps) = %.8g)\n", "upper (gap interpolant)", row.upper.value, row.upper_scaled);
  std::printf("  %-26s %.12g  (x sqrt(eps) = %.8g)\n", "lower (singular stress)", row.lower.value, row.lower_scaled);
  std::printf("  %-26s %.12g\n", "m_j", row.fk_constant);
  std::printf("  %-26s %.4g\n", "quadrature error", row.quad_err());
  std::printf("  %-26s [%.10g, %.10g]\n", opt.j == 1 ? "E* interval" : "mu* interval", row.modulus.lo, row.modulus.hi);
  std::printf("  %-26s %.10g\n", opt.j == 1 ? "E* leading term" : "mu* leading term",
              opt.j == 1 ? lead.E_star_leading : lead.mu_star_leading);
  std::printf("  %-26s I=%.10g II=%.10g cross=%.10g\n", "lower split", row.lower.terms.singular,
              row.lower.terms.correction, row.lower.terms.cross);
  const auto &d = row.lower.diagnostics;
  std::printf("  %-26s asymmetry=%.3g bc=%.3g div=%.3g\n", "diagnostics", d.asymmetry_max, d.bc_residual,
              d.div_residual);

  std::ostringstream csv;
  write_csv(csv, {row});
  if (const std::string path = out_path(opt, cfg); !path.empty()) {
    write_file(path, csv.str());
  } else {
    std::cout << csv.str();
  }
  return kOk;
}

int run_sweep(const Options &opt, const RunConfig &cfg) {
  const SweepResult res = sweep_and_fit(cfg);
  std::ostringstream csv;
  write_csv(csv, res.rows);
  const std::string path = out_path(opt, cfg);
  if (!path.empty()) {
    write_file(path, csv.str());
  } else {
    std::cout << csv.str();
  }
  FILE *summary = path.empty() ? stderr : stdout;
  for (const auto &f : res.fits) {
    std::fprintf(summary, "fit j=%d  upper: c1=%.8g c0=%.6g rms=%.3g dev=%+.3f%%   lower: c1=%.8g c0=%.6g rms=%.3g dev=%+.3f%%\n",
                 f.j, f.upper.c1, f.upper.c0, f.upper.residual, 100.0 * f.upper.rel_dev, f.lower.c1, f.lower.c0,
                 f.lower.residual, 100.0 * f.lower.rel_dev);
  }
  return kOk;
}

int run_verify(const Options &opt, const RunConfig &cfg) {
  const LameMaterial m = cfg.material();
  std::vector<double> eps_values = opt.eps ? std::vector<double>{*opt.eps} : cfg.eps_list;
  bool ok = true;
  bool quad_ok = true;
  auto report = [&](bool pass, const std::string &what) {
    std::printf("[%s] %s\n", pass ? "PASS" : "FAIL", what.c_str());
    ok = ok && pass;
  };
  char buf[256];
  for (double eps : eps_values) {
    const GapGeometry g = cfg.geometry(eps);
    for (int i : {1, 2}) {
      for (int j : {1, 2}) {
        for (int k : {1, 2}) {
          const auto r = flux_identity_check(g, m, i, j, k, cfg.path_spec);
          quad_ok = quad_ok && r.converged;
          const double expected = (j == k) ? (i == 1 ? -1.0 : 1.0) : 0.0;
          std::snprintf(buf, sizeof buf, "eps=%.3g flux i=%d j=%d k=%d: %+.12f (expected %+g)", eps, i, j, k, r.value,
                        expected);
          report(std::abs(r.value - expected) <= 1e-6, buf);
        }
      }
    }
    for (int j : {1, 2}) {
      const auto r = energy_identity_check(g, m, j, cfg.path_spec);
      quad_ok = quad_ok && r.converged;
      const double nrm = normalized_energy(g, m, j, r.value);
      std::snprintf(buf, sizeof buf, "eps=%.3g energy j=%d: m_j E / sqrt(eps) = %.8f", eps, j, nrm);
      report(r.value > 0.0 && std::abs(nrm - 1.0) <= 3.0 * std::sqrt(eps) + 1e-3, buf);

      const DualStress sigma(g, m, j, cfg.path_spec);
      quad_ok = quad_ok && sigma.converged();
      const auto &d = sigma.diagnostics();
      std::snprintf(buf, sizeof buf, "eps=%.3g j=%d divergence residual %.3g", eps, j, d.div_residual);
      report(d.div_residual <= 1e-5, buf);
      std::snprintf(buf, sizeof buf, "eps=%.3g j=%d edge traction residual %.3g", eps, j, d.bc_residual);
      report(d.bc_residual <= cfg.path_spec.rel_tol, buf);
      std::printf("[INFO] eps=%.3g j=%d correction asymmetry %.4g, |sigma_c| max %.4g\n", eps, j, d.asymmetry_max,
                  d.correction_max);
    }
  }
  if (!quad_ok) return kQuadratureFailure;
  return ok ? kOk : kVerificationFailure;
}

int run_kernel_eval(const Options &opt, const RunConfig &cfg) {
  const double eps = opt.eps.value_or(cfg.eps_list.back());
  const GapGeometry g = cfg.geometry(eps);
  const KernelContext ctx(g, cfg.material());
  std::printf("eps = %.6g, a = %.12g\n", eps, g.a());
  for (const std::string &spec : opt.points) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos) throw ConfigError("point must be given as x,y: '" + spec + "'");
    Vec2 p;
    try {
      p = {std::stod(spec.substr(0, comma)), std::stod(spec.substr(comma + 1))};
    } catch (const std::exception &) {
      throw ConfigError("bad point '" + spec + "'");
    }
    std::printf("x = (%.10g, %.10g)  region %s\n", p.x, p.y, to_string(g.classify(p)).c_str());
    try {
      const Matrix2 k = kelvin_matrix(p, ctx.material());
      std::printf("  Gamma  = [[%.12g, %.12g], [%.12g, %.12g]]\n", k.m11, k.m12, k.m21, k.m22);
    } catch (const std::domain_error &) {
      std::printf("  Gamma  = (pole)\n");
    }
    for (int j : {1, 2}) {
      try {
        const Vec2 q = singular_displacement(ctx, j, p);
        const SymTensor2 s = singular_stress(ctx, j, p);
        std::printf("  q%d     = (%.12g, %.12g)\n  C e(q%d) = [[%.12g, %.12g], [%.12g, %.12g]]\n", j, q.x, q.y, j,
                    s.a11, s.a12, s.a12, s.a22);
      } catch (const std::domain_error &) {
        std::printf("  q%d     = (pole)\n", j);
      }
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Bounds and asymptotics for densely packed hard-inclusion composites"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--config", opt.config, "Run configuration (key = value)")->required();
    sub->add_option("--eps", opt.eps, "Gap width override");
    sub->add_option("--out", opt.out, "Output CSV path");
  };
  CLI::App *bounds = app.add_subcommand("bounds", "Upper and lower bound for one (eps, j)");
  add_common(bounds);
  bounds->add_option("--j", opt.j, "Loading direction")->check(CLI::IsMember({1, 2}));
  CLI::App *sweep = app.add_subcommand("sweep", "Bounds over eps_list with 1/sqrt(eps) fits");
  add_common(sweep);
  CLI::App *verify = app.add_subcommand("verify", "Flux/energy identities and dual-field diagnostics");
  add_common(verify);
  CLI::App *kernel = app.add_subcommand("kernel-eval", "Print kernel values at points");
  add_common(kernel);
  kernel->add_option("--point", opt.points, "Point x,y (repeatable)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    const RunConfig cfg = load_config(opt.config);
    if (opt.eps && !(*opt.eps > 0.0)) throw ConfigError("--eps must be positive");
    if (*bounds) return run_bounds(opt, cfg);
    if (*sweep) return run_sweep(opt, cfg);
    if (*verify) return run_verify(opt, cfg);
    if (*kernel) return run_kernel_eval(opt, cfg);
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const QuadratureFailure &e) {
    std::cerr << "quadrature failure: " << e.what() << '\n';
    return kQuadratureFailure;
  } catch (const std::invalid_argument &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}
