#include "gapstress/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gapstress {

namespace {

void check_index(int j) {
  if (j != 1 && j != 2) throw std::invalid_argument("loading index must be 1 or 2");
}

Vec2 unit(int k) { return k == 1 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0}; }

}  // namespace

double blowup_constant(const LameMaterial &m, double kappa0, int j) {
  check_index(j);
  const double modulus = j == 1 ? m.lambda() + 2.0 * m.mu() : m.mu();
  return std::numbers::pi * modulus / std::sqrt(kappa0);
}

// ---------------------------------------------------------------------------
// Gap interpolant

GapProfile::Width GapProfile::extended_halfwidth(double y) const {
  const double L = geom_.L();
  const double ay = std::abs(y);
  if (ay <= L) return {geom_.gap_halfwidth(y), geom_.gap_halfwidth_slope(y)};
  const double fL = geom_.gap_halfwidth(L);
  const double sL = geom_.gap_halfwidth_slope(L);
  const double v = fL + sL * (ay - L);
  if (v >= geom_.L1()) return {geom_.L1(), 0.0};
  return {v, y > 0.0 ? sL : -sL};
}

double GapProfile::psi(const Vec2 &p) const {
  const Width w = extended_halfwidth(p.y);
  return std::clamp((p.x + w.value) / (2.0 * w.value), 0.0, 1.0);
}

Vec2 GapProfile::grad_psi(const Vec2 &p) const {
  const Width w = extended_halfwidth(p.y);
  if (std::abs(p.x) > w.value) return {};
  return {0.5 / w.value, -p.x * w.slope / (2.0 * w.value * w.value)};
}

Matrix2 gap_test_gradient(const GapProfile &prof, int j, const Vec2 &p) {
  check_index(j);
  const Vec2 g = prof.grad_psi(p);
  if (j == 1) return {g.x, g.y, 0.0, 0.0};
  return {0.0, 0.0, g.x, g.y};
}

BoundResult primal_upper(const GapGeometry &g, const LameMaterial &m, int j, const QuadratureSpec &spec) {
  check_index(j);
  const GapProfile prof(g);
  const double L = g.L();
  auto density = [&](const Vec2 &p) {
    const double e = energy_density(gap_test_gradient(prof, j, p), m);
    VecN<2> out;
    out[std::abs(p.y) < L ? 0 : 1] = e;
    return out;
  };
  auto kinks = [&](double y) {
    const double w = prof.extended_halfwidth(y).value;
    return std::vector<double>{-w, w};
  };
  const auto r = integrate_cell<VecN<2>>(g, density, spec, kinks);

  BoundResult out;
  out.j = j;
  out.kind = BoundKind::Upper;
  out.terms.neck = r.value[0];
  out.terms.exterior = r.value[1];
  out.value = r.value[0] + r.value[1];
  out.quadrature_err = r.err_estimate;
  out.converged = r.converged;
  return out;
}

// ---------------------------------------------------------------------------
// Dual stress

DualStress::DualStress(const GapGeometry &g, const LameMaterial &m, int j, const QuadratureSpec &spec,
                       int table_intervals)
    : geom_(g),
      material_(m),
      ctx_(g, m),
      j_(j),
      m_j_(blowup_constant(m, g.kappa0(), j)),
      scale_(m_j_ / std::sqrt(g.eps())),
      spec_(spec) {
  check_index(j);
  spec.validate();
  if (table_intervals < 2 || table_intervals % 2 != 0) {
    throw std::invalid_argument("G table needs an even number of intervals");
  }
  tabulate(table_intervals);
  compute_diagnostics();
}

SymTensor2 DualStress::sigma_singular(const Vec2 &p) const { return scale_ * singular_stress(ctx_, j_, p); }

Vec2 DualStress::edge_load(double x) const {
  const double L2 = geom_.L2();
  const Vec2 top = sigma_singular({x, L2}).apply({0.0, 1.0});
  const Vec2 bottom = sigma_singular({x, -L2}).apply({0.0, 1.0});
  return top - bottom;
}

Vec2 DualStress::F(double x, double y) const {
  // linear in y, equal to -sigma_S e2 on both horizontal edges
  const double L2 = geom_.L2();
  const Vec2 top = sigma_singular({x, L2}).apply({0.0, 1.0});
  const Vec2 bottom = sigma_singular({x, -L2}).apply({0.0, 1.0});
  return -((y + L2) / (2.0 * L2)) * top - ((L2 - y) / (2.0 * L2)) * bottom;
}

Vec2 DualStress::G_exact(double x) const {
  auto load = [this](double s) { return edge_load(s) * (0.5 / geom_.L2()); };
  if (x == 0.0) return {};
  const auto r = integrate_interval<Vec2>(load, std::min(0.0, x), std::max(0.0, x), spec_);
  return x > 0.0 ? r.value : -r.value;
}

void DualStress::tabulate(int intervals) {
  const double L1 = geom_.L1();
  const double inv2L2 = 0.5 / geom_.L2();
  nodes_.resize(intervals + 1);
  values_.assign(intervals + 1, Vec2{});
  slopes_.resize(intervals + 1);
  for (int k = 0; k <= intervals; ++k) {
    nodes_[k] = L1 * (2.0 * k - intervals) / intervals;
    slopes_[k] = edge_load(nodes_[k]) * inv2L2;
  }
  auto load = [&](double s) { return edge_load(s) * inv2L2; };
  const int mid = intervals / 2;
  for (int k = mid; k < intervals; ++k) {
    const auto r = integrate_interval<Vec2>(load, nodes_[k], nodes_[k + 1], spec_);
    converged_ = converged_ && r.converged;
    values_[k + 1] = values_[k] + r.value;
  }
  for (int k = mid; k > 0; --k) {
    const auto r = integrate_interval<Vec2>(load, nodes_[k - 1], nodes_[k], spec_);
    converged_ = converged_ && r.converged;
    values_[k - 1] = values_[k] - r.value;
  }
  double worst = 0.0;
  for (int k = 0; k < intervals; ++k) {
    const double xm = 0.5 * (nodes_[k] + nodes_[k + 1]);
    const auto r = integrate_interval<Vec2>(load, nodes_[k], xm, spec_);
    worst = std::max(worst, norm(G(xm) - (values_[k] + r.value)));
  }
  diag_.tabulation_err = worst;
}

namespace {

struct HermiteBasis {
  double h00, h10, h01, h11;
};

}  // namespace

Vec2 DualStress::G(double x) const {
  const int n = static_cast<int>(nodes_.size()) - 1;
  const double L1 = geom_.L1();
  const int k = std::clamp(static_cast<int>(std::floor((x + L1) / (2.0 * L1) * n)), 0, n - 1);
  const double h = nodes_[k + 1] - nodes_[k];
  const double t = (x - nodes_[k]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const HermiteBasis b{2.0 * t3 - 3.0 * t2 + 1.0, t3 - 2.0 * t2 + t, -2.0 * t3 + 3.0 * t2, t3 - t2};
  return b.h00 * values_[k] + (b.h10 * h) * slopes_[k] + b.h01 * values_[k + 1] + (b.h11 * h) * slopes_[k + 1];
}

Vec2 DualStress::G_slope(double x) const {
  const int n = static_cast<int>(nodes_.size()) - 1;
  const double L1 = geom_.L1();
  const int k = std::clamp(static_cast<int>(std::floor((x + L1) / (2.0 * L1) * n)), 0, n - 1);
  const double h = nodes_[k + 1] - nodes_[k];
  const double t = (x - nodes_[k]) / h;
  const double t2 = t * t;
  return ((6.0 * t2 - 6.0 * t) / h) * values_[k] + (3.0 * t2 - 4.0 * t + 1.0) * slopes_[k] +
         ((6.0 * t - 6.0 * t2) / h) * values_[k + 1] + (3.0 * t2 - 2.0 * t) * slopes_[k + 1];
}

Matrix2 DualStress::sigma_correction(const Vec2 &p) const {
  const Vec2 g = G(p.x);
  const Vec2 f = F(p.x, p.y);
  return {g.x, f.x, g.y, f.y};
}

Matrix2 DualStress::sigma_total(const Vec2 &p) const {
  return sigma_singular(p).full() + sigma_correction(p);
}

StressField DualStress::field(Part part) const {
  switch (part) {
    case Part::Singular: return [this](const Vec2 &p) { return sigma_singular(p).full(); };
    case Part::Correction: return [this](const Vec2 &p) { return sigma_correction(p); };
    case Part::Total: return [this](const Vec2 &p) { return sigma_total(p); };
  }
  throw std::invalid_argument("unknown stress part");
}

double relative_divergence(const StressField &sigma, const Vec2 &p, double length_scale) {
  const double h = 1e-3 * length_scale;
  double scale = 0.0;
  auto d = [&](Vec2 dir) {
    const Matrix2 fp2 = sigma(p + (2.0 * h) * dir);
    const Matrix2 fp1 = sigma(p + h * dir);
    const Matrix2 fm1 = sigma(p - h * dir);
    const Matrix2 fm2 = sigma(p - (2.0 * h) * dir);
    for (const Matrix2 *s : {&fp2, &fp1, &fm1, &fm2}) scale = std::max(scale, s->frobenius());
    return (fm2 - fp2 + 8.0 * (fp1 - fm1)) * (1.0 / (12.0 * h));
  };
  const Matrix2 dx = d({1.0, 0.0});
  const Matrix2 dy = d({0.0, 1.0});
  const Vec2 div{dx.m11 + dy.m12, dx.m21 + dy.m22};
  if (scale == 0.0) return 0.0;
  return norm(div) * length_scale / scale;
}

void DualStress::compute_diagnostics() {
  constexpr int kGrid = 41;
  const double L1 = geom_.L1();
  const double L2 = geom_.L2();
  const StressField total = field(Part::Total);
  for (int ix = 0; ix < kGrid; ++ix) {
    for (int iy = 0; iy < kGrid; ++iy) {
      const Vec2 p{-L1 + (ix + 0.5) * 2.0 * L1 / kGrid, -L2 + (iy + 0.5) * 2.0 * L2 / kGrid};
      if (geom_.classify(p) != Region::Matrix) continue;
      const Matrix2 c = sigma_correction(p);
      diag_.asymmetry_max = std::max(diag_.asymmetry_max, std::abs(c.m12 - c.m21));
      diag_.correction_max = std::max(diag_.correction_max, c.frobenius());
      const double ell = std::min({1.0, norm(p - ctx_.p1()), norm(p - ctx_.p2())});
      diag_.div_residual = std::max(diag_.div_residual, relative_divergence(total, p, ell));
    }
  }
  constexpr int kEdge = 100;
  for (int i = 0; i < kEdge; ++i) {
    const double x = -L1 + (i + 0.5) * 2.0 * L1 / kEdge;
    const Vec2 top = sigma_total({x, L2}).apply({0.0, 1.0});
    const Vec2 bottom = sigma_total({x, -L2}).apply({0.0, -1.0});
    diag_.bc_residual = std::max({diag_.bc_residual, norm(top), norm(bottom)});
  }
}

DualStress build_dual_stress(const GapGeometry &g, const LameMaterial &m, int j, const QuadratureSpec &spec) {
  return DualStress(g, m, j, spec);
}

BoundResult dual_lower(const DualStress &sigma, const QuadratureSpec &cell_spec, const QuadratureSpec &path_spec) {
  const GapGeometry &g = sigma.geometry();
  const LameMaterial &m = sigma.context().material();
  const int j = sigma.j();

  auto area_density = [&](const Vec2 &p) {
    const Matrix2 s = sigma.sigma_singular(p).full();
    const Matrix2 c = sigma.sigma_correction(p);
    VecN<3> out;
    out[0] = complementary_energy(s, s, m);
    out[1] = complementary_energy(c, c, m);
    out[2] = complementary_energy(s, c, m);
    return out;
  };
  const auto area = integrate_cell<VecN<3>>(g, area_density, cell_spec);

  const Vec2 load = unit(j);
  auto traction = [&](const PathPoint &pp) {
    VecN<2> out;
    out[0] = dot(sigma.sigma_singular(pp.position).apply(pp.normal), load);
    out[1] = dot(sigma.sigma_correction(pp.position).apply(pp.normal), load);
    return out;
  };
  const auto flux = integrate_path<VecN<2>>(boundary_curves(g).gamma_plus, traction, path_spec);

  BoundResult out;
  out.j = j;
  out.kind = BoundKind::Lower;
  out.terms.singular = -area.value[0] + 2.0 * flux.value[0];
  out.terms.correction = -area.value[1] + 2.0 * flux.value[1];
  out.terms.cross = -2.0 * area.value[2];
  out.terms.area = -(area.value[0] + area.value[1] + 2.0 * area.value[2]);
  out.terms.flux = 2.0 * (flux.value[0] + flux.value[1]);
  out.value = out.terms.area + out.terms.flux;
  out.quadrature_err = area.err_estimate + 2.0 * flux.err_estimate;
  out.converged = area.converged && flux.converged && sigma.converged();
  out.diagnostics = sigma.diagnostics();
  return out;
}

BoundResult dual_lower(const GapGeometry &g, const LameMaterial &m, int j, const QuadratureSpec &cell_spec,
                       const QuadratureSpec &path_spec) {
  return dual_lower(DualStress(g, m, j, path_spec), cell_spec, path_spec);
}

// ---------------------------------------------------------------------------
// Identities of the singular functions

IntegralResult<double> flux_identity_check(const GapGeometry &g, const LameMaterial &m, int i, int j, int k,
                                           const QuadratureSpec &spec) {
  check_index(j);
  check_index(k);
  const KernelContext ctx(g, m);
  const Vec2 load = unit(k);
  auto f = [&](const PathPoint &pp) { return dot(singular_stress(ctx, j, pp.position).apply(pp.normal), load); };
  return integrate_path<double>(inclusion_boundary(g, i), f, spec);
}

IntegralResult<double> energy_identity_check(const GapGeometry &g, const LameMaterial &m, int j,
                                             const QuadratureSpec &spec) {
  check_index(j);
  const KernelContext ctx(g, m);
  auto f = [&](const PathPoint &pp) {
    return dot(singular_stress(ctx, j, pp.position).apply(pp.normal), singular_displacement(ctx, j, pp.position));
  };
  Path both = inclusion_boundary(g, 1);
  for (auto &piece : inclusion_boundary(g, 2)) both.push_back(std::move(piece));
  return integrate_path<double>(both, f, spec);
}

double normalized_energy(const GapGeometry &g, const LameMaterial &m, int j, double energy) {
  return blowup_constant(m, g.kappa0(), j) * energy / std::sqrt(g.eps());
}

}  // namespace gapstress
