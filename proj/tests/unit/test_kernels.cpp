#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gapstress/bounds.hpp"
#include "gapstress/kernels.hpp"
#include "gapstress/quadrature.hpp"

using namespace gapstress;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent displacement formulas written out from the definitions.
struct Oracle {
  double lambda, mu, a;
  double a1() const { return (1.0 / mu + 1.0 / (2.0 * mu + lambda)) / (4.0 * kPi); }
  double a2() const { return (1.0 / mu - 1.0 / (2.0 * mu + lambda)) / (4.0 * kPi); }

  Vec2 gamma_col(double x1, double x2, int k) const {
    const double r2 = x1 * x1 + x2 * x2;
    const double xk = k == 1 ? x1 : x2;
    return {a1() * 0.5 * std::log(r2) * (k == 1) - a2() * x1 * xk / r2,
            a1() * 0.5 * std::log(r2) * (k == 2) - a2() * x2 * xk / r2};
  }
  Vec2 q(int j, double x1, double x2) const {
    const double u1 = x1 + a, u2 = x1 - a;
    const double r1 = u1 * u1 + x2 * x2, r2 = u2 * u2 + x2 * x2;
    const Vec2 k = gamma_col(u1, x2, j) - gamma_col(u2, x2, j);
    if (j == 1) return k + a2() * a * Vec2{u1 / r1 + u2 / r2, x2 / r1 + x2 / r2};
    return k - a2() * a * Vec2{-x2 / r1 - x2 / r2, u1 / r1 + u2 / r2};
  }
};

Matrix2 fd_gradient(const std::function<Vec2(const Vec2 &)> &u, const Vec2 &p, double h) {
  const Vec2 dx = (u({p.x + h, p.y}) - u({p.x - h, p.y})) * (0.5 / h);
  const Vec2 dy = (u({p.x, p.y + h}) - u({p.x, p.y - h})) * (0.5 / h);
  return {dx.x, dy.x, dx.y, dy.y};
}

double max_abs(const Matrix2 &m) {
  return std::max({std::abs(m.m11), std::abs(m.m12), std::abs(m.m21), std::abs(m.m22)});
}

const LameMaterial kUnit{1.0, 1.0};

}  // namespace

TEST(KelvinMatrix, ValueOnUnitCircle) {
  const Matrix2 k = kelvin_matrix({1.0, 0.0}, kUnit);
  EXPECT_NEAR(k.m11, -1.0 / (6.0 * kPi), 1e-16);
  EXPECT_NEAR(k.m12, 0.0, 1e-16);
  EXPECT_NEAR(k.m21, 0.0, 1e-16);
  EXPECT_NEAR(k.m22, 0.0, 1e-16);
}

TEST(KelvinMatrix, EvenAndSymmetric) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const LameMaterial m(3.0, 0.4);
  for (int i = 0; i < 200; ++i) {
    const Vec2 x{u(rng), u(rng)};
    const Matrix2 k = kelvin_matrix(x, m);
    const Matrix2 km = kelvin_matrix({-x.x, -x.y}, m);
    EXPECT_EQ(k, km);
    EXPECT_EQ(k.m12, k.m21);
  }
  EXPECT_THROW(kelvin_matrix({0.0, 0.0}, m), std::domain_error);
}

TEST(KernelGradient, HarmonicNucleiOnUnitCircle) {
  EXPECT_EQ(kernel_gradient(Nucleus::Radial, {1.0, 0.0}, kUnit), (Matrix2{-1.0, 0.0, 0.0, 1.0}));
  EXPECT_EQ(kernel_gradient(Nucleus::Rotational, {1.0, 0.0}, kUnit), (Matrix2{0.0, -1.0, -1.0, 0.0}));
  EXPECT_THROW(kernel_gradient(Nucleus::Radial, {0.0, 0.0}, kUnit), std::domain_error);
}

TEST(KernelGradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const LameMaterial m(1.7, 0.6);
  for (Nucleus n : {Nucleus::KelvinCol1, Nucleus::KelvinCol2, Nucleus::Radial, Nucleus::Rotational}) {
    for (int i = 0; i < 100; ++i) {
      const Vec2 x{u(rng), u(rng)};
      if (norm(x) < 0.05) continue;
      const Matrix2 exact = kernel_gradient(n, x, m);
      const Matrix2 fd = fd_gradient([&](const Vec2 &p) { return nucleus_displacement(n, p, m); }, x, 1e-6);
      ASSERT_LE(max_abs(exact - fd), 1e-6 * std::max(1.0, max_abs(exact)));
    }
  }
}

TEST(SingularDisplacement, MatchesOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const LameMaterial m(2.0, 0.5);
  const KernelContext ctx(m, 0.1);
  const Oracle o{2.0, 0.5, 0.1};
  for (int i = 0; i < 300; ++i) {
    const Vec2 x{u(rng), u(rng)};
    if (norm(x - ctx.p1()) < 0.05 || norm(x - ctx.p2()) < 0.05) continue;
    for (int j : {1, 2}) {
      const Vec2 q = singular_displacement(ctx, j, x);
      const Vec2 r = o.q(j, x.x, x.y);
      ASSERT_NEAR(q.x, r.x, 1e-13);
      ASSERT_NEAR(q.y, r.y, 1e-13);
      const Matrix2 fd = fd_gradient([&](const Vec2 &p) { return o.q(j, p.x, p.y); }, x, 1e-6);
      const Matrix2 g = singular_gradient(ctx, j, x);
      ASSERT_LE(max_abs(g - fd), 1e-6 * std::max(1.0, max_abs(g)));
    }
  }
}

TEST(SingularDisplacement, VanishesAtGapCenter) {
  const KernelContext ctx(kUnit, 0.03);
  for (int j : {1, 2}) {
    const Vec2 q = singular_displacement(ctx, j, {0.0, 0.0});
    EXPECT_NEAR(q.x, 0.0, 1e-15);
    EXPECT_NEAR(q.y, 0.0, 1e-15);
  }
  EXPECT_NEAR(singular_stress(ctx, 1, {0.0, 0.0}).a12, 0.0, 1e-14);
}

TEST(SingularDisplacement, FarFieldDecaysLikeSqrtEps) {
  double lo = 1e300, hi = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const GapGeometry g(InclusionShape::disk(1.0), eps, 1.5);
    const KernelContext ctx(g, kUnit);
    for (int j : {1, 2}) {
      // q_1 vanishes on the symmetry axis x = 0, so sample off it
      const double r = norm(singular_displacement(ctx, j, {0.5, g.L2()})) / std::sqrt(eps);
      if (j == 1) {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      EXPECT_LT(r, 1.0);
    }
  }
  EXPECT_LT(hi / lo, 1.1);
}

TEST(SingularDisplacement, RejectsPolesAndBadIndex) {
  const KernelContext ctx(kUnit, 0.1);
  EXPECT_THROW(singular_displacement(ctx, 1, ctx.p1()), std::domain_error);
  EXPECT_THROW(singular_gradient(ctx, 2, ctx.p2()), std::domain_error);
  EXPECT_THROW(singular_stress(ctx, 1, {0.1 + 1e-14, 0.0}), std::domain_error);
  EXPECT_THROW(singular_displacement(ctx, 3, {0.5, 0.5}), std::invalid_argument);
}

TEST(SingularStress, SatisfiesLameSystem) {
  const LameMaterial m(1.3, 0.8);
  const KernelContext ctx(m, 0.1);
  const Oracle o{1.3, 0.8, 0.1};
  const double h = 1e-4;
  for (const Vec2 x : {Vec2{0.0, 0.2}, Vec2{0.3, -0.1}, Vec2{-0.5, 0.7}, Vec2{1.0, 1.2}}) {
    for (int j : {1, 2}) {
      auto u = [&](double dx, double dy) { return o.q(j, x.x + dx, x.y + dy); };
      const Vec2 uxx = (u(h, 0) - 2.0 * u(0, 0) + u(-h, 0)) * (1.0 / (h * h));
      const Vec2 uyy = (u(0, h) - 2.0 * u(0, 0) + u(0, -h)) * (1.0 / (h * h));
      const Vec2 uxy = (u(h, h) - u(h, -h) - u(-h, h) + u(-h, -h)) * (1.0 / (4.0 * h * h));
      // mu Laplace u + (lambda + mu) grad div u
      const Vec2 lap = uxx + uyy;
      const Vec2 grad_div{uxx.x + uxy.y, uxy.x + uyy.y};
      const Vec2 res = m.mu() * lap + (m.lambda() + m.mu()) * grad_div;
      const double scale = norm(m.mu() * lap) + norm((m.lambda() + m.mu()) * grad_div) + 1.0;
      EXPECT_LT(norm(res) / scale, 1e-5);

      const StressField s = [&](const Vec2 &p) { return singular_stress(ctx, j, p).full(); };
      EXPECT_LT(relative_divergence(s, x, 0.05), 1e-8);
    }
  }
}

TEST(SingularStress, FluxIsContourIndependent) {
  const LameMaterial m(1.0, 1.0);
  const double a = 0.1;
  const KernelContext ctx(m, a);
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  auto circle_flux = [&](double radius, int j, int k) {
    // normal pointing toward the enclosed pole
    auto f = [&](double t) {
      const Vec2 n{-std::cos(t), -std::sin(t)};
      const Vec2 x = ctx.p2() - radius * n;
      const Vec2 tr = singular_stress(ctx, j, x).apply(n);
      return (k == 1 ? tr.x : tr.y) * radius;
    };
    return integrate_interval<double>(f, 0.0, 2.0 * kPi, spec).value;
  };
  for (int j : {1, 2}) {
    for (int k : {1, 2}) {
      const double f1 = circle_flux(0.5 * a, j, k);
      const double f2 = circle_flux(0.9 * a, j, k);
      EXPECT_NEAR(f1, f2, 1e-10);
      EXPECT_NEAR(f1, j == k ? 1.0 : 0.0, 1e-10);
    }
  }
}
