#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gapstress/geometry.hpp"
#include "gapstress/quadrature.hpp"

using namespace gapstress;

namespace {

GapGeometry unit_disk(double eps, double L2 = 1.5) { return {InclusionShape::disk(1.0), eps, L2}; }

}  // namespace

TEST(GapGeometry, DiskDerivedFields) {
  const GapGeometry g = unit_disk(0.01);
  EXPECT_DOUBLE_EQ(g.kappa0(), 1.0);
  EXPECT_NEAR(g.a(), std::sqrt(0.0401) / 2.0, 1e-15);
  EXPECT_NEAR(g.a(), 0.1001249, 1e-7);
  EXPECT_EQ(g.p2(), (Vec2{g.a(), 0.0}));
  EXPECT_EQ(g.p1(), (Vec2{-g.a(), 0.0}));
  EXPECT_DOUBLE_EQ(g.L1(), 1.005);
  EXPECT_DOUBLE_EQ(g.L(), 0.5);
}

TEST(GapGeometry, FixedPointOffsetApproachesOsculatingScale) {
  for (double eps : {1e-4, 1e-6, 1e-8}) {
    const GapGeometry g = unit_disk(eps);
    EXPECT_NEAR(g.a() * std::sqrt(g.kappa0() / eps), 1.0, eps);
  }
}

TEST(GapGeometry, EllipseCurvature) {
  const GapGeometry g({InclusionShape::ellipse(1.0, 2.0)}, 0.01, 3.0);
  EXPECT_DOUBLE_EQ(g.kappa0(), 0.25);
  EXPECT_DOUBLE_EQ(g.r0(), 4.0);
  EXPECT_DOUBLE_EQ(g.L1(), 1.005);
}

TEST(GapGeometry, RejectsBadConfigurations) {
  EXPECT_THROW(unit_disk(0.0), std::invalid_argument);
  EXPECT_THROW(unit_disk(-1e-3), std::invalid_argument);
  EXPECT_THROW(unit_disk(1e-3, 1.0), std::invalid_argument);
  EXPECT_THROW(unit_disk(1e-3, 0.5), std::invalid_argument);
  EXPECT_THROW(GapGeometry(InclusionShape::ellipse(1.0, -2.0), 1e-3, 3.0), std::invalid_argument);
  EXPECT_THROW(GapGeometry(InclusionShape{ShapeKind::Disk, 1.0, 2.0}, 1e-3, 3.0), std::invalid_argument);
}

TEST(GapHalfwidth, DiskValues) {
  const GapGeometry g = unit_disk(0.01);
  EXPECT_DOUBLE_EQ(g.gap_halfwidth(0.0), 0.005);
  EXPECT_NEAR(g.gap_halfwidth(0.1), 0.005 + 1.0 - std::sqrt(0.99), 1e-15);
  EXPECT_NEAR(g.gap_halfwidth(0.1), 0.0100126, 1e-7);
  EXPECT_THROW(g.gap_halfwidth(1.01), std::out_of_range);
}

TEST(GapHalfwidth, TaylorLimit) {
  for (const InclusionShape &s : {InclusionShape::disk(1.0), InclusionShape::ellipse(1.0, 2.0),
                                  InclusionShape::ellipse(0.7, 0.5)}) {
    const GapGeometry g(s, 1e-3, 3.0);
    const double y = 1e-4;
    EXPECT_NEAR((g.gap_halfwidth(y) - 0.5 * g.eps()) / (0.5 * g.kappa0() * y * y), 1.0, 1e-6);
  }
}

TEST(GapHalfwidth, EvenConvexFlatAtCenter) {
  const GapGeometry g({InclusionShape::ellipse(1.3, 0.9)}, 1e-2, 2.0);
  EXPECT_EQ(g.gap_halfwidth_slope(0.0), 0.0);
  const double B = g.shape().B;
  for (int i = 1; i < 100; ++i) {
    const double y = 0.99 * B * i / 100.0;
    EXPECT_EQ(g.gap_halfwidth(y), g.gap_halfwidth(-y));
    const double h = 1e-3 * B;
    if (y + h < B) {
      EXPECT_GT(g.gap_halfwidth(y + h) + g.gap_halfwidth(y - h) - 2.0 * g.gap_halfwidth(y), 0.0);
    }
  }
}

TEST(GapGeometry, FixedPointCorrectionIsThreeHalvesOrder) {
  // a - sqrt(eps/kappa0) ~ eps^{3/2} / (8 sqrt(r0))
  double lo = 1e300, hi = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const GapGeometry g = unit_disk(eps);
    EXPECT_NEAR(g.a() * g.a(), eps * (4.0 * g.r0() + eps) / 4.0, 1e-15 * g.a() * g.a());
    const double c = std::abs(g.a() - std::sqrt(eps / g.kappa0())) / std::pow(eps, 1.5);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  EXPECT_NEAR(lo, 0.125, 0.01);
  EXPECT_LT(hi / lo, 1.05);
}

TEST(GapGeometry, PolesInsideInclusions) {
  for (const InclusionShape &s : {InclusionShape::disk(1.0), InclusionShape::disk(0.3),
                                  InclusionShape::ellipse(1.0, 2.0), InclusionShape::ellipse(1.0, 0.6)}) {
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-5}) {
      const GapGeometry g(s, eps, 2.0 * s.B + 0.5);
      EXPECT_EQ(g.classify(g.p1()), Region::Inclusion1);
      EXPECT_EQ(g.classify(g.p2()), Region::Inclusion2);
    }
  }
}

TEST(RegionClassify, Examples) {
  const GapGeometry g = unit_disk(0.01);
  EXPECT_EQ(g.classify({0.0, 0.0}), Region::Matrix);
  EXPECT_EQ(g.classify({1.005, 0.0}), Region::Inclusion2);
  EXPECT_EQ(g.classify({-1.005, 0.0}), Region::Inclusion1);
  EXPECT_EQ(g.classify({0.0, 3.0}), Region::OutsideCell);
  EXPECT_EQ(g.classify({0.0, 1.5}), Region::Matrix);  // boundary counts as matrix
  EXPECT_EQ(g.classify({0.0049, 0.0}), Region::Matrix);
  EXPECT_EQ(g.classify({0.0051, 0.0}), Region::Inclusion2);
}

TEST(RegionClassify, MirrorSymmetry) {
  const GapGeometry g({InclusionShape::ellipse(1.2, 0.8)}, 0.05, 1.4);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-1.5, 1.5), uy(-1.6, 1.6);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 p{ux(rng), uy(rng)};
    const Region r = g.classify(p);
    const Region m = g.classify({-p.x, p.y});
    ASSERT_EQ(r == Region::Inclusion1, m == Region::Inclusion2);
    ASSERT_EQ(r == Region::Matrix, m == Region::Matrix);
  }
}

TEST(BoundaryCurves, GammaPlusLengthAndGapNormal) {
  const GapGeometry g = unit_disk(0.01);
  const BoundaryCurves c = boundary_curves(g);
  QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  const auto len = integrate_path<double>(c.gamma_plus, [](const PathPoint &) { return 1.0; }, spec);
  EXPECT_NEAR(len.value, std::numbers::pi + 2.0 * (1.5 - 1.0), 1e-12);
  const auto len_minus = integrate_path<double>(c.gamma_minus, [](const PathPoint &) { return 1.0; }, spec);
  EXPECT_NEAR(len_minus.value, len.value, 1e-12);

  const PathPoint z2 = c.gamma_plus.front().eval(std::numbers::pi);
  EXPECT_NEAR(z2.position.x, 0.005, 1e-15);
  EXPECT_NEAR(z2.position.y, 0.0, 1e-15);
  EXPECT_NEAR(z2.normal.x, 1.0, 1e-15);
  EXPECT_NEAR(z2.normal.y, 0.0, 1e-15);
  const PathPoint z1 = c.gamma_minus.front().eval(0.0);
  EXPECT_NEAR(z1.normal.x, -1.0, 1e-15);
}

TEST(BoundaryCurves, ClosedCurveNormalsIntegrateToZero) {
  const GapGeometry g({InclusionShape::ellipse(1.0, 0.7)}, 1e-3, 1.0);
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-13;
  for (int i : {1, 2}) {
    const auto n = integrate_path<Vec2>(inclusion_boundary(g, i), [](const PathPoint &p) { return p.normal; }, spec);
    EXPECT_NEAR(n.value.x, 0.0, 1e-12);
    EXPECT_NEAR(n.value.y, 0.0, 1e-12);
  }
  EXPECT_THROW(inclusion_boundary(g, 3), std::invalid_argument);
}

TEST(BoundaryCurves, NormalsPointIntoInclusions) {
  const GapGeometry g = unit_disk(1e-2);
  const BoundaryCurves c = boundary_curves(g);
  for (double t : {1.7, 2.5, 3.1, 4.0, 4.6}) {
    const PathPoint p = c.gamma_plus.front().eval(t);
    EXPECT_EQ(g.classify(p.position + 1e-6 * p.normal), Region::Inclusion2);
    EXPECT_EQ(g.classify(p.position - 1e-6 * p.normal), Region::Matrix);
  }
}

TEST(GradedHeights, SortedInsideCellAndContainsNeckEdges) {
  const GapGeometry g = unit_disk(1e-4);
  const auto h = g.graded_heights();
  ASSERT_FALSE(h.empty());
  for (std::size_t i = 1; i < h.size(); ++i) EXPECT_LT(h[i - 1], h[i]);
  EXPECT_GT(h.front(), -g.L2());
  EXPECT_LT(h.back(), g.L2());
  EXPECT_NE(std::find(h.begin(), h.end(), 0.0), h.end());
  EXPECT_NE(std::find(h.begin(), h.end(), g.L()), h.end());
  EXPECT_NE(std::find(h.begin(), h.end(), 1.0), h.end());
}

TEST(GapGeometry, MatrixArea) {
  const GapGeometry g = unit_disk(0.01);
  EXPECT_NEAR(g.matrix_area(), 4.0 * 1.005 * 1.5 - std::numbers::pi, 1e-14);
  EXPECT_NEAR(g.matrix_area(), 2.88841, 1e-5);
}
