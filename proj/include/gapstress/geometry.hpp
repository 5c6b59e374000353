#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gapstress/elasticity.hpp"

namespace gapstress {

enum class ShapeKind { Disk, Ellipse };

/// Inclusion cross-section, symmetric in both axes. `A` is the horizontal
/// semi-axis, `B` the vertical one; a disk has A == B == r0.
struct InclusionShape {
  ShapeKind kind = ShapeKind::Disk;
  double A = 1.0;
  double B = 1.0;

  static InclusionShape disk(double r0);
  static InclusionShape ellipse(double A, double B);

  /// Curvature of the boundary at the horizontal vertex (A, 0).
  double vertex_curvature() const { return A / (B * B); }
};

enum class Region { Matrix, Inclusion1, Inclusion2, OutsideCell };

std::string to_string(Region r);

/// One smooth piece of a boundary path, parametrized on [t0, t1].
struct PathPoint {
  Vec2 position;
  Vec2 normal;      ///< unit normal, outward with respect to the matrix region
  double jacobian;  ///< |d position / dt|
};

struct PathPiece {
  std::function<PathPoint(double)> eval;
  double t0 = 0.0;
  double t1 = 1.0;
  std::vector<double> breakpoints;  ///< interior parameters where the integrand concentrates
};

using Path = std::vector<PathPiece>;

struct BoundaryCurves {
  Path gamma_minus;  ///< left inclusion arc plus the x = -L1 segments
  Path gamma_plus;   ///< right inclusion arc plus the x = +L1 segments
  Path edge_top;     ///< y = +L2
  Path edge_bottom;  ///< y = -L2
};

/// Translated period cell Y' = (-L1, L1) x (-L2, L2) minus the two inclusions,
/// in gap-centered coordinates: D1 is centered at (-L1, 0), D2 at (L1, 0) and
/// the gap of width eps straddles the origin.
class GapGeometry {
 public:
  /// Throws std::invalid_argument for eps <= 0, a degenerate shape, or L2 not
  /// exceeding the inclusion's vertical half-extent.
  GapGeometry(const InclusionShape &shape, double eps, double L2);

  const InclusionShape &shape() const { return shape_; }
  double eps() const { return eps_; }
  double L1() const { return L1_; }
  double L2() const { return L2_; }
  double kappa0() const { return kappa0_; }
  double r0() const { return 1.0 / kappa0_; }
  double a() const { return a_; }
  /// Half-height of the neck region Pi_L.
  double L() const { return L_; }
  Vec2 p1() const { return {-a_, 0.0}; }
  Vec2 p2() const { return {a_, 0.0}; }
  Vec2 z1() const { return {-0.5 * eps_, 0.0}; }
  Vec2 z2() const { return {0.5 * eps_, 0.0}; }

  /// f(y): horizontal distance from x = 0 to the boundary of D2 at height y.
  /// Defined for |y| <= B; throws std::out_of_range otherwise.
  double gap_halfwidth(double y) const;
  double gap_halfwidth_slope(double y) const;

  /// Half-width of the matrix fiber {x : (x, y) in Y'}: f(y) for |y| < B, L1 above.
  double fiber_halfwidth(double y) const;

  Region classify(const Vec2 &p) const;

  /// Heights where integrands over Y' change character: 0, a geometric
  /// sequence sqrt(eps) * 2^k, the neck edge L and the inclusion top B.
  /// Sorted, strictly inside (-L2, L2).
  std::vector<double> graded_heights() const;

  double matrix_area() const;

 private:
  InclusionShape shape_;
  double eps_;
  double L1_;
  double L2_;
  double kappa0_;
  double a_;
  double L_;
};

BoundaryCurves boundary_curves(const GapGeometry &g);

/// Full closed boundary of inclusion i (1 or 2), normal pointing into the inclusion.
Path inclusion_boundary(const GapGeometry &g, int i);

/// Fixed-point offset of the composed reflections across the osculating disks.
double fixed_point_offset(double eps, double r0);

}  // namespace gapstress
