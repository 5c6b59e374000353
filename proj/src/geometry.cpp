#include "gapstress/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gapstress {

namespace {

constexpr double kPi = std::numbers::pi;

PathPiece segment(Vec2 from, Vec2 to, Vec2 normal) {
  const Vec2 d = to - from;
  const double len = norm(d);
  return {[from, d, normal, len](double t) { return PathPoint{from + t * d, normal, len}; },
          0.0, 1.0, {}};
}

// Arc of the ellipse centered at `center`, angle range [t0, t1]; the normal
// points toward the ellipse interior.
PathPiece ellipse_arc(Vec2 center, double A, double B, double t0, double t1,
                      std::vector<double> breaks) {
  return {[center, A, B](double t) {
            const double c = std::cos(t);
            const double s = std::sin(t);
            const double jac = std::hypot(A * s, B * c);
            return PathPoint{{center.x + A * c, center.y + B * s}, {-B * c / jac, -A * s / jac}, jac};
          },
          t0, t1, std::move(breaks)};
}

// Arc angles matching the graded gap heights, around the vertex angle `vertex`
// of an ellipse whose y = B sin(t) near the vertex; `sign` is -1 when y
// decreases with t (the right-hand inclusion, vertex at pi).
std::vector<double> arc_breaks(const GapGeometry &g, double vertex, double sign) {
  std::vector<double> out;
  const double B = g.shape().B;
  for (double y : g.graded_heights()) {
    if (std::abs(y) < 0.999 * B) out.push_back(vertex + sign * std::asin(y / B));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

InclusionShape InclusionShape::disk(double r0) { return {ShapeKind::Disk, r0, r0}; }

InclusionShape InclusionShape::ellipse(double A, double B) { return {ShapeKind::Ellipse, A, B}; }

std::string to_string(Region r) {
  switch (r) {
    case Region::Matrix: return "matrix";
    case Region::Inclusion1: return "inclusion1";
    case Region::Inclusion2: return "inclusion2";
    case Region::OutsideCell: return "outside_cell";
  }
  return "unknown";
}

double fixed_point_offset(double eps, double r0) { return 0.5 * std::sqrt(eps * (4.0 * r0 + eps)); }

GapGeometry::GapGeometry(const InclusionShape &shape, double eps, double L2)
    : shape_(shape), eps_(eps), L1_(0.0), L2_(L2), kappa0_(0.0), a_(0.0), L_(0.0) {
  if (!(shape.A > 0.0) || !(shape.B > 0.0) || !std::isfinite(shape.A) || !std::isfinite(shape.B)) {
    throw std::invalid_argument("inclusion semi-axes must be positive and finite");
  }
  if (shape.kind == ShapeKind::Disk && shape.A != shape.B) {
    throw std::invalid_argument("disk inclusion needs equal semi-axes");
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("gap eps must be positive");
  if (!(L2 > shape.B) || !std::isfinite(L2)) {
    throw std::invalid_argument("L2 must exceed the inclusion's vertical half-extent");
  }
  L1_ = shape.A + 0.5 * eps;
  kappa0_ = shape.vertex_curvature();
  a_ = fixed_point_offset(eps, 1.0 / kappa0_);
  L_ = 0.5 * shape.B;
}

double GapGeometry::gap_halfwidth(double y) const {
  const double B = shape_.B;
  if (!(std::abs(y) <= B)) throw std::out_of_range("gap_halfwidth: |y| exceeds inclusion height");
  const double t = (y / B) * (y / B);
  // A (1 - sqrt(1 - t)) without cancellation near the vertex
  return 0.5 * eps_ + shape_.A * t / (1.0 + std::sqrt(1.0 - t));
}

double GapGeometry::gap_halfwidth_slope(double y) const {
  const double B = shape_.B;
  if (!(std::abs(y) < B)) throw std::out_of_range("gap_halfwidth_slope: |y| must be below inclusion height");
  const double t = (y / B) * (y / B);
  return shape_.A * y / (B * B * std::sqrt(1.0 - t));
}

double GapGeometry::fiber_halfwidth(double y) const {
  return std::abs(y) < shape_.B ? gap_halfwidth(y) : L1_;
}

Region GapGeometry::classify(const Vec2 &p) const {
  if (std::abs(p.x) > L1_ || std::abs(p.y) > L2_) return Region::OutsideCell;
  const double A = shape_.A;
  const double B = shape_.B;
  const double yy = (p.y / B) * (p.y / B);
  const double dr = (p.x - L1_) / A;
  if (dr * dr + yy < 1.0) return Region::Inclusion2;
  const double dl = (p.x + L1_) / A;
  if (dl * dl + yy < 1.0) return Region::Inclusion1;
  return Region::Matrix;
}

std::vector<double> GapGeometry::graded_heights() const {
  std::vector<double> h{0.0, L_, -L_, shape_.B, -shape_.B};
  for (double s = 0.25 * std::sqrt(eps_); s < L2_; s *= 2.0) {
    h.push_back(s);
    h.push_back(-s);
  }
  std::sort(h.begin(), h.end());
  std::vector<double> out;
  for (double v : h) {
    if (std::abs(v) >= L2_) continue;
    if (!out.empty() && v - out.back() <= 1e-12 * L2_) continue;
    out.push_back(v);
  }
  return out;
}

double GapGeometry::matrix_area() const { return 4.0 * L1_ * L2_ - kPi * shape_.A * shape_.B; }

BoundaryCurves boundary_curves(const GapGeometry &g) {
  const double L1 = g.L1();
  const double L2 = g.L2();
  const double A = g.shape().A;
  const double B = g.shape().B;
  BoundaryCurves c;
  c.gamma_plus.push_back(ellipse_arc({L1, 0.0}, A, B, 0.5 * kPi, 1.5 * kPi, arc_breaks(g, kPi, -1.0)));
  c.gamma_plus.push_back(segment({L1, B}, {L1, L2}, {1.0, 0.0}));
  c.gamma_plus.push_back(segment({L1, -L2}, {L1, -B}, {1.0, 0.0}));
  c.gamma_minus.push_back(ellipse_arc({-L1, 0.0}, A, B, -0.5 * kPi, 0.5 * kPi, arc_breaks(g, 0.0, 1.0)));
  c.gamma_minus.push_back(segment({-L1, B}, {-L1, L2}, {-1.0, 0.0}));
  c.gamma_minus.push_back(segment({-L1, -L2}, {-L1, -B}, {-1.0, 0.0}));
  c.edge_top.push_back(segment({-L1, L2}, {L1, L2}, {0.0, 1.0}));
  c.edge_bottom.push_back(segment({-L1, -L2}, {L1, -L2}, {0.0, -1.0}));
  return c;
}

Path inclusion_boundary(const GapGeometry &g, int i) {
  const double A = g.shape().A;
  const double B = g.shape().B;
  if (i == 2) return {ellipse_arc({g.L1(), 0.0}, A, B, 0.0, 2.0 * kPi, arc_breaks(g, kPi, -1.0))};
  if (i == 1) return {ellipse_arc({-g.L1(), 0.0}, A, B, -kPi, kPi, arc_breaks(g, 0.0, 1.0))};
  throw std::invalid_argument("inclusion index must be 1 or 2");
}

}  // namespace gapstress
