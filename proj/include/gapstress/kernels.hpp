#pragma once

#include "gapstress/elasticity.hpp"
#include "gapstress/geometry.hpp"

namespace gapstress {

/// Free-space building blocks of the singular functions ("nuclei of strain").
enum class Nucleus {
  KelvinCol1,  ///< Gamma(x) e1
  KelvinCol2,  ///< Gamma(x) e2
  Radial,      ///< x / |x|^2
  Rotational,  ///< x_perp / |x|^2 with x_perp = (-x2, x1)
};

/// Kelvin matrix Gamma_ij(x) = alpha1 delta_ij ln|x| - alpha2 x_i x_j / |x|^2.
/// Throws std::domain_error at the origin.
Matrix2 kelvin_matrix(const Vec2 &x, const LameMaterial &m);

Vec2 nucleus_displacement(Nucleus which, const Vec2 &x, const LameMaterial &m);

/// Closed-form gradient (i, j) = d u_i / d x_j of a nucleus.
Matrix2 kernel_gradient(Nucleus which, const Vec2 &x, const LameMaterial &m);

/// Material and pole placement for q1, q2. Poles sit at (-a, 0) and (a, 0).
class KernelContext {
 public:
  KernelContext(const LameMaterial &material, double a);
  explicit KernelContext(const GapGeometry &g, const LameMaterial &material)
      : KernelContext(material, g.a()) {}

  const LameMaterial &material() const { return material_; }
  double a() const { return a_; }
  Vec2 p1() const { return {-a_, 0.0}; }
  Vec2 p2() const { return {a_, 0.0}; }

  /// Evaluations closer than this to either pole are rejected.
  static constexpr double kPoleExclusion = 1e-12;

 private:
  LameMaterial material_;
  double a_;
};

/// q_j(x), j in {1, 2}. Throws std::domain_error at the poles.
Vec2 singular_displacement(const KernelContext &ctx, int j, const Vec2 &x);
Matrix2 singular_gradient(const KernelContext &ctx, int j, const Vec2 &x);
/// C sym(grad q_j), unscaled.
SymTensor2 singular_stress(const KernelContext &ctx, int j, const Vec2 &x);

}  // namespace gapstress
