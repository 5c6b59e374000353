#include "gapstress/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace gapstress {

namespace {

double checked_r2(const Vec2 &x, double exclusion) {
  const double r2 = x.x * x.x + x.y * x.y;
  if (!(r2 > exclusion * exclusion)) throw std::domain_error("kernel evaluated at its pole");
  return r2;
}

void check_index(int j) {
  if (j != 1 && j != 2) throw std::invalid_argument("singular function index must be 1 or 2");
}

}  // namespace

Matrix2 kelvin_matrix(const Vec2 &x, const LameMaterial &m) {
  const double r2 = checked_r2(x, 0.0);
  const auto &c = m.constants();
  const double lg = c.alpha1 * 0.5 * std::log(r2);
  const double k = c.alpha2 / r2;
  return {lg - k * x.x * x.x, -k * x.x * x.y, -k * x.x * x.y, lg - k * x.y * x.y};
}

Vec2 nucleus_displacement(Nucleus which, const Vec2 &x, const LameMaterial &m) {
  switch (which) {
    case Nucleus::KelvinCol1: return kelvin_matrix(x, m).col1();
    case Nucleus::KelvinCol2: return kelvin_matrix(x, m).col2();
    case Nucleus::Radial: {
      const double r2 = checked_r2(x, 0.0);
      return {x.x / r2, x.y / r2};
    }
    case Nucleus::Rotational: {
      const double r2 = checked_r2(x, 0.0);
      return {-x.y / r2, x.x / r2};
    }
  }
  throw std::invalid_argument("unknown nucleus");
}

Matrix2 kernel_gradient(Nucleus which, const Vec2 &x, const LameMaterial &m) {
  const double r2 = checked_r2(x, 0.0);
  const double r4 = r2 * r2;
  const double x1 = x.x;
  const double x2 = x.y;
  switch (which) {
    case Nucleus::KelvinCol1:
    case Nucleus::KelvinCol2: {
      // d_j Gamma_ik = alpha1 delta_ik x_j / r^2
      //              - alpha2 [(delta_ij x_k + x_i delta_jk) / r^2 - 2 x_i x_j x_k / r^4]
      const auto &c = m.constants();
      const double xk = which == Nucleus::KelvinCol1 ? x1 : x2;
      const int k = which == Nucleus::KelvinCol1 ? 1 : 2;
      const double xs[2] = {x1, x2};
      Matrix2 g;
      double *out[2][2] = {{&g.m11, &g.m12}, {&g.m21, &g.m22}};
      for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
          const double xi = xs[i - 1];
          const double xj = xs[j - 1];
          const double dik = i == k ? 1.0 : 0.0;
          const double dij = i == j ? 1.0 : 0.0;
          const double djk = j == k ? 1.0 : 0.0;
          *out[i - 1][j - 1] = c.alpha1 * dik * xj / r2 -
                               c.alpha2 * ((dij * xk + xi * djk) / r2 - 2.0 * xi * xj * xk / r4);
        }
      }
      return g;
    }
    case Nucleus::Radial:
      return {1.0 / r2 - 2.0 * x1 * x1 / r4, -2.0 * x1 * x2 / r4, -2.0 * x1 * x2 / r4,
              1.0 / r2 - 2.0 * x2 * x2 / r4};
    case Nucleus::Rotational:
      return {2.0 * x1 * x2 / r4, -1.0 / r2 + 2.0 * x2 * x2 / r4, 1.0 / r2 - 2.0 * x1 * x1 / r4,
              -2.0 * x1 * x2 / r4};
  }
  throw std::invalid_argument("unknown nucleus");
}

KernelContext::KernelContext(const LameMaterial &material, double a) : material_(material), a_(a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("pole offset a must be positive");
}

Vec2 singular_displacement(const KernelContext &ctx, int j, const Vec2 &x) {
  check_index(j);
  const Vec2 d1 = x - ctx.p1();
  const Vec2 d2 = x - ctx.p2();
  checked_r2(d1, KernelContext::kPoleExclusion);
  checked_r2(d2, KernelContext::kPoleExclusion);
  const auto &m = ctx.material();
  const double s = m.constants().alpha2 * ctx.a();
  if (j == 1) {
    return nucleus_displacement(Nucleus::KelvinCol1, d1, m) - nucleus_displacement(Nucleus::KelvinCol1, d2, m) +
           s * (nucleus_displacement(Nucleus::Radial, d1, m) + nucleus_displacement(Nucleus::Radial, d2, m));
  }
  return nucleus_displacement(Nucleus::KelvinCol2, d1, m) - nucleus_displacement(Nucleus::KelvinCol2, d2, m) -
         s * (nucleus_displacement(Nucleus::Rotational, d1, m) + nucleus_displacement(Nucleus::Rotational, d2, m));
}

Matrix2 singular_gradient(const KernelContext &ctx, int j, const Vec2 &x) {
  check_index(j);
  const Vec2 d1 = x - ctx.p1();
  const Vec2 d2 = x - ctx.p2();
  checked_r2(d1, KernelContext::kPoleExclusion);
  checked_r2(d2, KernelContext::kPoleExclusion);
  const auto &m = ctx.material();
  const double s = m.constants().alpha2 * ctx.a();
  if (j == 1) {
    return kernel_gradient(Nucleus::KelvinCol1, d1, m) - kernel_gradient(Nucleus::KelvinCol1, d2, m) +
           s * (kernel_gradient(Nucleus::Radial, d1, m) + kernel_gradient(Nucleus::Radial, d2, m));
  }
  return kernel_gradient(Nucleus::KelvinCol2, d1, m) - kernel_gradient(Nucleus::KelvinCol2, d2, m) -
         s * (kernel_gradient(Nucleus::Rotational, d1, m) + kernel_gradient(Nucleus::Rotational, d2, m));
}

SymTensor2 singular_stress(const KernelContext &ctx, int j, const Vec2 &x) {
  return stress_from_gradient(singular_gradient(ctx, j, x), ctx.material());
}

}  // namespace gapstress
