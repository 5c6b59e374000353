#include "gapstress/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

namespace gapstress {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (!(abs_tol >= 0.0)) throw std::invalid_argument("abs_tol must be non-negative");
  if (max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
  if (base_order < 2 || base_order > 128) throw std::invalid_argument("base_order must be in [2, 128]");
  if (max_panels < 1) throw std::invalid_argument("max_panels must be positive");
}

namespace {

GaussRule compute_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

}  // namespace

const GaussRule &gauss_rule(int n) {
  if (n < 2 || n > 128) throw std::invalid_argument("gauss_rule order must be in [2, 128]");
  static std::array<GaussRule, 129> rules;
  static std::array<std::once_flag, 129> flags;
  std::call_once(flags[n], [n] { rules[n] = compute_rule(n); });
  return rules[n];
}

}  // namespace gapstress
