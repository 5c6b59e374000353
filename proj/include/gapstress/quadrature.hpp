#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "gapstress/elasticity.hpp"
#include "gapstress/geometry.hpp"

namespace gapstress {

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  int max_depth = 30;
  int base_order = 8;  ///< Gauss points per panel
  int max_panels = 200000;

  /// Throws std::invalid_argument on rel_tol <= 0, max_depth < 1 or base_order < 2.
  void validate() const;

  static QuadratureSpec path_default() { return {}; }
  static QuadratureSpec cell_default() {
    QuadratureSpec s;
    s.rel_tol = 1e-6;
    return s;
  }
};

template <class T>
struct IntegralResult {
  T value{};
  double err_estimate = 0.0;
  int panels_used = 0;
  bool converged = true;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule of order n (2 <= n <= 128).
const GaussRule &gauss_rule(int n);

/// Fixed-size vector value for integrating several quantities at once.
template <std::size_t N>
struct VecN {
  std::array<double, N> v{};

  double &operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
  VecN &operator+=(const VecN &o) {
    for (std::size_t i = 0; i < N; ++i) v[i] += o.v[i];
    return *this;
  }
  VecN &operator-=(const VecN &o) {
    for (std::size_t i = 0; i < N; ++i) v[i] -= o.v[i];
    return *this;
  }
  VecN &operator*=(double s) {
    for (auto &x : v) x *= s;
    return *this;
  }
  friend VecN operator+(VecN a, const VecN &b) { return a += b; }
  friend VecN operator-(VecN a, const VecN &b) { return a -= b; }
  friend VecN operator*(VecN a, double s) { return a *= s; }
  friend VecN operator*(double s, VecN a) { return a *= s; }
};

/// Value plus an accumulated error carried through an outer integration.
template <class T>
struct Tracked {
  T value{};
  double err = 0.0;

  Tracked &operator+=(const Tracked &o) {
    value += o.value;
    err += o.err;
    return *this;
  }
  Tracked &operator-=(const Tracked &o) {
    value -= o.value;
    err -= o.err;
    return *this;
  }
  Tracked &operator*=(double s) {
    value *= s;
    err *= s;
    return *this;
  }
  friend Tracked operator+(Tracked a, const Tracked &b) { return a += b; }
  friend Tracked operator-(Tracked a, const Tracked &b) { return a -= b; }
  friend Tracked operator*(Tracked a, double s) { return a *= s; }
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Vec2 &v) { return norm(v); }
template <std::size_t N>
double magnitude(const VecN<N> &x) {
  double s = 0.0;
  for (double c : x.v) s += c * c;
  return std::sqrt(s);
}
template <class T>
double magnitude(const Tracked<T> &t) {
  return magnitude(t.value);
}

namespace detail {

template <class T>
T pairwise_sum(std::span<const T> xs) {
  if (xs.empty()) return T{};
  if (xs.size() == 1) return xs[0];
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

template <class T, class F>
T gauss_panel(F &f, const GaussRule &rule, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T acc{};
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) acc += f(mid + half * rule.nodes[k]) * rule.weights[k];
  return acc * half;
}

}  // namespace detail

/// Global adaptive Gauss quadrature over [breaks.front(), breaks.back()]
/// starting from the panels delimited by `breaks` (sorted ascending). Each
/// panel's error estimate is the difference between the one-panel rule and
/// the rule applied to its two halves; the worst panel is halved until the
/// summed estimate meets max(abs_tol, rel_tol * |value|). Panels at
/// max_depth are frozen and flag the result as not converged. The final
/// value is a pairwise sum in left-to-right panel order, so results are
/// bit-reproducible.
template <class T, class F>
IntegralResult<T> integrate_interval(F &&f, std::span<const double> breaks, const QuadratureSpec &spec) {
  spec.validate();
  if (breaks.size() < 2) throw std::invalid_argument("integrate_interval needs at least two breakpoints");
  const GaussRule &rule = gauss_rule(spec.base_order);

  struct Panel {
    double a, b;
    int depth;
    T left, right;
    double err;
  };
  std::vector<Panel> panels;
  auto make = [&](double a, double b, int depth, const T &whole) {
    const double m = 0.5 * (a + b);
    Panel p{a, b, depth, detail::gauss_panel<T>(f, rule, a, m), detail::gauss_panel<T>(f, rule, m, b), 0.0};
    p.err = magnitude(p.left + p.right - whole);
    return p;
  };

  auto worse = [&](std::size_t i, std::size_t j) {
    if (panels[i].err != panels[j].err) return panels[i].err < panels[j].err;
    return panels[i].a > panels[j].a;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> heap(worse);
  std::vector<char> alive;

  T total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (!(b > a)) continue;
    panels.push_back(make(a, b, 0, detail::gauss_panel<T>(f, rule, a, b)));
    alive.push_back(1);
    total += panels.back().left + panels.back().right;
    total_err += panels.back().err;
    heap.push(panels.size() - 1);
  }

  bool converged = true;
  while (!heap.empty()) {
    if (total_err <= std::max(spec.abs_tol, spec.rel_tol * magnitude(total))) break;
    if (static_cast<int>(panels.size()) >= spec.max_panels) {
      converged = false;
      break;
    }
    const std::size_t i = heap.top();
    heap.pop();
    if (panels[i].depth >= spec.max_depth) {
      converged = false;
      continue;
    }
    const Panel p = panels[i];
    alive[i] = 0;
    const double m = 0.5 * (p.a + p.b);
    panels.push_back(make(p.a, m, p.depth + 1, p.left));
    alive.push_back(1);
    heap.push(panels.size() - 1);
    panels.push_back(make(m, p.b, p.depth + 1, p.right));
    alive.push_back(1);
    heap.push(panels.size() - 1);
    const Panel &l = panels[panels.size() - 2];
    const Panel &r = panels.back();
    total += l.left + l.right + r.left + r.right - p.left - p.right;
    total_err += l.err + r.err - p.err;
  }

  std::vector<const Panel *> live;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    if (alive[i]) live.push_back(&panels[i]);
  }
  std::sort(live.begin(), live.end(), [](const Panel *x, const Panel *y) { return x->a < y->a; });
  std::vector<T> values;
  values.reserve(live.size());
  double err = 0.0;
  for (const Panel *p : live) {
    values.push_back(p->left + p->right);
    err += p->err;
  }
  IntegralResult<T> out;
  out.value = detail::pairwise_sum<T>(values);
  out.err_estimate = err;
  out.panels_used = static_cast<int>(live.size());
  out.converged = converged;
  return out;
}

template <class T, class F>
IntegralResult<T> integrate_interval(F &&f, double a, double b, const QuadratureSpec &spec) {
  const std::array<double, 2> br{a, b};
  return integrate_interval<T>(std::forward<F>(f), std::span<const double>(br), spec);
}

/// Integral of integrand(point) ds over all pieces of `path`.
template <class T, class F>
IntegralResult<T> integrate_path(const Path &path, F &&integrand, const QuadratureSpec &spec) {
  IntegralResult<T> out;
  for (const PathPiece &piece : path) {
    std::vector<double> br{piece.t0};
    for (double t : piece.breakpoints) {
      if (t > piece.t0 && t < piece.t1) br.push_back(t);
    }
    br.push_back(piece.t1);
    auto g = [&](double t) {
      const PathPoint pp = piece.eval(t);
      return T(integrand(pp) * pp.jacobian);
    };
    const auto r = integrate_interval<T>(g, std::span<const double>(br), spec);
    out.value += r.value;
    out.err_estimate += r.err_estimate;
    out.panels_used += r.panels_used;
    out.converged = out.converged && r.converged;
  }
  return out;
}

/// Extra x-breakpoints for the fiber at height y (kinks of the integrand).
using FiberBreaks = std::function<std::vector<double>(double y)>;

/// Integral of integrand(point) over the matrix region Y'. The region is
/// swept by horizontal fibers |x| < fiber_halfwidth(y), so the curved
/// inclusion boundaries are resolved exactly; the outer y-integration starts
/// from the gap-graded heights of the geometry.
template <class T, class F>
IntegralResult<T> integrate_cell(const GapGeometry &geom, F &&integrand, const QuadratureSpec &spec,
                                 const FiberBreaks &x_breaks = {}) {
  QuadratureSpec inner = spec;
  inner.rel_tol = 0.1 * spec.rel_tol;
  bool inner_ok = true;
  int inner_panels = 0;

  auto fiber = [&](double y) {
    const double X = geom.fiber_halfwidth(y);
    std::vector<double> br{-X, X};
    if (x_breaks) {
      for (double x : x_breaks(y)) {
        if (x > -X && x < X) br.push_back(x);
      }
    }
    std::sort(br.begin(), br.end());
    auto h = [&](double x) { return T(integrand(Vec2{x, y})); };
    const auto r = integrate_interval<T>(h, std::span<const double>(br), inner);
    inner_ok = inner_ok && r.converged;
    inner_panels += r.panels_used;
    return Tracked<T>{r.value, r.err_estimate};
  };

  std::vector<double> ys{-geom.L2()};
  for (double y : geom.graded_heights()) ys.push_back(y);
  ys.push_back(geom.L2());
  const auto r = integrate_interval<Tracked<T>>(fiber, std::span<const double>(ys), spec);

  IntegralResult<T> out;
  out.value = r.value.value;
  out.err_estimate = r.err_estimate + std::abs(r.value.err);
  out.panels_used = r.panels_used + inner_panels;
  out.converged = r.converged && inner_ok;
  return out;
}

}  // namespace gapstress
