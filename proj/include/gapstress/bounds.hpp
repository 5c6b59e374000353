#pragma once

#include <functional>
#include <vector>

#include "gapstress/elasticity.hpp"
#include "gapstress/geometry.hpp"
#include "gapstress/kernels.hpp"
#include "gapstress/quadrature.hpp"

namespace gapstress {

/// Point -> 2x2 stress. Fields handed out by DualStress are divergence free.
using StressField = std::function<Matrix2(const Vec2 &)>;

/// Leading coefficient m_j of the energy blow-up: pi (lambda + 2 mu) / sqrt(kappa0)
/// for j = 1 and pi mu / sqrt(kappa0) for j = 2.
double blowup_constant(const LameMaterial &m, double kappa0, int j);

/// Linear interpolation across the gap, (x + X(y)) / (2 X(y)) clamped to
/// [0, 1]. X follows the gap half-width f on the neck |y| <= L and its
/// tangent line beyond, capped at L1.
class GapProfile {
 public:
  explicit GapProfile(const GapGeometry &g) : geom_(g) {}

  struct Width {
    double value;
    double slope;
  };
  Width extended_halfwidth(double y) const;

  double psi(const Vec2 &p) const;
  Vec2 grad_psi(const Vec2 &p) const;

  const GapGeometry &geometry() const { return geom_; }

 private:
  GapGeometry geom_;
};

/// Gradient of the test displacement psi * Psi_j (Psi_1 = e1, Psi_2 = e2).
Matrix2 gap_test_gradient(const GapProfile &prof, int j, const Vec2 &p);

enum class BoundKind { Upper, Lower };

struct BoundDiagnostics {
  double asymmetry_max = 0.0;   ///< max |sigma_c12 - sigma_c21| on the sample grid
  double bc_residual = 0.0;     ///< max |sigma n| on y = +-L2
  double div_residual = 0.0;    ///< max relative finite-difference divergence
  double correction_max = 0.0;  ///< max |sigma_c| on the sample grid
  double tabulation_err = 0.0;  ///< max interpolation error of the G table
};

/// Split of the computed functional. Upper: neck (Pi_L) and remaining energy.
/// Lower: singular part I_j, correction part II_j and the cross term between
/// them, so that value = singular + correction + cross.
struct BoundTerms {
  double neck = 0.0;
  double exterior = 0.0;
  double singular = 0.0;
  double correction = 0.0;
  double cross = 0.0;
  double area = 0.0;  ///< lower only: -int sigma : C^{-1} sigma
  double flux = 0.0;  ///< lower only: 2 int_{Gamma+} sigma n . Psi_j
};

struct BoundResult {
  int j = 1;
  BoundKind kind = BoundKind::Upper;
  double value = 0.0;
  double quadrature_err = 0.0;
  bool converged = true;
  BoundDiagnostics diagnostics;
  BoundTerms terms;
};

/// Energy of the gap interpolant psi * Psi_j over Y'; bounds E_j from above.
BoundResult primal_upper(const GapGeometry &g, const LameMaterial &m, int j,
                         const QuadratureSpec &spec = QuadratureSpec::cell_default());

/// Admissible stress for the dual principle: the scaled singular stress
/// (m_j / sqrt(eps)) C sym(grad q_j) plus the correction whose columns are
/// G_j(x) and F_j(x, y). F_j interpolates linearly in y between -sigma_S e2
/// on the top and bottom edges, so the total traction vanishes on both, and
/// G_j' = -d_y F_j keeps the correction divergence free.
class DualStress {
 public:
  /// G_j is tabulated at `table_intervals` uniform intervals over [-L1, L1]
  /// by adaptive quadrature and interpolated with cubic Hermite pieces using
  /// the exact derivative.
  DualStress(const GapGeometry &g, const LameMaterial &m, int j,
             const QuadratureSpec &spec = QuadratureSpec::path_default(), int table_intervals = 256);

  int j() const { return j_; }
  double m_j() const { return m_j_; }
  double scale() const { return scale_; }
  const GapGeometry &geometry() const { return geom_; }
  const KernelContext &context() const { return ctx_; }

  SymTensor2 sigma_singular(const Vec2 &p) const;
  Matrix2 sigma_correction(const Vec2 &p) const;
  Matrix2 sigma_total(const Vec2 &p) const;

  enum class Part { Singular, Correction, Total };
  StressField field(Part part) const;

  /// [sigma_S(x, L2) - sigma_S(x, -L2)] e2
  Vec2 edge_load(double x) const;
  Vec2 G(double x) const;
  Vec2 G_slope(double x) const;
  Vec2 F(double x, double y) const;

  /// Integral of edge_load / (2 L2) from 0 to x by direct adaptive quadrature (no table).
  Vec2 G_exact(double x) const;

  const BoundDiagnostics &diagnostics() const { return diag_; }
  bool converged() const { return converged_; }

 private:
  void tabulate(int intervals);
  void compute_diagnostics();

  GapGeometry geom_;
  LameMaterial material_;
  KernelContext ctx_;
  int j_;
  double m_j_;
  double scale_;
  QuadratureSpec spec_;
  std::vector<double> nodes_;
  std::vector<Vec2> values_;
  std::vector<Vec2> slopes_;
  BoundDiagnostics diag_;
  bool converged_ = true;
};

DualStress build_dual_stress(const GapGeometry &g, const LameMaterial &m, int j,
                             const QuadratureSpec &spec = QuadratureSpec::path_default());

/// -int_{Y'} sigma : C^{-1} sigma + 2 int_{Gamma+} sigma n . Psi_j for the
/// DualStress field; bounds E_j from below.
BoundResult dual_lower(const GapGeometry &g, const LameMaterial &m, int j,
                       const QuadratureSpec &cell_spec = QuadratureSpec::cell_default(),
                       const QuadratureSpec &path_spec = QuadratureSpec::path_default());
BoundResult dual_lower(const DualStress &sigma, const QuadratureSpec &cell_spec,
                       const QuadratureSpec &path_spec);

/// |div sigma| at p by fourth-order central differences with step
/// 1e-3 * length_scale, divided by the local field scale max|sigma| / length_scale.
double relative_divergence(const StressField &sigma, const Vec2 &p, double length_scale);

/// int_{dD_i} (C sym(grad q_j)) n . Psi_k with n pointing into D_i. Expected (-1)^i delta_jk.
IntegralResult<double> flux_identity_check(const GapGeometry &g, const LameMaterial &m, int i, int j, int k,
                                           const QuadratureSpec &spec = QuadratureSpec::path_default());

/// int_{dD_1 u dD_2} (C sym(grad q_j)) n . q_j with n pointing into the inclusions.
IntegralResult<double> energy_identity_check(const GapGeometry &g, const LameMaterial &m, int j,
                                             const QuadratureSpec &spec = QuadratureSpec::path_default());

/// m_j * energy / sqrt(eps); tends to 1 as eps -> 0.
double normalized_energy(const GapGeometry &g, const LameMaterial &m, int j, double energy);

}  // namespace gapstress
