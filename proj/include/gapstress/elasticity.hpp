#pragma once

#include <cmath>

namespace gapstress {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 &operator+=(const Vec2 &o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2 &operator-=(const Vec2 &o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  Vec2 &operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend Vec2 operator+(Vec2 a, const Vec2 &b) { return a += b; }
  friend Vec2 operator-(Vec2 a, const Vec2 &b) { return a -= b; }
  friend Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend Vec2 operator-(const Vec2 &a) { return {-a.x, -a.y}; }
  friend bool operator==(const Vec2 &, const Vec2 &) = default;
};

inline double dot(const Vec2 &a, const Vec2 &b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2 &a) { return std::hypot(a.x, a.y); }

/// General 2x2 matrix. For displacement gradients, (i, j) holds d u_i / d x_j.
struct Matrix2 {
  double m11 = 0.0;
  double m12 = 0.0;
  double m21 = 0.0;
  double m22 = 0.0;

  static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Matrix2 &operator+=(const Matrix2 &o) {
    m11 += o.m11;
    m12 += o.m12;
    m21 += o.m21;
    m22 += o.m22;
    return *this;
  }
  Matrix2 &operator-=(const Matrix2 &o) {
    m11 -= o.m11;
    m12 -= o.m12;
    m21 -= o.m21;
    m22 -= o.m22;
    return *this;
  }
  Matrix2 &operator*=(double s) {
    m11 *= s;
    m12 *= s;
    m21 *= s;
    m22 *= s;
    return *this;
  }
  friend Matrix2 operator+(Matrix2 a, const Matrix2 &b) { return a += b; }
  friend Matrix2 operator-(Matrix2 a, const Matrix2 &b) { return a -= b; }
  friend Matrix2 operator*(Matrix2 a, double s) { return a *= s; }
  friend Matrix2 operator*(double s, Matrix2 a) { return a *= s; }
  friend bool operator==(const Matrix2 &, const Matrix2 &) = default;

  double trace() const { return m11 + m22; }
  Matrix2 transpose() const { return {m11, m21, m12, m22}; }
  Vec2 apply(const Vec2 &v) const { return {m11 * v.x + m12 * v.y, m21 * v.x + m22 * v.y}; }
  Vec2 col1() const { return {m11, m21}; }
  Vec2 col2() const { return {m12, m22}; }
  double frobenius() const { return std::sqrt(m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22); }
};

/// Symmetric 2x2 tensor stored by its three independent components.
struct SymTensor2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;

  SymTensor2 &operator+=(const SymTensor2 &o) {
    a11 += o.a11;
    a12 += o.a12;
    a22 += o.a22;
    return *this;
  }
  SymTensor2 &operator*=(double s) {
    a11 *= s;
    a12 *= s;
    a22 *= s;
    return *this;
  }
  friend SymTensor2 operator+(SymTensor2 a, const SymTensor2 &b) { return a += b; }
  friend SymTensor2 operator*(SymTensor2 a, double s) { return a *= s; }
  friend SymTensor2 operator*(double s, SymTensor2 a) { return a *= s; }
  friend bool operator==(const SymTensor2 &, const SymTensor2 &) = default;

  double trace() const { return a11 + a22; }
  Vec2 apply(const Vec2 &v) const { return {a11 * v.x + a12 * v.y, a12 * v.x + a22 * v.y}; }
  Matrix2 full() const { return {a11, a12, a12, a22}; }
  double frobenius() const { return std::sqrt(a11 * a11 + 2.0 * a12 * a12 + a22 * a22); }

  static SymTensor2 sym_part(const Matrix2 &g) { return {g.m11, 0.5 * (g.m12 + g.m21), g.m22}; }
};

/// A : B = sum_ij A_ij B_ij
inline double contract(const SymTensor2 &a, const SymTensor2 &b) {
  return a.a11 * b.a11 + 2.0 * a.a12 * b.a12 + a.a22 * b.a22;
}
inline double contract(const Matrix2 &a, const Matrix2 &b) {
  return a.m11 * b.m11 + a.m12 * b.m12 + a.m21 * b.m21 + a.m22 * b.m22;
}

struct DerivedConstants {
  double rho;        ///< Poisson ratio
  double E;          ///< Young's modulus
  double alpha1;     ///< Kelvin log coefficient
  double alpha2;     ///< Kelvin dyadic coefficient
  double prefactor;  ///< (1+rho)(1-2rho)/(1-rho), converts the j=1 energy to E*
};

/// Isotropic plane-strain matrix material given by its Lame pair.
class LameMaterial {
 public:
  /// Throws std::invalid_argument unless mu > 0 and lambda + mu > 0.
  LameMaterial(double lambda, double mu);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  const DerivedConstants &constants() const { return derived_; }

 private:
  double lambda_;
  double mu_;
  DerivedConstants derived_;
};

DerivedConstants derived_constants(const LameMaterial &m);

/// sigma = C sym(g)
SymTensor2 stress_from_gradient(const Matrix2 &g, const LameMaterial &m);

/// e = C^{-1} sigma via the 2D isotropic closed form.
SymTensor2 compliance_apply(const SymTensor2 &s, const LameMaterial &m);

/// Same closed form applied to a general (possibly non-symmetric) stress.
/// It inverts A -> lambda tr(A) I + 2 mu A, which agrees with C on symmetric input.
Matrix2 compliance_apply(const Matrix2 &s, const LameMaterial &m);

/// C sym(g) : sym(g)
double energy_density(const Matrix2 &g, const LameMaterial &m);

/// Bilinear complementary energy s : C^{-1} t for general 2x2 stresses.
double complementary_energy(const Matrix2 &s, const Matrix2 &t, const LameMaterial &m);

}  // namespace gapstress
