#include "gapstress/elasticity.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace gapstress {

LameMaterial::LameMaterial(double lambda, double mu) : lambda_(lambda), mu_(mu), derived_{} {
  if (!(mu > 0.0) || !(lambda + mu > 0.0) || !std::isfinite(lambda) || !std::isfinite(mu)) {
    throw std::invalid_argument("Lame pair violates strong ellipticity: lambda=" +
                                std::to_string(lambda) + " mu=" + std::to_string(mu));
  }
  derived_ = derived_constants(*this);
}

DerivedConstants derived_constants(const LameMaterial &m) {
  const double lambda = m.lambda();
  const double mu = m.mu();
  const double rho = lambda / (2.0 * (lambda + mu));
  const double inv4pi = 0.25 / std::numbers::pi;
  return {
      .rho = rho,
      .E = mu * (3.0 * lambda + 2.0 * mu) / (lambda + mu),
      .alpha1 = inv4pi * (1.0 / mu + 1.0 / (2.0 * mu + lambda)),
      .alpha2 = inv4pi * (1.0 / mu - 1.0 / (2.0 * mu + lambda)),
      .prefactor = (1.0 + rho) * (1.0 - 2.0 * rho) / (1.0 - rho),
  };
}

SymTensor2 stress_from_gradient(const Matrix2 &g, const LameMaterial &m) {
  const double lambda = m.lambda();
  const double mu = m.mu();
  return {
      (lambda + 2.0 * mu) * g.m11 + lambda * g.m22,
      mu * (g.m12 + g.m21),
      lambda * g.m11 + (lambda + 2.0 * mu) * g.m22,
  };
}

SymTensor2 compliance_apply(const SymTensor2 &s, const LameMaterial &m) {
  const double mu = m.mu();
  const double lambda = m.lambda();
  const double vol = lambda * s.trace() / (2.0 * mu * (2.0 * lambda + 2.0 * mu));
  return {s.a11 / (2.0 * mu) - vol, s.a12 / (2.0 * mu), s.a22 / (2.0 * mu) - vol};
}

Matrix2 compliance_apply(const Matrix2 &s, const LameMaterial &m) {
  const double mu = m.mu();
  const double lambda = m.lambda();
  const double vol = lambda * s.trace() / (2.0 * mu * (2.0 * lambda + 2.0 * mu));
  return {s.m11 / (2.0 * mu) - vol, s.m12 / (2.0 * mu), s.m21 / (2.0 * mu), s.m22 / (2.0 * mu) - vol};
}

double energy_density(const Matrix2 &g, const LameMaterial &m) {
  // lambda tr(e)^2 + 2 mu |e|^2 with e = sym(g); non-negative under strong ellipticity
  const SymTensor2 e = SymTensor2::sym_part(g);
  return contract(stress_from_gradient(g, m), e);
}

double complementary_energy(const Matrix2 &s, const Matrix2 &t, const LameMaterial &m) {
  return contract(s, compliance_apply(t, m));
}

}  // namespace gapstress
