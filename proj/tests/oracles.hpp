#pragma once

#include <span>

#include "fraclab/mesh.hpp"

// Test-only reference computations. Deliberately independent of the library
// implementation paths they cross-check: the Gamma-based constants go through
// MPFR instead of the Lanczos code, and the Gagliardo quantities go through
// adaptive quadrature of the defining double integral instead of the
// closed-form entry formulas.
namespace fraclab::oracle {

/// ln Gamma(x) by MPFR at 256-bit precision, rounded to double.
double hp_log_gamma(double x);

/// The fractional Laplacian normalization constant by MPFR.
double hp_normalization_constant(int dim, double s);

/// Coefficient of the explicit unit-ball solution by MPFR.
double hp_ball_coefficient(int dim, double s);

/// Reference stiffness entry for unit-spacing hats k nodes apart:
/// adaptive quadrature of the Gagliardo double integral, reduced to the
/// difference coordinate (inner correlation integrals are exact Gauss),
/// with the closed-form far tail. Relative accuracy ~1e-9 for s <= 0.8.
double stiffness_entry_quadrature(double s, int k);

/// Raw Gagliardo double integral
///   iint (V(x)-V(y))^2 / |x-y|^{1+2s} dx dy
/// of the zero-extended piecewise-linear function, by the same quadrature
/// reduction. Compare against (2/c(1,s)) v^T A v.
double gagliardo_sq_quadrature(const DiscreteFunction& v, double s);

} // namespace fraclab::oracle
