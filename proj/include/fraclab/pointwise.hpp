#pragma once

#include <functional>

#include "fraclab/special_functions.hpp"
#include "fraclab/quadrature.hpp"

namespace fraclab {

/// A function on the real line that vanishes identically outside
/// [support_lo, support_hi]. eval must be callable anywhere.
struct CompactFunction {
    std::function<double(double)> eval;
    double support_lo;
    double support_hi;
};

/// Controls the principal-value evaluation. eps > 0 selects the truncated
/// operator that integrates only over |x-y| > eps; eps = 0 gives the full
/// principal value (the symmetric second-difference rewrite removes the
/// singularity analytically, so no positive truncation is needed).
struct PvQuadratureConfig {
    double eps = 0.0;
    double far_cutoff = 1.0;
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    int max_subdivisions = 60;

    void validate() const {
        if (eps < 0.0) throw std::invalid_argument("PvQuadratureConfig: eps must be >= 0");
        if (!(far_cutoff > eps))
            throw std::invalid_argument("PvQuadratureConfig: need eps < far_cutoff");
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw std::invalid_argument("PvQuadratureConfig: tolerances must be positive");
    }
};

/// Pointwise fractional Laplacian of a 1D function with compact support,
///   c(1,s) * [ int_{eps<|x-y|<R} (u(x)-u(y)) / |x-y|^{1+2s} dy + u(x) R^{-2s}/s ],
/// with R chosen large enough that u vanishes outside (x-R, x+R); the tail
/// beyond R is the closed-form power integral. The symmetric window is
/// integrated with the second-difference rewrite
///   (2u(x) - u(x+z) - u(x-z)) / z^{1+2s},  z in (eps, R),
/// and near z = 0 the integrand is replaced by its even Taylor model
/// (coefficients from central finite differences), whose moment integrals
/// are exact; this keeps the z^{1-2s} mass intact as s -> 1 where plain
/// refinement cannot resolve it.
///
/// Requires p.dim == 1 and u twice differentiable near x (caller's
/// responsibility). Throws QuadratureError on non-convergence.
double pointwise_flap(const CompactFunction& u, double x, const FracParams& p,
                      const PvQuadratureConfig& cfg = {});

} // namespace fraclab
