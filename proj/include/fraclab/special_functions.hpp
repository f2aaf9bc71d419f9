#pragma once

#include <stdexcept>

namespace fraclab {

/// Space dimension N and fractional order s shared by every formula in
/// the library. The order is restricted to the open interval (0,1).
struct FracParams {
    int dim;
    double s;

    FracParams(int dim_, double s_) : dim(dim_), s(s_) {
        if (dim < 1) throw std::invalid_argument("FracParams: dim must be >= 1");
        if (!(s > 0.0 && s < 1.0))
            throw std::invalid_argument("FracParams: s must lie in (0,1)");
    }
};

/// ln Gamma(x) for x > 0. Lanczos approximation evaluated in log space;
/// relative error below 1e-13 for x in [0.01, 50].
/// Throws std::domain_error for x <= 0.
double log_gamma(double x);

/// Normalization constant of the integral fractional Laplacian,
///   c(N,s) = s * 2^{2s} * Gamma((N+2s)/2) / (pi^{N/2} * Gamma(1-s)),
/// computed in log space and exponentiated at the end so that the
/// Gamma(1-s) blow-up near s -> 1 stays benign.
double normalization_constant(const FracParams& p);

/// sqrt((2-2s) / c(N,s)); the a-priori stability constant of the
/// Dirichlet problem. Strictly decreasing in s for fixed N on [1/2, 1).
double stability_constant(const FracParams& p);

/// Explicit solution of (-Delta)^s u = 1 on the unit ball with zero
/// exterior data:
///   u(x) = 2^{-2s} Gamma(N/2) / (Gamma((N+2s)/2) Gamma(1+s)) * (1-|x|^2)^s
/// for |x| < 1, and 0 outside. `r` is the radius |x|.
double exact_ball_solution(const FracParams& p, double r);

/// Coefficient in front of (1-|x|^2)^s in exact_ball_solution.
double ball_solution_coefficient(const FracParams& p);

} // namespace fraclab
