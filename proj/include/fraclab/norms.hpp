#pragma once

#include <utility>
#include <vector>

#include "fraclab/mesh.hpp"

namespace fraclab {

/// sqrt(v^T M v): the L2 norm of the piecewise-linear extension.
double l2_norm(const DiscreteFunction& v);

/// Gagliardo seminorm over the whole line of the zero-extended
/// piecewise-linear function: sqrt((2/c(1,s)) v^T A_s v), recovering the
/// raw double integral from the assembled form by dividing out the
/// bilinear-form constant.
double gagliardo_seminorm(const DiscreteFunction& v, double s);

/// Full fractional norm sqrt(l2^2 + seminorm^2) of u - v (same mesh).
double hs_error(const DiscreteFunction& u, const DiscreteFunction& v, double s);

/// (s, error) samples with the fitted exponent of err ~ C (1-s)^alpha.
struct ConvergenceReport {
    struct Sample {
        double s;
        double err_hs;
        double err_l2;
    };
    std::vector<Sample> samples; // sorted by s
    double slope = 0.0;
    double fit_residual = 0.0;
};

/// Least-squares slope of log(err) against log(1-s); the residual is the
/// root-mean-square misfit of the regression in log space. Requires >= 3
/// samples with err > 0 and s < 1; throws std::invalid_argument otherwise
/// (including degenerate abscissae).
std::pair<double, double> fit_rate(const std::vector<std::pair<double, double>>& samples);

} // namespace fraclab
