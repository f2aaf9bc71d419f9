#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "fraclab/mesh.hpp"

namespace fraclab {

/// Right-hand-side catalog for the elliptic and rate experiments.
namespace rhs {

struct Constant {
    double value = 1.0;
};

/// f(x) = sin(pi x^2)
struct SinPiX2 {};

/// Piecewise constant: levels[i] on (breaks[i-1], breaks[i]) with virtual
/// breaks at the domain endpoints; breaks must be strictly increasing and
/// interior to the domain.
struct PiecewiseConstant {
    std::vector<double> breaks;
    std::vector<double> levels; // size = breaks.size() + 1
};

/// f_s = d/dx (g * rho_{1-s}): the mollified-divergence family built from a
/// square-integrable profile g sampled on a fine uniform grid over
/// [grid_lo, grid_hi] (piecewise-linear between samples, zero outside).
struct MollifiedDiv {
    std::vector<double> g_samples;
    double grid_lo;
    double grid_hi;
    double s; // mollification radius is 1-s
};

/// Nodal samples on the target mesh (piecewise-linear interpolant).
struct Sampled {
    std::vector<double> values;
};

} // namespace rhs

struct RhsSpec {
    std::variant<rhs::Constant, rhs::SinPiX2, rhs::PiecewiseConstant, rhs::MollifiedDiv,
                 rhs::Sampled>
        spec;

    /// Validates the variant against the mesh it will be used with and
    /// returns a pointwise evaluator on (a,b).
    std::function<double(double)> evaluator(const UniformMesh& mesh) const;
};

/// Standard compactly supported mollifier,
///   rho_eps(x) = C eps^{-1} exp(eps^2 / (x^2 - eps^2)) for |x| < eps, else 0,
/// with C fixed once (by quadrature at unit radius) so that the total mass
/// is 1 for every eps.
double mollifier_rho(double eps, double x);

/// d/dx rho_eps(x); smooth, supported on |x| < eps.
double mollifier_rho_deriv(double eps, double x);

/// (g * rho_eps)(x) for sampled g (piecewise linear on its grid, zero
/// outside). The sample spacing must be at least 4x finer than eps.
double convolve_mollifier(std::span<const double> g_samples, double grid_lo, double grid_hi,
                          double eps, double x);

/// d/dx (g * rho_eps)(x), differentiated under the integral.
double convolve_mollifier_deriv(std::span<const double> g_samples, double grid_lo,
                                double grid_hi, double eps, double x);

/// Builds the mollified-divergence right-hand side f_s = (g * rho_{1-s})'
/// from the sampled profile g.
RhsSpec build_fs(std::span<const double> g_samples, double grid_lo, double grid_hi, double s);

} // namespace fraclab
