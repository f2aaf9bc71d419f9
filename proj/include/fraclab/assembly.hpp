#pragma once

#include <functional>
#include <vector>

#include "fraclab/matrices.hpp"
#include "fraclab/mesh.hpp"

namespace fraclab {

/// Reference stiffness entry for unit-spacing hats: the bilinear form
///   a(u,v) = c(1,s)/2 * iint (u(x)-u(y))(v(x)-v(y)) / |x-y|^{1+2s} dx dy
/// over all of R^2 evaluated on two hats k nodes apart equals
///   h^{1-2s} * stiffness_kernel(s, k)
/// on a mesh of spacing h (kernel homogeneity). Entries reduce to fourth
/// central differences of |m|^{3-2s}; the removable 0/0 at s = 1/2 and the
/// large-k cancellation are handled by an expm1 rewrite and a tail series.
double stiffness_kernel(double s, int k);

/// Galerkin matrix of the fractional form on the interior hats of `mesh`:
/// entry(i,j) = h^{1-2s} * stiffness_kernel(s, |i-j|). Symmetric positive
/// definite, dense, Toeplitz.
SymToeplitzMatrix assemble_fractional_stiffness(const UniformMesh& mesh, double s);

/// Classical P1 stiffness: Tridiag(-1/h, 2/h, -1/h).
TridiagMatrix assemble_classical_stiffness(const UniformMesh& mesh);

/// P1 mass matrix: Tridiag(h/6, 2h/3, h/6).
TridiagMatrix assemble_mass(const UniformMesh& mesh);

/// Load vector b_i = int f * phi_i dx, 3-point Gauss-Legendre per element.
std::vector<double> assemble_load(const UniformMesh& mesh,
                                  const std::function<double(double)>& f);

/// Load vector of f = g' for g given by nodal samples on a fine uniform
/// grid over (a,b) (piecewise linear, zero at the endpoints of its grid):
/// b_i = -int g * phi_i' dx, exact for the piecewise-linear g.
std::vector<double> assemble_load_divergence(const UniformMesh& mesh,
                                             std::span<const double> g_samples,
                                             double g_lo, double g_hi);

} // namespace fraclab
