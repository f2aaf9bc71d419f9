#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fraclab/assembly.hpp"
#include "fraclab/mesh.hpp"
#include "fraclab/rhs.hpp"
#include "fraclab/special_functions.hpp"

namespace fraclab {

/// Raised on factorization breakdown, detected indefiniteness, or CG
/// stagnation; carries the relative residual reached when applicable.
class SolveError : public std::runtime_error {
  public:
    SolveError(const std::string& what, double relative_residual = -1.0)
        : std::runtime_error(what), relative_residual_(relative_residual) {}

    double relative_residual() const { return relative_residual_; }

  private:
    double relative_residual_;
};

/// Solve A x = b for SPD A to relative residual <= 1e-10. Direct Cholesky
/// (with iterative refinement) for n <= 1024, conjugate gradients above.
/// The mechanism is an implementation detail; the residual is the contract.
std::vector<double> solve_spd(const SymToeplitzMatrix& A, std::span<const double> b);
std::vector<double> solve_spd(const TridiagMatrix& A, std::span<const double> b);

/// Dense variant used by tests and by the parabolic stepper; `a` is the
/// row-major n*n matrix.
std::vector<double> solve_spd_dense(std::span<const double> a, std::span<const double> b);

struct EllipticProblem {
    FracParams params; // dim must be 1
    UniformMesh mesh;
    RhsSpec rhs;

    EllipticProblem(const FracParams& p, const UniformMesh& m, RhsSpec r);
};

/// Galerkin solution of the fractional Poisson problem: assembles the
/// fractional stiffness and the load of `rhs`, solves, and returns the
/// interior nodal values (zero exterior extension understood).
DiscreteFunction solve_elliptic(const EllipticProblem& p);

struct ParabolicProblem {
    FracParams params;
    UniformMesh mesh;
    std::function<double(double, double)> source; // g(x,t)
    double dt;
    double T;

    ParabolicProblem(const FracParams& p, const UniformMesh& m,
                     std::function<double(double, double)> g, double dt_, double T_);
};

/// Implicit Euler for d/dt phi + (-Delta)^s phi = g with zero initial datum:
///   (M + dt A) phi^{m+1} = M phi^m + dt b(g(., t_{m+1})).
/// Returns the snapshots phi^0 (= 0), phi^1, ..., phi^M.
std::vector<DiscreteFunction> solve_parabolic(const ParabolicProblem& p);

/// Stepper with an explicit initial state; solve_parabolic delegates here
/// with zeros. Exposed so tests can drive decay from nonzero data.
std::vector<DiscreteFunction> step_implicit_euler(const SymToeplitzMatrix& A,
                                                  const UniformMesh& mesh,
                                                  const std::function<double(double, double)>& g,
                                                  double dt, double T,
                                                  const DiscreteFunction& initial);

/// Classical counterpart (tridiagonal stiffness), used by the s -> 1
/// comparison runs.
std::vector<DiscreteFunction> step_implicit_euler(const TridiagMatrix& A,
                                                  const UniformMesh& mesh,
                                                  const std::function<double(double, double)>& g,
                                                  double dt, double T,
                                                  const DiscreteFunction& initial);

} // namespace fraclab
