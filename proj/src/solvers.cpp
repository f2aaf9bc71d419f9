#include "fraclab/solvers.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace fraclab {

namespace {

constexpr double kResidualContract = 1e-10;
constexpr int kDirectLimit = 1024;

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd to_eigen(std::span<const double> v) {
    return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> from_eigen(const VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

// direct solve with iterative refinement until the residual contract holds
std::vector<double> solve_llt(const MatrixXd& A, std::span<const double> b) {
    const VectorXd bv = to_eigen(b);
    Eigen::LLT<MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw SolveError("solve_spd: Cholesky factorization failed (matrix not SPD?)");
    VectorXd x = llt.solve(bv);
    const double bnorm = bv.norm();
    if (bnorm == 0.0) return from_eigen(VectorXd::Zero(bv.size()));
    for (int pass = 0; pass < 4; ++pass) {
        const VectorXd r = bv - A * x;
        if (r.norm() <= 0.25 * kResidualContract * bnorm) break;
        x += llt.solve(r);
    }
    const double rel = (bv - A * x).norm() / bnorm;
    if (rel > kResidualContract)
        throw SolveError("solve_spd: residual contract not met after refinement", rel);
    return from_eigen(x);
}

// conjugate gradients on a matvec; detects indefiniteness via curvature
std::vector<double> solve_cg(const std::function<std::vector<double>(std::span<const double>)>& apply,
                             std::span<const double> b) {
    const int n = static_cast<int>(b.size());
    std::vector<double> x(n, 0.0), r(b.begin(), b.end()), p(r);
    auto dot = [](const std::vector<double>& u, const std::vector<double>& v) {
        double acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
        return acc;
    };
    const double b2 = dot(r, r);
    if (b2 == 0.0) return x;
    double r2 = b2;
    const int max_iter = 10 * n;
    for (int it = 0; it < max_iter; ++it) {
        if (std::sqrt(r2 / b2) <= kResidualContract) return x;
        auto ap = apply(p);
        const double curvature = dot(p, ap);
        if (curvature <= 0.0)
            throw SolveError("solve_spd: nonpositive curvature (matrix not SPD)",
                             std::sqrt(r2 / b2));
        const double alpha = r2 / curvature;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        const double r2_new = dot(r, r);
        const double beta = r2_new / r2;
        r2 = r2_new;
        for (int i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    if (std::sqrt(r2 / b2) <= kResidualContract) return x;
    throw SolveError("solve_spd: CG did not converge in 10n iterations", std::sqrt(r2 / b2));
}

MatrixXd toeplitz_dense(const SymToeplitzMatrix& A) {
    const int n = A.size();
    MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = A.entry(i, j);
    return M;
}

} // namespace

std::vector<double> solve_spd(const SymToeplitzMatrix& A, std::span<const double> b) {
    if (A.size() != static_cast<int>(b.size()))
        throw std::invalid_argument("solve_spd: dimension mismatch");
    if (A.size() <= kDirectLimit) return solve_llt(toeplitz_dense(A), b);
    return solve_cg([&](std::span<const double> v) { return A.apply(v); }, b);
}

std::vector<double> solve_spd(const TridiagMatrix& A, std::span<const double> b) {
    if (A.n != static_cast<int>(b.size()))
        throw std::invalid_argument("solve_spd: dimension mismatch");
    // Thomas algorithm; diagonal dominance is not assumed, SPD is
    const int n = A.n;
    std::vector<double> c(n, 0.0), x(n, 0.0);
    double diag = A.diag;
    if (diag <= 0.0) throw SolveError("solve_spd: tridiagonal pivot <= 0 (matrix not SPD)");
    c[0] = A.offdiag / diag;
    x[0] = b[0] / diag;
    for (int i = 1; i < n; ++i) {
        diag = A.diag - A.offdiag * c[i - 1];
        if (diag <= 0.0) throw SolveError("solve_spd: tridiagonal pivot <= 0 (matrix not SPD)");
        c[i] = A.offdiag / diag;
        x[i] = (b[i] - A.offdiag * x[i - 1]) / diag;
    }
    for (int i = n - 2; i >= 0; --i) x[i] -= c[i] * x[i + 1];
    return x;
}

std::vector<double> solve_spd_dense(std::span<const double> a, std::span<const double> b) {
    const auto n = static_cast<Eigen::Index>(b.size());
    if (static_cast<Eigen::Index>(a.size()) != n * n)
        throw std::invalid_argument("solve_spd_dense: dimension mismatch");
    MatrixXd A = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                Eigen::RowMajor>>(a.data(), n, n);
    return solve_llt(A, b);
}

EllipticProblem::EllipticProblem(const FracParams& p, const UniformMesh& m, RhsSpec r)
    : params(p), mesh(m), rhs(std::move(r)) {
    if (params.dim != 1)
        throw std::invalid_argument("EllipticProblem: only dim == 1 is discretized");
    rhs.evaluator(mesh); // validates rhs against the mesh
}

DiscreteFunction solve_elliptic(const EllipticProblem& p) {
    const auto A = assemble_fractional_stiffness(p.mesh, p.params.s);
    const auto b = assemble_load(p.mesh, p.rhs.evaluator(p.mesh));
    return DiscreteFunction(p.mesh, solve_spd(A, b));
}

ParabolicProblem::ParabolicProblem(const FracParams& p, const UniformMesh& m,
                                   std::function<double(double, double)> g, double dt_,
                                   double T_)
    : params(p), mesh(m), source(std::move(g)), dt(dt_), T(T_) {
    if (params.dim != 1)
        throw std::invalid_argument("ParabolicProblem: only dim == 1 is discretized");
    if (!(dt > 0.0) || !(T >= dt))
        throw std::invalid_argument("ParabolicProblem: need dt > 0 and T >= dt");
}

namespace {

template <typename Stiffness>
std::vector<DiscreteFunction> step_ie(const Stiffness& A, const UniformMesh& mesh,
                                      const std::function<double(double, double)>& g,
                                      double dt, double T, const DiscreteFunction& initial) {
    if (!(initial.mesh == mesh))
        throw std::invalid_argument("step_implicit_euler: initial state on wrong mesh");
    const int n = mesh.n;
    const auto M = assemble_mass(mesh);
    MatrixXd S(n, n);
    if constexpr (std::is_same_v<Stiffness, SymToeplitzMatrix>) {
        S = toeplitz_dense(A) * dt;
    } else {
        S.setZero();
        for (int i = 0; i < n; ++i) {
            S(i, i) = dt * A.diag;
            if (i > 0) S(i, i - 1) = dt * A.offdiag;
            if (i + 1 < n) S(i, i + 1) = dt * A.offdiag;
        }
    }
    for (int i = 0; i < n; ++i) {
        S(i, i) += M.diag;
        if (i > 0) S(i, i - 1) += M.offdiag;
        if (i + 1 < n) S(i, i + 1) += M.offdiag;
    }
    Eigen::LLT<MatrixXd> llt(S);
    if (llt.info() != Eigen::Success)
        throw SolveError("step_implicit_euler: system factorization failed");

    const int steps = static_cast<int>(std::llround(T / dt));
    std::vector<DiscreteFunction> out;
    out.reserve(steps + 1);
    out.push_back(initial);
    std::vector<double> phi = initial.values;
    for (int m = 1; m <= steps; ++m) {
        const double t = m * dt;
        const auto load = assemble_load(mesh, [&](double x) { return g(x, t); });
        auto rhs_vec = M.apply(phi);
        for (int i = 0; i < n; ++i) rhs_vec[i] += dt * load[i];
        VectorXd x = llt.solve(to_eigen(rhs_vec));
        phi = from_eigen(x);
        out.emplace_back(mesh, phi);
    }
    return out;
}

} // namespace

std::vector<DiscreteFunction> step_implicit_euler(const SymToeplitzMatrix& A,
                                                  const UniformMesh& mesh,
                                                  const std::function<double(double, double)>& g,
                                                  double dt, double T,
                                                  const DiscreteFunction& initial) {
    return step_ie(A, mesh, g, dt, T, initial);
}

std::vector<DiscreteFunction> step_implicit_euler(const TridiagMatrix& A,
                                                  const UniformMesh& mesh,
                                                  const std::function<double(double, double)>& g,
                                                  double dt, double T,
                                                  const DiscreteFunction& initial) {
    return step_ie(A, mesh, g, dt, T, initial);
}

std::vector<DiscreteFunction> solve_parabolic(const ParabolicProblem& p) {
    const auto A = assemble_fractional_stiffness(p.mesh, p.params.s);
    return step_implicit_euler(A, p.mesh, p.source, p.dt, p.T,
                               DiscreteFunction::zero(p.mesh));
}

} // namespace fraclab
