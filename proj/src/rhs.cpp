#include "fraclab/rhs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fraclab/quadrature.hpp"

namespace fraclab {

namespace {

// mass of exp(1/(x^2-1)) on (-1,1); computed once, scale invariance covers
// every radius
double unit_mollifier_mass() {
    static const double mass = [] {
        auto f = [](double x) {
            const double d = x * x - 1.0;
            return d < 0.0 ? std::exp(1.0 / d) : 0.0;
        };
        return integrate(f, -1.0, 1.0, QuadOptions{1e-14, 1e-13, 60}).value;
    }();
    return mass;
}

struct SampledProfile {
    std::span<const double> g;
    double lo, hi;

    double spacing() const { return (hi - lo) / static_cast<double>(g.size() - 1); }

    double operator()(double x) const {
        if (x <= lo || x >= hi) return 0.0;
        const double t = (x - lo) / spacing();
        auto j = static_cast<std::size_t>(t);
        if (j + 1 >= g.size()) j = g.size() - 2;
        const double w = t - static_cast<double>(j);
        return g[j] * (1.0 - w) + g[j + 1] * w;
    }
};

double convolve_impl(std::span<const double> g_samples, double grid_lo, double grid_hi,
                     double eps, double x, bool derivative) {
    if (g_samples.size() < 2)
        throw std::invalid_argument("convolve_mollifier: need >= 2 samples");
    if (!(eps > 0.0)) throw std::invalid_argument("convolve_mollifier: eps must be > 0");
    SampledProfile g{g_samples, grid_lo, grid_hi};
    if (g.spacing() > eps / 4.0)
        throw std::invalid_argument("convolve_mollifier: sample grid must be >= 4x finer than eps");
    // integration window: |z| < eps and x - z inside supp g
    const double zlo = std::max(-eps, x - grid_hi);
    const double zhi = std::min(eps, x - grid_lo);
    if (zlo >= zhi) return 0.0;
    auto integrand = [&](double z) {
        const double w = derivative ? mollifier_rho_deriv(eps, z) : mollifier_rho(eps, z);
        return g(x - z) * w;
    };
    // seed at the sample knots when they are few; for dense grids the kinks
    // are below quadrature resolution anyway
    std::vector<double> seeds;
    const double h = g.spacing();
    if ((zhi - zlo) / h <= 64.0) {
        double k0 = std::ceil((x - zhi - grid_lo) / h);
        for (double k = k0;; k += 1.0) {
            const double z = x - (grid_lo + k * h);
            if (z <= zlo) break;
            if (z < zhi) seeds.push_back(z);
        }
    }
    return integrate(integrand, zlo, zhi, seeds, QuadOptions{1e-11, 1e-9, 60}).value;
}

} // namespace

double mollifier_rho(double eps, double x) {
    if (!(eps > 0.0)) throw std::invalid_argument("mollifier_rho: eps must be > 0");
    if (std::abs(x) >= eps) return 0.0;
    const double d = x * x - eps * eps;
    return std::exp(eps * eps / d) / (eps * unit_mollifier_mass());
}

double mollifier_rho_deriv(double eps, double x) {
    if (!(eps > 0.0)) throw std::invalid_argument("mollifier_rho_deriv: eps must be > 0");
    if (std::abs(x) >= eps) return 0.0;
    const double e2 = eps * eps;
    const double d = x * x - e2;
    return -2.0 * x * e2 / (d * d) * std::exp(e2 / d) / (eps * unit_mollifier_mass());
}

double convolve_mollifier(std::span<const double> g_samples, double grid_lo, double grid_hi,
                          double eps, double x) {
    return convolve_impl(g_samples, grid_lo, grid_hi, eps, x, false);
}

double convolve_mollifier_deriv(std::span<const double> g_samples, double grid_lo,
                                double grid_hi, double eps, double x) {
    return convolve_impl(g_samples, grid_lo, grid_hi, eps, x, true);
}

RhsSpec build_fs(std::span<const double> g_samples, double grid_lo, double grid_hi, double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("build_fs: s must lie in (0,1)");
    rhs::MollifiedDiv md;
    md.g_samples.assign(g_samples.begin(), g_samples.end());
    md.grid_lo = grid_lo;
    md.grid_hi = grid_hi;
    md.s = s;
    return RhsSpec{md};
}

std::function<double(double)> RhsSpec::evaluator(const UniformMesh& mesh) const {
    struct Visitor {
        const UniformMesh& mesh;

        std::function<double(double)> operator()(const rhs::Constant& c) const {
            const double v = c.value;
            return [v](double) { return v; };
        }
        std::function<double(double)> operator()(const rhs::SinPiX2&) const {
            return [](double x) { return std::sin(M_PI * x * x); };
        }
        std::function<double(double)> operator()(const rhs::PiecewiseConstant& pc) const {
            if (pc.levels.size() != pc.breaks.size() + 1)
                throw std::invalid_argument("PiecewiseConstant: levels must be breaks+1");
            for (std::size_t i = 0; i < pc.breaks.size(); ++i) {
                if (pc.breaks[i] <= mesh.a || pc.breaks[i] >= mesh.b)
                    throw std::invalid_argument("PiecewiseConstant: breaks must be inside (a,b)");
                if (i > 0 && pc.breaks[i] <= pc.breaks[i - 1])
                    throw std::invalid_argument("PiecewiseConstant: breaks must increase");
            }
            auto breaks = pc.breaks;
            auto levels = pc.levels;
            return [breaks, levels](double x) {
                std::size_t i = 0;
                while (i < breaks.size() && x >= breaks[i]) ++i;
                return levels[i];
            };
        }
        std::function<double(double)> operator()(const rhs::MollifiedDiv& md) const {
            auto g = md.g_samples;
            const double lo = md.grid_lo, hi = md.grid_hi, eps = 1.0 - md.s;
            return [g, lo, hi, eps](double x) {
                return convolve_mollifier_deriv(g, lo, hi, eps, x);
            };
        }
        std::function<double(double)> operator()(const rhs::Sampled& sv) const {
            if (static_cast<int>(sv.values.size()) != mesh.n)
                throw std::invalid_argument("Sampled rhs: length must match mesh");
            DiscreteFunction df(mesh, sv.values);
            return [df](double x) { return df(x); };
        }
    };
    return std::visit(Visitor{mesh}, spec);
}

} // namespace fraclab
