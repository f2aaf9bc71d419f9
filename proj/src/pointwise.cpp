#include "fraclab/pointwise.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fraclab {

namespace {

// Width of the Taylor-model window around z = 0 and the step of the
// central differences feeding it. The model error scales like
// z_switch^{6-2s} * |u^(6)|, two orders below the default tolerances.
constexpr double kModelWindow = 5e-3;
constexpr double kFdStep = 1e-3;

} // namespace

double pointwise_flap(const CompactFunction& u, double x, const FracParams& p,
                      const PvQuadratureConfig& cfg) {
    if (p.dim != 1)
        throw std::invalid_argument("pointwise_flap: only dim == 1 is supported");
    cfg.validate();

    const double s = p.s;
    const auto& f = u.eval;
    const double ux = f(x);

    // even Taylor model of the second difference:
    //   2u(x) - u(x+z) - u(x-z) ~ q2 z^2 + q4 z^4
    const double d = kFdStep;
    const double fp1 = f(x + d), fm1 = f(x - d), fp2 = f(x + 2 * d), fm2 = f(x - 2 * d);
    const double upp = (-fp2 + 16.0 * fp1 - 30.0 * ux + 16.0 * fm1 - fm2) / (12.0 * d * d);
    const double u4 = (fp2 - 4.0 * fp1 + 6.0 * ux - 4.0 * fm1 + fm2) / (d * d * d * d);
    const double q2 = -upp;
    const double q4 = -u4 / 12.0;

    // R covers the support of u as seen from x
    const double reach = std::max(std::abs(x - u.support_lo), std::abs(x - u.support_hi));
    const double R = std::max(cfg.far_cutoff, reach);

    double total = 0.0;
    const double zs = std::min(std::max(cfg.eps, kModelWindow), R);
    if (cfg.eps < zs) {
        const double e2 = cfg.eps > 0.0 ? std::pow(cfg.eps, 2.0 - 2.0 * s) : 0.0;
        const double e4 = cfg.eps > 0.0 ? std::pow(cfg.eps, 4.0 - 2.0 * s) : 0.0;
        total += q2 * (std::pow(zs, 2.0 - 2.0 * s) - e2) / (2.0 - 2.0 * s);
        total += q4 * (std::pow(zs, 4.0 - 2.0 * s) - e4) / (4.0 - 2.0 * s);
    }

    if (zs < R) {
        auto integrand = [&](double z) {
            return (2.0 * ux - f(x + z) - f(x - z)) * std::pow(z, -1.0 - 2.0 * s);
        };
        // seed splits where x +- z crosses the support boundary (kinks of u)
        std::vector<double> kinks;
        for (double k : {std::abs(x - u.support_lo), std::abs(x - u.support_hi)})
            if (k > zs && k < R) kinks.push_back(k);
        QuadOptions opt{cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions};
        total += integrate(integrand, zs, R, kinks, opt).value;
    }

    total += ux * std::pow(R, -2.0 * s) / s;
    return normalization_constant(p) * total;
}

} // namespace fraclab
