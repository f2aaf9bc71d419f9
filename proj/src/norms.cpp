#include "fraclab/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "fraclab/assembly.hpp"
#include "fraclab/special_functions.hpp"

namespace fraclab {

double l2_norm(const DiscreteFunction& v) {
    const auto M = assemble_mass(v.mesh);
    return std::sqrt(M.quadratic_form(v.values));
}

double gagliardo_seminorm(const DiscreteFunction& v, double s) {
    const auto A = assemble_fractional_stiffness(v.mesh, s);
    const double c = normalization_constant(FracParams(1, s));
    return std::sqrt(2.0 / c * A.quadratic_form(v.values));
}

double hs_error(const DiscreteFunction& u, const DiscreteFunction& v, double s) {
    if (!(u.mesh == v.mesh)) throw std::invalid_argument("hs_error: meshes differ");
    std::vector<double> d(u.values.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = u.values[i] - v.values[i];
    DiscreteFunction diff(u.mesh, std::move(d));
    const double l2 = l2_norm(diff);
    const double semi = gagliardo_seminorm(diff, s);
    return std::sqrt(l2 * l2 + semi * semi);
}

std::pair<double, double> fit_rate(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 3) throw std::invalid_argument("fit_rate: need >= 3 samples");
    std::vector<double> lx, ly;
    for (const auto& [s, err] : samples) {
        if (!(s < 1.0)) throw std::invalid_argument("fit_rate: s must be < 1");
        if (!(err > 0.0)) throw std::invalid_argument("fit_rate: errors must be positive");
        lx.push_back(std::log(1.0 - s));
        ly.push_back(std::log(err));
    }
    const auto n = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12 * n * sxx)
        throw std::invalid_argument("fit_rate: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - slope * lx[i] - intercept;
        rss += r * r;
    }
    return {slope, std::sqrt(rss / n)};
}

} // namespace fraclab
