#include "fraclab/assembly.hpp"

#include <cmath>
#include <stdexcept>

#include "fraclab/special_functions.hpp"
#include "fraclab/quadrature.hpp"

namespace fraclab {

namespace {

// stiffness_kernel(s,k) = c(1,s)/(2s) * G(k, beta) with beta = 3-2s and
//
//   G = [P(k-2) - 4P(k-1) + 6P(k) - 4P(k+1) + P(k+2)] / (beta(beta-1)(beta-2)),
//   P(m) = |m|^beta.
//
// The denominator's root at beta = 2 (s = 1/2) is removable: the fourth
// difference of m^2 vanishes identically. For k <= 2 near s = 1/2 we
// evaluate F/(beta-2) through expm1, which degenerates exactly to the
// logarithmic antiderivative formula at s = 1/2. For k >= 3 the naive
// fourth difference loses ~k^4 in precision, so G is summed as a series
// in 1/k^2 whose terms carry the factors beta(beta-1)(beta-2) already
// cancelled; it is uniformly valid in s, including s = 1/2.

constexpr double kBinom4[5] = {1.0, -4.0, 6.0, -4.0, 1.0};

double kernel_factor_small_k(double s, int k) {
    const double beta = 3.0 - 2.0 * s;
    const double beta_m2 = 1.0 - 2.0 * s;
    if (std::abs(beta_m2) < 0.25) {
        // F(beta)/(beta-2) = sum c_i m_i^2 ln(m_i) * phi((beta-2) ln m_i),
        // phi(x) = expm1(x)/x
        double acc = 0.0;
        for (int i = 0; i < 5; ++i) {
            const int m = std::abs(k - 2 + i);
            if (m == 0) continue;
            const double lm = std::log(static_cast<double>(m));
            const double arg = beta_m2 * lm;
            const double phi = arg != 0.0 ? std::expm1(arg) / arg : 1.0;
            acc += kBinom4[i] * m * m * lm * phi;
        }
        return acc / (beta * (beta - 1.0));
    }
    double f4 = 0.0;
    for (int i = 0; i < 5; ++i) {
        const int m = std::abs(k - 2 + i);
        if (m == 0) continue;
        f4 += kBinom4[i] * std::pow(static_cast<double>(m), beta);
    }
    return f4 / (beta * (beta - 1.0) * beta_m2);
}

double kernel_factor_series(double s, int k) {
    // G = 2 k^beta * sum_{j>=2} r_j (4^j - 4) k^{-2j},
    // r_j = prod_{i=3}^{2j-1} (beta - i) / (2j)!,
    // r_{j+1} = r_j (beta-2j)(beta-2j-1) / ((2j+1)(2j+2)).
    // Differences beta - i are formed as (3 - i) - 2s to avoid cancellation.
    const double beta = 3.0 - 2.0 * s;
    const double kk = static_cast<double>(k);
    const double kinv2 = 1.0 / (kk * kk);
    double r = -2.0 * s / 24.0; // (beta-3)/4!
    double pow4 = 16.0;
    double kpow = kinv2 * kinv2;
    double sum = 0.0;
    for (int j = 2; j <= 400; ++j) {
        const double term = r * (pow4 - 4.0) * kpow;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
        r *= ((3.0 - 2.0 * j) - 2.0 * s) * ((2.0 - 2.0 * j) - 2.0 * s) /
             ((2.0 * j + 1.0) * (2.0 * j + 2.0));
        pow4 *= 4.0;
        kpow *= kinv2;
    }
    return 2.0 * std::pow(kk, beta) * sum;
}

} // namespace

double stiffness_kernel(double s, int k) {
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("stiffness_kernel: s must lie in (0,1)");
    if (k < 0) throw std::invalid_argument("stiffness_kernel: k must be >= 0");
    const double g = k <= 2 ? kernel_factor_small_k(s, k) : kernel_factor_series(s, k);
    const double c = normalization_constant(FracParams(1, s));
    return c / (2.0 * s) * g;
}

SymToeplitzMatrix assemble_fractional_stiffness(const UniformMesh& mesh, double s) {
    const double scale = std::pow(mesh.h(), 1.0 - 2.0 * s);
    SymToeplitzMatrix A;
    A.first_row.resize(mesh.n);
    for (int k = 0; k < mesh.n; ++k) A.first_row[k] = scale * stiffness_kernel(s, k);
    return A;
}

TridiagMatrix assemble_classical_stiffness(const UniformMesh& mesh) {
    const double h = mesh.h();
    return TridiagMatrix{2.0 / h, -1.0 / h, mesh.n};
}

TridiagMatrix assemble_mass(const UniformMesh& mesh) {
    const double h = mesh.h();
    return TridiagMatrix{2.0 * h / 3.0, h / 6.0, mesh.n};
}

std::vector<double> assemble_load(const UniformMesh& mesh,
                                  const std::function<double(double)>& f) {
    const int n = mesh.n;
    const double h = mesh.h();
    std::vector<double> b(n, 0.0);
    for (int e = 0; e <= n; ++e) { // element (a + e h, a + (e+1) h)
        const double xl = mesh.a + e * h;
        if (e >= 1) {
            auto left_hat = [&](double x) { return f(x) * (xl + h - x) / h; };
            b[e - 1] += gauss3(left_hat, xl, xl + h);
        }
        if (e <= n - 1) {
            auto right_hat = [&](double x) { return f(x) * (x - xl) / h; };
            b[e] += gauss3(right_hat, xl, xl + h);
        }
    }
    return b;
}

std::vector<double> assemble_load_divergence(const UniformMesh& mesh,
                                             std::span<const double> g_samples,
                                             double g_lo, double g_hi) {
    if (g_samples.size() < 2)
        throw std::invalid_argument("assemble_load_divergence: need >= 2 samples");
    const double gh = (g_hi - g_lo) / static_cast<double>(g_samples.size() - 1);
    auto g = [&](double x) {
        if (x <= g_lo || x >= g_hi) return 0.0;
        const double t = (x - g_lo) / gh;
        const auto j = static_cast<std::size_t>(t);
        const double w = t - static_cast<double>(j);
        const double gl = g_samples[j];
        const double gr = j + 1 < g_samples.size() ? g_samples[j + 1] : 0.0;
        return gl * (1.0 - w) + gr * w;
    };
    const int n = mesh.n;
    const double h = mesh.h();
    std::vector<double> b(n, 0.0);
    // b_i = -int g phi_i' = -(1/h) int_{elem left of i} g + (1/h) int_{elem right of i} g;
    // integrate the piecewise-linear g exactly by sampling at g's own knots.
    auto integral_g = [&](double x0, double x1) {
        std::size_t j0 = x0 <= g_lo ? 0 : static_cast<std::size_t>((x0 - g_lo) / gh);
        double acc = 0.0;
        double prev_x = x0, prev_g = g(x0);
        for (std::size_t j = j0 + 1; j < g_samples.size(); ++j) {
            const double xj = g_lo + j * gh;
            if (xj >= x1) break;
            if (xj <= prev_x) continue;
            acc += 0.5 * (prev_g + g(xj)) * (xj - prev_x);
            prev_x = xj;
            prev_g = g(xj);
        }
        acc += 0.5 * (prev_g + g(x1)) * (x1 - prev_x);
        return acc;
    };
    for (int i = 0; i < n; ++i) {
        const double xi = mesh.node(i);
        b[i] = (integral_g(xi, xi + h) - integral_g(xi - h, xi)) / h;
    }
    return b;
}

} // namespace fraclab
