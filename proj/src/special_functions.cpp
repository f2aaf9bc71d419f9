#include "fraclab/special_functions.hpp"

#include <cmath>

namespace fraclab {

namespace {

// Lanczos coefficients, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kHalfLogTwoPi = 0.91893853320467274178; // ln(2*pi)/2

double log_gamma_lanczos(double x) {
    // valid for x >= 0.5
    const double g = 7.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
    const double t = x + g - 0.5;
    return kHalfLogTwoPi + (x - 0.5) * std::log(t) - t + std::log(acc);
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
    if (x >= 0.5) return log_gamma_lanczos(x);
    // shift small arguments up: Gamma(x) = Gamma(x+1)/x
    return log_gamma_lanczos(x + 1.0) - std::log(x);
}

double normalization_constant(const FracParams& p) {
    const double n = static_cast<double>(p.dim);
    const double s = p.s;
    const double log_c = std::log(s) + 2.0 * s * std::log(2.0) +
                         log_gamma((n + 2.0 * s) / 2.0) -
                         0.5 * n * std::log(M_PI) - log_gamma(1.0 - s);
    return std::exp(log_c);
}

double stability_constant(const FracParams& p) {
    return std::sqrt((2.0 - 2.0 * p.s) / normalization_constant(p));
}

double ball_solution_coefficient(const FracParams& p) {
    const double n = static_cast<double>(p.dim);
    const double s = p.s;
    return std::exp(-2.0 * s * std::log(2.0) + log_gamma(n / 2.0) -
                    log_gamma((n + 2.0 * s) / 2.0) - log_gamma(1.0 + s));
}

double exact_ball_solution(const FracParams& p, double r) {
    const double rr = std::abs(r);
    if (rr >= 1.0) return 0.0;
    return ball_solution_coefficient(p) * std::pow(1.0 - rr * rr, p.s);
}

} // namespace fraclab
