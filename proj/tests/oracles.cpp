#include "oracles.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fraclab/quadrature.hpp"

namespace fraclab::oracle {

namespace {

constexpr mpfr_prec_t kPrec = 256;

struct Real {
    mpfr_t v;
    Real() { mpfr_init2(v, kPrec); }
    explicit Real(double d) : Real() { mpfr_set_d(v, d, MPFR_RNDN); }
    Real(const Real& o) : Real() { mpfr_set(v, o.v, MPFR_RNDN); }
    Real& operator=(const Real& o) {
        mpfr_set(v, o.v, MPFR_RNDN);
        return *this;
    }
    ~Real() { mpfr_clear(v); }
    double to_double() const { return mpfr_get_d(v, MPFR_RNDN); }
};

Real lngamma(const Real& x) {
    Real r;
    mpfr_lngamma(r.v, x.v, MPFR_RNDN);
    return r;
}

} // namespace

double hp_log_gamma(double x) { return lngamma(Real(x)).to_double(); }

double hp_normalization_constant(int dim, double s) {
    // s * 2^{2s} * Gamma((N+2s)/2) / (pi^{N/2} Gamma(1-s)), all in MPFR
    Real acc, t, pi_;
    mpfr_const_pi(pi_.v, MPFR_RNDN);
    mpfr_set_d(acc.v, s, MPFR_RNDN);
    mpfr_log(acc.v, acc.v, MPFR_RNDN); // ln s
    mpfr_set_d(t.v, 2.0, MPFR_RNDN);
    mpfr_log(t.v, t.v, MPFR_RNDN);
    mpfr_mul_d(t.v, t.v, 2.0 * s, MPFR_RNDN); // 2s ln 2
    mpfr_add(acc.v, acc.v, t.v, MPFR_RNDN);
    t = lngamma(Real((dim + 2.0 * s) / 2.0));
    mpfr_add(acc.v, acc.v, t.v, MPFR_RNDN);
    mpfr_log(t.v, pi_.v, MPFR_RNDN);
    mpfr_mul_d(t.v, t.v, 0.5 * dim, MPFR_RNDN);
    mpfr_sub(acc.v, acc.v, t.v, MPFR_RNDN);
    t = lngamma(Real(1.0 - s));
    mpfr_sub(acc.v, acc.v, t.v, MPFR_RNDN);
    mpfr_exp(acc.v, acc.v, MPFR_RNDN);
    return acc.to_double();
}

double hp_ball_coefficient(int dim, double s) {
    Real acc, t;
    mpfr_set_d(acc.v, 2.0, MPFR_RNDN);
    mpfr_log(acc.v, acc.v, MPFR_RNDN);
    mpfr_mul_d(acc.v, acc.v, -2.0 * s, MPFR_RNDN); // -2s ln 2
    t = lngamma(Real(dim / 2.0));
    mpfr_add(acc.v, acc.v, t.v, MPFR_RNDN);
    t = lngamma(Real((dim + 2.0 * s) / 2.0));
    mpfr_sub(acc.v, acc.v, t.v, MPFR_RNDN);
    t = lngamma(Real(1.0 + s));
    mpfr_sub(acc.v, acc.v, t.v, MPFR_RNDN);
    mpfr_exp(acc.v, acc.v, MPFR_RNDN);
    return acc.to_double();
}

namespace {

// iint (u(x)-u(y))(v(x)-v(y)) K(x-y) dxdy reduced to the difference
// coordinate xi = x - y:
//   2 int_0^inf xi^{-1-2s} H(xi) dxi,  H(xi) = 2R(0) - R(xi) - R(-xi),
// with R the cross-correlation of u and v. Beyond the correlation support T
// the integrand is 2 R(0) xi^{-1-2s}, integrated in closed form.
struct PiecewiseLinear {
    std::vector<double> knots; // ascending; function is linear between, zero outside
    std::vector<double> vals;  // same length

    double operator()(double x) const {
        if (x <= knots.front() || x >= knots.back()) return 0.0;
        const auto it = std::upper_bound(knots.begin(), knots.end(), x);
        const auto j = static_cast<std::size_t>(it - knots.begin()) - 1;
        const double w = (x - knots[j]) / (knots[j + 1] - knots[j]);
        return vals[j] * (1.0 - w) + vals[j + 1] * w;
    }
};

double correlation(const PiecewiseLinear& u, const PiecewiseLinear& v, double xi) {
    // int u(x) v(x - xi) dx; exact 3-point Gauss per breakpoint cell
    std::vector<double> brk;
    for (double k : u.knots) brk.push_back(k);
    for (double k : v.knots) brk.push_back(k + xi);
    std::sort(brk.begin(), brk.end());
    const double lo = std::max(u.knots.front(), v.knots.front() + xi);
    const double hi = std::min(u.knots.back(), v.knots.back() + xi);
    if (lo >= hi) return 0.0;
    double acc = 0.0;
    double prev = lo;
    for (double b : brk) {
        if (b <= prev) continue;
        if (b >= hi) break;
        acc += gauss3([&](double x) { return u(x) * v(x - xi); }, prev, b);
        prev = b;
    }
    acc += gauss3([&](double x) { return u(x) * v(x - xi); }, prev, hi);
    return acc;
}

double gagliardo_pair_quadrature(const PiecewiseLinear& u, const PiecewiseLinear& v,
                                 double s) {
    const double r0 = correlation(u, v, 0.0);
    auto H = [&](double xi) {
        return 2.0 * r0 - correlation(u, v, xi) - correlation(u, v, -xi);
    };
    const double T = std::max(u.knots.back() - v.knots.front(),
                              v.knots.back() - u.knots.front());
    // every positive knot difference is a kink of H
    std::vector<double> seeds;
    double first_kink = T;
    for (double ku : u.knots)
        for (double kv : v.knots) {
            const double d = std::abs(ku - kv);
            if (d > 0.0 && d < T) {
                seeds.push_back(d);
                first_kink = std::min(first_kink, d);
            }
        }
    // On (0, first_kink) the correlation is a single cubic piece and
    // H(0) = H'(0) = 0, so H(xi) = a xi^2 + b xi^3 exactly there; the
    // weighted integral of that cell has a closed form. This sidesteps the
    // cancellation noise of H under the singular weight near 0.
    const double t1 = 0.5 * first_kink, t2 = 0.75 * first_kink;
    const double h1 = H(t1), h2 = H(t2);
    const double det = t1 * t1 * t2 * t2 * (t2 - t1);
    const double a = (h1 * t2 * t2 * t2 - h2 * t1 * t1 * t1) / det;
    const double b = (h2 * t1 * t1 - h1 * t2 * t2) / det;
    const double head = a * std::pow(first_kink, 2.0 - 2.0 * s) / (2.0 - 2.0 * s) +
                        b * std::pow(first_kink, 3.0 - 2.0 * s) / (3.0 - 2.0 * s);
    auto integrand = [&](double xi) { return std::pow(xi, -1.0 - 2.0 * s) * H(xi); };
    QuadOptions opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-11;
    opt.max_subdivisions = 200;
    const double inner =
        first_kink < T ? integrate(integrand, first_kink, T, seeds, opt).value : 0.0;
    const double tail = 2.0 * r0 * std::pow(T, -2.0 * s) / (2.0 * s);
    return 2.0 * (head + inner + tail);
}

PiecewiseLinear unit_hat(double center) {
    return PiecewiseLinear{{center - 1.0, center, center + 1.0}, {0.0, 1.0, 0.0}};
}

} // namespace

double stiffness_entry_quadrature(double s, int k) {
    const auto u = unit_hat(0.0);
    const auto v = unit_hat(static_cast<double>(k));
    const double raw = gagliardo_pair_quadrature(u, v, s);
    return 0.5 * hp_normalization_constant(1, s) * raw;
}

double gagliardo_sq_quadrature(const DiscreteFunction& v, double s) {
    PiecewiseLinear pl;
    pl.knots.push_back(v.mesh.a);
    pl.vals.push_back(0.0);
    for (int i = 0; i < v.mesh.n; ++i) {
        pl.knots.push_back(v.mesh.node(i));
        pl.vals.push_back(v.values[i]);
    }
    pl.knots.push_back(v.mesh.b);
    pl.vals.push_back(0.0);
    return gagliardo_pair_quadrature(pl, pl, s);
}

} // namespace fraclab::oracle
