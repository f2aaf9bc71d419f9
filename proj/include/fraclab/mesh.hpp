#pragma once

#include <stdexcept>
#include <vector>

namespace fraclab {

/// Uniform 1D mesh on (a,b) with n interior nodes, spacing h = (b-a)/(n+1).
/// Node i (1-based in formulas, 0-based in storage) sits at a + (i+1)*h.
/// The P1 hat basis attached to the interior nodes vanishes at a, b and on
/// the complement of (a,b).
struct UniformMesh {
    double a;
    double b;
    int n;

    UniformMesh(double a_, double b_, int n_) : a(a_), b(b_), n(n_) {
        if (!(a < b)) throw std::invalid_argument("UniformMesh: need a < b");
        if (n < 1) throw std::invalid_argument("UniformMesh: need n >= 1");
    }

    double h() const { return (b - a) / (n + 1); }
    double node(int i) const { return a + (i + 1) * h(); }

    bool operator==(const UniformMesh& o) const { return a == o.a && b == o.b && n == o.n; }
};

/// Interior nodal values of a piecewise-linear function on a UniformMesh,
/// extended by zero outside (a,b). This is the discrete realization of the
/// homogeneous exterior condition: the function is identically zero on the
/// complement, not just at the endpoints.
struct DiscreteFunction {
    UniformMesh mesh;
    std::vector<double> values;

    DiscreteFunction(const UniformMesh& m, std::vector<double> v)
        : mesh(m), values(std::move(v)) {
        if (static_cast<int>(values.size()) != mesh.n)
            throw std::invalid_argument("DiscreteFunction: value count != interior nodes");
    }

    static DiscreteFunction zero(const UniformMesh& m) {
        return DiscreteFunction(m, std::vector<double>(m.n, 0.0));
    }

    /// Pointwise evaluation of the piecewise-linear extension (zero outside).
    double operator()(double x) const {
        const double hh = mesh.h();
        if (x <= mesh.a || x >= mesh.b) return 0.0;
        const double t = (x - mesh.a) / hh;
        int e = static_cast<int>(t); // element index, node e-1 left, node e right
        if (e > mesh.n) e = mesh.n;
        const double w = t - e;
        const double left = (e >= 1 && e <= mesh.n) ? values[e - 1] : 0.0;
        const double right = (e + 1 >= 1 && e + 1 <= mesh.n) ? values[e] : 0.0;
        return left * (1.0 - w) + right * w;
    }
};

} // namespace fraclab
