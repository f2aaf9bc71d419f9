#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fraclab {

/// Dense symmetric Toeplitz matrix stored as its first row:
/// entry(i,j) = first_row[|i-j|]. This is exactly the structure of the
/// fractional stiffness matrix on a uniform mesh, where the bilinear form
/// of two hats depends only on the distance between their centers.
struct SymToeplitzMatrix {
    std::vector<double> first_row;

    int size() const { return static_cast<int>(first_row.size()); }
    double entry(int i, int j) const { return first_row[i >= j ? i - j : j - i]; }

    std::vector<double> apply(std::span<const double> v) const {
        const int n = size();
        if (static_cast<int>(v.size()) != n)
            throw std::invalid_argument("SymToeplitzMatrix::apply: size mismatch");
        std::vector<double> out(n, 0.0);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += entry(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    }

    double quadratic_form(std::span<const double> v) const {
        auto av = apply(v);
        double acc = 0.0;
        for (int i = 0; i < size(); ++i) acc += v[i] * av[i];
        return acc;
    }
};

/// Constant-coefficient symmetric tridiagonal matrix.
struct TridiagMatrix {
    double diag;
    double offdiag;
    int n;

    std::vector<double> apply(std::span<const double> v) const {
        if (static_cast<int>(v.size()) != n)
            throw std::invalid_argument("TridiagMatrix::apply: size mismatch");
        std::vector<double> out(n, 0.0);
        for (int i = 0; i < n; ++i) {
            double acc = diag * v[i];
            if (i > 0) acc += offdiag * v[i - 1];
            if (i + 1 < n) acc += offdiag * v[i + 1];
            out[i] = acc;
        }
        return out;
    }

    double quadratic_form(std::span<const double> v) const {
        auto av = apply(v);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += v[i] * av[i];
        return acc;
    }
};

} // namespace fraclab
