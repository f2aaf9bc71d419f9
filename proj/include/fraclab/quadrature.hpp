#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraclab {

/// Raised when adaptive refinement exhausts its subdivision budget before
/// the requested tolerances are met. Carries the last estimate and the
/// error bound at the point of failure.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

  private:
    double estimate_;
    double error_bound_;
};

struct QuadResult {
    double value = 0.0;
    double error_bound = 0.0;
    int subdivisions = 0;
};

struct QuadOptions {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    int max_subdivisions = 60;
};

/// Adaptive Gauss-Kronrod (G7,K15) on [a,b]. The segment with the largest
/// error estimate is bisected until the summed bound drops below
/// max(abs_tol, rel_tol*|value|). `max_subdivisions` counts bisections per
/// initial segment. Throws QuadratureError if the budget runs out.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

/// Same, with interior breakpoints (kinks, mild singularities) used to seed
/// the initial segment list. Breakpoints outside (a,b) are ignored.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     std::span<const double> breakpoints, const QuadOptions& opt = {});

/// Fixed 3-point Gauss-Legendre on [a,b]; exact for quintic polynomials.
double gauss3(const std::function<double(double)>& f, double a, double b);

} // namespace fraclab
