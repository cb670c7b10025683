#pragma once

// Numerical kernels shared by the modules: adaptive Gauss-Kronrod
// quadrature with an absolute-error target, Gauss-Legendre rules,
// a bracketed Newton root finder, and monotone (Fritsch-Carlson) cubic
// interpolation for tabulated weight families.

#include <functional>
#include <vector>

#include "zerolab/common.hpp"

namespace zerolab {

// Adaptive G7/K15 quadrature of f over [a,b] to absolute tolerance.
// Throws numeric_error if the interval budget is exhausted before the
// error estimate drops below abs_tol.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol = 1e-10, int max_intervals = 4000);

// Gauss-Legendre nodes/weights on [-1,1], computed by Newton iteration.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
GaussRule gauss_legendre(int n);

// Bracketed Newton iteration with bisection fallback for strictly
// monotone f.  [lo,hi] must bracket the root; rel_tol is on the abscissa.
double solve_monotone(const std::function<double(double)>& f,
                      const std::function<double(double)>& df, double lo,
                      double hi, double rel_tol = 1e-12);

// Monotone piecewise-cubic interpolant (PCHIP).  Preserves monotonicity
// of the data; exposes value, first/second derivative, the running
// integral from x.front(), and inversion (for strictly increasing data).
class Pchip {
  public:
    Pchip() = default;
    Pchip(std::vector<double> x, std::vector<double> y);

    double operator()(double t) const;
    double prime(double t) const;
    double second(double t) const;
    double integral(double t) const;  // int_{x0}^{t} interpolant
    double inverse(double y, double rel_tol = 1e-12) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    double y_min() const { return y_.front(); }
    double y_max() const { return y_.back(); }

  private:
    std::size_t segment(double t) const;

    std::vector<double> x_, y_, m_;       // knots, values, knot slopes
    std::vector<double> cum_;             // integral up to each knot
};

}  // namespace zerolab
