#pragma once

// Windowed evaluation of F_xi / mu.  All exponents enter as differences
// omega(k) - omega(nu) before exponentiation, so nothing overflows even
// when log mu is in the thousands.

#include <cstdint>
#include <functional>

#include "zerolab/common.hpp"
#include "zerolab/sequences.hpp"
#include "zerolab/weights.hpp"

namespace zerolab {

struct EvalPoint {
    double R;      // radius, > 1 for windowed evaluation
    double theta;  // turns
};

class SeriesSpec {
  public:
    // Generates xi over [0, max_index) up front; immutable afterwards.
    SeriesSpec(SmoothWeight weight, MultiplierSpec mult, std::uint64_t seed,
               long long max_index, double window_A = 6.0);
    // Wraps an explicit buffer (must start at 0).
    SeriesSpec(SmoothWeight weight, SequenceBuffer buffer, double window_A = 6.0);

    const SmoothWeight& weight() const { return weight_; }
    const SequenceBuffer& sequence() const { return seq_; }
    long long max_index() const { return seq_.n1; }
    double window_A() const { return window_A_; }

    struct Window {
        long long lo, hi;  // inclusive
    };
    // [max(0, floor(nu-N)), ceil(nu+N)] with N = A sqrt(sigma log sigma);
    // requires sigma(R) >= 3; capacity error names the required max_index.
    Window central_window(double R) const;

    // sum_{lo <= k <= hi} xi(k) e(k theta) exp(omega(k) - omega(nu)),
    // i.e. F(R e(theta)) / mu(R) up to the Laplace tail.
    cplx eval_normalized(const EvalPoint& p) const;

    // Gaussian-window Weyl sum: xi(k) e(k theta) exp(-(k-nu)^2 / (2 sigma)).
    cplx weyl_sum(double R, double theta) const;

    // Full truncated sum over k <= degree, normalized by its own maximal
    // term: value = sum xi(k) e(k theta) exp(omega(k) - omega(k*)), and
    // log_scale = omega(k*) - omega(nu), so value * exp(log_scale) = F_d/mu.
    // Works at any radius (including radii far beyond double range when
    // given as log_R).
    struct Truncated {
        cplx value;
        double log_scale;
    };
    Truncated eval_truncated_log(long long degree, double log_R, double theta) const;
    Truncated eval_truncated(long long degree, const EvalPoint& p) const;

    // Robust evaluation for winding computations: windowed when
    // sigma(R) >= 3, truncated otherwise.  Result is F(z) times a positive
    // radial factor, which leaves arguments (and hence windings) unchanged.
    cplx eval_for_winding(double R, double theta) const;

    // X(R, theta_c; beta) = int_R^{R(1+beta)} int |W_s(theta)|^2
    //   g((theta_c - theta)/beta) d nu(s) d theta, by tensor Gauss rules
    // doubled until the value stabilizes to rel_tol.
    double x_statistic(double R, double theta_c, double beta,
                       const std::function<double(double)>& g,
                       double rel_tol = 1e-6) const;

    // Grid search for max |W| over [R, R(1+beta)] x (theta_c - beta,
    // theta_c + beta); theta resolution <= 1/(4 nu), s resolution fine
    // enough that nu moves by <= sqrt(sigma)/4 per step.
    struct WeylMax {
        double R, theta, abs_w;
    };
    WeylMax weyl_box_max(double R, double beta, double theta_c) const;

  private:
    SmoothWeight weight_;
    SequenceBuffer seq_;
    double window_A_;
};

}  // namespace zerolab
