#include "zerolab/evaluator.hpp"

#include <algorithm>
#include <cmath>

#include "zerolab/numerics.hpp"

namespace zerolab {

SeriesSpec::SeriesSpec(SmoothWeight weight, MultiplierSpec mult,
                       std::uint64_t seed, long long max_index, double window_A)
    : weight_(std::move(weight)),
      seq_(generate(mult, 0, max_index, seed)),
      window_A_(window_A) {
    if (!(window_A > 0.0))
        throw validation_error("SeriesSpec: window constant A must be positive");
}

SeriesSpec::SeriesSpec(SmoothWeight weight, SequenceBuffer buffer, double window_A)
    : weight_(std::move(weight)), seq_(std::move(buffer)), window_A_(window_A) {
    if (!(window_A > 0.0))
        throw validation_error("SeriesSpec: window constant A must be positive");
    if (seq_.n0 != 0)
        throw validation_error("SeriesSpec: sequence buffer must start at n0 = 0");
}

SeriesSpec::Window SeriesSpec::central_window(double R) const {
    if (!(R > 1.0)) throw validation_error("central_window: R must exceed 1");
    auto [nu, sigma] = weight_.nu_sigma(R);
    if (!(sigma >= 3.0))
        throw validation_error("central_window: sigma(R) must be >= 3");
    double N = window_A_ * std::sqrt(sigma * std::log(sigma));
    long long lo = std::max<long long>(0, static_cast<long long>(std::floor(nu - N)));
    long long hi = static_cast<long long>(std::ceil(nu + N));
    if (hi >= max_index())
        throw capacity_error("central_window: window [" + std::to_string(lo) + "," +
                                 std::to_string(hi) + "] exceeds max_index " +
                                 std::to_string(max_index()),
                             hi + 1);
    return {lo, hi};
}

cplx SeriesSpec::eval_normalized(const EvalPoint& p) const {
    Window win = central_window(p.R);
    double nu = weight_.nu(p.R);
    double omega_nu = weight_.omega(p.R, nu);
    kahan_cplx acc;
    for (long long k = win.lo; k <= win.hi; ++k) {
        cplx xi = seq_.at(k);
        if (xi == cplx{0.0, 0.0}) continue;
        double w = weight_.omega(p.R, static_cast<double>(k)) - omega_nu;
        acc.add(xi * unit_phase_prod(static_cast<double>(k), p.theta) * std::exp(w));
    }
    return acc.value();
}

cplx SeriesSpec::weyl_sum(double R, double theta) const {
    Window win = central_window(R);
    auto [nu, sigma] = weight_.nu_sigma(R);
    kahan_cplx acc;
    for (long long k = win.lo; k <= win.hi; ++k) {
        cplx xi = seq_.at(k);
        if (xi == cplx{0.0, 0.0}) continue;
        double d = static_cast<double>(k) - nu;
        acc.add(xi * unit_phase_prod(static_cast<double>(k), theta) *
                std::exp(-d * d / (2.0 * sigma)));
    }
    return acc.value();
}

SeriesSpec::Truncated SeriesSpec::eval_truncated_log(long long degree, double log_R,
                                                     double theta) const {
    if (degree < 0 || degree >= max_index())
        throw capacity_error("eval_truncated: degree exceeds max_index", degree + 1);
    // omega(k) = k log R - int_phi(k); normalize by the maximal term over
    // k <= degree (omega is concave in k, so the max is interior or at ends).
    double best = -INFINITY;
    std::vector<double> w(static_cast<std::size_t>(degree) + 1);
    for (long long k = 0; k <= degree; ++k) {
        double wk = static_cast<double>(k) * log_R -
                    weight_.int_phi(static_cast<double>(k));
        w[static_cast<std::size_t>(k)] = wk;
        if (seq_.at(k) != cplx{0.0, 0.0}) best = std::max(best, wk);
    }
    if (best == -INFINITY)
        throw validation_error("eval_truncated: sequence vanishes up to the degree");
    kahan_cplx acc;
    for (long long k = 0; k <= degree; ++k) {
        cplx xi = seq_.at(k);
        if (xi == cplx{0.0, 0.0}) continue;
        acc.add(xi * unit_phase_prod(static_cast<double>(k), theta) *
                std::exp(w[static_cast<std::size_t>(k)] - best));
    }
    Truncated out;
    out.value = acc.value();
    double R = std::exp(log_R);
    if (std::isfinite(R) && R > 1.0) {
        double omega_nu = weight_.omega(R, weight_.nu(R));
        out.log_scale = best - omega_nu;
    } else {
        out.log_scale = 0.0;  // mu-normalization unavailable at this radius
    }
    return out;
}

SeriesSpec::Truncated SeriesSpec::eval_truncated(long long degree,
                                                 const EvalPoint& p) const {
    if (!(p.R > 0.0)) throw validation_error("eval_truncated: R must be positive");
    return eval_truncated_log(degree, std::log(p.R), p.theta);
}

cplx SeriesSpec::eval_for_winding(double R, double theta) const {
    if (R <= 0.0) return seq_.at(0);  // F(0) = xi(0), a(0) = 1
    if (R > 1.0 && weight_.sigma(R) >= 3.0)
        return eval_normalized({R, theta});  // capacity error if window overflows
    // Small radius: the whole series is effectively a short polynomial.
    double sr = std::max(R, 1.0 + 1e-9);
    double nu_cap = (sr > 1.0) ? weight_.nu(sr) : 0.0;
    long long degree = static_cast<long long>(std::ceil(nu_cap)) + 160;
    if (degree >= max_index())
        throw capacity_error("eval_for_winding: small-radius truncation needs "
                             "max_index >= " + std::to_string(degree + 1),
                             degree + 1);
    return eval_truncated_log(degree, std::log(R), theta).value;
}

namespace {

// Windowed coefficients xi(k) exp(-(k-nu)^2/(2 sigma)) at one radius,
// cached so that theta sweeps only pay one complex multiply per term.
struct WeylCoeffs {
    long long lo = 0;
    std::vector<cplx> c;

    // W(theta) = sum_k c_k e(k theta), by phase recurrence with an exact
    // double-double resync every 256 terms.
    cplx sum(double theta) const {
        cplx rot = unit_phase_prod(1.0, theta);
        kahan_cplx acc;
        cplx ph{1.0, 0.0};
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i % 256 == 0)
                ph = unit_phase_prod(static_cast<double>(lo) + static_cast<double>(i),
                                     theta);
            acc.add(c[i] * ph);
            ph *= rot;
        }
        return acc.value();
    }
};

}  // namespace

double SeriesSpec::x_statistic(double R, double theta_c, double beta,
                               const std::function<double(double)>& g,
                               double rel_tol) const {
    if (!(beta > 0.0)) throw validation_error("x_statistic: beta must be positive");
    double R2 = R * (1.0 + beta);
    double nu2 = weight_.nu(R2);
    (void)central_window(R2);  // capacity check up front

    auto evaluate = [&](int n_s, int n_theta) {
        GaussRule rs = gauss_legendre(n_s);
        GaussRule rt = gauss_legendre(n_theta);
        kahan<double> acc;
        WeylCoeffs wc;
        for (int i = 0; i < n_s; ++i) {
            double s = 0.5 * (R + R2) + 0.5 * (R2 - R) * rs.x[i];
            double ws = 0.5 * (R2 - R) * rs.w[i];
            Window win = central_window(s);
            auto [nu, sigma] = weight_.nu_sigma(s);
            double dens = sigma / s;  // d nu(s) = sigma(s)/s ds
            wc.lo = win.lo;
            wc.c.assign(static_cast<std::size_t>(win.hi - win.lo + 1), cplx{});
            for (long long k = win.lo; k <= win.hi; ++k) {
                double d = static_cast<double>(k) - nu;
                wc.c[static_cast<std::size_t>(k - win.lo)] =
                    seq_.at(k) * std::exp(-d * d / (2.0 * sigma));
            }
            for (int j = 0; j < n_theta; ++j) {
                double th = theta_c + 0.5 * beta * rt.x[j];
                double wt = 0.5 * beta * rt.w[j];
                double gv = g((theta_c - th) / beta);
                if (gv == 0.0) continue;
                acc.add(std::norm(wc.sum(th)) * gv * ws * wt * dens);
            }
        }
        return acc.value();
    };

    int n_s = 64;
    // |W|^2 oscillates at scale 1/nu in theta; start at ~4 nodes per cycle.
    int n_theta = std::max(256, static_cast<int>(std::ceil(8.0 * nu2 * beta)));
    // Deep in the bump's tail X is numerically zero; stabilization is
    // judged relative to the diagonal-term magnitude beta^2 sigma^{3/2}.
    double floor_scale =
        1e-9 * beta * beta * std::pow(weight_.sigma(R), 1.5);
    double prev = evaluate(n_s, n_theta);
    for (int pass = 0; pass < 4; ++pass) {
        n_s = n_s * 3 / 2;
        n_theta *= 2;
        double cur = evaluate(n_s, n_theta);
        if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), floor_scale))
            return cur;
        prev = cur;
    }
    throw numeric_error("x_statistic: quadrature did not stabilize to " +
                        std::to_string(rel_tol) + " (last value " +
                        std::to_string(prev) + ")");
}

SeriesSpec::WeylMax SeriesSpec::weyl_box_max(double R, double beta,
                                             double theta_c) const {
    auto [nu, sigma] = weight_.nu_sigma(R);
    double R2 = R * (1.0 + beta);
    double nu2 = weight_.nu(R2);
    int n_s = std::max(3, static_cast<int>(std::ceil(8.0 * (nu2 - nu) /
                                                     std::sqrt(sigma))));
    int n_t = std::max(64, static_cast<int>(std::ceil(2.0 * beta * 4.0 * nu2)));
    WeylMax best{R, theta_c, -1.0};
    WeylCoeffs wc;
    for (int i = 0; i <= n_s; ++i) {
        double s = R + (R2 - R) * static_cast<double>(i) / n_s;
        Window win = central_window(s);
        auto [nus, sigmas] = weight_.nu_sigma(s);
        wc.lo = win.lo;
        wc.c.assign(static_cast<std::size_t>(win.hi - win.lo + 1), cplx{});
        for (long long k = win.lo; k <= win.hi; ++k) {
            double d = static_cast<double>(k) - nus;
            wc.c[static_cast<std::size_t>(k - win.lo)] =
                seq_.at(k) * std::exp(-d * d / (2.0 * sigmas));
        }
        for (int j = 0; j <= n_t; ++j) {
            double th = theta_c - beta +
                        2.0 * beta * static_cast<double>(j) / n_t;
            double a = std::abs(wc.sum(th));
            if (a > best.abs_w) best = {s, th, a};
        }
    }
    return best;
}

}  // namespace zerolab
