#include "zerolab/weights.hpp"

#include <algorithm>
#include <cmath>

namespace zerolab {

namespace {

void validate_family(const WeightFamily& family) {
    if (const auto* lf = std::get_if<LogFamily>(&family)) {
        if (!(lf->alpha > 0.0))
            throw validation_error("log family: alpha must be positive");
    } else if (const auto* pf = std::get_if<PowerFamily>(&family)) {
        if (!(pf->beta > 0.0 && pf->beta < 1.0))
            throw validation_error("power family: beta must lie in (0,1)");
        if (!(pf->c > 0.0))
            throw validation_error("power family: c must be positive");
    } else {
        const auto& tf = std::get<TabulatedFamily>(family);
        if (tf.t.size() < 2 || tf.t.size() != tf.phi.size())
            throw validation_error("tabulated family: need matching grids of size >= 2");
        if (tf.t.front() != 0.0 || tf.phi.front() != 0.0)
            throw validation_error("tabulated family: grid must start at phi(0)=0");
        for (std::size_t i = 1; i < tf.t.size(); ++i) {
            if (!(tf.t[i] > tf.t[i - 1]))
                throw validation_error("tabulated family: t grid must be strictly increasing");
            if (!(tf.phi[i] > tf.phi[i - 1]))
                throw validation_error("tabulated family: phi values must be strictly increasing");
        }
    }
}

}  // namespace

SmoothWeight::SmoothWeight(WeightFamily family, double inversion_rel_tol,
                           double quadrature_abs_tol)
    : family_(std::move(family)), inv_tol_(inversion_rel_tol),
      quad_tol_(quadrature_abs_tol) {
    validate_family(family_);
    if (const auto* tf = std::get_if<TabulatedFamily>(&family_)) {
        interp_.emplace(tf->t, tf->phi);
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < tf->t.size(); ++i) {
            double p = interp_->prime(tf->t[i]);
            double pp = interp_->second(tf->t[i]);
            if (p > 0.0) worst = std::max(worst, std::abs(pp) / (p * p));
        }
        tab_delta_ = worst;
    }
}

double SmoothWeight::phi(double t) const {
    if (t < 0.0) throw validation_error("phi: t must be nonnegative");
    if (const auto* lf = std::get_if<LogFamily>(&family_))
        return lf->alpha * std::log1p(t);
    if (const auto* pf = std::get_if<PowerFamily>(&family_))
        return pf->c * std::expm1(pf->beta * std::log1p(t));
    return (*interp_)(t);
}

double SmoothWeight::phi_prime(double t) const {
    if (t < 0.0) throw validation_error("phi_prime: t must be nonnegative");
    if (const auto* lf = std::get_if<LogFamily>(&family_))
        return lf->alpha / (1.0 + t);
    if (const auto* pf = std::get_if<PowerFamily>(&family_))
        return pf->c * pf->beta * std::pow(1.0 + t, pf->beta - 1.0);
    return interp_->prime(t);
}

double SmoothWeight::phi_second(double t) const {
    if (t < 0.0) throw validation_error("phi_second: t must be nonnegative");
    if (const auto* lf = std::get_if<LogFamily>(&family_))
        return -lf->alpha / ((1.0 + t) * (1.0 + t));
    if (const auto* pf = std::get_if<PowerFamily>(&family_))
        return pf->c * pf->beta * (pf->beta - 1.0) * std::pow(1.0 + t, pf->beta - 2.0);
    return interp_->second(t);
}

double SmoothWeight::int_phi(double t) const {
    if (t < 0.0) throw validation_error("int_phi: t must be nonnegative");
    if (const auto* lf = std::get_if<LogFamily>(&family_)) {
        // int_0^t alpha log(1+u) du = alpha ((1+t) log(1+t) - t)
        return lf->alpha * ((1.0 + t) * std::log1p(t) - t);
    }
    if (const auto* pf = std::get_if<PowerFamily>(&family_)) {
        double b1 = 1.0 + pf->beta;
        return pf->c * ((std::pow(1.0 + t, b1) - 1.0) / b1 - t);
    }
    return interp_->integral(t);
}

double SmoothWeight::psi(double s) const {
    if (s < 0.0) throw validation_error("psi: s must be nonnegative");
    if (const auto* lf = std::get_if<LogFamily>(&family_))
        return std::expm1(s / lf->alpha);
    if (const auto* pf = std::get_if<PowerFamily>(&family_))
        return std::expm1(std::log1p(s / pf->c) / pf->beta);
    if (s > interp_->y_max())
        throw validation_error("psi: s exceeds sup phi over the tabulated domain");
    if (s == 0.0) return 0.0;
    return interp_->inverse(s, inv_tol_);
}

double SmoothWeight::psi_prime(double s) const {
    if (const auto* lf = std::get_if<LogFamily>(&family_))
        return std::exp(s / lf->alpha) / lf->alpha;
    if (const auto* pf = std::get_if<PowerFamily>(&family_)) {
        double ib = 1.0 / pf->beta;
        return ib / pf->c * std::pow(1.0 + s / pf->c, ib - 1.0);
    }
    double t = psi(s);
    double p = interp_->prime(t);
    if (!(p > 0.0)) throw numeric_error("psi_prime: interpolant slope vanished");
    return 1.0 / p;
}

double SmoothWeight::nu(double R) const {
    if (!(R > 1.0)) throw validation_error("nu: R must exceed 1");
    return psi(std::log(R));
}

double SmoothWeight::sigma(double R) const {
    if (!(R > 1.0)) throw validation_error("sigma: R must exceed 1");
    return psi_prime(std::log(R));
}

SmoothWeight::NuSigma SmoothWeight::nu_sigma(double R) const {
    return {nu(R), sigma(R)};
}

double SmoothWeight::log_mu(double R) const {
    if (!(R >= 1.0)) throw validation_error("log_mu: R must be >= 1");
    double L = std::log(R);
    if (L == 0.0) return 0.0;
    if (const auto* lf = std::get_if<LogFamily>(&family_)) {
        // int_0^L (e^{s/alpha}-1) ds = alpha (e^{L/alpha}-1) - L
        return lf->alpha * std::expm1(L / lf->alpha) - L;
    }
    if (const auto* pf = std::get_if<PowerFamily>(&family_)) {
        double ib1 = 1.0 / pf->beta + 1.0;
        return pf->c * (std::pow(1.0 + L / pf->c, ib1) - 1.0) / ib1 - L;
    }
    // Integration by parts: int_0^L psi = L psi(L) - int_0^{psi(L)} phi.
    double t = psi(L);
    return L * t - int_phi(t);
}

double SmoothWeight::coeff_log(long long n) const {
    if (n < 0) throw validation_error("coeff_log: n must be nonnegative");
    return -int_phi(static_cast<double>(n));
}

double SmoothWeight::omega(double R, double t) const {
    if (!(R > 1.0)) throw validation_error("omega: R must exceed 1");
    return t * std::log(R) - int_phi(t);
}

double SmoothWeight::gamma_mass(const GammaRegion& region) const {
    if (const auto* d = std::get_if<Disk>(&region)) {
        if (!(d->radius >= 0.0)) throw validation_error("gamma_mass: malformed disk");
        if (d->radius <= 1.0) return 0.0;
        return nu(d->radius);
    }
    const auto& s = std::get<AnnulusSector>(region);
    if (!(s.r1 >= 1.0 && s.r2 >= s.r1))
        throw validation_error("gamma_mass: annulus sector needs 1 <= r1 <= r2");
    if (!(s.theta2 >= s.theta1 && s.theta2 <= s.theta1 + 1.0))
        throw validation_error("gamma_mass: sector needs theta1 <= theta2 <= theta1+1");
    double inner = (s.r1 > 1.0) ? nu(s.r1) : 0.0;
    double outer = (s.r2 > 1.0) ? nu(s.r2) : 0.0;
    return (s.theta2 - s.theta1) * (outer - inner);
}

double SmoothWeight::gamma_disk(double center_abs, double r) const {
    if (!(r >= 0.0) || !(center_abs >= 0.0))
        throw validation_error("gamma_disk: malformed disk");
    if (r == 0.0) return 0.0;
    if (center_abs <= 1e-12) return gamma_mass(Disk{r});
    double lo = std::max(1.0, center_abs - r);
    double hi = center_abs + r;
    if (hi <= 1.0) return 0.0;
    // gamma(D) = int sigma(s)/s * (arc fraction of |w|=s inside D) ds.
    auto f = [&](double s) {
        double cosv = (center_abs * center_abs + s * s - r * r) /
                      (2.0 * center_abs * s);
        cosv = std::clamp(cosv, -1.0, 1.0);
        double lam = std::acos(cosv);  // half-angle of the arc, radians
        return psi_prime(std::log(s)) / s * (lam / pi);
    };
    return integrate_gk(f, lo, hi, quad_tol_ * std::max(1.0, nu(hi)));
}

double SmoothWeight::delta_regularity(double) const {
    if (const auto* lf = std::get_if<LogFamily>(&family_)) return 1.0 / lf->alpha;
    if (const auto* pf = std::get_if<PowerFamily>(&family_))
        return (1.0 - pf->beta) / (pf->c * pf->beta);
    return tab_delta_;
}

std::vector<RegularityRow> SmoothWeight::regularity_report(
    const std::vector<double>& t_grid, double eps, double flag_factor) const {
    if (!(eps > 0.0)) throw validation_error("regularity_report: eps must be positive");
    std::vector<RegularityRow> rows;
    rows.reserve(t_grid.size());
    for (double t : t_grid) {
        if (!(t > 0.0))
            throw validation_error("regularity_report: grid points must be positive");
        RegularityRow row{};
        row.t = t;
        row.phi_prime = phi_prime(t);
        row.phi_second = phi_second(t);
        double ap = std::abs(row.phi_second);
        row.ratio_plus = ap / std::pow(row.phi_prime, 2.0 + eps);
        row.ratio_minus = ap / std::pow(row.phi_prime, 2.0 - eps);
        row.delta_pointwise = ap / (row.phi_prime * row.phi_prime);
        // eq-style sandwich with an explicit comparison factor: flag when
        // |phi''| escapes [ (phi')^{2+eps}/F, F (phi')^{2-eps} ].
        row.flagged = row.ratio_minus > flag_factor ||
                      row.ratio_plus < 1.0 / flag_factor;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace zerolab
