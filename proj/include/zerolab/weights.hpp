#pragma once

// Smooth coefficient machinery.  A weight is built from an increasing,
// concave phi with phi(0)=0 and phi'->0; everything else derives from it:
//
//   a(n)    = exp(-int_0^n phi)          (log-domain only, never exponentiated)
//   psi     = phi^{-1}
//   nu(R)   = psi(log R)                 smoothed central index
//   sigma(R)= psi'(log R) = 1/phi'(nu)   central-block width^2
//   log mu(R) = int_0^{log R} psi        smoothed maximal term
//   omega_R(t) = t log R - int_0^t phi   so a(k) R^k = exp(omega(k))
//   gamma(disk R) = nu(R)                reference measure, angles in turns
//
// Parametric families use closed forms; tabulated families use monotone
// cubic interpolation with derivatives and integrals from the interpolant.

#include <optional>
#include <variant>
#include <vector>

#include "zerolab/common.hpp"
#include "zerolab/numerics.hpp"

namespace zerolab {

struct LogFamily {
    double alpha;  // phi(t) = alpha * log(1+t), alpha > 0
};

struct PowerFamily {
    double beta;  // phi(t) = c * ((1+t)^beta - 1), 0 < beta < 1
    double c;     // c > 0
};

struct TabulatedFamily {
    std::vector<double> t;    // strictly increasing, t.front() == 0
    std::vector<double> phi;  // strictly increasing, phi.front() == 0
};

using WeightFamily = std::variant<LogFamily, PowerFamily, TabulatedFamily>;

// Regions for the reference measure gamma.  Angles are in turns.
struct Disk {
    double radius;
};
struct AnnulusSector {
    double r1, r2;      // 1 <= r1 <= r2
    double theta1, theta2;  // theta1 <= theta2 <= theta1 + 1
};
using GammaRegion = std::variant<Disk, AnnulusSector>;

struct RegularityRow {
    double t;
    double phi_prime;
    double phi_second;
    double ratio_plus;   // |phi''| / (phi')^{2+eps}
    double ratio_minus;  // |phi''| / (phi')^{2-eps}
    double delta_pointwise;  // |phi''| / (phi')^2
    bool flagged;
};

class SmoothWeight {
  public:
    explicit SmoothWeight(WeightFamily family, double inversion_rel_tol = 1e-12,
                          double quadrature_abs_tol = 1e-10);

    double phi(double t) const;
    double phi_prime(double t) const;
    double phi_second(double t) const;
    double int_phi(double t) const;  // int_0^t phi

    double psi(double s) const;
    double psi_prime(double s) const;

    double nu(double R) const;     // R > 1
    double sigma(double R) const;  // R > 1
    struct NuSigma {
        double nu, sigma;
    };
    NuSigma nu_sigma(double R) const;

    double log_mu(double R) const;  // R >= 1
    double coeff_log(long long n) const;  // log a(n) = -int_0^n phi
    double omega(double R, double t) const;  // t log R - int_0^t phi

    double gamma_mass(const GammaRegion& region) const;
    // gamma of a disk of radius r centered at distance center_abs from 0.
    // The measure is radial, so only |center| matters.
    double gamma_disk(double center_abs, double r) const;

    // A nondecreasing majorant Delta with |phi''| <= (phi')^2 Delta(1/phi').
    // Constant for the parametric families (1/alpha resp. (1-beta)/(c beta));
    // for tabulated families the grid maximum of the pointwise ratio.
    double delta_regularity(double s) const;

    std::vector<RegularityRow> regularity_report(const std::vector<double>& t_grid,
                                                 double eps,
                                                 double flag_factor = 1e3) const;

    const WeightFamily& family() const { return family_; }
    double inversion_tol() const { return inv_tol_; }
    double quadrature_tol() const { return quad_tol_; }

  private:
    WeightFamily family_;
    double inv_tol_;
    double quad_tol_;
    std::optional<Pchip> interp_;   // tabulated families only
    double tab_delta_ = 0.0;
};

}  // namespace zerolab
