#pragma once

// Radial gauges rho(R), the metric d_rho (upper-bound approximation),
// gamma-masses of boundary neighborhoods, discrepancy reports against
// zero counts, the classical lattice-point baseline, and a finite-family
// transportation-duality check.

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "zerolab/common.hpp"
#include "zerolab/weights.hpp"
#include "zerolab/zeros.hpp"

namespace zerolab {

class RadialGauge {
  public:
    enum class Kind {
        sqrt_log,     // rho = R sqrt(log sigma / sigma)
        power,        // rho = R sigma^{-c}, 0 < c < 1/2
        diophantine,  // rho = R sigma^{-1/2} (log sigma)^{(a+1)/2}
        exp_sqrt,     // rho = R exp(-c sqrt(log sigma))
        constant,     // rho = rho0
    };

    static RadialGauge sqrt_log(SmoothWeight w);
    static RadialGauge power(SmoothWeight w, double c);
    static RadialGauge diophantine(SmoothWeight w, double a);
    static RadialGauge exp_sqrt(SmoothWeight w, double c);
    static RadialGauge constant(double rho0);

    Kind kind() const { return kind_; }
    double param() const { return param_; }
    const SmoothWeight& weight() const;

    double rho(double R) const;
    double rho_prime(double R) const;  // central finite difference
    // Smallest radius (scanned on a log grid) past which |rho'| <= 0.1.
    double gauge_threshold(double r_lo = 2.0, double r_hi = 1e6) const;

    // d_rho(z1, z2).  The metric |dw|/rho(|w|) is a surface of revolution,
    // so geodesics obey a Clairaut relation; the solver classifies the
    // geodesic as radially monotone or inward-turning and evaluates the
    // length integral along it.  Inside the small disk where the gauge
    // formula degenerates the gauge is frozen at its threshold value, which
    // keeps the metric defined on all of C.  The straight-segment integral
    // is kept as a cross-check upper bound.
    double distance(cplx z1, cplx z2) const;
    double rho_clamped(double R) const;

  private:
    RadialGauge(Kind k, double p, std::optional<SmoothWeight> w);
    double segment_integral(cplx a, cplx b) const;

    Kind kind_;
    double param_ = 0.0;
    std::optional<SmoothWeight> weight_;
    double r_floor_ = 0.0;  // smallest radius with sigma(R) > e
};

// gamma-mass of the tau-neighborhood of the boundary of K, computed by
// radial/angular thickening of each boundary piece (an over-approximation
// of the exact d_rho neighborhood).
struct BoundaryMass {
    double mass;
    double proxy;        // sigma(R) rho(R) / R, the near-constancy estimate
    bool proxy_flagged;  // mass differs from proxy by more than 2x
};
BoundaryMass boundary_neighborhood_mass(const RadialGauge& g, const SmoothWeight& w,
                                        const Contour& region, double tau);

struct DiscrepancyRow {
    Contour region;
    long long count;
    double gamma;
    double discrepancy;     // |count - gamma|
    double boundary_mass;   // gamma((dK)_{+tau})
    double bound;           // C * boundary_mass
    double ratio;           // discrepancy / boundary_mass
    bool pass;
};

struct DiscrepancyReport {
    std::vector<DiscrepancyRow> rows;
    double tau;
    double C;
    double min_C;  // max over rows of ratio: smallest C passing all rows
    bool all_pass;
};

DiscrepancyReport equidist_report(const std::vector<ZeroCountReport>& counts,
                                  const RadialGauge& g, const SmoothWeight& w,
                                  double tau = 2.0, double C = 1.0);
void write_report_csv(const DiscrepancyReport& rep, std::ostream& os);

// ---------------------------------------------------------------------------
// Gauss lattice baseline.
// ---------------------------------------------------------------------------

struct LatticeDisk {
    double cx, cy, r;
};
struct LatticeRect {
    double x1, x2, y1, y2;
};
using LatticeRegion = std::variant<LatticeDisk, LatticeRect>;

struct LatticeCheck {
    long long count;  // #(Z^2 cap K)
    double area;      // m(K)
    double bound;     // m(sqrt2-neighborhood of the boundary)
    bool pass;        // |count - area| <= bound
};
LatticeCheck gauss_lattice_check(const LatticeRegion& region);

// ---------------------------------------------------------------------------
// Transportation duality over a finite family of disks.
// ---------------------------------------------------------------------------

struct TransportFamily {
    // Point-measure side: either an explicit point list or a counting
    // callback (e.g. winding counts); the callback wins when set.
    std::vector<cplx> points;
    std::function<long long(const LatticeDisk&)> counter;
    double domain_radius;  // counts are trustworthy within |z| <= domain_radius
    // Reference side: gamma(disk) for the same disks.
    std::function<double(const LatticeDisk&)> reference_mass;
};

struct TransportReport {
    double min_tau;  // smallest tau (bisection) passing both inequalities
    bool converged;
    std::vector<std::string> notes;
};

// Verifies gamma1(U) <= gamma(U_{+tau}) and gamma(U) <= gamma1(U_{+tau})
// over the disk family, enlarging disks by tau * rho(|center|); reports
// the minimal passing tau.  Throws coverage_error when an enlargement
// leaves the computed-point domain.
TransportReport transport_check(const TransportFamily& family,
                                const std::vector<LatticeDisk>& disks,
                                const RadialGauge& g, double tau_max = 64.0,
                                double tol = 1e-2);

}  // namespace zerolab
