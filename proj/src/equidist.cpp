#include "zerolab/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "zerolab/numerics.hpp"

namespace zerolab {

RadialGauge RadialGauge::sqrt_log(SmoothWeight w) {
    return RadialGauge(Kind::sqrt_log, 0.0, std::move(w));
}
RadialGauge RadialGauge::power(SmoothWeight w, double c) {
    if (!(c > 0.0 && c < 0.5))
        throw validation_error("power gauge: c must lie in (0, 1/2)");
    return RadialGauge(Kind::power, c, std::move(w));
}
RadialGauge RadialGauge::diophantine(SmoothWeight w, double a) {
    if (!(a >= 0.0)) throw validation_error("diophantine gauge: a must be >= 0");
    return RadialGauge(Kind::diophantine, a, std::move(w));
}
RadialGauge RadialGauge::exp_sqrt(SmoothWeight w, double c) {
    if (!(c > 0.0)) throw validation_error("exp_sqrt gauge: c must be positive");
    return RadialGauge(Kind::exp_sqrt, c, std::move(w));
}
RadialGauge RadialGauge::constant(double rho0) {
    if (!(rho0 > 0.0)) throw validation_error("constant gauge: rho0 must be positive");
    return RadialGauge(Kind::constant, rho0, std::nullopt);
}

RadialGauge::RadialGauge(Kind k, double p, std::optional<SmoothWeight> w)
    : kind_(k), param_(p), weight_(std::move(w)) {
    if (kind_ == Kind::constant) return;
    // Freeze the gauge below the radius where sigma reaches its floor
    // target.  The target also guarantees r/rho(r) is increasing beyond the
    // floor (the diophantine kind needs sigma > e^{a+1}), which the
    // geodesic solver relies on.
    double target = std::exp(1.0);
    if (kind_ == Kind::diophantine) target = std::exp(param_ + 1.0);
    double lo = 1.0, hi = 2.0;
    while (weight_->sigma(hi) <= target && hi < 1e12) hi *= 2.0;
    if (weight_->sigma(1.0 + 1e-12) > target) {
        r_floor_ = 1.0 + 1e-12;
    } else {
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            if (weight_->sigma(std::max(mid, 1.0 + 1e-12)) > target)
                hi = mid;
            else
                lo = mid;
            if (hi - lo < 1e-12 * hi) break;
        }
        r_floor_ = hi;
    }
}

const SmoothWeight& RadialGauge::weight() const {
    if (!weight_) throw validation_error("gauge: constant gauge carries no weight");
    return *weight_;
}

double RadialGauge::rho_clamped(double R) const {
    if (kind_ == Kind::constant) return param_;
    return rho(std::max(R, r_floor_));
}

double RadialGauge::rho(double R) const {
    if (kind_ == Kind::constant) return param_;
    if (!(R > 1.0)) throw validation_error("rho: R must exceed 1");
    double s = weight_->sigma(R);
    if (!(s > 1.0))
        throw validation_error("rho: gauge undefined where sigma(R) <= 1");
    switch (kind_) {
        case Kind::sqrt_log:
            return R * std::sqrt(std::log(s) / s);
        case Kind::power:
            return R * std::pow(s, -param_);
        case Kind::diophantine:
            return R / std::sqrt(s) * std::pow(std::log(s), 0.5 * (param_ + 1.0));
        case Kind::exp_sqrt:
            return R * std::exp(-param_ * std::sqrt(std::log(s)));
        default:
            return param_;
    }
}

double RadialGauge::rho_prime(double R) const {
    if (kind_ == Kind::constant) return 0.0;
    double h = 1e-4 * R;
    return (rho(R + h) - rho(R - h)) / (2.0 * h);
}

double RadialGauge::gauge_threshold(double r_lo, double r_hi) const {
    if (kind_ == Kind::constant) return 0.0;
    double r = r_lo;
    while (r < r_hi) {
        bool ok = true;
        for (double probe = r; probe <= std::min(r_hi, 4.0 * r); probe *= 1.25)
            if (std::abs(rho_prime(probe)) > 0.1) {
                ok = false;
                break;
            }
        if (ok) return r;
        r *= 1.25;
    }
    return r_hi;
}

double RadialGauge::segment_integral(cplx a, cplx b) const {
    double len = std::abs(b - a);
    if (len == 0.0) return 0.0;
    if (kind_ == Kind::constant) return len / param_;
    auto f = [&](double t) { return 1.0 / rho_clamped(std::abs(a + t * (b - a))); };
    return len * integrate_gk(f, 0.0, 1.0, 1e-10, 2000);
}

double RadialGauge::distance(cplx z1, cplx z2) const {
    if (z1 == z2) return 0.0;
    if (kind_ == Kind::constant)
        return std::abs(z1 - z2) / param_;  // straight segment is optimal

    double r1 = std::abs(z1), r2 = std::abs(z2);
    if (r1 > r2) std::swap(r1, r2);
    // Radial-line length between radii a <= b.
    auto radial_len = [&](double a, double b) {
        if (b <= a) return 0.0;
        return integrate_gk([&](double r) { return 1.0 / rho_clamped(r); }, a, b,
                            1e-10, 4000);
    };
    if (r2 == 0.0) return 0.0;
    if (r1 < 1e-12) return radial_len(0.0, r2);

    // Angular separation in radians, folded to [0, pi].
    double dphi = std::abs(std::arg(z1 * std::conj(z2)));
    if (dphi == 0.0) return radial_len(r1, r2);

    // Clairaut machinery for ds = |dw| / rho(|w|): along a geodesic,
    // c = f(r) sin(angle to the radial direction) is conserved, with
    // f(r) = r / rho(r) increasing past the gauge floor.
    auto f = [&](double r) { return r / rho_clamped(r); };
    auto root = [&](double r, double c) {
        double v = r * r - c * c * rho_clamped(r) * rho_clamped(r);
        return v > 0.0 ? std::sqrt(v) : 0.0;
    };
    // Leg integrals from a turning-or-lower endpoint a up to b, with the
    // substitution r = a + t^2 taming the inverse-sqrt turning singularity.
    auto leg_angle = [&](double a, double b, double c) {
        if (b <= a || c == 0.0) return 0.0;
        return integrate_gk(
            [&](double t) {
                double r = a + t * t;
                double s = root(r, c);
                if (s == 0.0) {
                    // Exactly at the turning point: series value of the
                    // substituted integrand.
                    double h = 1e-7 * std::max(a, 1.0);
                    s = root(a + h, c);
                    if (s == 0.0) return 0.0;
                    return 2.0 * std::sqrt(h) * c * rho_clamped(a + h) /
                           ((a + h) * s);
                }
                return 2.0 * t * c * rho_clamped(r) / (r * s);
            },
            0.0, std::sqrt(b - a), 1e-11, 4000);
    };
    auto leg_length = [&](double a, double b, double c) {
        if (b <= a) return 0.0;
        if (c == 0.0) return radial_len(a, b);
        return integrate_gk(
            [&](double t) {
                double r = a + t * t;
                double s = root(r, c);
                if (s == 0.0) {
                    double h = 1e-7 * std::max(a, 1.0);
                    s = root(a + h, c);
                    if (s == 0.0) return 0.0;
                    return 2.0 * std::sqrt(h) * (a + h) /
                           (rho_clamped(a + h) * s);
                }
                return 2.0 * t * r / (rho_clamped(r) * s);
            },
            0.0, std::sqrt(b - a), 1e-11, 4000);
    };

    double c_hi = f(r1) * (1.0 - 1e-14);
    double angle_mono = leg_angle(r1, r2, f(r1));
    double geo;
    if (dphi <= angle_mono) {
        // Radially monotone geodesic: bisect the Clairaut constant.
        double lo = 0.0, hi = c_hi;
        for (int i = 0; i < 100; ++i) {
            double mid = 0.5 * (lo + hi);
            if (leg_angle(r1, r2, mid) < dphi)
                lo = mid;
            else
                hi = mid;
            if (hi - lo <= 1e-13 * std::max(hi, 1.0)) break;
        }
        double c = 0.5 * (lo + hi);
        geo = leg_length(r1, r2, c);
    } else {
        // Inward-turning geodesic: turning radius r* with f(r*) = c.
        auto rstar_of = [&](double c) {
            double lo = 0.0, hi = r1;
            for (int i = 0; i < 100; ++i) {
                double mid = 0.5 * (lo + hi);
                if (f(mid) < c)
                    lo = mid;
                else
                    hi = mid;
                if (hi - lo <= 1e-14 * std::max(hi, 1.0)) break;
            }
            return 0.5 * (lo + hi);
        };
        auto turning_angle = [&](double c) {
            double rs = rstar_of(c);
            return leg_angle(rs, r1, c) + leg_angle(rs, r2, c);
        };
        double lo = 1e-14 * c_hi, hi = c_hi;
        for (int i = 0; i < 100; ++i) {
            double mid = 0.5 * (lo + hi);
            if (turning_angle(mid) > dphi)
                lo = mid;  // angle decreases as c grows
            else
                hi = mid;
            if (hi - lo <= 1e-13 * std::max(hi, 1.0)) break;
        }
        double c = 0.5 * (lo + hi);
        double rs = rstar_of(c);
        geo = leg_length(rs, r1, c) + leg_length(rs, r2, c);
    }
    // The straight segment is itself an admissible path; keep the minimum
    // as a guard against solver edge cases.
    return std::min(geo, segment_integral(z1, z2));
}

namespace {

// gamma of the origin-centered annulus [a, b] (clamped below at radius 1).
double gamma_annulus(const SmoothWeight& w, double a, double b) {
    a = std::max(a, 1.0);
    if (!(b > a)) return 0.0;
    return w.nu(b) - (a > 1.0 ? w.nu(a) : 0.0);
}

double sector_piece_mass(const SmoothWeight& w, double a, double b, double span) {
    a = std::max(a, 1.0);
    if (!(b > a) || span <= 0.0) return 0.0;
    return std::min(span, 1.0) * (w.nu(b) - (a > 1.0 ? w.nu(a) : 0.0));
}

}  // namespace

BoundaryMass boundary_neighborhood_mass(const RadialGauge& g, const SmoothWeight& w,
                                        const Contour& region, double tau) {
    if (!(tau > 0.0))
        throw validation_error("boundary_neighborhood_mass: tau must be positive");
    BoundaryMass out{};
    if (const auto* circ = std::get_if<CircleContour>(&region.shape)) {
        if (!(circ->r > 0.0))
            throw validation_error("boundary_neighborhood_mass: degenerate circle");
        double cr = std::abs(circ->center);
        if (cr < 1e-12) {
            double R = std::max(circ->r, 1.0 + 1e-9);
            double thick = 2.0 * tau * g.rho(R);
            out.mass = gamma_annulus(w, circ->r - thick, circ->r + thick);
            out.proxy = w.sigma(R) * g.rho(R) / R;
        } else {
            double local = std::max(cr, 1.0 + 1e-9);
            double thick = 2.0 * tau * g.rho(local);
            double inner = std::max(0.0, circ->r - thick);
            out.mass = w.gamma_disk(cr, circ->r + thick) -
                       (inner > 0.0 ? w.gamma_disk(cr, inner) : 0.0);
            out.proxy = w.sigma(local) * g.rho(local) / local * (circ->r / local);
        }
    } else {
        const auto& s = std::get<SectorContour>(region.shape);
        if (!(s.r2 > s.r1) || !(s.theta2 > s.theta1))
            throw validation_error("boundary_neighborhood_mass: degenerate sector");
        double span = s.theta2 - s.theta1;
        auto rho_at = [&](double r) { return g.rho(std::max(r, 1.0 + 1e-9)); };
        double th1 = 2.0 * tau * rho_at(s.r1);
        double th2 = 2.0 * tau * rho_at(s.r2);
        // Angular half-widths in turns for the radial edges.
        double ang1 = th1 / (two_pi * std::max(s.r1, 1.0));
        double ang2 = th2 / (two_pi * std::max(s.r2, 1.0));
        double ang = std::max(ang1, ang2);
        // Two arcs, thickened radially and extended angularly.
        double arcs = sector_piece_mass(w, s.r2 - th2, s.r2 + th2, span + 2.0 * ang) +
                      sector_piece_mass(w, s.r1 - th1, s.r1 + th1, span + 2.0 * ang);
        // Two radial edges, thickened angularly over the full radial range.
        double edges = 2.0 * sector_piece_mass(w, s.r1 - th1, s.r2 + th2, 2.0 * ang);
        // Corner rectangles counted by both an arc and an edge.
        double corners = 2.0 * (sector_piece_mass(w, s.r2 - th2, s.r2 + th2, 2.0 * ang) +
                                sector_piece_mass(w, s.r1 - th1, s.r1 + th1, 2.0 * ang));
        double full = span >= 1.0 - 1e-12
                          ? gamma_annulus(w, s.r1 - th1, s.r2 + th2)
                          : INFINITY;
        out.mass = std::min(std::max(arcs + edges - corners, std::max(arcs, edges)),
                            full);
        double sig = w.sigma(std::max(s.r2, 1.0 + 1e-9));
        out.proxy = sig * rho_at(s.r2) / s.r2;
    }
    double ref = std::max(out.proxy, 1e-300);
    out.proxy_flagged = out.mass / ref > 2.0 || out.mass / ref < 0.5;
    return out;
}

DiscrepancyReport equidist_report(const std::vector<ZeroCountReport>& counts,
                                  const RadialGauge& g, const SmoothWeight& w,
                                  double tau, double C) {
    DiscrepancyReport rep;
    rep.tau = tau;
    rep.C = C;
    rep.min_C = 0.0;
    rep.all_pass = true;
    for (const ZeroCountReport& zc : counts) {
        DiscrepancyRow row{};
        row.region = zc.region;
        row.count = zc.count;
        row.gamma = zc.gamma_mass;
        row.discrepancy = std::abs(static_cast<double>(zc.count) - zc.gamma_mass);
        row.boundary_mass = boundary_neighborhood_mass(g, w, zc.region, tau).mass;
        row.bound = C * row.boundary_mass;
        row.ratio = row.boundary_mass > 0.0 ? row.discrepancy / row.boundary_mass
                                            : INFINITY;
        row.pass = row.discrepancy <= row.bound;
        rep.min_C = std::max(rep.min_C, row.ratio);
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

void write_report_csv(const DiscrepancyReport& rep, std::ostream& os) {
    os << "kind,p1,p2,p3,p4,count,gamma,discrepancy,boundary_mass,bound,ratio,pass\n";
    char line[256];
    for (const DiscrepancyRow& r : rep.rows) {
        double p1 = 0, p2 = 0, p3 = 0, p4 = 0;
        const char* kind = "circle";
        if (const auto* c = std::get_if<CircleContour>(&r.region.shape)) {
            p1 = c->center.real();
            p2 = c->center.imag();
            p3 = c->r;
        } else {
            const auto& s = std::get<SectorContour>(r.region.shape);
            kind = "annulus_sector";
            p1 = s.r1;
            p2 = s.r2;
            p3 = s.theta1;
            p4 = s.theta2;
        }
        std::snprintf(line, sizeof(line),
                      "%s,%.17g,%.17g,%.17g,%.17g,%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                      kind, p1, p2, p3, p4, r.count, r.gamma, r.discrepancy,
                      r.boundary_mass, r.bound, r.ratio, r.pass ? 1 : 0);
        os << line;
    }
}

LatticeCheck gauss_lattice_check(const LatticeRegion& region) {
    LatticeCheck out{};
    const double rt2 = std::sqrt(2.0);
    if (const auto* d = std::get_if<LatticeDisk>(&region)) {
        if (!(d->r >= 0.0)) throw validation_error("lattice check: malformed disk");
        long long x0 = static_cast<long long>(std::ceil(d->cx - d->r));
        long long x1 = static_cast<long long>(std::floor(d->cx + d->r));
        long long count = 0;
        double r2 = d->r * d->r;
        for (long long x = x0; x <= x1; ++x) {
            double dx = static_cast<double>(x) - d->cx;
            double rem = r2 - dx * dx;
            if (rem < 0.0) continue;
            double w = std::sqrt(rem);
            long long y0 = static_cast<long long>(std::ceil(d->cy - w));
            long long y1 = static_cast<long long>(std::floor(d->cy + w));
            if (y1 >= y0) count += y1 - y0 + 1;
        }
        out.count = count;
        out.area = pi * r2;
        double inner = std::max(0.0, d->r - rt2);
        out.bound = pi * ((d->r + rt2) * (d->r + rt2) - inner * inner);
    } else {
        const auto& rc = std::get<LatticeRect>(region);
        if (!(rc.x2 >= rc.x1 && rc.y2 >= rc.y1))
            throw validation_error("lattice check: malformed rectangle");
        auto count_in = [](double a, double b) {
            // integers in [a, b)
            return static_cast<long long>(std::ceil(b)) -
                   static_cast<long long>(std::ceil(a));
        };
        out.count = count_in(rc.x1, rc.x2) * count_in(rc.y1, rc.y2);
        double w = rc.x2 - rc.x1, h = rc.y2 - rc.y1;
        out.area = w * h;
        double wi = std::max(0.0, w - 2.0 * rt2), hi = std::max(0.0, h - 2.0 * rt2);
        out.bound = (w + 2.0 * rt2) * (h + 2.0 * rt2) - wi * hi;
    }
    out.pass = std::abs(static_cast<double>(out.count) - out.area) <= out.bound;
    return out;
}

TransportReport transport_check(const TransportFamily& family,
                                const std::vector<LatticeDisk>& disks,
                                const RadialGauge& g, double tau_max, double tol) {
    if (disks.empty()) throw validation_error("transport_check: empty disk family");
    auto count_points = [&](const LatticeDisk& d) {
        if (family.counter) return family.counter(d);
        long long c = 0;
        for (const cplx& p : family.points) {
            double dx = p.real() - d.cx, dy = p.imag() - d.cy;
            if (dx * dx + dy * dy <= d.r * d.r) ++c;
        }
        return c;
    };
    auto enlarge = [&](const LatticeDisk& d, double tau) {
        double cr = std::hypot(d.cx, d.cy);
        double local = g.kind() == RadialGauge::Kind::constant
                           ? g.rho(0.0)
                           : g.rho(std::max(cr, 1.0 + 1e-9));
        LatticeDisk e = d;
        e.r += tau * local;
        return e;
    };
    auto passes = [&](double tau) {
        for (const LatticeDisk& d : disks) {
            LatticeDisk e = enlarge(d, tau);
            double cr = std::hypot(e.cx, e.cy);
            if (cr + e.r > family.domain_radius)
                throw coverage_error(
                    "transport_check: enlarged disk leaves the computed-point domain");
            double n_d = static_cast<double>(count_points(d));
            double n_e = static_cast<double>(count_points(e));
            double g_d = family.reference_mass(d);
            double g_e = family.reference_mass(e);
            if (n_d > g_e || g_d > n_e) return false;
        }
        return true;
    };
    TransportReport rep;
    rep.converged = false;
    if (!passes(tau_max)) {
        rep.min_tau = INFINITY;
        rep.notes.push_back("no tau <= tau_max satisfies both inequalities");
        return rep;
    }
    double lo = 0.0, hi = tau_max;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (passes(mid))
            hi = mid;
        else
            lo = mid;
    }
    rep.min_tau = hi;
    rep.converged = true;
    return rep;
}

}  // namespace zerolab
