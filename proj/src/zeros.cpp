#include "zerolab/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace zerolab {

namespace {

constexpr double kQuarterTurn = 0.25;
constexpr double kModulusFloor = 1e-12;
constexpr int kMaxPerturb = 8;
constexpr int kMaxDepth = 40;

struct WalkState {
    const ContourFn* f;
    double min_abs = INFINITY;
    double max_abs = 0.0;
    long long samples = 0;
    int depth_used = 0;
};

// Principal phase difference in turns, in (-1/2, 1/2].
double principal_diff(cplx a, cplx b) {
    return std::arg(b * std::conj(a)) / two_pi;
}

struct Leg {
    // Maps u in [0,1] to a point of the curve.
    std::function<std::pair<double, double>(double)> at;  // (R, theta)
    int initial;
};

cplx eval_leg(const Leg& leg, double u, WalkState& st) {
    auto [R, th] = leg.at(u);
    cplx v = (*st.f)(R, th);
    double a = std::abs(v);
    st.min_abs = std::min(st.min_abs, a);
    st.max_abs = std::max(st.max_abs, a);
    ++st.samples;
    return v;
}

double walk_segment(const Leg& leg, double u0, cplx v0, double u1, cplx v1,
                    int depth, WalkState& st) {
    double d = principal_diff(v0, v1);
    if (std::abs(d) < kQuarterTurn) {
        st.depth_used = std::max(st.depth_used, depth);
        return d;
    }
    if (depth >= kMaxDepth)
        throw on_contour_zero_error(
            "winding: phase step would not resolve; zero on or near the contour");
    double um = 0.5 * (u0 + u1);
    cplx vm = eval_leg(leg, um, st);
    return walk_segment(leg, u0, v0, um, vm, depth + 1, st) +
           walk_segment(leg, um, vm, u1, v1, depth + 1, st);
}

// Winding of one closed loop described by consecutive legs.
double walk_loop(const std::vector<Leg>& legs, WalkState& st) {
    // Sample leg endpoints jointly so the loop closes exactly.
    kahan<double> total;
    std::vector<std::vector<std::pair<double, cplx>>> pts(legs.size());
    for (std::size_t li = 0; li < legs.size(); ++li) {
        const Leg& leg = legs[li];
        int n = std::max(2, leg.initial);
        pts[li].reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {  // skip u=1: next leg starts there
            double u = static_cast<double>(i) / n;
            pts[li].push_back({u, eval_leg(leg, u, st)});
        }
    }
    for (std::size_t li = 0; li < legs.size(); ++li) {
        const Leg& leg = legs[li];
        auto& p = pts[li];
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            total.add(walk_segment(leg, p[i].first, p[i].second, p[i + 1].first,
                                   p[i + 1].second, 0, st));
        // Close the leg against the first sample of the next leg, which is
        // the same geometric point evaluated through the next leg's map.
        const auto& q = pts[(li + 1) % legs.size()].front();
        total.add(walk_segment(leg, p.back().first, p.back().second, 1.0,
                               q.second, 0, st));
    }
    return total.value();
}

Contour perturbed(const Contour& c, int attempt) {
    if (attempt == 0) return c;
    double factor = std::pow(1.0 + 1e-6, attempt);
    Contour out = c;
    if (auto* circ = std::get_if<CircleContour>(&out.shape)) {
        circ->r *= factor;
    } else {
        auto& sec = std::get<SectorContour>(out.shape);
        sec.r1 *= factor;
        sec.r2 *= factor;
    }
    return out;
}

std::vector<Leg> contour_legs(const Contour& c) {
    std::vector<Leg> legs;
    int n = std::max(8, c.min_samples);
    if (const auto* circ = std::get_if<CircleContour>(&c.shape)) {
        CircleContour cc = *circ;
        if (!(cc.r > 0.0)) throw validation_error("contour: circle radius must be positive");
        legs.push_back(Leg{[cc](double u) {
                               cplx z = cc.center + cc.r * unit_phase(u);
                               return std::make_pair(std::abs(z),
                                                     std::arg(z) / two_pi);
                           },
                           n});
        return legs;
    }
    const auto& s = std::get<SectorContour>(c.shape);
    if (!(s.r2 > s.r1 && s.r1 >= 0.0))
        throw validation_error("contour: sector needs 0 <= r1 < r2");
    double span = s.theta2 - s.theta1;
    if (!(span > 0.0 && span <= 1.0))
        throw validation_error("contour: sector span must lie in (0, 1]");
    int n_arc_out = std::max(8, static_cast<int>(n * 3.0 / 8.0));
    int n_arc_in = std::max(8, static_cast<int>(n * 2.0 / 8.0));
    int n_rad = std::max(8, static_cast<int>(n * 1.5 / 8.0));
    double r1 = s.r1, r2 = s.r2, t1 = s.theta1, t2 = s.theta2;
    legs.push_back(Leg{[r2, t1, span](double u) {
                           return std::make_pair(r2, t1 + span * u);
                       },
                       n_arc_out});
    legs.push_back(Leg{[r1, r2, t2](double u) {
                           return std::make_pair(r2 + (r1 - r2) * u, t2);
                       },
                       n_rad});
    legs.push_back(Leg{[r1, t2, span](double u) {
                           return std::make_pair(r1, t2 - span * u);
                       },
                       n_arc_in});
    legs.push_back(Leg{[r1, r2, t1](double u) {
                           return std::make_pair(r1 + (r2 - r1) * u, t1);
                       },
                       n_rad});
    if (r1 == 0.0) {  // inner arc degenerates to the origin
        legs.erase(legs.begin() + 2);
    }
    return legs;
}

ZeroCountReport run_winding(const ContourFn& f, const Contour& contour) {
    for (int attempt = 0; attempt <= kMaxPerturb; ++attempt) {
        Contour c = perturbed(contour, attempt);
        WalkState st;
        st.f = &f;
        double total;
        try {
            total = walk_loop(contour_legs(c), st);
        } catch (const on_contour_zero_error&) {
            if (attempt == kMaxPerturb) throw;
            continue;
        }
        if (st.min_abs < kModulusFloor * std::max(1.0, st.max_abs)) {
            if (attempt == kMaxPerturb)
                throw on_contour_zero_error(
                    "winding: contour modulus below threshold after radial perturbation");
            continue;
        }
        long long count = std::llround(total);
        if (std::abs(total - static_cast<double>(count)) > 0.01)
            throw numeric_error("winding: phase sum " + std::to_string(total) +
                                " is not an integer; sampling unresolved");
        ZeroCountReport rep;
        rep.region = contour;
        rep.count = count;
        rep.min_boundary_modulus = st.min_abs;
        rep.refinement_depth = st.depth_used;
        rep.samples_used = st.samples;
        return rep;
    }
    throw on_contour_zero_error("winding: unreachable");
}

// Initial sampling hint from the weight: the normalized series oscillates
// at angular scale ~1/nu, and along radii at scale ~r/sqrt(sigma).
int sampling_hint(const SeriesSpec& spec, const Contour& c) {
    const SmoothWeight& w = spec.weight();
    auto nu_of = [&](double r) { return r > 1.0 ? w.nu(r) : 0.0; };
    auto sig_of = [&](double r) { return r > 1.0 ? w.sigma(r) : 1.0; };
    double est = 0.0;
    if (const auto* circ = std::get_if<CircleContour>(&c.shape)) {
        double cr = std::abs(circ->center);
        if (cr < 1e-9) {
            est = 8.0 * nu_of(circ->r);
        } else {
            double rmax = cr + circ->r;
            double gamma_est = sig_of(cr) * circ->r * circ->r / (2.0 * cr * cr);
            double wiggle = 0.4 * circ->r * std::sqrt(sig_of(rmax)) /
                            std::max(1.0, cr - circ->r);
            est = 8.0 * (gamma_est + wiggle + 4.0);
        }
    } else {
        const auto& s = std::get<SectorContour>(c.shape);
        double span = s.theta2 - s.theta1;
        double radial = 0.4 * std::sqrt(sig_of(s.r2)) * (s.r2 - s.r1) /
                        std::max(1.0, s.r1);
        est = 8.0 * ((nu_of(s.r2) + nu_of(s.r1)) * span + 2.0 * radial + 4.0);
    }
    est = std::min(est, 2.0e6);
    return std::max(c.min_samples, static_cast<int>(std::ceil(est)));
}

bool full_span(const SectorContour& s) {
    return std::abs((s.theta2 - s.theta1) - 1.0) < 1e-15;
}

}  // namespace

ZeroCountReport winding_count_fn(const ContourFn& f, const Contour& contour) {
    if (const auto* s = std::get_if<SectorContour>(&contour.shape)) {
        if (s->theta1 == s->theta2 || s->r1 == s->r2) {  // zero-area region
            ZeroCountReport rep;
            rep.region = contour;
            return rep;
        }
        if (full_span(*s)) {
            Contour outer{CircleContour{0.0, s->r2}, contour.min_samples};
            ZeroCountReport rep = run_winding(f, outer);
            if (s->r1 > 0.0) {
                Contour inner{CircleContour{0.0, s->r1}, contour.min_samples};
                ZeroCountReport in = run_winding(f, inner);
                rep.count -= in.count;
                rep.min_boundary_modulus =
                    std::min(rep.min_boundary_modulus, in.min_boundary_modulus);
                rep.refinement_depth = std::max(rep.refinement_depth, in.refinement_depth);
                rep.samples_used += in.samples_used;
            }
            rep.region = contour;
            return rep;
        }
    }
    return run_winding(f, contour);
}

ZeroCountReport winding_count(const SeriesSpec& spec, const Contour& contour) {
    Contour c = contour;
    c.min_samples = sampling_hint(spec, contour);
    ContourFn f = [&spec](double R, double th) {
        return spec.eval_for_winding(R, th);
    };
    ZeroCountReport rep = winding_count_fn(f, c);
    rep.region = contour;
    return rep;
}

ZeroCountReport count_region(const SeriesSpec& spec, const Contour& region) {
    ZeroCountReport rep = winding_count(spec, region);
    const SmoothWeight& w = spec.weight();
    if (const auto* circ = std::get_if<CircleContour>(&region.shape)) {
        rep.gamma_mass = w.gamma_disk(std::abs(circ->center), circ->r);
    } else {
        const auto& s = std::get<SectorContour>(region.shape);
        double lo = std::max(1.0, s.r1), hi = std::max(1.0, s.r2);
        rep.gamma_mass = (hi > lo)
                             ? w.gamma_mass(AnnulusSector{lo, hi, s.theta1, s.theta2})
                             : 0.0;
    }
    return rep;
}

namespace {

struct Cell {
    Contour contour;
    long long count;
};

double cell_diameter(const Contour& c) {
    if (const auto* circ = std::get_if<CircleContour>(&c.shape)) return 2.0 * circ->r;
    const auto& s = std::get<SectorContour>(c.shape);
    double span = s.theta2 - s.theta1;
    double chord = 2.0 * s.r2 * std::sin(std::min(0.5, span) * pi);
    return std::hypot(s.r2 - s.r1, chord);
}

cplx cell_center(const Contour& c) {
    if (const auto* circ = std::get_if<CircleContour>(&c.shape)) return circ->center;
    const auto& s = std::get<SectorContour>(c.shape);
    return 0.5 * (s.r1 + s.r2) * unit_phase(0.5 * (s.theta1 + s.theta2));
}

// Subdivide a cell into disjoint children.  Origin disks peel an annulus;
// sectors split in r and theta.  split in (0,1) allows nudging the cut
// when a zero sits on an internal edge.
std::vector<Contour> split_cell(const Contour& c, double split) {
    std::vector<Contour> out;
    int child_n = std::max(64, c.min_samples / 2);
    if (const auto* circ = std::get_if<CircleContour>(&c.shape)) {
        double r = circ->r;
        out.push_back({CircleContour{circ->center, r * split}, child_n});
        out.push_back({SectorContour{r * split, r, 0.0, 1.0}, child_n});
        return out;
    }
    const auto& s = std::get<SectorContour>(c.shape);
    double rm = s.r1 + (s.r2 - s.r1) * split;
    double tm = s.theta1 + (s.theta2 - s.theta1) * split;
    out.push_back({SectorContour{s.r1, rm, s.theta1, tm}, child_n});
    out.push_back({SectorContour{s.r1, rm, tm, s.theta2}, child_n});
    out.push_back({SectorContour{rm, s.r2, s.theta1, tm}, child_n});
    out.push_back({SectorContour{rm, s.r2, tm, s.theta2}, child_n});
    return out;
}

void subdivide(const ContourFn& f, const Cell& cell, double target,
               std::vector<ZeroEnclosure>& out) {
    if (cell.count == 0) return;
    if (cell_diameter(cell.contour) <= target) {
        out.push_back({cell_center(cell.contour), 0.5 * cell_diameter(cell.contour),
                       cell.count, false, false});
        return;
    }
    const double splits[] = {0.5, 0.502, 0.498, 0.504, 0.496, 0.51, 0.49};
    for (double split : splits) {
        std::vector<Contour> children = split_cell(cell.contour, split);
        std::vector<Cell> counted;
        counted.reserve(children.size());
        long long sum = 0;
        bool ok = true;
        for (const Contour& ch : children) {
            try {
                ZeroCountReport r = winding_count_fn(f, ch);
                counted.push_back({ch, r.count});
                sum += r.count;
            } catch (const on_contour_zero_error&) {
                ok = false;
                break;
            }
        }
        // A mismatch means a zero sat close enough to an internal edge that
        // the perturbed child contours moved it; nudge the cut and retry.
        if (!ok || sum != cell.count) continue;
        for (const Cell& ch : counted) subdivide(f, ch, target, out);
        return;
    }
    // Every split position hit a zero on an internal edge: report the cell
    // unresolved rather than guessing.
    out.push_back({cell_center(cell.contour), 0.5 * cell_diameter(cell.contour),
                   cell.count, true, false});
}

}  // namespace

std::vector<ZeroEnclosure> localize_zeros_fn(const ContourFn& f,
                                             const Contour& region,
                                             double target_cell_diameter) {
    if (!(target_cell_diameter > 0.0))
        throw validation_error("localize_zeros: target diameter must be positive");
    ZeroCountReport top = winding_count_fn(f, region);
    if (top.count > 10000)
        throw capacity_error("localize_zeros: region holds more than 1e4 zeros");

    const auto* circ = std::get_if<CircleContour>(&region.shape);
    bool offset_disk = circ && std::abs(circ->center) > 1e-9;
    Contour work = region;
    if (offset_disk) {
        // Localize over a bounding region, then filter by membership.
        double cr = std::abs(circ->center);
        double tc = std::arg(circ->center) / two_pi;
        if (cr > circ->r) {
            double half = std::asin(std::min(1.0, circ->r / cr)) / two_pi;
            work = Contour{SectorContour{cr - circ->r, cr + circ->r,
                                         tc - half, tc + half},
                           region.min_samples};
        } else {
            work = Contour{CircleContour{0.0, cr + circ->r}, region.min_samples};
        }
    }
    ZeroCountReport base = winding_count_fn(f, work);
    std::vector<ZeroEnclosure> out;
    subdivide(f, {work, base.count}, target_cell_diameter, out);
    if (offset_disk) {
        std::vector<ZeroEnclosure> kept;
        for (ZeroEnclosure& z : out) {
            double dist = std::abs(z.center - circ->center);
            if (std::abs(dist - circ->r) <= z.radius) z.straddles_edge = true;
            if (dist <= circ->r || z.straddles_edge) kept.push_back(z);
        }
        out = std::move(kept);
    }
    long long sum = 0;
    bool any_flag = false;
    for (const ZeroEnclosure& z : out) {
        sum += z.multiplicity;
        any_flag = any_flag || z.unresolved || z.straddles_edge;
    }
    if (sum != top.count && !any_flag)
        throw numeric_error("localize_zeros: enclosure multiplicities sum to " +
                            std::to_string(sum) + ", region count is " +
                            std::to_string(top.count));
    return out;
}

std::vector<ZeroEnclosure> localize_zeros(const SeriesSpec& spec,
                                          const Contour& region,
                                          double target_cell_diameter) {
    Contour c = region;
    c.min_samples = sampling_hint(spec, region);
    ContourFn f = [&spec](double R, double th) {
        return spec.eval_for_winding(R, th);
    };
    return localize_zeros_fn(f, c, target_cell_diameter);
}

void write_zeros_csv(const std::vector<ZeroEnclosure>& zeros, std::ostream& os) {
    os << "re,im,multiplicity,enclosure_radius\n";
    char line[128];
    for (const ZeroEnclosure& z : zeros) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%lld,%.17g\n",
                      z.center.real(), z.center.imag(), z.multiplicity, z.radius);
        os << line;
    }
}

}  // namespace zerolab
