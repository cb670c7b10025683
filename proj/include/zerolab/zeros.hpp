#pragma once

// Zero counting by the argument principle.  The core engine walks a
// closed sampled contour, unwrapping the phase of a user-supplied
// evaluation with local sample doubling until every step is below a
// quarter turn, and returns the exact integer winding.  Near-contour
// zeros are handled by deterministic radial perturbation, never ignored.

#include <functional>
#include <variant>
#include <vector>

#include "zerolab/common.hpp"
#include "zerolab/evaluator.hpp"

namespace zerolab {

struct CircleContour {
    cplx center;
    double r;
};
struct SectorContour {
    double r1, r2;          // 0 <= r1 < r2
    double theta1, theta2;  // turns, theta2 - theta1 <= 1
};

struct Contour {
    std::variant<CircleContour, SectorContour> shape;
    int min_samples = 256;
};

struct ZeroCountReport {
    Contour region;
    long long count = 0;
    double gamma_mass = 0.0;  // filled when the weight can supply it
    double min_boundary_modulus = 0.0;
    int refinement_depth = 0;
    long long samples_used = 0;
};

struct ZeroEnclosure {
    cplx center;
    double radius;
    long long multiplicity;
    bool unresolved = false;     // subdivision stalled on this cell
    bool straddles_edge = false; // cell meets the requested region boundary
};

// f evaluated on the closed curve; must be F(z) times any positive radial
// factor (the winding only reads arguments).
using ContourFn = std::function<cplx(double R, double theta_turns)>;

// Core engine: winding of f along the contour, with adaptive refinement
// and radial perturbation (factor 1 + 1e-6, up to 8 attempts).
ZeroCountReport winding_count_fn(const ContourFn& f, const Contour& contour);

// Spec-level wrappers around SeriesSpec::eval_for_winding.
ZeroCountReport winding_count(const SeriesSpec& spec, const Contour& contour);
// Adds gamma_mass of the enclosed region from the weight.
ZeroCountReport count_region(const SeriesSpec& spec, const Contour& region);

// Recursive subdivision until cells reach target_cell_diameter; returns
// disjoint enclosures whose multiplicities sum to the region count.
std::vector<ZeroEnclosure> localize_zeros_fn(const ContourFn& f,
                                             const Contour& region,
                                             double target_cell_diameter);
std::vector<ZeroEnclosure> localize_zeros(const SeriesSpec& spec,
                                          const Contour& region,
                                          double target_cell_diameter);

void write_zeros_csv(const std::vector<ZeroEnclosure>& zeros, std::ostream& os);

}  // namespace zerolab
