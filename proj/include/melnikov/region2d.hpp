// 2D region integrals for the generic Lotka-Volterra cases
//   I(t) = iint_{Int delta(t)} |x|^(lambda-1) |y|^(mu-1) (m1 + m2/x + m3/y) dx dy
// and for the codimension-four family. Regions are sliced along x; each slice
// boundary comes from 1D root solves of H(x,.) = t around the fold curve, and
// the outer integral uses the same sine substitution as the 1D moments since
// slice mass vanishes like sqrt(distance) at the region's x-extremes.
#pragma once

#include "melnikov/cases.hpp"
#include "melnikov/engine.hpp"

#include <array>

namespace melnikov {

struct Region2DOptions {
    double abs_tol = 1e-7;       // outer target
    double inner_abs_tol = 1e-10;
    double endpoint_margin = 1e-6;
    bool allow_near_degenerate = false;
    int max_doublings = 12;
};

// H for the lv normal forms, modules applied outside the first quadrant
double lv_hamiltonian(CaseId c, double x, double y);

struct Point2 {
    double x;
    double y;
};

Point2 lv_center(CaseId c);
double lv_center_level(CaseId c);

// interior maximum (lv1) / minimum (lv2-lv5) of H over the admissible domain,
// located by Newton on grad log H from a coarse start
struct ExtremumResult {
    Point2 location;
    double value;
};
ExtremumResult lv_find_extremum(CaseId c);

// slice [y1,y2] of the region at abscissa x, empty if the slice misses it
struct Slice {
    bool empty = true;
    double y1 = 0;
    double y2 = 0;
};
Slice lv_slice(CaseId c, double t, double x);

std::array<ValueErr, 4> lv_generating_I_components(CaseId c, double t,
                                                   const Region2DOptions& opt = {});
ValueErr lv_generating_I(CaseId c, double t, const std::array<double, 4>& mu,
                         const Region2DOptions& opt = {});

// membership tests shared with the Monte-Carlo reference integrator
bool lv_region_contains(CaseId c, double t, double x, double y);
bool c4_region_contains(double b, double t, double x, double y);

// integrand value (the mu-weighted density) at a point of the region
double lv_region_integrand(CaseId c, const std::array<double, 4>& mu, double x, double y);
double c4_region_integrand(double b, const std::array<double, 4>& mu, double x, double y);

// x-extent of the region (fold-to-fold), used by the integrator and the MC box
struct RegionExtent {
    double x_min, x_max;
    double y_min, y_max;
};
RegionExtent lv_region_extent(CaseId c, double t);

// --- codimension four ---------------------------------------------------------

struct C4Spec {
    double b;                       // alpha = b + ic, |alpha| = 2, b in (-2,2)
    std::array<double, 4> mu{0, 0, 0, 0};
};

double c4_hamiltonian(double b, double x, double y);
AnnulusInterval c4_interval(double b);
Slice c4_slice(double b, double t, double x);
RegionExtent c4_region_extent(double b, double t);
ValueErr c4_generating_I(const C4Spec& spec, double t, const Region2DOptions& opt = {});

}  // namespace melnikov
