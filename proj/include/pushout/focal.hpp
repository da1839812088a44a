#pragma once

#include "pushout/frame.hpp"

namespace pushout {

// One excluded affine hyperplane {x : <x, u> = d} in the base normal space,
// expressed in parallel-frame coordinates. d equals the radius of curvature
// at the source sample, so d > 0 always.
struct FocalLine {
    Vec u;                  // unit normal, k components
    double d = 0.0;         // offset, length units
    int source_sample = -1;
    long orbit_power = 0;
};

// Per-sample critical-normal hyperplanes. Samples whose curvature norm stays
// at or below kappa_min have their focal set at infinity and emit nothing.
std::vector<FocalLine> focal_lines(const SampledCurve& curve,
                                   const FrameField& frames,
                                   double kappa_min = defaults::kKappaMin);

// Images of the lines under the holonomy orbit. A normal x is excluded after
// m transits when <g^m x, u> = d, i.e. along the line with normal (g^T)^m u.
// Closed orbits enumerate m = 0..order-1, otherwise m = -n_truncate..n_truncate.
std::vector<FocalLine> orbit_lines(const std::vector<FocalLine>& lines,
                                   const Mat& g, std::optional<int> order,
                                   int n_truncate = defaults::kTruncate);

// Merges lines with |<u1,u2> - 1| < 1e-10 and |d1 - d2| < 1e-10 * max(d1,d2).
std::vector<FocalLine> dedup_lines(std::vector<FocalLine> lines);

// Drops lines that cannot reach the square window [-w, w]^2 (k = 2 only).
std::vector<FocalLine> filter_window(const std::vector<FocalLine>& lines,
                                     double w, double band);

// Keeps only the smallest offset within each fine direction quantum. Valid
// for intersection-of-half-planes queries, where larger parallel offsets are
// implied by smaller ones (k = 2 only).
std::vector<FocalLine> collapse_min_offset(const std::vector<FocalLine>& lines,
                                           double angle_quantum = 1e-7);

}  // namespace pushout
