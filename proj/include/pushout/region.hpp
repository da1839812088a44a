#pragma once

#include <cstdint>

#include "pushout/focal.hpp"

namespace pushout {

// Radial support description of the path-connected component of the
// complement containing the origin: the intersection of the open half-planes
// <x, u_i> < d_i. rho may be +infinity where no line constrains a direction.
struct SupportPolygon {
    Eigen::ArrayXd thetas;  // uniform grid over [0, 2*pi)
    Eigen::ArrayXd rho;     // support radius per theta
    Mat vertices;           // 2 x n_finite, finite entries only

    double min_rho() const;
};

SupportPolygon central_region(const std::vector<FocalLine>& lines,
                              int n_theta = defaults::kThetaSamples);

struct ComponentStats {
    int cell_count = 0;
    double area = 0.0;
    double convexity_defect = 0.0;      // hull area / cell area - 1
    double max_inscribed_radius = 0.0;
    bool touches_window_edge = false;
    bool contains_origin = false;
};

struct PushoutRaster {
    double window = 0.0;   // half-width W; cells cover [-W, W]^2
    int resolution = 0;    // N cells per side
    double band = 0.0;     // exclusion half-width around each line
    std::vector<std::uint8_t> excluded;  // N*N row-major, index iy*N+ix
    std::vector<int> component;          // -1 for excluded cells
    std::vector<ComponentStats> components;
    bool window_too_small = false;

    double cell_size() const { return 2.0 * window / resolution; }
    double center_coord(int idx) const {
        return -window + (idx + 0.5) * cell_size();
    }
    bool excluded_at(int ix, int iy) const {
        return excluded[static_cast<std::size_t>(iy) * resolution + ix] != 0;
    }
};

// Cell centers within `band` of any line are excluded; components of the
// complement by 4-connected flood fill (excluded bands are 8-connected, so
// the complement cannot leak across crossings).
PushoutRaster raster_pushout(const std::vector<FocalLine>& lines, double w,
                             int n, double band);

// Fraction of cells whose excluded flag differs; grids must match exactly.
double compare_rasters(const PushoutRaster& a, const PushoutRaster& b);

struct ComponentVerdict {
    ComponentStats stats;
    bool convex = false;           // defect <= 0.05
    double openness_proxy = 0.0;   // max inscribed radius relative to band
};

std::vector<ComponentVerdict> component_report(const PushoutRaster& raster);

// Largest distance from one point set to the other, both directions.
double hausdorff_distance(const Mat& a, const Mat& b);

}  // namespace pushout
