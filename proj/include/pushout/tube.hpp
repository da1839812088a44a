#pragma once

#include <array>
#include <variant>

#include "pushout/focal.hpp"

namespace pushout {

// Fiber cross-section in base-frame coordinates.
struct FiberShape {
    struct Point {
        Eigen::Vector2d x = Eigen::Vector2d::Zero();
    };
    struct Circle {
        double radius = 1.0;
        Eigen::Vector2d center = Eigen::Vector2d::Zero();
    };
    struct Polygon {
        std::vector<Eigen::Vector2d> vertices;
    };

    std::variant<Point, Circle, Polygon> kind = Point{};
    int samples_around = defaults::kSamplesAround;

    void validate() const;  // throws BadSpec
    bool is_point() const { return std::holds_alternative<Point>(kind); }
    // boundary discretization; a Point yields its single location
    std::vector<Eigen::Vector2d> boundary_samples() const;
};

struct TubeMesh {
    Mat vertices;                             // dim x count
    std::vector<std::array<int, 4>> quads;    // ring-to-ring faces
    std::vector<std::array<int, 2>> segments; // polyline for point fibers
    int ring_size = 0;
    int rings = 0;
    int loops_used = 1;
    double closure_error = 0.0;
    double min_focal_margin = 0.0;
};

// Smallest signed clearance between the fiber boundary and the excluded
// lines: min over lines of (d - max over boundary samples of <x, u>).
// Negative values mean the fiber crosses a line.
double fiber_margin(const FiberShape& fiber, const std::vector<FocalLine>& lines);

// Smallest n >= 1 with g^n mapping the fiber onto itself within tol.
std::optional<int> holonomy_closure(const FiberShape& fiber, const Mat& g,
                                    double tol = defaults::kClosureTol,
                                    int n_max = defaults::kOrbitMax);

struct SweepOptions {
    std::optional<int> loops;  // default: holonomy_closure of the fiber
    int ring_stride = 1;       // use every k-th curve sample
    double closure_tol_scale = 1e-6;  // accepted closure error, relative to length
};

TubeMesh sweep_tube(const SampledCurve& curve, const FrameField& frames,
                    const FiberShape& fiber, const SweepOptions& options = {});

}  // namespace pushout
