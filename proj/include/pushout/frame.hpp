#pragma once

#include <optional>

#include "pushout/curve.hpp"

namespace pushout {

// Parallel orthonormal normal frame along a curve. In frame coordinates the
// normal connection is the identity; the frame itself carries the transport.
struct FrameField {
    const SampledCurve* curve = nullptr;  // non-owning, must outlive the field
    Mat frames;                           // dim x (k * count), column blocks per sample
    int base_index = 0;
    int k = 0;

    int count() const { return k > 0 ? static_cast<int>(frames.cols()) / k : 0; }
    Eigen::Block<const Mat> at(int i) const {
        return frames.block(0, static_cast<Eigen::Index>(i) * k, frames.rows(), k);
    }
};

struct HolonomyResult {
    Mat g;                           // k x k, columns = transported frame in base coords
    std::optional<double> angle;     // radians in (-pi, pi], set when k = 2
    std::optional<int> orbit_order;  // smallest n with ||g^n - I|| < tolerance
    int n_max = defaults::kOrbitMax;
    double generator_tolerance = defaults::kClosureTol;
    bool open_trivial = false;       // set when an open curve was allowed through
};

// Deterministic frame at the base sample: Gram-Schmidt of the coordinate axes
// against the tangent, skipping the axis most parallel to it.
Mat initial_frame(const SampledCurve& curve, int base_index = 0);

// Discrete rotation-minimizing transport by the double-reflection method,
// equivalent to integrating V'(s) = -<V, T'(s)> T(s). Re-orthonormalizes
// every defaults::kRenormInterval steps.
FrameField transport_frame(const SampledCurve& curve, const Mat& frame0,
                           int base_index = 0);

HolonomyResult holonomy(const SampledCurve& curve, bool allow_open = false,
                        double closure_tol = defaults::kClosureTol,
                        int n_max = defaults::kOrbitMax);

// Smallest n in [1, n_max] with ||g^n - I||_F below closure_tol, or nullopt.
std::optional<int> orbit_order(const Mat& g, double closure_tol = defaults::kClosureTol,
                               int n_max = defaults::kOrbitMax);

// g^m for any integer m, re-orthonormalized every kPowerRenormInterval factors.
Mat orthogonal_power(const Mat& g, long m);

}  // namespace pushout
