#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "pushout/defaults.hpp"
#include "pushout/errors.hpp"
#include "pushout/numeric.hpp"

namespace pushout {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// ---------------------------------------------------------------------------
// Curve specification

struct CurveSpec {
    struct TriCorner {};
    struct Sheared {
        double alpha = 0.5;  // shear angle, must lie in (0, pi/2)
    };
    struct Cover {
        std::shared_ptr<CurveSpec> base;
        int n = 2;
    };
    struct Spike {
        int n = 1;
        double spike_scale = defaults::kSpikeScale;
    };
    struct Circle {
        double radius = 1.0;
    };
    struct HelixSegment {
        double radius = 1.0;
        double pitch = 1.0;
        double turns = 1.0;
    };
    struct Imported {
        std::vector<Vec> points;
        bool closed = false;
    };

    using Family = std::variant<TriCorner, Sheared, Cover, Spike, Circle,
                                HelixSegment, Imported>;

    Family family = TriCorner{};
    int ambient_dim = 3;
    int samples = defaults::kSamples;

    void validate() const;  // throws BadSpec
};

// ---------------------------------------------------------------------------
// Sampled curve

struct SampledCurve {
    Eigen::ArrayXd s;   // arc length values, strictly increasing, s[0] = 0
    Mat position;       // dim x count
    Mat tangent;        // dim x count, unit columns
    Mat curvature;      // dim x count, dT/ds
    bool closed = false;
    double total_length = 0.0;

    int dim() const { return static_cast<int>(position.rows()); }
    int count() const { return static_cast<int>(position.cols()); }
    // closed curves carry a duplicate of the first sample at the end
    int unique() const { return closed ? count() - 1 : count(); }
};

// ---------------------------------------------------------------------------
// Analytic parametric layer. build_curve samples these; tests use them as
// exact references.

class ParametricCurve {
public:
    virtual ~ParametricCurve() = default;
    virtual int dim() const = 0;
    virtual double t_end() const = 0;  // domain is [0, t_end]
    virtual bool closed() const = 0;
    virtual Vec position(double t) const = 0;
    virtual Vec velocity(double t) const = 0;
    // quadrature segment boundaries (parameter values); the integrand is
    // smooth strictly inside each segment
    virtual std::vector<double> breakpoints() const {
        return {0.0, t_end()};
    }
};

std::shared_ptr<const ParametricCurve> make_parametric(const CurveSpec& spec);

// Arc length over a parametric curve with Newton inversion per segment.
class ArcLength {
public:
    ArcLength() = default;
    ArcLength(std::shared_ptr<const ParametricCurve> curve, int panels_per_segment = 256);

    double total() const { return total_; }
    double min_speed() const { return min_speed_; }
    double value(double t) const;   // arc length at parameter t
    double invert(double s) const;  // parameter at arc length s

private:
    std::shared_ptr<const ParametricCurve> curve_;
    std::vector<CumulativeIntegral> segments_;
    std::vector<double> seg_begin_;      // parameter at segment starts
    std::vector<double> arc_prefix_;     // arc length at segment starts
    double total_ = 0.0;
    double min_speed_ = 0.0;
};

// ---------------------------------------------------------------------------
// Planar piece with flat tangent-line contact at both ends.
//
// Tangent angle  psi(t) = psi0 + turn * u + shape_a * u * (1 - u),
// parametric speed  v(t) = speed_scale * (1 + shape_b * flat_bump(t)),
// with u = flat_step(t). Both are constant to all orders at t = 0, 1, so the
// piece meets its endpoint tangent lines with C-infinity contact.
struct PlanarPiece {
    Vec plane_origin;
    Mat plane_basis;  // dim x 2, orthonormal columns
    Eigen::Vector2d start, end, start_dir, end_dir;
    double psi0 = 0.0;
    double turn = 0.0;                     // net tangent-angle change
    double shape_a = 0.0, shape_b = 0.0;   // shooting parameters
    double speed_scale = 1.0;
    double residual = 0.0;                 // endpoint error of the solve

    double psi(double t) const {
        const double u = flat_step(t);
        return psi0 + turn * u + shape_a * u * (1.0 - u);
    }
    double speed(double t) const {
        return speed_scale * (1.0 + shape_b * flat_bump(t));
    }
    Eigen::Vector2d pos2(double t) const {
        return {start.x() + cx_.value(t), start.y() + cy_.value(t)};
    }
    Eigen::Vector2d vel2(double t) const {
        const double p = psi(t), v = speed(t);
        return {v * std::cos(p), v * std::sin(p)};
    }
    Vec pos3(double t) const { return plane_origin + plane_basis * pos2(t); }
    Vec vel3(double t) const { return plane_basis * vel2(t); }

    void build_tables(int panels = 256);

private:
    CumulativeIntegral cx_, cy_;
};

// Solves (shape_a, shape_b) so the integrated displacement hits `end`.
// `turn` defaults to the principal angle between the direction vectors minus
// one full clockwise revolution, which keeps the tangent angle monotone for
// the corner pieces used here.
PlanarPiece solve_planar_piece(const Eigen::Vector2d& start,
                               const Eigen::Vector2d& end,
                               const Eigen::Vector2d& start_dir,
                               const Eigen::Vector2d& end_dir,
                               const Vec& plane_origin, const Mat& plane_basis,
                               std::optional<double> turn = {});

// ---------------------------------------------------------------------------
// Operations

SampledCurve build_curve(const CurveSpec& spec);

// dT/ds at sample i by 4th-order finite differences on the uniform arc-length
// grid; wraps around for closed curves, one-sided stencils at open ends.
Vec curvature_vector(const SampledCurve& curve, int i);

double min_curvature_radius(const SampledCurve& curve,
                            double kappa_min = defaults::kKappaMin);

// The canonical corner piece in its plane: (1,0) with direction +x to (0,1)
// with direction +y. Shared by the three corner-curve pieces; solved once.
const PlanarPiece& corner_piece();

}  // namespace pushout
