#include "pushout/tube.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pushout {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// segments cross iff the endpoints straddle each other's supporting lines
bool segments_intersect(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                        const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
    auto orient = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q,
                     const Eigen::Vector2d& r) {
        const double v = (q.x() - p.x()) * (r.y() - p.y()) -
                         (q.y() - p.y()) * (r.x() - p.x());
        return (v > 0) - (v < 0);
    };
    return orient(a, b, c) != orient(a, b, d) &&
           orient(c, d, a) != orient(c, d, b);
}

}  // namespace

void FiberShape::validate() const {
    if (samples_around < 3) throw BadSpec("fiber needs at least 3 boundary samples");
    if (const auto* circle = std::get_if<Circle>(&kind)) {
        if (!(circle->radius > 0.0)) throw BadSpec("fiber circle radius must be positive");
    } else if (const auto* poly = std::get_if<Polygon>(&kind)) {
        const auto& v = poly->vertices;
        if (v.size() < 3) throw BadSpec("fiber polygon needs at least 3 vertices");
        const int m = static_cast<int>(v.size());
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                if (j == i || (j + 1) % m == i || (i + 1) % m == j) continue;
                if (segments_intersect(v[i], v[(i + 1) % m], v[j], v[(j + 1) % m]))
                    throw BadSpec("fiber polygon must be simple");
            }
        }
    }
}

std::vector<Eigen::Vector2d> FiberShape::boundary_samples() const {
    validate();
    std::vector<Eigen::Vector2d> out;
    if (const auto* point = std::get_if<Point>(&kind)) {
        out.push_back(point->x);
    } else if (const auto* circle = std::get_if<Circle>(&kind)) {
        out.reserve(samples_around);
        for (int i = 0; i < samples_around; ++i) {
            const double phi = 2.0 * std::numbers::pi * i / samples_around;
            out.push_back(circle->center +
                          circle->radius * Eigen::Vector2d(std::cos(phi), std::sin(phi)));
        }
    } else {
        const auto& v = std::get<Polygon>(kind).vertices;
        const int m = static_cast<int>(v.size());
        const int per_edge = std::max(1, samples_around / m);
        out.reserve(static_cast<std::size_t>(per_edge) * m);
        for (int i = 0; i < m; ++i) {
            const Eigen::Vector2d& a = v[i];
            const Eigen::Vector2d& b = v[(i + 1) % m];
            for (int j = 0; j < per_edge; ++j)
                out.push_back(a + (b - a) * (static_cast<double>(j) / per_edge));
        }
    }
    return out;
}

double fiber_margin(const FiberShape& fiber, const std::vector<FocalLine>& lines) {
    double margin = kInf;
    if (const auto* circle = std::get_if<FiberShape::Circle>(&fiber.kind)) {
        for (const auto& line : lines) {
            const Eigen::Vector2d u(line.u[0], line.u[1]);
            margin = std::min(margin,
                              line.d - (circle->center.dot(u) + circle->radius));
        }
        return margin;
    }
    const auto samples = fiber.boundary_samples();
    for (const auto& line : lines) {
        const Eigen::Vector2d u(line.u[0], line.u[1]);
        double reach = -kInf;
        for (const auto& x : samples) reach = std::max(reach, x.dot(u));
        margin = std::min(margin, line.d - reach);
    }
    return margin;
}

std::optional<int> holonomy_closure(const FiberShape& fiber, const Mat& g,
                                    double tol, int n_max) {
    if (g.rows() != 2 || g.cols() != 2)
        throw BadSpec("fiber closure works in the plane");
    if ((g.transpose() * g - Mat::Identity(2, 2)).norm() > 1e-8)
        throw BadSpec("fiber closure needs an orthogonal matrix");

    const Eigen::Matrix2d rot = g;
    auto maps_to_itself = [&](const Eigen::Matrix2d& power) {
        if (const auto* point = std::get_if<FiberShape::Point>(&fiber.kind))
            return (power * point->x - point->x).norm() < tol;
        if (const auto* circle = std::get_if<FiberShape::Circle>(&fiber.kind))
            return (power * circle->center - circle->center).norm() < tol;
        const auto& v = std::get<FiberShape::Polygon>(fiber.kind).vertices;
        std::vector<bool> used(v.size(), false);
        for (const auto& p : v) {
            const Eigen::Vector2d q = power * p;
            bool found = false;
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (used[j]) continue;
                if ((q - v[j]).norm() < tol) {
                    used[j] = true;
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    };

    Eigen::Matrix2d power = rot;
    for (int m = 1; m <= n_max; ++m) {
        if (maps_to_itself(power)) return m;
        power = power * rot;
    }
    return std::nullopt;
}

TubeMesh sweep_tube(const SampledCurve& curve, const FrameField& frames,
                    const FiberShape& fiber, const SweepOptions& options) {
    if (frames.curve != &curve)
        throw BadSpec("frame field was built over a different curve");
    if (curve.dim() != 3 || frames.k != 2)
        throw BadSpec("tube sweeps need a 2-dimensional normal space");
    fiber.validate();

    const int stride = std::max(1, options.ring_stride);
    const int n_unique = curve.unique();

    // once-around holonomy in base-frame coordinates
    Mat g = Mat::Identity(2, 2);
    if (curve.closed)
        g = Mat(frames.at(0).transpose() * frames.at(frames.count() - 1));

    int loops = 1;
    if (options.loops) {
        loops = *options.loops;
        if (loops < 1) throw BadSpec("loop count must be positive");
    } else if (curve.closed) {
        const auto closure = holonomy_closure(fiber, g);
        if (!closure)
            throw NotClosedError("fiber orbit does not close; pass loops explicitly");
        loops = *closure;
    }
    if (!curve.closed) loops = 1;

    // the fiber must clear every line met along the sweep
    auto lines = dedup_lines(focal_lines(curve, frames));
    std::vector<FocalLine> swept;
    if (curve.closed && loops > 1) {
        for (int m = 0; m < loops; ++m) {
            const Mat gm = orthogonal_power(Mat(g.transpose()), m);
            for (const auto& line : lines) {
                FocalLine image = line;
                image.u = gm * line.u;
                image.orbit_power = m;
                swept.push_back(std::move(image));
            }
        }
        swept = dedup_lines(std::move(swept));
    } else {
        swept = lines;
    }
    const double margin = fiber_margin(fiber, swept);
    if (margin <= 0.0)
        throw InvalidFiber("fiber crosses the critical-normal lines");

    const auto boundary = fiber.boundary_samples();
    const int ring_size = static_cast<int>(boundary.size());
    const bool point_fiber = fiber.is_point();

    TubeMesh mesh;
    mesh.ring_size = ring_size;
    mesh.loops_used = loops;
    mesh.min_focal_margin = margin;

    // ring sample indices along one traversal
    std::vector<int> ring_samples;
    if (curve.closed) {
        for (int i = 0; i < n_unique; i += stride) ring_samples.push_back(i);
    } else {
        for (int i = 0; i < curve.count(); i += stride) ring_samples.push_back(i);
        if (ring_samples.back() != curve.count() - 1)
            ring_samples.push_back(curve.count() - 1);
    }
    const int rings_per_loop = static_cast<int>(ring_samples.size());
    const int total_rings = curve.closed ? rings_per_loop * loops
                                         : rings_per_loop;
    mesh.rings = total_rings;

    mesh.vertices.resize(3, static_cast<Eigen::Index>(total_rings) * ring_size);
    std::vector<Eigen::Matrix2d> loop_power(loops);
    for (int m = 0; m < loops; ++m)
        loop_power[m] = orthogonal_power(g, m);

    for (int r = 0; r < total_rings; ++r) {
        const int loop_index = r / rings_per_loop;
        const int i = ring_samples[r % rings_per_loop];
        const auto frame = frames.at(i);
        const Vec base = curve.position.col(i);
        for (int j = 0; j < ring_size; ++j) {
            const Eigen::Vector2d x = curve.closed
                                          ? Eigen::Vector2d(loop_power[loop_index] * boundary[j])
                                          : boundary[j];
            mesh.vertices.col(static_cast<Eigen::Index>(r) * ring_size + j) =
                base + frame * x;
        }
    }

    // closure: the virtual final ring carries g^loops applied to the fiber
    int shift = 0;
    bool identify = false;
    if (curve.closed) {
        const Eigen::Matrix2d g_total = orthogonal_power(g, loops);
        double best = kInf;
        for (int cand = 0; cand < ring_size; ++cand) {
            double worst = 0.0;
            for (int j = 0; j < ring_size; ++j) {
                const Eigen::Vector2d mapped = g_total * boundary[j];
                worst = std::max(worst,
                                 (mapped - boundary[(j + cand) % ring_size]).norm());
            }
            if (worst < best) {
                best = worst;
                shift = cand;
            }
        }
        mesh.closure_error = best;
        identify = mesh.closure_error <= options.closure_tol_scale * curve.total_length;
        if (!identify) {
            if (!options.loops)
                throw NotClosedError("tube does not close after the computed loops");
            // forced loop count: keep the open seam as an explicit final ring
            mesh.vertices.conservativeResize(
                3, static_cast<Eigen::Index>(total_rings + 1) * ring_size);
            const auto frame0 = frames.at(0);
            const Vec base0 = curve.position.col(0);
            for (int j = 0; j < ring_size; ++j) {
                const Eigen::Vector2d x = g_total * boundary[j];
                mesh.vertices.col(static_cast<Eigen::Index>(total_rings) * ring_size + j) =
                    base0 + frame0 * x;
            }
            mesh.rings = total_rings + 1;
        }
    }

    auto vertex_id = [&](int r, int j) {
        if (identify && r == total_rings) return ((j + shift) % ring_size);
        return r * ring_size + (j % ring_size);
    };

    const int last = curve.closed ? total_rings : total_rings - 1;
    if (point_fiber) {
        for (int r = 0; r < last; ++r)
            mesh.segments.push_back({vertex_id(r, 0), vertex_id(r + 1, 0)});
    } else {
        for (int r = 0; r < last; ++r) {
            for (int j = 0; j < ring_size; ++j) {
                mesh.quads.push_back({vertex_id(r, j), vertex_id(r + 1, j),
                                      vertex_id(r + 1, j + 1), vertex_id(r, j + 1)});
            }
        }
    }
    return mesh;
}

}  // namespace pushout
