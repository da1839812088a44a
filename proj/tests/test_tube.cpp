#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "pushout/io.hpp"
#include "pushout/tube.hpp"

using namespace pushout;

namespace {

constexpr double kPi = std::numbers::pi;

CurveSpec make_spec(CurveSpec::Family family, int samples = 4096) {
    CurveSpec spec;
    spec.family = std::move(family);
    spec.samples = samples;
    return spec;
}

struct Built {
    SampledCurve curve;
    FrameField frames;
    HolonomyResult hol;
    std::vector<FocalLine> lines;
    double rho = 0.0;

    explicit Built(const CurveSpec& spec) {
        curve = build_curve(spec);
        frames = transport_frame(curve, initial_frame(curve));
        frames.curve = &curve;
        hol = holonomy(curve);
        lines = dedup_lines(focal_lines(curve, frames));
        rho = min_curvature_radius(curve);
    }
};

Mat rotation2(double angle) {
    Mat g(2, 2);
    g << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return g;
}

FiberShape square_fiber(double half_side, int samples_around = 64) {
    FiberShape fiber;
    fiber.kind = FiberShape::Polygon{{{half_side, half_side},
                                      {-half_side, half_side},
                                      {-half_side, -half_side},
                                      {half_side, -half_side}}};
    fiber.samples_around = samples_around;
    return fiber;
}

// brute-force clearance oracle over boundary samples and lines
double margin_oracle(const std::vector<Eigen::Vector2d>& boundary,
                     const std::vector<FocalLine>& lines) {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& line : lines) {
        const Eigen::Vector2d u(line.u[0], line.u[1]);
        double reach = -std::numeric_limits<double>::infinity();
        for (const auto& x : boundary) reach = std::max(reach, x.dot(u));
        margin = std::min(margin, line.d - reach);
    }
    return margin;
}

}  // namespace

TEST_CASE("fiber margins against the corner-curve lines") {
    const Built b(make_spec(CurveSpec::TriCorner{}));
    const auto expanded = orbit_lines(b.lines, b.hol.g, b.hol.orbit_order);

    FiberShape origin_point;
    origin_point.kind = FiberShape::Point{{0.0, 0.0}};
    CHECK(fiber_margin(origin_point, expanded) ==
          doctest::Approx(b.rho).epsilon(1e-9));

    FiberShape disk;
    disk.kind = FiberShape::Circle{b.rho / 2.0, {0.0, 0.0}};
    disk.samples_around = 256;
    const double margin = fiber_margin(disk, expanded);
    CHECK(margin == doctest::Approx(b.rho / 2.0).epsilon(1e-6));
    // oracle over a dense boundary sampling agrees
    std::vector<Eigen::Vector2d> boundary;
    for (int i = 0; i < 4096; ++i) {
        const double phi = 2.0 * kPi * i / 4096;
        boundary.emplace_back(b.rho / 2.0 * std::cos(phi),
                              b.rho / 2.0 * std::sin(phi));
    }
    CHECK(margin == doctest::Approx(margin_oracle(boundary, expanded)).epsilon(1e-6));

    FiberShape big;
    big.kind = FiberShape::Circle{1.1 * b.rho, {0.0, 0.0}};
    CHECK(fiber_margin(big, expanded) < 0.0);
    CHECK_THROWS_AS(sweep_tube(b.curve, b.frames, big, {}), InvalidFiber);
}

TEST_CASE("holonomy closure counts") {
    FiberShape circle;
    circle.kind = FiberShape::Circle{0.5, {0.0, 0.0}};
    CHECK(holonomy_closure(circle, rotation2(1.234)).value_or(-1) == 1);

    CHECK(holonomy_closure(square_fiber(0.3), rotation2(kPi / 2.0)).value_or(-1) == 1);

    FiberShape off_point;
    off_point.kind = FiberShape::Point{{0.4, 0.0}};
    CHECK(holonomy_closure(off_point, rotation2(2.0 * kPi / 8.0)).value_or(-1) == 8);

    // a scalene triangle only returns to itself after the full rotation cycle
    FiberShape tri;
    tri.kind = FiberShape::Polygon{{{0.5, 0.0}, {-0.2, 0.3}, {-0.1, -0.4}}};
    CHECK(holonomy_closure(tri, rotation2(2.0 * kPi / 5.0)).value_or(-1) == 5);

    // irrational rotation never closes an off-center point
    CHECK(!holonomy_closure(off_point, rotation2(1.0), 1e-6, 64).has_value());
}

TEST_CASE("torus tube around a circle") {
    const Built b(make_spec(CurveSpec::Circle{2.0}, 2048));
    FiberShape fiber;
    fiber.kind = FiberShape::Circle{0.5, {0.0, 0.0}};
    fiber.samples_around = 32;
    SweepOptions options;
    options.ring_stride = 8;
    const TubeMesh mesh = sweep_tube(b.curve, b.frames, fiber, options);

    CHECK(mesh.loops_used == 1);
    CHECK(mesh.closure_error < 1e-6 * b.curve.total_length);
    CHECK(mesh.quads.size() ==
          static_cast<std::size_t>(mesh.rings) * mesh.ring_size);
    for (Eigen::Index i = 0; i < mesh.vertices.cols(); ++i) {
        const double r = mesh.vertices.col(i).norm();
        CHECK(r >= 2.0 - 0.5 - 1e-9);
        CHECK(r <= 2.0 + 0.5 + 1e-9);
    }
    // transport is isometric: each vertex sits at its fiber radius
    for (int r = 0; r < mesh.rings; r += 37) {
        for (int j = 0; j < mesh.ring_size; j += 7) {
            const int i = r * mesh.ring_size + j;
            const Vec base = b.curve.position.col(8 * r);
            CHECK((mesh.vertices.col(i) - base).norm() ==
                  doctest::Approx(0.5).epsilon(1e-8));
        }
    }
}

TEST_CASE("quarter-turn-invariant square fiber closes in one loop") {
    const Built b(make_spec(CurveSpec::TriCorner{}));
    const FiberShape fiber = square_fiber(b.rho / 2.0);
    CHECK(holonomy_closure(fiber, b.hol.g, 1e-6, 16).value_or(-1) == 1);

    SweepOptions options;
    options.ring_stride = 16;
    const TubeMesh mesh = sweep_tube(b.curve, b.frames, fiber, options);
    CHECK(mesh.loops_used == 1);
    CHECK(mesh.closure_error < 1e-6 * b.curve.total_length);
    CHECK(mesh.min_focal_margin > 0.0);
}

TEST_CASE("off-center point on the closing shear needs eight loops") {
    const Built b(make_spec(CurveSpec::Sheared{kPi / 2.0 - 2.0 * kPi / 8.0}));
    FiberShape fiber;
    fiber.kind = FiberShape::Point{{b.rho / 4.0, 0.0}};
    CHECK(holonomy_closure(fiber, b.hol.g, 1e-6, 64).value_or(-1) == 8);

    SweepOptions options;
    options.ring_stride = 16;
    const TubeMesh mesh = sweep_tube(b.curve, b.frames, fiber, options);
    CHECK(mesh.loops_used == 8);
    CHECK(mesh.closure_error < 1e-6 * b.curve.total_length);
    CHECK(mesh.quads.empty());
    CHECK(!mesh.segments.empty());
}

TEST_CASE("point fiber at the origin reproduces the curve") {
    const Built b(make_spec(CurveSpec::Circle{1.0}, 1024));
    FiberShape fiber;
    fiber.kind = FiberShape::Point{{0.0, 0.0}};
    const TubeMesh mesh = sweep_tube(b.curve, b.frames, fiber, {});
    CHECK(mesh.closure_error < 1e-12);
    for (int i = 0; i < b.curve.unique(); ++i)
        CHECK((mesh.vertices.col(i) - b.curve.position.col(i)).norm() < 1e-12);
}

TEST_CASE("non-closing fiber orbit raises unless loops are forced") {
    const Built b(make_spec(CurveSpec::Sheared{0.5}));
    FiberShape fiber;
    fiber.kind = FiberShape::Point{{b.rho / 4.0, 0.0}};
    CHECK_THROWS_AS(sweep_tube(b.curve, b.frames, fiber, {}), NotClosedError);

    SweepOptions forced;
    forced.loops = 3;
    forced.ring_stride = 32;
    const TubeMesh mesh = sweep_tube(b.curve, b.frames, fiber, forced);
    CHECK(mesh.loops_used == 3);
    CHECK(mesh.closure_error > 1e-6 * b.curve.total_length);
    // the forced sweep keeps its seam: one more ring than the closed count
    CHECK(mesh.rings == 3 * (b.curve.unique() / 32) + 1);
}

TEST_CASE("fiber crossing matches the raster classification") {
    const Built b(make_spec(CurveSpec::TriCorner{}));
    const auto expanded = orbit_lines(b.lines, b.hol.g, b.hol.orbit_order);

    FiberShape big;
    big.kind = FiberShape::Circle{1.1 * b.rho, {0.0, 0.0}};
    CHECK(fiber_margin(big, expanded) < 0.0);

    const double w = 2.5 * b.rho;
    const int n = 512;
    const auto raster = raster_pushout(expanded, w, n, 2.0 * w / n);
    // the boundary sample on the +x axis lies beyond the central square
    const double x = 1.1 * b.rho;
    const int ix = static_cast<int>((x + w) / raster.cell_size());
    const int iy = n / 2;
    const std::size_t at = static_cast<std::size_t>(iy) * n + ix;
    const int mid_comp =
        raster.component[static_cast<std::size_t>(n / 2) * n + n / 2];
    const bool outside_origin_component =
        raster.excluded[at] || raster.component[at] != mid_comp;
    CHECK(outside_origin_component);
}

TEST_CASE("fiber validation") {
    FiberShape bad_circle;
    bad_circle.kind = FiberShape::Circle{-1.0, {0.0, 0.0}};
    CHECK_THROWS_AS(bad_circle.validate(), BadSpec);

    FiberShape bowtie;
    bowtie.kind = FiberShape::Polygon{
        {{0.0, 0.0}, {1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}}};
    CHECK_THROWS_AS(bowtie.validate(), BadSpec);

    FiberShape square = square_fiber(1.0);
    CHECK_NOTHROW(square.validate());
    CHECK(square.boundary_samples().size() == 64);
}

TEST_CASE("obj export lists vertices and faces") {
    const Built b(make_spec(CurveSpec::Circle{2.0}, 512));
    FiberShape fiber;
    fiber.kind = FiberShape::Circle{0.3, {0.0, 0.0}};
    fiber.samples_around = 16;
    SweepOptions options;
    options.ring_stride = 8;
    const TubeMesh mesh = sweep_tube(b.curve, b.frames, fiber, options);
    std::ostringstream os;
    io::write_obj(os, mesh);
    const std::string obj = os.str();
    CHECK(obj.find("v ") == 0);
    CHECK(obj.find("f ") != std::string::npos);
}
