#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pushout/curve.hpp"

using namespace pushout;

namespace {

constexpr double kPi = std::numbers::pi;

CurveSpec make_spec(CurveSpec::Family family, int samples = 4096) {
    CurveSpec spec;
    spec.family = std::move(family);
    spec.samples = samples;
    return spec;
}

// independent derivative of the position columns, used to probe the
// arc-length parametrization without touching the curvature path
Vec position_derivative(const SampledCurve& c, int i) {
    const int n = c.unique();
    const double h = c.closed ? c.total_length / n : c.total_length / (n - 1);
    auto col = [&](int j) {
        if (c.closed) {
            j %= n;
            if (j < 0) j += n;
        }
        return c.position.col(j);
    };
    return (-col(i + 2) + 8.0 * col(i + 1) - 8.0 * col(i - 1) + col(i - 2)) /
           (12.0 * h);
}

}  // namespace

TEST_CASE("flat step endpoints and clamping") {
    CHECK(flat_step(0.0) == 0.0);
    CHECK(flat_step(1.0) == 1.0);
    CHECK(flat_step(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(flat_step(-2.0) == 0.0);
    CHECK(flat_step(3.0) == 1.0);
    CHECK(std::abs(flat_step(1e-3)) < 1e-10);
    CHECK(std::abs(1.0 - flat_step(1.0 - 1e-3)) < 1e-10);
}

TEST_CASE("flat step symmetry") {
    for (int i = 1; i < 100; ++i) {
        const double t = i / 100.0;
        CHECK(flat_step(t) + flat_step(1.0 - t) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("flat step derivative matches finite differences") {
    for (const double t : {0.2, 0.35, 0.5, 0.71, 0.9}) {
        const double h = 1e-6;
        const double fd = (flat_step(t + h) - flat_step(t - h)) / (2 * h);
        CHECK(flat_step_deriv(t) == doctest::Approx(fd).epsilon(1e-7));
    }
    CHECK(flat_step_deriv(0.0) == 0.0);
    CHECK(flat_step_deriv(1.0) == 0.0);
}

TEST_CASE("unit circle sampling") {
    const auto curve = build_curve(make_spec(CurveSpec::Circle{1.0}));
    CHECK(curve.closed);
    CHECK(curve.total_length == doctest::Approx(2.0 * kPi).epsilon(1e-9));
    for (int i = 0; i < curve.unique(); i += 97) {
        CHECK(curve.curvature.col(i).norm() == doctest::Approx(1.0).epsilon(1e-6));
        // curvature points at the center
        const Vec center = curve.position.col(i) + curve.curvature.col(i);
        CHECK(center.norm() < 1e-6);
    }
}

TEST_CASE("corner curve passes through the axis points with radial tangents") {
    const auto pc = make_parametric(make_spec(CurveSpec::TriCorner{}));
    const Vec p0 = pc->position(0.0), p1 = pc->position(1.0), p2 = pc->position(2.0);
    CHECK((p0 - (Vec(3) << 1, 0, 0).finished()).norm() < 1e-9);
    CHECK((p1 - (Vec(3) << 0, 1, 0).finished()).norm() < 1e-9);
    CHECK((p2 - (Vec(3) << 0, 0, 1).finished()).norm() < 1e-9);
    CHECK((pc->velocity(0.0).normalized() - (Vec(3) << 1, 0, 0).finished()).norm() < 1e-9);
    CHECK((pc->velocity(1.0).normalized() - (Vec(3) << 0, 1, 0).finished()).norm() < 1e-9);
    CHECK((pc->velocity(2.0).normalized() - (Vec(3) << 0, 0, 1).finished()).norm() < 1e-9);
}

TEST_CASE("corner curve closes smoothly") {
    const auto curve = build_curve(make_spec(CurveSpec::TriCorner{}));
    CHECK(curve.closed);
    const int last = curve.count() - 1;
    CHECK((curve.position.col(last) - curve.position.col(0)).norm() < 1e-6);
    CHECK((curve.tangent.col(last) - curve.tangent.col(0)).norm() < 1e-6);
}

TEST_CASE("corner curve is invariant under the cyclic coordinate permutation") {
    const auto pc = make_parametric(make_spec(CurveSpec::TriCorner{}));
    Eigen::Matrix3d perm;          // (x,y,z) -> (y,z,x)
    perm << 0, 1, 0,
            0, 0, 1,
            1, 0, 0;
    double worst = 0.0;
    for (int i = 0; i <= 300; ++i) {
        const double t = 3.0 * i / 300.0;
        worst = std::max(worst,
                         (perm * pc->position(t + 1.0) - pc->position(t)).norm());
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("sheared curve is the shear applied pointwise") {
    const double alpha = 0.5;
    const auto tric = make_parametric(make_spec(CurveSpec::TriCorner{}));
    const auto sheared = make_parametric(make_spec(CurveSpec::Sheared{alpha}));
    Eigen::Matrix3d shear = Eigen::Matrix3d::Identity();
    shear(1, 2) = std::tan(alpha);
    for (const double t : {0.1, 0.5, 0.99, 1.3, 2.0, 2.71}) {
        CHECK((sheared->position(t) - shear * tric->position(t)).norm() < 1e-15);
    }
}

TEST_CASE("sheared curve endpoints") {
    const double alpha = 0.7;
    const auto pc = make_parametric(make_spec(CurveSpec::Sheared{alpha}));
    CHECK((pc->position(0.0) - (Vec(3) << 1, 0, 0).finished()).norm() < 1e-9);
    CHECK((pc->position(1.0) - (Vec(3) << 0, 1, 0).finished()).norm() < 1e-9);
    CHECK((pc->position(2.0) - (Vec(3) << 0, std::tan(alpha), 1).finished()).norm() <
          1e-9);
}

TEST_CASE("reparametrized speed is one") {
    for (const auto& family :
         {CurveSpec::Family(CurveSpec::TriCorner{}),
          CurveSpec::Family(CurveSpec::Circle{2.0}),
          CurveSpec::Family(CurveSpec::HelixSegment{1.0, 2.0 * kPi, 1.5})}) {
        const auto curve = build_curve(make_spec(family));
        double worst = 0.0;
        const int lo = curve.closed ? 0 : 2;
        const int hi = curve.closed ? curve.unique() : curve.count() - 2;
        for (int i = lo; i < hi; i += 31)
            worst = std::max(worst, std::abs(position_derivative(curve, i).norm() - 1.0));
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("planar piece shooting hits the joint") {
    const auto& piece = corner_piece();
    CHECK(piece.residual < 1e-9);
    CHECK((piece.pos2(1.0) - Eigen::Vector2d(0.0, 1.0)).norm() < 1e-9);
    const Eigen::Vector2d t0 = piece.vel2(0.0).normalized();
    CHECK((t0 - Eigen::Vector2d(1.0, 0.0)).norm() < 1e-9);
    // monotone tangent angle: one curvature sign along the piece
    double prev = piece.psi(0.0);
    for (int i = 1; i <= 1000; ++i) {
        const double cur = piece.psi(i / 1000.0);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
}

TEST_CASE("planar piece rejects coincident endpoints") {
    Mat basis(3, 2);
    basis << 1, 0, 0, 1, 0, 0;
    CHECK_THROWS_AS(solve_planar_piece({1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0},
                                       {0.0, 1.0}, Vec::Zero(3), basis),
                    BadSpec);
}

TEST_CASE("helix curvature matches the closed form") {
    // torsion 1/2 needs pitch 2*pi; then curvature is r/(r^2+c^2) = 1/2
    const auto curve =
        build_curve(make_spec(CurveSpec::HelixSegment{1.0, 2.0 * kPi, 2.0}, 8192));
    CHECK(!curve.closed);
    double worst = 0.0;
    for (int i = 4; i < curve.count() - 4; i += 53)
        worst = std::max(worst, std::abs(curve.curvature.col(i).norm() - 0.5));
    CHECK(worst < 1e-6);
}

TEST_CASE("curvature vector of straight segments vanishes") {
    CurveSpec::Imported imported;
    for (int i = 0; i < 8; ++i)
        imported.points.push_back((Vec(3) << 0.5 * i, 0.25 * i, 0.0).finished());
    const auto curve = build_curve(make_spec(imported, 64));
    for (int i = 0; i < curve.count(); ++i)
        CHECK(curve.curvature.col(i).norm() < 1e-9);
    CHECK_THROWS_AS(min_curvature_radius(curve), NoFocalData);
}

TEST_CASE("minimum curvature radius") {
    const auto circle = build_curve(make_spec(CurveSpec::Circle{1.0}));
    CHECK(min_curvature_radius(circle) == doctest::Approx(1.0).epsilon(1e-6));

    // dense resampling oracle: eight-fold resolution agrees
    const auto coarse = build_curve(make_spec(CurveSpec::TriCorner{}, 4096));
    const auto dense = build_curve(make_spec(CurveSpec::TriCorner{}, 32768));
    const double r1 = min_curvature_radius(coarse);
    const double r2 = min_curvature_radius(dense);
    CHECK(std::abs(r1 - r2) / r2 < 1e-4);
}

TEST_CASE("spike family radius decreases") {
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 6; ++n) {
        CurveSpec spec = make_spec(CurveSpec::Spike{n, defaults::kSpikeScale});
        spec.samples = std::max(8192, 8192 * n * n * n / 256);
        const double rho = min_curvature_radius(build_curve(spec));
        CHECK(rho < prev);
        prev = rho;
    }
}

TEST_CASE("cover curves repeat the base traversal") {
    CurveSpec base = make_spec(CurveSpec::TriCorner{}, 1024);
    CurveSpec cover;
    cover.family = CurveSpec::Cover{std::make_shared<CurveSpec>(base), 3};
    cover.samples = 3072;
    const auto base_curve = build_curve(base);
    const auto cover_curve = build_curve(cover);
    CHECK(cover_curve.closed);
    CHECK(cover_curve.total_length ==
          doctest::Approx(3.0 * base_curve.total_length).epsilon(1e-12));
    // aligned samples revisit the base positions
    const int n = base_curve.unique();
    for (int j = 0; j < cover_curve.unique(); j += 101) {
        CHECK((cover_curve.position.col(j) - base_curve.position.col(j % n)).norm() <
              1e-9);
    }
}

TEST_CASE("cover of an open curve is rejected") {
    CurveSpec base = make_spec(CurveSpec::HelixSegment{1.0, 1.0, 1.0});
    CurveSpec cover;
    cover.family = CurveSpec::Cover{std::make_shared<CurveSpec>(base), 2};
    CHECK_THROWS_AS(build_curve(cover), BadSpec);
}

TEST_CASE("imported closed curves are resampled through a periodic spline") {
    CurveSpec::Imported imported;
    imported.closed = true;
    const int m = 64;
    for (int i = 0; i < m; ++i) {
        const double t = 2.0 * kPi * i / m;
        imported.points.push_back(
            (Vec(3) << 2.0 * std::cos(t), 2.0 * std::sin(t), 0.0).finished());
    }
    const auto curve = build_curve(make_spec(imported, 2048));
    CHECK(curve.closed);
    CHECK(curve.total_length == doctest::Approx(4.0 * kPi).epsilon(1e-3));
    CHECK(min_curvature_radius(curve) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("spec validation") {
    CurveSpec spec = make_spec(CurveSpec::TriCorner{});
    spec.samples = 8;
    CHECK_THROWS_AS(spec.validate(), BadSpec);

    CHECK_THROWS_AS(make_spec(CurveSpec::Sheared{0.0}).validate(), BadSpec);
    CHECK_THROWS_AS(make_spec(CurveSpec::Sheared{kPi / 2.0}).validate(), BadSpec);
    CHECK_THROWS_AS(make_spec(CurveSpec::Sheared{-0.3}).validate(), BadSpec);
    CHECK_NOTHROW(make_spec(CurveSpec::Sheared{1.0}).validate());

    CurveSpec::Imported imported;
    imported.points = {(Vec(3) << 0, 0, 0).finished(),
                       (Vec(3) << 1, 0, 0).finished(),
                       (Vec(3) << 1, 1, 0).finished()};
    CHECK_THROWS_AS(make_spec(imported).validate(), BadSpec);  // too few

    imported.points.push_back((Vec(3) << 1, 1, 0).finished());
    CHECK_THROWS_AS(make_spec(imported).validate(), BadSpec);  // duplicate
}

TEST_CASE("tangent and curvature stay orthogonal") {
    const auto curve = build_curve(make_spec(CurveSpec::TriCorner{}, 8192));
    double worst = 0.0;
    for (int i = 0; i < curve.unique(); ++i) {
        const double kn = curve.curvature.col(i).norm();
        if (kn < 1e-5) continue;  // below the finite-difference noise floor
        worst = std::max(worst, std::abs(curve.tangent.col(i).dot(
                                    curve.curvature.col(i))) / kn);
    }
    CHECK(worst < 1e-6);
}
