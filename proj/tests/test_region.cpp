#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "pushout/io.hpp"
#include "pushout/region.hpp"

using namespace pushout;

namespace {

constexpr double kPi = std::numbers::pi;

CurveSpec make_spec(CurveSpec::Family family, int samples = 8192) {
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

FocalLine plane_line(double ux, double uy, double d) {
    FocalLine line;
    line.u = (Vec(2) << ux, uy).finished();
    line.u.normalize();
    line.d = d;
    return line;
}

Mat rotation2(double angle) {
    Mat g(2, 2);
    g << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return g;
}

Mat square_vertices(double half_side, int n_theta) {
    Mat v(2, n_theta);
    for (int j = 0; j < n_theta; ++j) {
        const double theta = 2.0 * kPi * j / n_theta;
        const double c = std::cos(theta), s = std::sin(theta);
        const double rho = half_side / std::max(std::abs(c), std::abs(s));
        v(0, j) = rho * c;
        v(1, j) = rho * s;
    }
    return v;
}

Mat disk_vertices(double radius, int n_theta) {
    Mat v(2, n_theta);
    for (int j = 0; j < n_theta; ++j) {
        const double theta = 2.0 * kPi * j / n_theta;
        v(0, j) = radius * std::cos(theta);
        v(1, j) = radius * std::sin(theta);
    }
    return v;
}

// deterministic LCG, keeps the property tests reproducible
struct Lcg {
    std::uint64_t state = 0x243f6a8885a308d3ull;
    double next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<double>(state >> 11) / 9007199254740992.0;
    }
};

}  // namespace

TEST_CASE("single line gives a half-plane support") {
    const std::vector<FocalLine> lines = {plane_line(1, 0, 2.0)};
    const auto poly = central_region(lines, 4096);
    CHECK(poly.rho[0] == doctest::Approx(2.0).epsilon(1e-12));  // theta = 0
    const int quarter = 4096 / 8;  // theta = pi/4
    CHECK(poly.rho[quarter] == doctest::Approx(2.0 / std::cos(kPi / 4)).epsilon(1e-12));
    CHECK(std::isinf(poly.rho[4096 / 2]));   // theta = pi
    CHECK(std::isinf(poly.rho[3 * 4096 / 4]));  // theta = 3*pi/2 boundary-free
}

TEST_CASE("corner curve central region is the square") {
    const Built b(make_spec(CurveSpec::TriCorner{}));
    const auto expanded = orbit_lines(collapse_min_offset(b.lines), b.hol.g,
                                      b.hol.orbit_order);
    const auto region = central_region(expanded);
    const double h = hausdorff_distance(region.vertices,
                                        square_vertices(b.rho, 4096));
    CHECK(h < 1e-3 * b.rho);
}

TEST_CASE("non-closing shear central region is the disk") {
    const double beta = kPi * (std::numbers::sqrt2 - 1.0) / 2.0;
    const Built b(make_spec(CurveSpec::Sheared{kPi / 2.0 - beta}));
    CHECK(!b.hol.orbit_order.has_value());
    const auto expanded = orbit_lines(collapse_min_offset(b.lines), b.hol.g,
                                      b.hol.orbit_order, 500);
    const auto region = central_region(expanded);
    const double h = hausdorff_distance(region.vertices,
                                        disk_vertices(b.rho, 4096));
    CHECK(h < 1e-3 * b.rho);
}

TEST_CASE("adding lines never enlarges the central region") {
    Lcg rng;
    std::vector<FocalLine> lines;
    Eigen::ArrayXd prev;
    for (int round = 0; round < 40; ++round) {
        const double angle = 2.0 * kPi * rng.next();
        lines.push_back(plane_line(std::cos(angle), std::sin(angle),
                                   0.2 + 3.0 * rng.next()));
        const auto poly = central_region(lines, 512);
        if (round > 0) {
            for (int j = 0; j < 512; ++j) CHECK(poly.rho[j] <= prev[j] + 1e-12);
        }
        prev = poly.rho;
    }
}

TEST_CASE("central region is invariant under a closed holonomy orbit") {
    std::vector<FocalLine> seed = {plane_line(std::cos(0.3), std::sin(0.3), 1.0)};
    const Mat g = rotation2(2.0 * kPi / 8.0);
    const auto expanded = orbit_lines(seed, g, 8);
    const auto region = central_region(expanded, 4096);

    std::vector<FocalLine> rotated;
    for (const auto& line : expanded) {
        FocalLine moved = line;
        moved.u = g * line.u;
        rotated.push_back(moved);
    }
    const auto region2 = central_region(rotated, 4096);
    // a 2*pi/8 rotation shifts the support array by 512 grid steps
    const int shift = 4096 / 8;
    double worst = 0.0;
    for (int j = 0; j < 4096; ++j) {
        const double a = region2.rho[(j + shift) % 4096];
        const double b = region.rho[j];
        if (std::isinf(a) && std::isinf(b)) continue;
        worst = std::max(worst, std::abs(a - b));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("support scales linearly with the offsets") {
    std::vector<FocalLine> lines = {plane_line(1, 0, 1.0), plane_line(0, 1, 0.7),
                                    plane_line(-0.6, 0.8, 1.3)};
    const auto base = central_region(lines, 1024);
    const double lambda = 2.6180339887;
    for (auto& line : lines) line.d *= lambda;
    const auto scaled = central_region(lines, 1024);
    for (int j = 0; j < 1024; ++j) {
        if (std::isinf(base.rho[j])) {
            CHECK(std::isinf(scaled.rho[j]));
        } else {
            CHECK(scaled.rho[j] ==
                  doctest::Approx(lambda * base.rho[j]).epsilon(1e-9));
        }
    }
}

TEST_CASE("circle raster splits the window into two half planes") {
    const Built b(make_spec(CurveSpec::Circle{1.0}, 4096));
    const double w = 3.0;
    const double band = 2.0 * w / 512;
    const auto expanded = orbit_lines(b.lines, b.hol.g, b.hol.orbit_order);
    const auto raster = raster_pushout(expanded, w, 512, band);
    REQUIRE(raster.components.size() == 2);
    for (const auto& comp : raster.components) {
        CHECK(comp.touches_window_edge);
        CHECK(comp.convexity_defect <= 0.05);
    }
    // origin cell is never excluded
    const int mid = raster.resolution / 2;
    CHECK(!raster.excluded_at(mid, mid));
    CHECK(!raster.window_too_small);
}

TEST_CASE("corner curve raster origin component is the square") {
    const Built b(make_spec(CurveSpec::TriCorner{}));
    const double w = 3.0 * b.rho;
    const int n = 1024;
    const double band = 2.0 * w / n;
    const auto expanded = orbit_lines(b.lines, b.hol.g, b.hol.orbit_order);
    const auto raster = raster_pushout(expanded, w, n, band);

    const ComponentStats* origin = nullptr;
    for (const auto& comp : raster.components)
        if (comp.contains_origin) origin = &comp;
    REQUIRE(origin != nullptr);
    CHECK(origin->convexity_defect < 0.01);
    CHECK(origin->area == doctest::Approx(4.0 * b.rho * b.rho).epsilon(0.05));
    CHECK(origin->max_inscribed_radius > 0.9 * b.rho);
    CHECK(!origin->touches_window_edge);

    // cell areas account for every free cell
    double total = 0.0;
    std::size_t free_cells = 0;
    for (const auto& comp : raster.components) {
        total += comp.area;
        free_cells += comp.cell_count;
    }
    std::size_t excluded_cells = 0;
    for (const auto v : raster.excluded) excluded_cells += v ? 1 : 0;
    CHECK(free_cells + excluded_cells == static_cast<std::size_t>(n) * n);
    CHECK(total <= 4.0 * w * w + 1e-9);
}

TEST_CASE("raster boundary agrees with the support polygon") {
    const Built b(make_spec(CurveSpec::TriCorner{}));
    const double w = 3.0 * b.rho;
    const int n = 1024;
    const double band = 2.0 * w / n;
    const auto expanded = orbit_lines(b.lines, b.hol.g, b.hol.orbit_order);
    const auto raster = raster_pushout(expanded, w, n, band);
    const auto region = central_region(orbit_lines(collapse_min_offset(b.lines),
                                                   b.hol.g, b.hol.orbit_order),
                                       4096);
    const double cell = raster.cell_size();
    for (int j = 0; j < 4096; j += 64) {
        const double theta = region.thetas[j];
        // march the ray until the first excluded cell
        double r = 0.0;
        while (r < w) {
            const double x = r * std::cos(theta), y = r * std::sin(theta);
            const int ix = static_cast<int>((x + w) / cell);
            const int iy = static_cast<int>((y + w) / cell);
            if (ix < 0 || ix >= n || iy < 0 || iy >= n) break;
            if (raster.excluded_at(ix, iy)) break;
            r += cell * 0.5;
        }
        CHECK(std::abs(r - region.rho[j]) <= 2.0 * cell + band);
    }
}

TEST_CASE("identical rasters compare equal and mismatched grids throw") {
    const std::vector<FocalLine> lines = {plane_line(1, 0, 1.0)};
    const auto a = raster_pushout(lines, 2.0, 128, 4.0 / 128);
    const auto b = raster_pushout(lines, 2.0, 128, 4.0 / 128);
    CHECK(compare_rasters(a, b) == 0.0);
    const auto c = raster_pushout(lines, 2.0, 256, 4.0 / 256);
    CHECK_THROWS_AS(compare_rasters(a, c), GridMismatch);
}

TEST_CASE("window smaller than every line sets the warning flag") {
    const std::vector<FocalLine> lines = {plane_line(1, 0, 10.0)};
    const auto raster = raster_pushout(lines, 1.0, 128, 2.0 / 128);
    CHECK(raster.window_too_small);
    REQUIRE(raster.components.size() == 1);
    CHECK(raster.components[0].cell_count == 128 * 128);
}

TEST_CASE("component report carries verdicts") {
    const std::vector<FocalLine> lines = {plane_line(1, 0, 1.0),
                                          plane_line(0, 1, 0.8)};
    const auto raster = raster_pushout(lines, 2.0, 256, 4.0 / 256);
    const auto report = component_report(raster);
    REQUIRE(report.size() == raster.components.size());
    for (const auto& verdict : report) {
        CHECK(verdict.convex == (verdict.stats.convexity_defect <= 0.05));
        CHECK(verdict.openness_proxy >= 0.0);
    }
}

TEST_CASE("raster validation") {
    const std::vector<FocalLine> lines = {plane_line(1, 0, 1.0)};
    CHECK_THROWS_AS(raster_pushout(lines, 1.0, 32, 0.1), BadSpec);   // res < 64
    CHECK_THROWS_AS(raster_pushout(lines, 1.0, 128, 1e-6), BadSpec);  // band < cell/2
    std::vector<FocalLine> bad = lines;
    bad[0].d = -1.0;
    CHECK_THROWS_AS(raster_pushout(bad, 1.0, 128, 0.05), BadSpec);
}

TEST_CASE("hausdorff distance on known sets") {
    Mat a(2, 2), b(2, 2);
    a << 0, 1, 0, 0;
    b << 0, 1, 0.5, 0;
    CHECK(hausdorff_distance(a, a) == 0.0);
    CHECK(hausdorff_distance(a, b) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("pgm and svg writers are deterministic") {
    const std::vector<FocalLine> lines = {plane_line(1, 0, 1.0),
                                          plane_line(0.3, 1, 0.9)};
    const auto raster = raster_pushout(lines, 2.0, 128, 4.0 / 128);
    const auto region = central_region(lines, 256);

    std::ostringstream p1, p2, s1, s2;
    io::write_pgm(p1, raster);
    io::write_pgm(p2, raster);
    io::write_svg(s1, region, lines, 2.0);
    io::write_svg(s2, region, lines, 2.0);
    CHECK(p1.str() == p2.str());
    CHECK(s1.str() == s2.str());
    CHECK(p1.str().substr(0, 3) == "P5\n");
    CHECK(p1.str().size() > static_cast<std::size_t>(128 * 128));
}
