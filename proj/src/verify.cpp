#include "pushout/verify.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

namespace pushout {

namespace {

constexpr double kPi = std::numbers::pi;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct Recorder {
    VerifyReport* report;
    double started = 0.0;

    void begin() { started = now_seconds(); }

    CheckRow& push(int criterion, const std::string& name, double measured,
                   double expected, double tolerance, const std::string& cmp) {
        CheckRow row;
        row.criterion = criterion;
        row.name = name;
        row.measured = measured;
        row.expected = expected;
        row.tolerance = tolerance;
        row.comparison = cmp;
        if (cmp == "abs") row.pass = std::abs(measured - expected) <= tolerance;
        else if (cmp == "le") row.pass = measured <= expected;
        else if (cmp == "ge") row.pass = measured >= expected;
        else row.pass = measured == expected;
        row.seconds = now_seconds() - started;
        started = now_seconds();
        report->rows.push_back(row);
        return report->rows.back();
    }
};

// reference shapes sampled on the same angular grid as the support polygon
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

Mat rotation2(double angle) {
    Mat g(2, 2);
    g << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return g;
}

// Reference transport: classic RK4 on V'(s) = -<V, T'(s)> T(s) with the
// analytic tangent, entirely independent of the double-reflection scan.
Mat ode_transport(const ParametricCurve& pc, const ArcLength& arc,
                  const Mat& start, int steps) {
    const double length = arc.total();
    const double h = length / steps;
    const int nodes = 2 * steps + 1;

    Mat t_tab(3, nodes), tp_tab(3, nodes);
    for (int j = 0; j < nodes; ++j) {
        const double s = 0.5 * h * j;
        const double t = arc.invert(std::min(s, length));
        const Vec vel = pc.velocity(t);
        const double speed = vel.norm();
        t_tab.col(j) = vel / speed;
        const double delta = 1e-5;
        const Vec vp = pc.velocity(t + delta / speed);
        const Vec vm = pc.velocity(t - delta / speed);
        tp_tab.col(j) = (vp.normalized() - vm.normalized()) / (2.0 * delta);
    }

    auto rhs = [&](int node, const Mat& v) -> Mat {
        const Vec tangent = t_tab.col(node);
        const Vec tprime = tp_tab.col(node);
        return -tangent * (tprime.transpose() * v);
    };

    Mat v = start;
    for (int i = 0; i < steps; ++i) {
        const int n0 = 2 * i, n1 = 2 * i + 1, n2 = 2 * i + 2;
        const Mat k1 = rhs(n0, v);
        const Mat k2 = rhs(n1, v + 0.5 * h * k1);
        const Mat k3 = rhs(n1, v + 0.5 * h * k2);
        const Mat k4 = rhs(n2, v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return v;
}

struct CurveBundle {
    SampledCurve curve;
    FrameField frames;
    HolonomyResult hol;
    std::vector<FocalLine> lines;
    double rho = 0.0;

    explicit CurveBundle(const CurveSpec& spec, double closure_tol, int n_max,
                         bool allow_open = false) {
        curve = build_curve(spec);
        frames = transport_frame(curve, initial_frame(curve));
        frames.curve = &curve;
        hol = holonomy(curve, allow_open, closure_tol, n_max);
        lines = dedup_lines(focal_lines(curve, frames));
        rho = min_curvature_radius(curve);
    }

    CurveBundle(CurveBundle&&) = delete;
    CurveBundle(const CurveBundle&) = delete;
};

std::vector<FocalLine> prefilter(const std::vector<FocalLine>& lines, double w,
                                 double band) {
    std::vector<FocalLine> out;
    out.reserve(lines.size());
    const double reach = w * std::numbers::sqrt2 + band;
    for (const auto& line : lines)
        if (line.d <= reach) out.push_back(line);
    return out;
}

PushoutRaster raster_of(const CurveBundle& bundle, double w, int n,
                        std::optional<int> truncate_override = {}) {
    const double band = 2.0 * w / n;
    auto lines = prefilter(bundle.lines, w, band);
    const int truncate = truncate_override.value_or(defaults::kTruncate);
    lines = orbit_lines(lines, bundle.hol.g, bundle.hol.orbit_order, truncate);
    return raster_pushout(lines, w, n, band);
}

struct ArtifactBundle {
    std::vector<std::pair<std::string, std::string>> files;

    bool operator==(const ArtifactBundle& other) const {
        return files == other.files;
    }
};

ArtifactBundle render_artifacts(const CurveBundle& tc) {
    ArtifactBundle bundle;
    auto add = [&](const std::string& name, const std::string& bytes) {
        bundle.files.emplace_back(name, bytes);
    };

    { std::ostringstream os; io::write_curve_csv(os, tc.curve); add("curve.csv", os.str()); }
    { std::ostringstream os; io::write_frames_csv(os, tc.frames); add("frames.csv", os.str()); }
    add("holonomy.json", io::holonomy_json(tc.hol).dump(2) + "\n");
    { std::ostringstream os; io::write_focal_csv(os, tc.curve, tc.lines); add("focal.csv", os.str()); }

    const double w = defaults::kWindowFactor * tc.rho;
    const int n = defaults::kRasterRes;
    const auto raster = raster_of(tc, w, n);
    const auto expanded =
        orbit_lines(collapse_min_offset(tc.lines), tc.hol.g, tc.hol.orbit_order);
    const auto region = central_region(expanded);
    { std::ostringstream os; io::write_pgm(os, raster); add("raster.pgm", os.str()); }
    add("raster.json", io::raster_json(raster).dump(2) + "\n");
    { std::ostringstream os; io::write_central_csv(os, region); add("central.csv", os.str()); }
    { std::ostringstream os; io::write_svg(os, region, expanded, w); add("region.svg", os.str()); }

    FiberShape fiber;
    const double a = tc.rho / 2.0;
    fiber.kind = FiberShape::Polygon{{{a, a}, {-a, a}, {-a, -a}, {a, -a}}};
    SweepOptions sweep_options;
    sweep_options.ring_stride = 64;
    const TubeMesh mesh = sweep_tube(tc.curve, tc.frames, fiber, sweep_options);
    { std::ostringstream os; io::write_obj(os, mesh); add("tube.obj", os.str()); }
    add("tube.json", io::tube_json(mesh).dump(2) + "\n");
    return bundle;
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
    VerifyReport report;
    Recorder rec{&report};
    const double t_begin = now_seconds();
    const int samples = options.samples;
    const double tol = options.closure_tol;
    const int n_max = options.n_max;

    CurveSpec tc_spec;
    tc_spec.family = CurveSpec::TriCorner{};
    tc_spec.samples = samples;
    rec.begin();
    const CurveBundle tc(tc_spec, tol, n_max);

    // 1. once-around rotation of the corner curve
    rec.begin();
    rec.push(1, "holonomy angle, corner curve", std::abs(tc.hol.angle.value()),
             kPi / 2.0, 1e-6, "abs");

    // 2. sheared holonomy angles
    for (const double alpha : {0.2, 0.5, 1.0}) {
        rec.begin();
        CurveSpec spec;
        spec.family = CurveSpec::Sheared{alpha};
        spec.samples = samples;
        const CurveBundle sh(spec, tol, n_max);
        std::ostringstream name;
        name << "holonomy angle, sheared alpha=" << alpha;
        rec.push(2, name.str(), std::abs(sh.hol.angle.value()), kPi / 2.0 - alpha,
                 1e-5, "abs");
    }

    // 3. transport waypoints at the piece joints
    rec.begin();
    {
        const int count = tc.curve.count();
        const int i1 = static_cast<int>(std::lround((count - 1) / 3.0));
        const int i2 = static_cast<int>(std::lround(2.0 * (count - 1) / 3.0));
        const Vec target = (Vec(3) << -1.0, 0.0, 0.0).finished();
        const double err1 = (tc.frames.at(i1).col(0) - target).cwiseAbs().maxCoeff();
        rec.push(3, "waypoint transport at first joint", err1, 0.0, 1e-6, "abs");
        rec.begin();
        const double err2 = (tc.frames.at(i2).col(0) - target).cwiseAbs().maxCoeff();
        rec.push(3, "waypoint transport at second joint", err2, 0.0, 1e-6, "abs");
    }

    // 4. central region of the corner curve vs the square of side 2*rho
    rec.begin();
    {
        const auto expanded = orbit_lines(collapse_min_offset(tc.lines), tc.hol.g,
                                          tc.hol.orbit_order);
        const auto region = central_region(expanded);
        const double h = hausdorff_distance(
            region.vertices, square_vertices(tc.rho, defaults::kThetaSamples));
        rec.push(4, "central region vs square", h, 0.0, 1e-3 * tc.rho, "abs");
    }

    // 5. orbit orders of rational shear angles
    for (const int n : {5, 8, 12}) {
        rec.begin();
        CurveSpec spec;
        spec.family = CurveSpec::Sheared{kPi / 2.0 - 2.0 * kPi / n};
        spec.samples = samples;
        const CurveBundle sh(spec, tol, n_max);
        std::ostringstream name;
        name << "orbit order, shear with 2*pi/" << n << " holonomy";
        rec.push(5, name.str(),
                 static_cast<double>(sh.hol.orbit_order.value_or(-1)),
                 static_cast<double>(n), 0.0, "eq");
        rec.begin();
        const double closure =
            (orthogonal_power(sh.hol.g, n) - Mat::Identity(2, 2)).norm();
        std::ostringstream name2;
        name2 << "orbit closure norm, n=" << n;
        rec.push(5, name2.str(), closure, 0.0, 1e-6, "abs");
    }

    // 6. irrational rotation: no closure, central region is a disk
    rec.begin();
    {
        const Mat g = rotation2(2.0 * kPi * (std::numbers::sqrt2 - 1.0));
        const auto order = orbit_order(g, tol, n_max);
        rec.push(6, "irrational rotation matrix stays open",
                 order ? 1.0 : 0.0, 0.0, 0.0, "eq");
    }
    rec.begin();
    {
        // the literal angle 2*pi*(sqrt2-1) exceeds pi/2, so no admissible
        // shear produces it; the curve case uses the irrational angle
        // pi*(sqrt2-1)/2 instead
        const double beta = kPi * (std::numbers::sqrt2 - 1.0) / 2.0;
        CurveSpec spec;
        spec.family = CurveSpec::Sheared{kPi / 2.0 - beta};
        spec.samples = samples;
        const CurveBundle ir(spec, tol, n_max);
        rec.push(6, "irrational shear stays open",
                 ir.hol.orbit_order ? 1.0 : 0.0, 0.0, 0.0, "eq");
        rec.begin();
        const auto expanded = orbit_lines(collapse_min_offset(ir.lines), ir.hol.g,
                                          ir.hol.orbit_order, defaults::kTruncate);
        const auto region = central_region(expanded);
        const double h = hausdorff_distance(
            region.vertices, disk_vertices(ir.rho, defaults::kThetaSamples));
        rec.push(6, "irrational central region vs disk", h, 0.0, 1e-3 * ir.rho,
                 "abs");
        // 9b. the same run is the openness counterexample flag
        rec.begin();
        rec.push(9, "irrational case reported as non-closing",
                 ir.hol.orbit_order ? 1.0 : 0.0, 0.0, 0.0, "eq");
    }

    // 7. covering a curve leaves the push-out raster unchanged
    rec.begin();
    {
        const double w = defaults::kWindowFactor * tc.rho;
        const auto base_raster = raster_of(tc, w, defaults::kRasterRes);
        CurveSpec cover_spec;
        cover_spec.family =
            CurveSpec::Cover{std::make_shared<CurveSpec>(tc_spec), 3};
        // one traversal of the cover needs the base resolution
        cover_spec.samples = static_cast<int>(
            std::min<long>(3L * samples, 1L << 21));
        const CurveBundle cover(cover_spec, tol, n_max);
        const auto cover_raster = raster_of(cover, w, defaults::kRasterRes);
        rec.push(7, "3-fold cover of the corner curve",
                 compare_rasters(base_raster, cover_raster), 0.0, 1e-3, "abs");
    }
    rec.begin();
    {
        CurveSpec base_spec;
        base_spec.family = CurveSpec::Sheared{kPi / 2.0 - 2.0 * kPi / 8.0};
        base_spec.samples = samples;
        const CurveBundle base(base_spec, tol, n_max);
        const double w = defaults::kWindowFactor * base.rho;
        const auto base_raster = raster_of(base, w, defaults::kRasterRes);
        CurveSpec cover_spec;
        cover_spec.family =
            CurveSpec::Cover{std::make_shared<CurveSpec>(base_spec), 8};
        cover_spec.samples = static_cast<int>(
            std::min<long>(8L * samples, 1L << 21));
        const CurveBundle cover(cover_spec, tol, n_max);
        const auto cover_raster = raster_of(cover, w, defaults::kRasterRes);
        rec.push(7, "8-fold cover of the closing shear",
                 compare_rasters(base_raster, cover_raster), 0.0, 1e-3, "abs");
    }

    // 8. spike family: the free region shrinks towards the origin
    double rho_spike1 = 0.0;
    rec.begin();
    {
        CurveSpec spec;
        spec.family = CurveSpec::Spike{1, defaults::kSpikeScale};
        spec.samples = samples;
        rho_spike1 = min_curvature_radius(build_curve(spec));
        rec.push(8, "spike(1) reference radius measured", rho_spike1, 0.0, 0.0,
                 "ge");
    }
    std::vector<double> inscribed;
    std::unique_ptr<CurveBundle> spike8;
    for (const int n : {2, 4, 8, 16}) {
        rec.begin();
        CurveSpec spec;
        spec.family = CurveSpec::Spike{n, defaults::kSpikeScale};
        // the tip curvature grows like n^3; keep a few samples per radius
        const long scale = std::max(1L, static_cast<long>(n) * n * n / 256);
        spec.samples = static_cast<int>(
            std::min<long>(static_cast<long>(samples) * scale, 1L << 21));
        auto bundle = std::make_unique<CurveBundle>(spec, tol, n_max);
        const double w = defaults::kWindowFactor * bundle->rho;
        const auto raster = raster_of(*bundle, w, defaults::kRasterRes, 64);
        double origin_radius = 0.0;
        for (const auto& comp : raster.components)
            if (comp.contains_origin)
                origin_radius = std::max(origin_radius, comp.max_inscribed_radius);
        inscribed.push_back(origin_radius);
        std::ostringstream name;
        name << "spike(" << n << ") inscribed radius";
        rec.push(8, name.str(), origin_radius, 0.0, 0.0, "ge");
        if (n == 8) spike8 = std::move(bundle);
    }
    rec.begin();
    {
        double worst_drop = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < inscribed.size(); ++i)
            worst_drop = std::min(worst_drop, inscribed[i] - inscribed[i + 1]);
        rec.push(8, "inscribed radius strictly decreasing", worst_drop, 0.0, 0.0,
                 "ge");
        rec.begin();
        rec.push(8, "spike(16) inscribed radius below 0.2*rho1", inscribed.back(),
                 0.2 * rho_spike1, 0.0, "le");
    }

    // 9a. single-traversal raster of spike(8) has a non-convex component
    rec.begin();
    {
        const double w = 3.0 * rho_spike1;
        const double band = 2.0 * w / defaults::kRasterRes;
        const auto lines = prefilter(spike8->lines, w, band);
        const auto raster = raster_pushout(lines, w, defaults::kRasterRes, band);
        double worst = 0.0;
        for (const auto& comp : raster.components)
            if (!comp.contains_origin)
                worst = std::max(worst, comp.convexity_defect);
        rec.push(9, "spike(8) non-origin component defect", worst, 0.05, 0.0,
                 "ge");
    }

    // 10. invariant suite
    rec.begin();
    {
        double gram_drift = 0.0;
        for (int i = 0; i < tc.frames.count(); ++i) {
            Mat full(3, 3);
            full.col(0) = tc.curve.tangent.col(i);
            full.col(1) = tc.frames.at(i).col(0);
            full.col(2) = tc.frames.at(i).col(1);
            gram_drift = std::max(
                gram_drift,
                (full.transpose() * full - Mat::Identity(3, 3)).norm());
        }
        rec.push(10, "frame orthonormality drift", gram_drift, 0.0, 1e-9, "abs");

        rec.begin();
        double norm_drift = 0.0;
        const Eigen::Vector2d coeffs(0.6, 0.8);
        for (int i = 0; i < tc.frames.count(); ++i)
            norm_drift = std::max(
                norm_drift, std::abs((tc.frames.at(i) * coeffs).norm() - 1.0));
        rec.push(10, "transported norm conservation", norm_drift, 0.0, 1e-8,
                 "abs");

        rec.begin();
        // restart the scan mid-way; frame coordinates must agree downstream
        const int half = tc.curve.unique() / 2;
        SampledCurve tail;
        tail.closed = false;
        const int m = tc.curve.count() - half;
        tail.s = tc.curve.s.segment(half, m) - tc.curve.s[half];
        tail.position = tc.curve.position.middleCols(half, m);
        tail.tangent = tc.curve.tangent.middleCols(half, m);
        tail.curvature = tc.curve.curvature.middleCols(half, m);
        tail.total_length = tc.curve.total_length - tc.curve.s[half];
        const FrameField restart = transport_frame(tail, Mat(tc.frames.at(half)));
        double comp_drift = 0.0;
        for (int i = 0; i < m; ++i)
            comp_drift = std::max(
                comp_drift,
                (restart.at(i) - tc.frames.at(half + i)).cwiseAbs().maxCoeff());
        rec.push(10, "path composition consistency", comp_drift, 0.0, 1e-8,
                 "abs");

        rec.begin();
        const auto pc = make_parametric(tc_spec);
        const ArcLength arc(pc, 512);
        const Mat ode_frame =
            ode_transport(*pc, arc, initial_frame(tc.curve), samples);
        const double ode_err =
            (ode_frame - tc.frames.at(tc.frames.count() - 1)).cwiseAbs().maxCoeff();
        rec.push(10, "double reflection vs ODE transport", ode_err, 0.0, 1e-6,
                 "abs");
    }
    rec.begin();
    {
        // helix with curvature 1/2 and torsion 1/2: the transported vector
        // drifts from the rotating normal at the torsion rate
        CurveSpec spec;
        spec.family = CurveSpec::HelixSegment{1.0, 2.0 * kPi, 2.0};
        spec.samples = samples;
        const SampledCurve helix = build_curve(spec);
        const FrameField frames = transport_frame(helix, initial_frame(helix));
        const double tau = 0.5;
        double unwrapped = 0.0, previous = 0.0, worst = 0.0;
        for (int i = 0; i < helix.count(); ++i) {
            Eigen::Vector3d normal;
            normal << -helix.position(0, i), -helix.position(1, i), 0.0;
            normal.normalize();
            const Eigen::Vector3d tangent = helix.tangent.col(i);
            const Eigen::Vector3d binormal = tangent.cross(normal);
            const Eigen::Vector3d v = frames.at(i).col(0);
            const double angle = std::atan2(v.dot(binormal), v.dot(normal));
            if (i == 0) {
                previous = angle;
            } else {
                double delta = angle - previous;
                while (delta > kPi) delta -= 2.0 * kPi;
                while (delta < -kPi) delta += 2.0 * kPi;
                unwrapped += delta;
                previous = angle;
            }
            worst = std::max(worst, std::abs(std::abs(unwrapped) - tau * helix.s[i]));
        }
        rec.push(10, "helix transport angle vs torsion integral", worst, 0.0,
                 1e-6, "abs");
    }
    rec.begin();
    {
        CurveSpec spec;
        spec.family = CurveSpec::Circle{1.0};
        spec.samples = samples;
        const CurveBundle circle(spec, tol, n_max);
        rec.push(10, "circle holonomy is the identity",
                 (circle.hol.g - Mat::Identity(2, 2)).norm(), 0.0, 1e-8, "abs");
    }

    // 11. partial tubes
    rec.begin();
    {
        FiberShape fiber;
        const double a = tc.rho / 2.0;
        fiber.kind = FiberShape::Polygon{{{a, a}, {-a, a}, {-a, -a}, {a, -a}}};
        const auto closure = holonomy_closure(fiber, tc.hol.g, 1e-6, 64);
        rec.push(11, "square fiber closes in one loop",
                 static_cast<double>(closure.value_or(-1)), 1.0, 0.0, "eq");
        rec.begin();
        SweepOptions sweep_options;
        sweep_options.ring_stride = 16;
        const TubeMesh mesh = sweep_tube(tc.curve, tc.frames, fiber, sweep_options);
        rec.push(11, "square tube closure error", mesh.closure_error, 0.0,
                 1e-6 * tc.curve.total_length, "abs");
    }
    rec.begin();
    {
        CurveSpec spec;
        spec.family = CurveSpec::Sheared{kPi / 2.0 - 2.0 * kPi / 8.0};
        spec.samples = samples;
        const CurveBundle sh(spec, tol, n_max);
        FiberShape fiber;
        fiber.kind = FiberShape::Point{{sh.rho / 4.0, 0.0}};
        const auto closure = holonomy_closure(fiber, sh.hol.g, 1e-6, 64);
        rec.push(11, "off-center point fiber loop count",
                 static_cast<double>(closure.value_or(-1)), 8.0, 0.0, "eq");
        rec.begin();
        SweepOptions sweep_options;
        sweep_options.ring_stride = 16;
        const TubeMesh mesh = sweep_tube(sh.curve, sh.frames, fiber, sweep_options);
        rec.push(11, "point fiber tube closes after its loops",
                 static_cast<double>(mesh.loops_used), 8.0, 0.0, "eq");
    }

    // 12. determinism of the output artifacts
    rec.begin();
    {
        const ArtifactBundle first = render_artifacts(tc);
        const ArtifactBundle second = render_artifacts(tc);
        rec.push(12, "artifact bundle byte-identical across runs",
                 first == second ? 1.0 : 0.0, 1.0, 0.0, "eq");
        if (!options.artifact_dir.empty()) {
            for (const auto& [name, bytes] : first.files)
                io::write_file(options.artifact_dir + "/" + name, bytes);
        }
    }

    report.total_seconds = now_seconds() - t_begin;
    report.all_pass = true;
    for (const auto& row : report.rows) report.all_pass &= row.pass;
    return report;
}

std::string VerifyReport::text() const {
    std::ostringstream os;
    os << std::left;
    for (const auto& row : rows) {
        os << (row.pass ? "PASS" : "FAIL") << "  [" << std::setw(2)
           << row.criterion << "] " << std::setw(48) << row.name
           << " measured=" << io::fmt17(row.measured);
        if (row.comparison == "abs")
            os << " expected=" << io::fmt17(row.expected)
               << " tol=" << io::fmt17(row.tolerance);
        else if (row.comparison == "le")
            os << " bound<=" << io::fmt17(row.expected);
        else if (row.comparison == "ge")
            os << " bound>=" << io::fmt17(row.expected);
        else
            os << " expected=" << io::fmt17(row.expected);
        os << " (" << std::fixed << std::setprecision(2) << row.seconds << "s)"
           << std::defaultfloat << '\n';
    }
    os << (all_pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << " in "
       << std::fixed << std::setprecision(1) << total_seconds << "s\n";
    return os.str();
}

io::Json VerifyReport::json() const {
    io::Json j;
    io::Json arr = io::Json::array();
    for (const auto& row : rows) {
        io::Json r;
        r["criterion"] = row.criterion;
        r["name"] = row.name;
        r["measured"] = row.measured;
        r["expected"] = row.expected;
        r["tolerance"] = row.tolerance;
        r["comparison"] = row.comparison;
        r["pass"] = row.pass;
        r["seconds"] = row.seconds;
        arr.push_back(r);
    }
    j["checks"] = arr;
    j["all_pass"] = all_pass;
    j["total_seconds"] = total_seconds;
    return j;
}

}  // namespace pushout
