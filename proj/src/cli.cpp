#include "pushout/cli.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pushout/verify.hpp"

namespace pushout::cli {

namespace {

struct Options {
    std::string curve_file;
    std::string fiber_file;
    std::string out_dir;
    int samples = 0;  // 0 keeps the config value
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double window = 0.0;  // 0 selects 2.5 * rho
    int res = defaults::kRasterRes;
    double band = 0.0;  // 0 selects one cell
    int ntheta = defaults::kThetaSamples;
    int loops = 0;  // 0 selects the fiber closure count
    int stride = 1;
    int truncate = defaults::kTruncate;
    double closure_tol = defaults::kClosureTol;
    int n_max = defaults::kOrbitMax;
    bool json = false;
};

CurveSpec load_spec(const Options& opt) {
    if (opt.curve_file.empty()) throw BadSpec("a --curve config is required");
    CurveSpec spec = io::load_curve_spec(opt.curve_file);
    if (opt.samples > 0) spec.samples = opt.samples;
    if (std::isfinite(opt.alpha)) {
        if (auto* sheared = std::get_if<CurveSpec::Sheared>(&spec.family))
            sheared->alpha = opt.alpha;
        else
            throw BadSpec("--alpha only applies to sheared curves");
    }
    spec.validate();
    return spec;
}

struct Pipeline {
    SampledCurve curve;
    FrameField frames;
    HolonomyResult hol;
    std::vector<FocalLine> lines;
    double rho = 0.0;
};

Pipeline run_pipeline(const CurveSpec& spec, const Options& opt) {
    Pipeline p;
    p.curve = build_curve(spec);
    p.frames = transport_frame(p.curve, initial_frame(p.curve));
    p.frames.curve = &p.curve;
    p.hol = holonomy(p.curve, /*allow_open=*/!p.curve.closed, opt.closure_tol,
                     opt.n_max);
    p.lines = dedup_lines(focal_lines(p.curve, p.frames));
    p.rho = min_curvature_radius(p.curve);
    return p;
}

void emit(const io::Json& summary, bool pretty) {
    std::cout << (pretty ? summary.dump(2) : summary.dump()) << '\n';
}

int cmd_curve(const Options& opt) {
    const CurveSpec spec = load_spec(opt);
    const SampledCurve curve = build_curve(spec);
    if (!opt.out_dir.empty()) {
        std::ostringstream os;
        io::write_curve_csv(os, curve);
        io::write_file(opt.out_dir + "/curve.csv", os.str());
    }
    io::Json summary;
    summary["command"] = "curve";
    summary["samples"] = curve.unique();
    summary["closed"] = curve.closed;
    summary["length"] = curve.total_length;
    summary["min_curvature_radius"] = min_curvature_radius(curve);
    emit(summary, opt.json);
    return 0;
}

int cmd_holonomy(const Options& opt) {
    const CurveSpec spec = load_spec(opt);
    const Pipeline p = run_pipeline(spec, opt);
    const io::Json hj = io::holonomy_json(p.hol);
    if (!opt.out_dir.empty()) {
        std::ostringstream os;
        io::write_frames_csv(os, p.frames);
        io::write_file(opt.out_dir + "/frames.csv", os.str());
        io::write_file(opt.out_dir + "/holonomy.json", hj.dump(2) + "\n");
    }
    io::Json summary = hj;
    summary["command"] = "holonomy";
    emit(summary, opt.json);
    return 0;
}

int cmd_focal(const Options& opt) {
    const CurveSpec spec = load_spec(opt);
    const Pipeline p = run_pipeline(spec, opt);
    const auto expanded =
        orbit_lines(p.lines, p.hol.g, p.hol.orbit_order, opt.truncate);
    if (!opt.out_dir.empty()) {
        std::ostringstream os;
        io::write_focal_csv(os, p.curve, expanded);
        io::write_file(opt.out_dir + "/focal.csv", os.str());
    }
    io::Json summary;
    summary["command"] = "focal";
    summary["lines"] = p.lines.size();
    summary["expanded"] = expanded.size();
    summary["min_curvature_radius"] = p.rho;
    summary["orbit_order"] =
        p.hol.orbit_order ? io::Json(*p.hol.orbit_order) : io::Json(nullptr);
    emit(summary, opt.json);
    return 0;
}

int cmd_pushout(const Options& opt) {
    const CurveSpec spec = load_spec(opt);
    const Pipeline p = run_pipeline(spec, opt);
    const double w = opt.window > 0.0 ? opt.window : defaults::kWindowFactor * p.rho;
    const double band = opt.band > 0.0 ? opt.band : 2.0 * w / opt.res;

    std::vector<FocalLine> reachable;
    for (const auto& line : p.lines)
        if (line.d <= w * std::numbers::sqrt2 + band) reachable.push_back(line);
    const auto expanded =
        orbit_lines(reachable, p.hol.g, p.hol.orbit_order, opt.truncate);
    const auto raster = raster_pushout(expanded, w, opt.res, band);

    const auto region_lines = orbit_lines(collapse_min_offset(p.lines), p.hol.g,
                                          p.hol.orbit_order, opt.truncate);
    const auto region = central_region(region_lines, opt.ntheta);

    if (!opt.out_dir.empty()) {
        { std::ostringstream os; io::write_pgm(os, raster);
          io::write_file(opt.out_dir + "/raster.pgm", os.str()); }
        io::write_file(opt.out_dir + "/raster.json",
                       io::raster_json(raster).dump(2) + "\n");
        { std::ostringstream os; io::write_central_csv(os, region);
          io::write_file(opt.out_dir + "/central.csv", os.str()); }
        { std::ostringstream os; io::write_svg(os, region, region_lines, w);
          io::write_file(opt.out_dir + "/region.svg", os.str()); }
    }

    double origin_area = 0.0;
    for (const auto& comp : raster.components)
        if (comp.contains_origin) origin_area = std::max(origin_area, comp.area);

    io::Json summary;
    summary["command"] = "pushout";
    summary["min_curvature_radius"] = p.rho;
    summary["window"] = w;
    summary["band"] = band;
    summary["components"] = raster.components.size();
    summary["origin_component_area"] = origin_area;
    summary["side_estimate"] = std::sqrt(origin_area);
    summary["min_rho"] = region.min_rho();
    summary["window_too_small"] = raster.window_too_small;
    emit(summary, opt.json);
    return 0;
}

int cmd_tube(const Options& opt) {
    const CurveSpec spec = load_spec(opt);
    if (opt.fiber_file.empty()) throw BadSpec("a --fiber config is required");
    const FiberShape fiber = io::load_fiber(opt.fiber_file);
    const Pipeline p = run_pipeline(spec, opt);

    SweepOptions sweep_options;
    if (opt.loops > 0) sweep_options.loops = opt.loops;
    sweep_options.ring_stride = opt.stride;
    const TubeMesh mesh = sweep_tube(p.curve, p.frames, fiber, sweep_options);

    if (!opt.out_dir.empty()) {
        std::ostringstream os;
        io::write_obj(os, mesh);
        io::write_file(opt.out_dir + "/tube.obj", os.str());
        io::write_file(opt.out_dir + "/tube.json",
                       io::tube_json(mesh).dump(2) + "\n");
    }
    io::Json summary = io::tube_json(mesh);
    summary["command"] = "tube";
    summary["vertices"] = mesh.vertices.cols();
    summary["rings"] = mesh.rings;
    emit(summary, opt.json);
    return 0;
}

int cmd_verify(const Options& opt) {
    VerifyOptions vopt;
    if (opt.samples > 0) vopt.samples = opt.samples;
    vopt.closure_tol = opt.closure_tol;
    vopt.n_max = opt.n_max;
    if (!opt.out_dir.empty()) vopt.artifact_dir = opt.out_dir + "/artifacts";
    const VerifyReport report = run_verify(vopt);

    std::cout << report.text();
    if (!opt.out_dir.empty()) {
        io::write_file(opt.out_dir + "/report.json", report.json().dump(2) + "\n");
        io::write_file(opt.out_dir + "/report.txt", report.text());
    }
    io::Json summary;
    summary["command"] = "verify";
    summary["all_pass"] = report.all_pass;
    summary["checks"] = report.rows.size();
    std::size_t failed = 0;
    for (const auto& row : report.rows) failed += row.pass ? 0 : 1;
    summary["failed"] = failed;
    emit(opt.json ? report.json() : summary, opt.json);
    return report.all_pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"normal-bundle transport, focal lines, push-out regions and "
                 "partial tubes for immersed curves"};
    app.name("pushout");
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool needs_curve) {
        if (needs_curve)
            sub->add_option("--curve", opt.curve_file, "curve config (JSON)");
        sub->add_option("--samples", opt.samples, "sample count override");
        sub->add_option("--alpha", opt.alpha, "shear angle override");
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_flag("--json", opt.json, "print the full JSON result");
        sub->add_option("--closure-tol", opt.closure_tol, "orbit closure tolerance");
        sub->add_option("--nmax", opt.n_max, "orbit search bound");
    };

    auto* curve = app.add_subcommand("curve", "sample a curve to CSV");
    add_common(curve, true);

    auto* holonomy = app.add_subcommand("holonomy", "transport frames and holonomy");
    add_common(holonomy, true);

    auto* focal = app.add_subcommand("focal", "critical-normal lines");
    add_common(focal, true);
    focal->add_option("--truncate", opt.truncate, "orbit powers for open orbits");

    auto* pushout = app.add_subcommand("pushout", "push-out raster and central region");
    add_common(pushout, true);
    pushout->add_option("--window", opt.window, "window half-width");
    pushout->add_option("--res", opt.res, "raster resolution");
    pushout->add_option("--band", opt.band, "exclusion band half-width");
    pushout->add_option("--ntheta", opt.ntheta, "support directions");
    pushout->add_option("--truncate", opt.truncate, "orbit powers for open orbits");

    auto* tube = app.add_subcommand("tube", "sweep a partial tube");
    add_common(tube, true);
    tube->add_option("--fiber", opt.fiber_file, "fiber config (JSON)");
    tube->add_option("--loops", opt.loops, "loop count override");
    tube->add_option("--stride", opt.stride, "ring decimation stride");

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    add_common(verify, false);

    std::vector<char*> argv;
    std::vector<std::string> storage;
    storage.emplace_back("pushout");
    for (const auto& a : args) storage.push_back(a);
    argv.reserve(storage.size());
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (curve->parsed()) return cmd_curve(opt);
        if (holonomy->parsed()) return cmd_holonomy(opt);
        if (focal->parsed()) return cmd_focal(opt);
        if (pushout->parsed()) return cmd_pushout(opt);
        if (tube->parsed()) return cmd_tube(opt);
        if (verify->parsed()) return cmd_verify(opt);
    } catch (const DomainError& e) {
        io::Json err;
        err["error"] = e.name();
        err["message"] = e.what();
        std::cerr << err.dump() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace pushout::cli
