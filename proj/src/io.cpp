#include "pushout/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pushout::io {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_curve_csv(std::ostream& os, const SampledCurve& curve) {
    if (curve.dim() != 3)
        throw BadSpec("curve CSV export is three-dimensional");
    os << "s,x,y,z,tx,ty,tz,kx,ky,kz\n";
    for (int i = 0; i < curve.count(); ++i) {
        os << fmt17(curve.s[i]);
        for (int c = 0; c < 3; ++c) os << ',' << fmt17(curve.position(c, i));
        for (int c = 0; c < 3; ++c) os << ',' << fmt17(curve.tangent(c, i));
        for (int c = 0; c < 3; ++c) os << ',' << fmt17(curve.curvature(c, i));
        os << '\n';
    }
}

void write_frames_csv(std::ostream& os, const FrameField& frames) {
    if (!frames.curve || frames.curve->dim() != 3 || frames.k != 2)
        throw BadSpec("frame CSV export needs a 3-dimensional curve");
    os << "s,e1x,e1y,e1z,e2x,e2y,e2z\n";
    for (int i = 0; i < frames.count(); ++i) {
        os << fmt17(frames.curve->s[i]);
        const auto frame = frames.at(i);
        for (int j = 0; j < 2; ++j)
            for (int c = 0; c < 3; ++c) os << ',' << fmt17(frame(c, j));
        os << '\n';
    }
}

void write_focal_csv(std::ostream& os, const SampledCurve& curve,
                     const std::vector<FocalLine>& lines) {
    os << "ux,uy,d,source_s,orbit_power\n";
    for (const auto& line : lines) {
        if (line.u.size() != 2)
            throw BadSpec("focal CSV export needs plane lines");
        const double source_s =
            line.source_sample >= 0 ? curve.s[line.source_sample] : -1.0;
        os << fmt17(line.u[0]) << ',' << fmt17(line.u[1]) << ',' << fmt17(line.d)
           << ',' << fmt17(source_s) << ',' << line.orbit_power << '\n';
    }
}

void write_central_csv(std::ostream& os, const SupportPolygon& poly) {
    os << "theta,rho\n";
    for (Eigen::Index i = 0; i < poly.thetas.size(); ++i)
        os << fmt17(poly.thetas[i]) << ',' << fmt17(poly.rho[i]) << '\n';
}

void write_pgm(std::ostream& os, const PushoutRaster& raster) {
    const int n = raster.resolution;
    os << "P5\n" << n << ' ' << n << "\n255\n";
    // top row first
    std::string row(static_cast<std::size_t>(n), '\0');
    for (int iy = n - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < n; ++ix)
            row[ix] = raster.excluded_at(ix, iy) ? static_cast<char>(255) : 0;
        os.write(row.data(), n);
    }
}

void write_svg(std::ostream& os, const SupportPolygon& poly,
               const std::vector<FocalLine>& lines, double view_half_width) {
    const double w = view_half_width;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt17(-w)
       << ' ' << fmt17(-w) << ' ' << fmt17(2 * w) << ' ' << fmt17(2 * w)
       << "\">\n";
    os << "<g transform=\"scale(1,-1)\">\n";
    const std::string stroke = fmt17(w / 400.0);
    for (const auto& line : lines) {
        if (line.u.size() != 2) continue;
        // segment of {<x,u> = d} clipped to the viewport circle
        const double ux = line.u[0], uy = line.u[1], d = line.d;
        if (d > w * 1.5) continue;
        const double px = ux * d, py = uy * d;
        const double ex = -uy, ey = ux;
        const double reach = 2.0 * w;
        os << "<line x1=\"" << fmt17(px - reach * ex) << "\" y1=\""
           << fmt17(py - reach * ey) << "\" x2=\"" << fmt17(px + reach * ex)
           << "\" y2=\"" << fmt17(py + reach * ey)
           << "\" stroke=\"#888888\" stroke-width=\"" << stroke << "\"/>\n";
    }
    if (poly.vertices.cols() > 0) {
        os << "<polygon points=\"";
        for (Eigen::Index i = 0; i < poly.vertices.cols(); ++i) {
            if (i) os << ' ';
            os << fmt17(poly.vertices(0, i)) << ',' << fmt17(poly.vertices(1, i));
        }
        os << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" << stroke
           << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
}

void write_obj(std::ostream& os, const TubeMesh& mesh) {
    for (Eigen::Index i = 0; i < mesh.vertices.cols(); ++i)
        os << "v " << fmt17(mesh.vertices(0, i)) << ' '
           << fmt17(mesh.vertices(1, i)) << ' ' << fmt17(mesh.vertices(2, i))
           << '\n';
    for (const auto& quad : mesh.quads)
        os << "f " << quad[0] + 1 << ' ' << quad[1] + 1 << ' ' << quad[2] + 1
           << ' ' << quad[3] + 1 << '\n';
    for (const auto& seg : mesh.segments)
        os << "l " << seg[0] + 1 << ' ' << seg[1] + 1 << '\n';
}

Json holonomy_json(const HolonomyResult& result) {
    Json j;
    Json matrix = Json::array();
    for (Eigen::Index r = 0; r < result.g.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < result.g.cols(); ++c)
            row.push_back(result.g(r, c));
        matrix.push_back(row);
    }
    j["matrix"] = matrix;
    j["angle"] = result.angle ? Json(*result.angle) : Json(nullptr);
    j["orbit_order"] = result.orbit_order ? Json(*result.orbit_order) : Json(nullptr);
    return j;
}

Json raster_json(const PushoutRaster& raster) {
    Json j;
    j["window"] = raster.window;
    j["resolution"] = raster.resolution;
    j["band"] = raster.band;
    j["window_too_small"] = raster.window_too_small;
    Json comps = Json::array();
    for (const auto& c : raster.components) {
        Json jc;
        jc["cell_count"] = c.cell_count;
        jc["area"] = c.area;
        jc["convexity_defect"] = c.convexity_defect;
        jc["max_inscribed_radius"] = c.max_inscribed_radius;
        jc["touches_window_edge"] = c.touches_window_edge;
        jc["contains_origin"] = c.contains_origin;
        comps.push_back(jc);
    }
    j["components"] = comps;
    return j;
}

Json tube_json(const TubeMesh& mesh) {
    Json j;
    j["loops_used"] = mesh.loops_used;
    j["closure_error"] = mesh.closure_error;
    j["min_focal_margin"] = mesh.min_focal_margin;
    return j;
}

CurveSpec curve_spec_from_json(const Json& j) {
    CurveSpec spec;
    const std::string family = j.value("family", "");
    if (family == "tricorner") {
        spec.family = CurveSpec::TriCorner{};
    } else if (family == "sheared") {
        CurveSpec::Sheared f;
        if (!j.contains("alpha")) throw BadSpec("sheared curve needs \"alpha\"");
        f.alpha = j.at("alpha").get<double>();
        spec.family = f;
    } else if (family == "cover") {
        CurveSpec::Cover f;
        if (!j.contains("base")) throw BadSpec("cover needs a \"base\" spec");
        f.base = std::make_shared<CurveSpec>(curve_spec_from_json(j.at("base")));
        f.n = j.value("n", 2);
        spec.family = f;
    } else if (family == "spike") {
        CurveSpec::Spike f;
        f.n = j.value("n", 1);
        f.spike_scale = j.value("spike_scale", defaults::kSpikeScale);
        spec.family = f;
    } else if (family == "circle") {
        CurveSpec::Circle f;
        f.radius = j.value("radius", 1.0);
        spec.family = f;
    } else if (family == "helix") {
        CurveSpec::HelixSegment f;
        f.radius = j.value("radius", 1.0);
        f.pitch = j.value("pitch", 1.0);
        f.turns = j.value("turns", 1.0);
        spec.family = f;
    } else if (family == "imported") {
        CurveSpec::Imported f;
        if (!j.contains("points")) throw BadSpec("imported curve needs \"points\"");
        for (const auto& row : j.at("points")) {
            Vec p(row.size());
            for (std::size_t c = 0; c < row.size(); ++c) p[c] = row[c].get<double>();
            f.points.push_back(p);
        }
        f.closed = j.value("closed", false);
        if (!f.points.empty())
            spec.ambient_dim = static_cast<int>(f.points.front().size());
        spec.family = f;
    } else {
        throw BadSpec("unknown curve family \"" + family + "\"");
    }
    if (j.contains("samples")) spec.samples = j.at("samples").get<int>();
    if (j.contains("ambient_dim")) spec.ambient_dim = j.at("ambient_dim").get<int>();
    spec.validate();
    return spec;
}

CurveSpec load_curve_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadSpec("cannot open curve config " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw BadSpec(std::string("curve config parse error: ") + e.what());
    }
    return curve_spec_from_json(j);
}

FiberShape fiber_from_json(const Json& j) {
    FiberShape fiber;
    const std::string kind = j.value("kind", "");
    if (kind == "point") {
        FiberShape::Point p;
        if (j.contains("x")) {
            p.x[0] = j.at("x").at(0).get<double>();
            p.x[1] = j.at("x").at(1).get<double>();
        }
        fiber.kind = p;
    } else if (kind == "circle") {
        FiberShape::Circle c;
        c.radius = j.value("radius", 1.0);
        if (j.contains("center")) {
            c.center[0] = j.at("center").at(0).get<double>();
            c.center[1] = j.at("center").at(1).get<double>();
        }
        fiber.kind = c;
    } else if (kind == "polygon") {
        FiberShape::Polygon p;
        if (!j.contains("vertices")) throw BadSpec("polygon fiber needs \"vertices\"");
        for (const auto& row : j.at("vertices"))
            p.vertices.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        fiber.kind = p;
    } else {
        throw BadSpec("unknown fiber kind \"" + kind + "\"");
    }
    if (j.contains("samples_around"))
        fiber.samples_around = j.at("samples_around").get<int>();
    fiber.validate();
    return fiber;
}

FiberShape load_fiber(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadSpec("cannot open fiber config " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw BadSpec(std::string("fiber config parse error: ") + e.what());
    }
    return fiber_from_json(j);
}

void write_file(const std::string& path, const std::string& bytes) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw BadSpec("cannot write " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace pushout::io
