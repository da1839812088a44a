#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "pushout/frame.hpp"
#include "pushout/region.hpp"
#include "pushout/tube.hpp"

namespace pushout::io {

using Json = nlohmann::ordered_json;

// 17 significant digits round-trips doubles exactly
std::string fmt17(double v);

void write_curve_csv(std::ostream& os, const SampledCurve& curve);
void write_frames_csv(std::ostream& os, const FrameField& frames);
void write_focal_csv(std::ostream& os, const SampledCurve& curve,
                     const std::vector<FocalLine>& lines);
void write_central_csv(std::ostream& os, const SupportPolygon& poly);

// P5 binary, 255 = excluded band, 0 = free
void write_pgm(std::ostream& os, const PushoutRaster& raster);

// support polygon as a polyline plus the excluded lines as segments
void write_svg(std::ostream& os, const SupportPolygon& poly,
               const std::vector<FocalLine>& lines, double view_half_width);

// v/f records, counterclockwise seen from outside for circle fibers
void write_obj(std::ostream& os, const TubeMesh& mesh);

Json holonomy_json(const HolonomyResult& result);
Json raster_json(const PushoutRaster& raster);
Json tube_json(const TubeMesh& mesh);

CurveSpec curve_spec_from_json(const Json& j);
CurveSpec load_curve_spec(const std::string& path);
FiberShape fiber_from_json(const Json& j);
FiberShape load_fiber(const std::string& path);

void write_file(const std::string& path, const std::string& bytes);

}  // namespace pushout::io
