#include "pushout/focal.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pushout {

std::vector<FocalLine> focal_lines(const SampledCurve& curve,
                                   const FrameField& frames,
                                   double kappa_min) {
    if (frames.curve != &curve)
        throw BadSpec("frame field was built over a different curve");
    const int k = frames.k;
    std::vector<FocalLine> out;
    out.reserve(curve.unique());
    for (int i = 0; i < curve.unique(); ++i) {
        const Vec kv_frame = frames.at(i).transpose() * curve.curvature.col(i);
        const double kn = kv_frame.norm();
        if (kn <= kappa_min) continue;
        FocalLine line;
        line.u = kv_frame / kn;
        line.d = 1.0 / kn;
        line.source_sample = i;
        line.orbit_power = 0;
        out.push_back(std::move(line));
    }
    (void)k;
    return out;
}

std::vector<FocalLine> orbit_lines(const std::vector<FocalLine>& lines,
                                   const Mat& g, std::optional<int> order,
                                   int n_truncate) {
    const int k = static_cast<int>(g.rows());
    if ((g.transpose() * g - Mat::Identity(k, k)).norm() > 1e-8)
        throw BadSpec("orbit expansion needs an orthogonal matrix");

    std::vector<long> powers;
    if (order) {
        for (long m = 0; m < *order; ++m) powers.push_back(m);
    } else {
        for (long m = -n_truncate; m <= n_truncate; ++m) powers.push_back(m);
    }

    std::vector<FocalLine> out;
    out.reserve(lines.size() * powers.size());
    for (const long m : powers) {
        const Mat gm = orthogonal_power(Mat(g.transpose()), m);
        for (const auto& line : lines) {
            FocalLine image = line;
            image.u = gm * line.u;
            image.orbit_power = m;
            out.push_back(std::move(image));
        }
    }
    return dedup_lines(std::move(out));
}

std::vector<FocalLine> dedup_lines(std::vector<FocalLine> lines) {
    if (lines.size() < 2) return lines;
    const int k = static_cast<int>(lines.front().u.size());
    if (k != 2) return lines;  // angular sort is only set up for plane lines

    std::vector<std::pair<double, std::size_t>> keyed(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i)
        keyed[i] = {std::atan2(lines[i].u[1], lines[i].u[0]), i};
    std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        const auto& la = lines[a.second];
        const auto& lb = lines[b.second];
        if (la.d != lb.d) return la.d < lb.d;
        return a.second < b.second;
    });

    auto same = [&](const FocalLine& a, const FocalLine& b) {
        return std::abs(a.u.dot(b.u) - 1.0) < 1e-10 &&
               std::abs(a.d - b.d) < 1e-10 * std::max(a.d, b.d);
    };

    std::vector<FocalLine> out;
    out.reserve(lines.size());
    for (const auto& [angle, idx] : keyed) {
        (void)angle;
        if (!out.empty() && same(out.back(), lines[idx])) continue;
        out.push_back(lines[idx]);
    }
    // wrap-around pair (angles near +-pi)
    if (out.size() > 1 && same(out.front(), out.back())) out.pop_back();
    return out;
}

std::vector<FocalLine> filter_window(const std::vector<FocalLine>& lines,
                                     double w, double band) {
    std::vector<FocalLine> out;
    out.reserve(lines.size());
    for (const auto& line : lines) {
        if (line.u.size() != 2) {
            out.push_back(line);
            continue;
        }
        const double reach = w * (std::abs(line.u[0]) + std::abs(line.u[1]));
        if (line.d <= reach + band) out.push_back(line);
    }
    return out;
}

std::vector<FocalLine> collapse_min_offset(const std::vector<FocalLine>& lines,
                                           double angle_quantum) {
    if (lines.empty() || lines.front().u.size() != 2) return lines;
    std::map<long long, std::size_t> best;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const double angle = std::atan2(lines[i].u[1], lines[i].u[0]);
        const long long key = std::llround(angle / angle_quantum);
        auto [it, inserted] = best.try_emplace(key, i);
        if (!inserted && lines[i].d < lines[it->second].d) it->second = i;
    }
    std::vector<FocalLine> out;
    out.reserve(best.size());
    for (const auto& [key, idx] : best) {
        (void)key;
        out.push_back(lines[idx]);
    }
    return out;
}

}  // namespace pushout
