#include "pushout/region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <numbers>
#include <thread>

namespace pushout {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int worker_count() {
    if (const char* env = std::getenv("PUSHOUT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return std::min(n, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

void check_plane_lines(const std::vector<FocalLine>& lines) {
    for (const auto& line : lines) {
        if (line.u.size() != 2)
            throw BadSpec("push-out computations need 2-dimensional normals");
        if (!(line.d > 0.0))
            throw BadSpec("focal line offsets must be positive");
    }
}

// Marks the cells of one line band into `grid` for rows [row0, row1).
void mark_line(const FocalLine& line, double w, int n, double band,
               int row0, int row1, std::uint8_t* grid) {
    const double cell = 2.0 * w / n;
    const double ux = line.u[0], uy = line.u[1], d = line.d;
    auto center = [&](int idx) { return -w + (idx + 0.5) * cell; };
    auto to_cell_floor = [&](double x) {
        return static_cast<int>(std::floor((x + w) / cell - 0.5));
    };
    auto to_cell_ceil = [&](double x) {
        return static_cast<int>(std::ceil((x + w) / cell - 0.5));
    };

    if (std::abs(uy) >= std::abs(ux)) {
        // line closer to horizontal: iterate columns, bound rows
        const double half = band / std::abs(uy);
        for (int ix = 0; ix < n; ++ix) {
            const double y0 = (d - ux * center(ix)) / uy;
            int lo = to_cell_ceil(y0 - half);
            int hi = to_cell_floor(y0 + half);
            lo = std::max(lo, row0);
            hi = std::min(hi, row1 - 1);
            for (int iy = lo; iy <= hi; ++iy)
                grid[static_cast<std::size_t>(iy) * n + ix] = 1;
        }
    } else {
        const double half = band / std::abs(ux);
        const int lo_row = std::max(row0, 0), hi_row = std::min(row1, n);
        for (int iy = lo_row; iy < hi_row; ++iy) {
            const double x0 = (d - uy * center(iy)) / ux;
            int lo = std::max(to_cell_ceil(x0 - half), 0);
            int hi = std::min(to_cell_floor(x0 + half), n - 1);
            for (int ix = lo; ix <= hi; ++ix)
                grid[static_cast<std::size_t>(iy) * n + ix] = 1;
        }
    }
}

// Exact 1D squared distance transform (lower envelope of parabolas).
void dt_1d(const std::vector<double>& f, std::vector<double>& d,
           std::vector<int>& v, std::vector<double>& z, int n) {
    int kk = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            const int p = v[kk];
            s = ((f[q] + q * q) - (f[p] + p * p)) / (2.0 * q - 2.0 * p);
            if (s > z[kk]) break;
            --kk;
        }
        ++kk;
        v[kk] = q;
        z[kk] = s;
        z[kk + 1] = kInf;
    }
    kk = 0;
    for (int q = 0; q < n; ++q) {
        while (z[kk + 1] < q) ++kk;
        const double dq = q - v[kk];
        d[q] = dq * dq + f[v[kk]];
    }
}

// Squared Euclidean distance (in cell units) from every cell to the nearest
// excluded cell or to the virtual obstacle ring just outside the window.
std::vector<double> distance_squared(const std::vector<std::uint8_t>& excluded,
                                     int n) {
    // large finite stand-in for "no obstacle here"; infinities would make the
    // parabola intersections NaN
    const double far = 1e18;
    const int m = n + 2;  // padded with an obstacle ring
    std::vector<double> field(static_cast<std::size_t>(m) * m, 0.0);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            field[static_cast<std::size_t>(iy + 1) * m + (ix + 1)] =
                excluded[static_cast<std::size_t>(iy) * n + ix] ? 0.0 : far;

    std::vector<double> col(m), out(m), z(m + 1);
    std::vector<int> v(m);
    for (int x = 0; x < m; ++x) {
        for (int y = 0; y < m; ++y) col[y] = field[static_cast<std::size_t>(y) * m + x];
        dt_1d(col, out, v, z, m);
        for (int y = 0; y < m; ++y) field[static_cast<std::size_t>(y) * m + x] = out[y];
    }
    std::vector<double> row(m);
    for (int y = 0; y < m; ++y) {
        for (int x = 0; x < m; ++x) row[x] = field[static_cast<std::size_t>(y) * m + x];
        dt_1d(row, out, v, z, m);
        for (int x = 0; x < m; ++x) field[static_cast<std::size_t>(y) * m + x] = out[x];
    }

    std::vector<double> result(static_cast<std::size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            result[static_cast<std::size_t>(iy) * n + ix] =
                field[static_cast<std::size_t>(iy + 1) * m + (ix + 1)];
    return result;
}

double convex_hull_area(std::vector<std::pair<long, long>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return 0.0;
    auto cross = [](const std::pair<long, long>& o, const std::pair<long, long>& a,
                    const std::pair<long, long>& b) {
        return (a.first - o.first) * (b.second - o.second) -
               (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<long, long>> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    double area2 = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& p = hull[i];
        const auto& q = hull[(i + 1) % hull.size()];
        area2 += static_cast<double>(p.first) * q.second -
                 static_cast<double>(q.first) * p.second;
    }
    return std::abs(area2) / 2.0;
}

}  // namespace

double SupportPolygon::min_rho() const {
    double best = kInf;
    for (Eigen::Index i = 0; i < rho.size(); ++i) best = std::min(best, rho[i]);
    return best;
}

SupportPolygon central_region(const std::vector<FocalLine>& lines, int n_theta) {
    if (n_theta < 4) throw BadSpec("n_theta must be at least 4");
    check_plane_lines(lines);
    const auto reduced = collapse_min_offset(lines);

    SupportPolygon poly;
    poly.thetas.resize(n_theta);
    poly.rho.resize(n_theta);
    for (int j = 0; j < n_theta; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / n_theta;
        poly.thetas[j] = theta;
        const double cx = std::cos(theta), cy = std::sin(theta);
        double best = kInf;
        for (const auto& line : reduced) {
            const double c = line.u[0] * cx + line.u[1] * cy;
            if (c > 1e-15) best = std::min(best, line.d / c);
        }
        if (!(best > 0.0))
            throw BadSpec("support radius must stay positive");
        poly.rho[j] = best;
    }

    int finite = 0;
    for (int j = 0; j < n_theta; ++j)
        if (std::isfinite(poly.rho[j])) ++finite;
    poly.vertices.resize(2, finite);
    int col = 0;
    for (int j = 0; j < n_theta; ++j) {
        if (!std::isfinite(poly.rho[j])) continue;
        poly.vertices(0, col) = poly.rho[j] * std::cos(poly.thetas[j]);
        poly.vertices(1, col) = poly.rho[j] * std::sin(poly.thetas[j]);
        ++col;
    }
    return poly;
}

PushoutRaster raster_pushout(const std::vector<FocalLine>& lines, double w,
                             int n, double band) {
    if (n < 64) throw BadSpec("raster resolution must be at least 64");
    if (!(w > 0.0)) throw BadSpec("window half-width must be positive");
    const double cell = 2.0 * w / n;
    if (band < cell / 2.0)
        throw BadSpec("band must be at least half a cell");
    check_plane_lines(lines);

    PushoutRaster raster;
    raster.window = w;
    raster.resolution = n;
    raster.band = band;
    raster.excluded.assign(static_cast<std::size_t>(n) * n, 0);

    const auto in_window = filter_window(lines, w, band);

    const int workers =
        std::min(worker_count(), std::max<int>(1, static_cast<int>(in_window.size())));
    if (workers <= 1 || in_window.size() < 512) {
        for (const auto& line : in_window)
            mark_line(line, w, n, band, 0, n, raster.excluded.data());
    } else {
        // each worker marks its own buffer; the merge is an order-independent OR
        std::vector<std::vector<std::uint8_t>> buffers(
            workers, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 0));
        std::vector<std::thread> pool;
        const std::size_t chunk = (in_window.size() + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                const std::size_t lo = t * chunk;
                const std::size_t hi = std::min(in_window.size(), lo + chunk);
                for (std::size_t i = lo; i < hi; ++i)
                    mark_line(in_window[i], w, n, band, 0, n, buffers[t].data());
            });
        }
        for (auto& th : pool) th.join();
        for (int t = 0; t < workers; ++t)
            for (std::size_t i = 0; i < raster.excluded.size(); ++i)
                raster.excluded[i] |= buffers[t][i];
    }

    // components of the complement, 4-connected, row-major seeds
    raster.component.assign(raster.excluded.size(), -1);
    std::deque<int> queue;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t at = static_cast<std::size_t>(iy) * n + ix;
            if (raster.excluded[at] || raster.component[at] >= 0) continue;
            const int id = static_cast<int>(raster.components.size());
            raster.components.emplace_back();
            raster.component[at] = id;
            queue.clear();
            queue.push_back(static_cast<int>(at));
            while (!queue.empty()) {
                const int cur = queue.front();
                queue.pop_front();
                const int cx = cur % n, cy = cur / n;
                auto visit = [&](int vx, int vy) {
                    if (vx < 0 || vx >= n || vy < 0 || vy >= n) return;
                    const std::size_t vat = static_cast<std::size_t>(vy) * n + vx;
                    if (raster.excluded[vat] || raster.component[vat] >= 0) return;
                    raster.component[vat] = id;
                    queue.push_back(static_cast<int>(vat));
                };
                visit(cx + 1, cy);
                visit(cx - 1, cy);
                visit(cx, cy + 1);
                visit(cx, cy - 1);
            }
        }
    }

    // per component statistics
    const int ncomp = static_cast<int>(raster.components.size());
    std::vector<std::vector<std::pair<long, long>>> row_extreme(ncomp);
    std::vector<std::vector<int>> col_min(ncomp), col_max(ncomp);
    for (int c = 0; c < ncomp; ++c) {
        col_min[c].assign(n, n);
        col_max[c].assign(n, -1);
    }
    const auto dist2 = distance_squared(raster.excluded, n);
    std::vector<double> best_d2(ncomp, 0.0);

    for (int iy = 0; iy < n; ++iy) {
        int run_comp = -1;
        int run_start = 0;
        auto flush = [&](int end_ix) {
            if (run_comp < 0) return;
            for (const long ix : {static_cast<long>(run_start), static_cast<long>(end_ix - 1)})
                for (long dx = 0; dx <= 1; ++dx)
                    for (long dy = 0; dy <= 1; ++dy)
                        row_extreme[run_comp].emplace_back(ix + dx, iy + dy);
        };
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t at = static_cast<std::size_t>(iy) * n + ix;
            const int c = raster.component[at];
            if (c != run_comp) {
                flush(ix);
                run_comp = c;
                run_start = ix;
            }
            if (c < 0) continue;
            auto& stats = raster.components[c];
            stats.cell_count += 1;
            if (ix == 0 || iy == 0 || ix == n - 1 || iy == n - 1)
                stats.touches_window_edge = true;
            col_min[c][ix] = std::min(col_min[c][ix], iy);
            col_max[c][ix] = std::max(col_max[c][ix], iy);
            best_d2[c] = std::max(best_d2[c], dist2[at]);
        }
        flush(n);
    }

    const double cell_area = cell * cell;
    for (int c = 0; c < ncomp; ++c) {
        auto pts = row_extreme[c];
        for (int ix = 0; ix < n; ++ix) {
            if (col_max[c][ix] < 0) continue;
            for (const long iy : {static_cast<long>(col_min[c][ix]),
                                  static_cast<long>(col_max[c][ix])})
                for (long dx = 0; dx <= 1; ++dx)
                    for (long dy = 0; dy <= 1; ++dy)
                        pts.emplace_back(ix + dx, iy + dy);
        }
        auto& stats = raster.components[c];
        stats.area = stats.cell_count * cell_area;
        const double hull = convex_hull_area(std::move(pts)) * cell_area;
        stats.convexity_defect = stats.area > 0.0 ? hull / stats.area - 1.0 : 0.0;
        stats.max_inscribed_radius =
            std::max(0.0, (std::sqrt(best_d2[c]) - 0.5) * cell);
    }

    // the cell nearest the origin must stay free (all offsets are positive)
    const int mid = n / 2;
    for (const int ix : {mid - 1, mid})
        for (const int iy : {mid - 1, mid})
            if (ix >= 0 && iy >= 0 && !raster.excluded_at(ix, iy) &&
                raster.component[static_cast<std::size_t>(iy) * n + ix] >= 0)
                raster.components[raster.component[static_cast<std::size_t>(iy) * n + ix]]
                    .contains_origin = true;

    bool any_boundary_excluded = false;
    for (int i = 0; i < n && !any_boundary_excluded; ++i)
        any_boundary_excluded = raster.excluded_at(i, 0) || raster.excluded_at(i, n - 1) ||
                                raster.excluded_at(0, i) || raster.excluded_at(n - 1, i);
    raster.window_too_small = !any_boundary_excluded;

    return raster;
}

double compare_rasters(const PushoutRaster& a, const PushoutRaster& b) {
    if (a.window != b.window || a.resolution != b.resolution || a.band != b.band)
        throw GridMismatch("raster settings differ");
    std::size_t differ = 0;
    for (std::size_t i = 0; i < a.excluded.size(); ++i)
        differ += (a.excluded[i] != b.excluded[i]) ? 1 : 0;
    return static_cast<double>(differ) / static_cast<double>(a.excluded.size());
}

std::vector<ComponentVerdict> component_report(const PushoutRaster& raster) {
    std::vector<ComponentVerdict> report;
    report.reserve(raster.components.size());
    for (const auto& stats : raster.components) {
        ComponentVerdict verdict;
        verdict.stats = stats;
        verdict.convex = stats.convexity_defect <= 0.05;
        verdict.openness_proxy =
            raster.band > 0.0 ? stats.max_inscribed_radius / raster.band : 0.0;
        report.push_back(verdict);
    }
    return report;
}

double hausdorff_distance(const Mat& a, const Mat& b) {
    if (a.cols() == 0 || b.cols() == 0)
        throw BadSpec("hausdorff distance needs non-empty point sets");
    auto one_sided = [](const Mat& from, const Mat& to) {
        double worst = 0.0;
        for (Eigen::Index i = 0; i < from.cols(); ++i) {
            double best = kInf;
            for (Eigen::Index j = 0; j < to.cols(); ++j)
                best = std::min(best, (from.col(i) - to.col(j)).squaredNorm());
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace pushout
