#include "pushout/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pushout {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_principal(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a <= -kPi) a += 2.0 * kPi;
    return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// CurveSpec validation

void CurveSpec::validate() const {
    if (samples < defaults::kMinSamples)
        throw BadSpec("samples must be at least 16");
    if (ambient_dim < 2) throw BadSpec("ambient_dim must be at least 2");

    struct Visitor {
        const CurveSpec& spec;
        void operator()(const CurveSpec::TriCorner&) const { need3(); }
        void operator()(const CurveSpec::Sheared& f) const {
            need3();
            if (!(f.alpha > 0.0 && f.alpha < kPi / 2.0))
                throw BadSpec("shear angle must lie strictly inside (0, pi/2)");
        }
        void operator()(const CurveSpec::Cover& f) const {
            if (!f.base) throw BadSpec("cover needs a base curve");
            if (f.n < 1) throw BadSpec("cover count must be positive");
            f.base->validate();
        }
        void operator()(const CurveSpec::Spike& f) const {
            need3();
            if (f.n < 1) throw BadSpec("spike index must be positive");
            if (!(f.spike_scale > 0.0)) throw BadSpec("spike_scale must be positive");
        }
        void operator()(const CurveSpec::Circle& f) const {
            need3();
            if (!(f.radius > 0.0)) throw BadSpec("circle radius must be positive");
        }
        void operator()(const CurveSpec::HelixSegment& f) const {
            need3();
            if (!(f.radius > 0.0)) throw BadSpec("helix radius must be positive");
            if (!(f.turns > 0.0)) throw BadSpec("helix turns must be positive");
        }
        void operator()(const CurveSpec::Imported& f) const {
            if (f.points.size() < 4) throw BadSpec("imported curves need at least 4 points");
            const auto d = f.points.front().size();
            if (d != spec.ambient_dim)
                throw BadSpec("imported point dimension does not match ambient_dim");
            for (std::size_t i = 0; i < f.points.size(); ++i) {
                if (f.points[i].size() != d)
                    throw BadSpec("imported points must share one dimension");
                if (i > 0 && (f.points[i] - f.points[i - 1]).norm() == 0.0)
                    throw BadSpec("consecutive imported points must be distinct");
            }
        }
        void need3() const {
            if (spec.ambient_dim != 3)
                throw BadSpec("builtin curve families are three-dimensional");
        }
    };
    std::visit(Visitor{*this}, family);
}

// ---------------------------------------------------------------------------
// ArcLength

ArcLength::ArcLength(std::shared_ptr<const ParametricCurve> curve, int panels_per_segment)
    : curve_(std::move(curve)) {
    const auto bps = curve_->breakpoints();
    const int nseg = static_cast<int>(bps.size()) - 1;
    const int panels = std::clamp(4096 / std::max(nseg, 1), 8, panels_per_segment);
    const ParametricCurve* raw = curve_.get();
    auto speed = [raw](double t) { return raw->velocity(t).norm(); };
    min_speed_ = std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (int k = 0; k < nseg; ++k) {
        seg_begin_.push_back(bps[k]);
        arc_prefix_.push_back(acc);
        segments_.emplace_back(speed, bps[k], bps[k + 1], panels);
        acc += segments_.back().total();
        const int probes = std::max(64, 4 * panels);
        for (int i = 0; i <= probes; ++i) {
            const double t = bps[k] + (bps[k + 1] - bps[k]) * i / probes;
            min_speed_ = std::min(min_speed_, speed(t));
        }
    }
    seg_begin_.push_back(bps.back());
    arc_prefix_.push_back(acc);
    total_ = acc;
}

double ArcLength::value(double t) const {
    t = std::clamp(t, seg_begin_.front(), seg_begin_.back());
    auto it = std::upper_bound(seg_begin_.begin(), seg_begin_.end(), t);
    int k = static_cast<int>(it - seg_begin_.begin()) - 1;
    k = std::clamp(k, 0, static_cast<int>(segments_.size()) - 1);
    return arc_prefix_[k] + segments_[k].value(t);
}

double ArcLength::invert(double s) const {
    s = std::clamp(s, 0.0, total_);
    auto it = std::upper_bound(arc_prefix_.begin(), arc_prefix_.end(), s);
    int k = static_cast<int>(it - arc_prefix_.begin()) - 1;
    k = std::clamp(k, 0, static_cast<int>(segments_.size()) - 1);
    return segments_[k].invert(s - arc_prefix_[k]);
}

// ---------------------------------------------------------------------------
// Planar piece shooting

void PlanarPiece::build_tables(int panels) {
    auto fx = [this](double t) { return speed(t) * std::cos(psi(t)); };
    auto fy = [this](double t) { return speed(t) * std::sin(psi(t)); };
    cx_ = CumulativeIntegral(fx, 0.0, 1.0, panels);
    cy_ = CumulativeIntegral(fy, 0.0, 1.0, panels);
}

namespace {

Eigen::Vector2d shoot_displacement(double psi0, double turn, double v0,
                                   double a, double b, int panels) {
    auto fx = [&](double t) {
        const double u = flat_step(t);
        const double p = psi0 + turn * u + a * u * (1.0 - u);
        return v0 * (1.0 + b * flat_bump(t)) * std::cos(p);
    };
    auto fy = [&](double t) {
        const double u = flat_step(t);
        const double p = psi0 + turn * u + a * u * (1.0 - u);
        return v0 * (1.0 + b * flat_bump(t)) * std::sin(p);
    };
    return {integrate(fx, 0.0, 1.0, panels), integrate(fy, 0.0, 1.0, panels)};
}

}  // namespace

PlanarPiece solve_planar_piece(const Eigen::Vector2d& start,
                               const Eigen::Vector2d& end,
                               const Eigen::Vector2d& start_dir,
                               const Eigen::Vector2d& end_dir,
                               const Vec& plane_origin, const Mat& plane_basis,
                               std::optional<double> turn_opt) {
    const Eigen::Vector2d w = end - start;
    if (w.norm() < 1e-12) throw BadSpec("planar piece endpoints coincide");
    if (start_dir.norm() < 1e-12 || end_dir.norm() < 1e-12)
        throw BadSpec("planar piece directions must be nonzero");
    if (plane_basis.cols() != 2)
        throw BadSpec("plane basis must have two columns");
    Mat gram = plane_basis.transpose() * plane_basis;
    if ((gram - Mat::Identity(2, 2)).norm() > 1e-9)
        throw BadSpec("plane basis must be orthonormal");

    PlanarPiece piece;
    piece.plane_origin = plane_origin;
    piece.plane_basis = plane_basis;
    piece.start = start;
    piece.end = end;
    piece.start_dir = start_dir.normalized();
    piece.end_dir = end_dir.normalized();
    piece.psi0 = std::atan2(piece.start_dir.y(), piece.start_dir.x());
    const double psi1 = std::atan2(piece.end_dir.y(), piece.end_dir.x());
    piece.turn = turn_opt ? *turn_opt
                          : wrap_principal(psi1 - piece.psi0) - 2.0 * kPi;
    piece.speed_scale = defaults::kShootSpeedFactor * w.norm();

    const double v0 = piece.speed_scale;
    const double psi0 = piece.psi0, turn = piece.turn;

    auto residual_at = [&](double a, double b, int panels) -> Eigen::Vector2d {
        if (b <= -0.99) return {1e100, 1e100};  // speed would vanish mid-piece
        return shoot_displacement(psi0, turn, v0, a, b, panels) - w;
    };

    // coarse scan gives Newton a basin; turn = 0 pieces start from (0,0)
    double best_a = 0.0, best_b = 0.0;
    double best_r = residual_at(0.0, 0.0, 16).norm();
    const double a_span = std::max(1.0, 0.95 * std::abs(turn));
    for (int ia = 0; ia <= 20; ++ia) {
        const double a = -a_span + 2.0 * a_span * ia / 20.0;
        for (int ib = 0; ib <= 23; ++ib) {
            const double b = -0.9 + (6.0 + 0.9) * ib / 23.0;
            const double r = residual_at(a, b, 16).norm();
            if (r < best_r) { best_r = r; best_a = a; best_b = b; }
        }
    }

    double a = best_a, b = best_b;
    Eigen::Vector2d r = residual_at(a, b, 64);
    int iter = 0;
    const double tol = std::max(defaults::kShootTarget,
                                defaults::kShootTarget * w.norm());
    while (r.norm() > tol && iter < defaults::kShootMaxIter) {
        ++iter;
        const double h = 1e-7;
        Eigen::Matrix2d J;
        J.col(0) = (residual_at(a + h, b, 64) - residual_at(a - h, b, 64)) / (2 * h);
        J.col(1) = (residual_at(a, b + h, 64) - residual_at(a, b - h, 64)) / (2 * h);
        Eigen::Vector2d step = J.fullPivLu().solve(r);
        double lambda = 1.0;
        bool advanced = false;
        for (int back = 0; back < 30; ++back) {
            const Eigen::Vector2d cand(a - lambda * step.x(), b - lambda * step.y());
            const Eigen::Vector2d rc = residual_at(cand.x(), cand.y(), 64);
            if (rc.norm() < r.norm()) {
                a = cand.x(); b = cand.y(); r = rc;
                advanced = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!advanced) break;
    }

    piece.shape_a = a;
    piece.shape_b = b;
    piece.build_tables();
    piece.residual = (piece.pos2(1.0) - end).norm();
    if (piece.residual > defaults::kShootResidualMax) {
        std::ostringstream msg;
        msg << "piece shooting did not converge after " << iter
            << " iterations; residual " << piece.residual;
        throw ShootingFailed(msg.str());
    }
    return piece;
}

const PlanarPiece& corner_piece() {
    static const PlanarPiece piece = [] {
        Mat basis(3, 2);
        basis << 1, 0,
                 0, 1,
                 0, 0;
        return solve_planar_piece({1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0},
                                  {0.0, 1.0}, Vec::Zero(3), basis);
    }();
    return piece;
}

// ---------------------------------------------------------------------------
// Parametric families

namespace {

// The corner curve: three congruent planar pieces in the xy, yz and zx
// coordinate planes, meeting the axes at (1,0,0), (0,1,0), (0,0,1) with
// radial tangents and flat contact.
class TriCornerCurve : public ParametricCurve {
public:
    TriCornerCurve() : piece_(&corner_piece()) {
        basis_[0] = Eigen::Matrix<double, 3, 2>::Zero();
        basis_[0](0, 0) = 1.0; basis_[0](1, 1) = 1.0;  // xy plane
        basis_[1] = Eigen::Matrix<double, 3, 2>::Zero();
        basis_[1](1, 0) = 1.0; basis_[1](2, 1) = 1.0;  // yz plane
        basis_[2] = Eigen::Matrix<double, 3, 2>::Zero();
        basis_[2](2, 0) = 1.0; basis_[2](0, 1) = 1.0;  // zx plane
    }

    int dim() const override { return 3; }
    double t_end() const override { return 3.0; }
    bool closed() const override { return true; }

    Vec position(double t) const override {
        const auto [j, tt] = split(t);
        return basis_[j] * piece_->pos2(tt);
    }
    Vec velocity(double t) const override {
        const auto [j, tt] = split(t);
        return basis_[j] * piece_->vel2(tt);
    }
    std::vector<double> breakpoints() const override { return {0, 1, 2, 3}; }

    static std::pair<int, double> split(double t) {
        t = std::fmod(t, 3.0);
        if (t < 0) t += 3.0;
        const int j = std::min(2, static_cast<int>(t));
        return {j, t - j};
    }

    const Eigen::Matrix<double, 3, 2>& basis(int j) const { return basis_[j]; }
    const PlanarPiece& piece() const { return *piece_; }

private:
    const PlanarPiece* piece_;
    std::array<Eigen::Matrix<double, 3, 2>, 3> basis_;
};

class ShearedCurve : public ParametricCurve {
public:
    explicit ShearedCurve(double alpha) {
        shear_ = Eigen::Matrix3d::Identity();
        shear_(1, 2) = std::tan(alpha);
    }

    int dim() const override { return 3; }
    double t_end() const override { return 3.0; }
    bool closed() const override { return true; }
    Vec position(double t) const override { return shear_ * base_.position(t); }
    Vec velocity(double t) const override { return shear_ * base_.velocity(t); }
    std::vector<double> breakpoints() const override { return {0, 1, 2, 3}; }

private:
    TriCornerCurve base_;
    Eigen::Matrix3d shear_;
};

class CoverCurve : public ParametricCurve {
public:
    CoverCurve(std::shared_ptr<const ParametricCurve> base, int n)
        : base_(std::move(base)), n_(n) {
        if (!base_->closed())
            throw BadSpec("cover base curve must be closed");
    }

    int dim() const override { return base_->dim(); }
    double t_end() const override { return n_ * base_->t_end(); }
    bool closed() const override { return true; }
    Vec position(double t) const override { return base_->position(reduce(t)); }
    Vec velocity(double t) const override { return base_->velocity(reduce(t)); }
    std::vector<double> breakpoints() const override {
        const auto bb = base_->breakpoints();
        const double period = base_->t_end();
        std::vector<double> out;
        for (int k = 0; k < n_; ++k)
            for (std::size_t i = 0; i + 1 < bb.size(); ++i)
                out.push_back(k * period + bb[i]);
        out.push_back(n_ * period);
        return out;
    }

private:
    double reduce(double t) const {
        const double period = base_->t_end();
        t = std::fmod(t, period);
        if (t < 0) t += period;
        return t;
    }
    std::shared_ptr<const ParametricCurve> base_;
    int n_;
};

// Corner curve with one localized bump per piece, centered at the piece
// midpoint, height n*scale and parameter width 1/n. The bump direction is the
// piece's in-plane midpoint normal tilted out of the plane, so the family
// develops genuinely skew focal directions while the joints stay untouched.
class SpikeCurve : public ParametricCurve {
public:
    SpikeCurve(int n, double scale, double tilt = defaults::kSpikeTilt)
        : n_(n), scale_(scale) {
        const PlanarPiece& p = base_.piece();
        const Eigen::Vector2d v = p.vel2(0.5).normalized();
        const Eigen::Vector2d m2(-v.y(), v.x());
        for (int j = 0; j < 3; ++j) {
            const auto& B = base_.basis(j);
            const Eigen::Vector3d in_plane = B * m2;
            const Eigen::Vector3d normal =
                Eigen::Vector3d(B.col(0)).cross(Eigen::Vector3d(B.col(1)));
            dir_[j] = std::cos(tilt) * in_plane + std::sin(tilt) * normal;
        }
    }

    int dim() const override { return 3; }
    double t_end() const override { return 3.0; }
    bool closed() const override { return true; }

    Vec position(double t) const override {
        const auto [j, tt] = TriCornerCurve::split(t);
        return base_.position(t) + height(tt) * dir_[j];
    }
    Vec velocity(double t) const override {
        const auto [j, tt] = TriCornerCurve::split(t);
        return base_.velocity(t) + height_deriv(tt) * dir_[j];
    }
    std::vector<double> breakpoints() const override {
        const double half = 0.5 / n_;
        std::vector<double> out;
        for (int j = 0; j < 3; ++j) {
            out.push_back(j);
            if (n_ > 1) {
                out.push_back(j + 0.5 - half);
                out.push_back(j + 0.5);
                out.push_back(j + 0.5 + half);
            } else {
                out.push_back(j + 0.5);
            }
        }
        out.push_back(3.0);
        return out;
    }

private:
    double height(double tt) const {
        const double zeta = n_ * (tt - 0.5) + 0.5;
        return n_ * scale_ * flat_bump(zeta);
    }
    double height_deriv(double tt) const {
        const double zeta = n_ * (tt - 0.5) + 0.5;
        return static_cast<double>(n_) * n_ * scale_ * flat_bump_deriv(zeta);
    }

    TriCornerCurve base_;
    int n_;
    double scale_;
    std::array<Eigen::Vector3d, 3> dir_;
};

class CircleCurve : public ParametricCurve {
public:
    explicit CircleCurve(double radius) : r_(radius) {}
    int dim() const override { return 3; }
    double t_end() const override { return 2.0 * kPi; }
    bool closed() const override { return true; }
    Vec position(double t) const override {
        Vec p(3);
        p << r_ * std::cos(t), r_ * std::sin(t), 0.0;
        return p;
    }
    Vec velocity(double t) const override {
        Vec v(3);
        v << -r_ * std::sin(t), r_ * std::cos(t), 0.0;
        return v;
    }

private:
    double r_;
};

class HelixCurve : public ParametricCurve {
public:
    HelixCurve(double radius, double pitch, double turns)
        : r_(radius), c_(pitch / (2.0 * kPi)), turns_(turns) {}
    int dim() const override { return 3; }
    double t_end() const override { return 2.0 * kPi * turns_; }
    bool closed() const override { return false; }
    Vec position(double t) const override {
        Vec p(3);
        p << r_ * std::cos(t), r_ * std::sin(t), c_ * t;
        return p;
    }
    Vec velocity(double t) const override {
        Vec v(3);
        v << -r_ * std::sin(t), r_ * std::cos(t), c_;
        return v;
    }

private:
    double r_, c_, turns_;
};

// Componentwise cubic spline through the imported points over the
// chord-length parameter; natural ends for open data, cyclic for closed.
class ImportedCurve : public ParametricCurve {
public:
    ImportedCurve(std::vector<Vec> points, bool closed) : closed_(closed) {
        if (closed && (points.back() - points.front()).norm() < 1e-12)
            points.pop_back();
        pts_ = std::move(points);
        const int m = static_cast<int>(pts_.size());
        dim_ = static_cast<int>(pts_.front().size());

        const int nseg = closed_ ? m : m - 1;
        knots_.resize(nseg + 1);
        knots_[0] = 0.0;
        for (int i = 0; i < nseg; ++i)
            knots_[i + 1] = knots_[i] + (pt(i + 1) - pt(i)).norm();

        solve_second_derivatives();
    }

    int dim() const override { return dim_; }
    double t_end() const override { return knots_.back(); }
    bool closed() const override { return closed_; }

    Vec position(double t) const override {
        const auto [i, h, tw] = locate(t);
        const double a = (knots_[i + 1] - tw), b = (tw - knots_[i]);
        return m_[i] * (a * a * a) / (6 * h) + m_[i + 1] * (b * b * b) / (6 * h) +
               (pt(i) / h - m_[i] * h / 6) * a +
               (pt(i + 1) / h - m_[i + 1] * h / 6) * b;
    }
    Vec velocity(double t) const override {
        const auto [i, h, tw] = locate(t);
        const double a = (knots_[i + 1] - tw), b = (tw - knots_[i]);
        return -m_[i] * (a * a) / (2 * h) + m_[i + 1] * (b * b) / (2 * h) -
               (pt(i) / h - m_[i] * h / 6) + (pt(i + 1) / h - m_[i + 1] * h / 6);
    }
    std::vector<double> breakpoints() const override { return knots_; }

private:
    Vec pt(int i) const { return pts_[i % pts_.size()]; }

    std::tuple<int, double, double> locate(double t) const {
        if (closed_) {
            t = std::fmod(t, t_end());
            if (t < 0) t += t_end();
        } else {
            t = std::clamp(t, 0.0, t_end());
        }
        auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
        int i = static_cast<int>(it - knots_.begin()) - 1;
        i = std::clamp(i, 0, static_cast<int>(knots_.size()) - 2);
        return {i, knots_[i + 1] - knots_[i], t};
    }

    void solve_second_derivatives() {
        const int nseg = static_cast<int>(knots_.size()) - 1;
        const int nm = closed_ ? nseg : nseg + 1;  // unknowns
        m_.assign(nseg + 1, Vec::Zero(dim_));
        std::vector<double> h(nseg);
        for (int i = 0; i < nseg; ++i) h[i] = knots_[i + 1] - knots_[i];

        if (!closed_) {
            // natural ends: tridiagonal in the interior unknowns
            const int n = nm - 2;
            if (n <= 0) return;
            std::vector<double> diag(n), sub(n), sup(n);
            Mat rhs(dim_, n);
            for (int i = 1; i <= n; ++i) {
                diag[i - 1] = 2.0 * (h[i - 1] + h[i]);
                sub[i - 1] = h[i - 1];
                sup[i - 1] = h[i];
                rhs.col(i - 1) =
                    6.0 * ((pt(i + 1) - pt(i)) / h[i] - (pt(i) - pt(i - 1)) / h[i - 1]);
            }
            // Thomas
            for (int i = 1; i < n; ++i) {
                const double w = sub[i] / diag[i - 1];
                diag[i] -= w * sup[i - 1];
                rhs.col(i) -= w * rhs.col(i - 1);
            }
            Mat sol(dim_, n);
            sol.col(n - 1) = rhs.col(n - 1) / diag[n - 1];
            for (int i = n - 2; i >= 0; --i)
                sol.col(i) = (rhs.col(i) - sup[i] * sol.col(i + 1)) / diag[i];
            for (int i = 1; i <= n; ++i) m_[i] = sol.col(i - 1);
        } else {
            // cyclic tridiagonal via Sherman-Morrison
            const int n = nseg;
            std::vector<double> diag(n), sub(n), sup(n);
            Mat rhs(dim_, n);
            for (int i = 0; i < n; ++i) {
                const double hm = h[(i - 1 + n) % n], hp = h[i];
                diag[i] = 2.0 * (hm + hp);
                sub[i] = hm;
                sup[i] = hp;
                rhs.col(i) = 6.0 * ((pt(i + 1) - pt(i)) / hp -
                                    (pt(i) - pt(i - 1 + n)) / hm);
            }
            // corner entries: A[0][n-1] = beta, A[n-1][0] = alpha
            const double beta = sub[0], alpha = sup[n - 1];
            const double gamma = -diag[0];
            std::vector<double> d2 = diag;
            d2[0] -= gamma;
            d2[n - 1] -= alpha * beta / gamma;
            auto thomas = [&](const Mat& b) {
                std::vector<double> dd = d2;
                Mat r = b;
                for (int i = 1; i < n; ++i) {
                    const double w = sub[i] / dd[i - 1];
                    dd[i] -= w * sup[i - 1];
                    r.col(i) -= w * r.col(i - 1);
                }
                Mat x(dim_, n);
                x.col(n - 1) = r.col(n - 1) / dd[n - 1];
                for (int i = n - 2; i >= 0; --i)
                    x.col(i) = (r.col(i) - sup[i] * x.col(i + 1)) / dd[i];
                return x;
            };
            Mat y = thomas(rhs);
            Mat uvec = Mat::Zero(dim_, n);
            uvec.col(0).setConstant(gamma);
            uvec.col(n - 1).setConstant(alpha);
            Mat z = thomas(uvec);
            for (int c = 0; c < dim_; ++c) {
                const double num = y(c, 0) + (beta / gamma) * y(c, n - 1);
                const double den = 1.0 + z(c, 0) + (beta / gamma) * z(c, n - 1);
                y.row(c) -= (num / den) * z.row(c);
            }
            for (int i = 0; i < n; ++i) m_[i] = y.col(i);
            m_[n] = m_[0];
        }
    }

    std::vector<Vec> pts_;
    std::vector<double> knots_;
    std::vector<Vec> m_;  // second derivatives at knots
    bool closed_;
    int dim_ = 3;
};

}  // namespace

std::shared_ptr<const ParametricCurve> make_parametric(const CurveSpec& spec) {
    spec.validate();
    struct Visitor {
        std::shared_ptr<const ParametricCurve> operator()(const CurveSpec::TriCorner&) const {
            return std::make_shared<TriCornerCurve>();
        }
        std::shared_ptr<const ParametricCurve> operator()(const CurveSpec::Sheared& f) const {
            return std::make_shared<ShearedCurve>(f.alpha);
        }
        std::shared_ptr<const ParametricCurve> operator()(const CurveSpec::Cover& f) const {
            return std::make_shared<CoverCurve>(make_parametric(*f.base), f.n);
        }
        std::shared_ptr<const ParametricCurve> operator()(const CurveSpec::Spike& f) const {
            return std::make_shared<SpikeCurve>(f.n, f.spike_scale);
        }
        std::shared_ptr<const ParametricCurve> operator()(const CurveSpec::Circle& f) const {
            return std::make_shared<CircleCurve>(f.radius);
        }
        std::shared_ptr<const ParametricCurve> operator()(const CurveSpec::HelixSegment& f) const {
            return std::make_shared<HelixCurve>(f.radius, f.pitch, f.turns);
        }
        std::shared_ptr<const ParametricCurve> operator()(const CurveSpec::Imported& f) const {
            return std::make_shared<ImportedCurve>(f.points, f.closed);
        }
    };
    return std::visit(Visitor{}, spec.family);
}

// ---------------------------------------------------------------------------
// Sampling

SampledCurve build_curve(const CurveSpec& spec) {
    const auto pc = make_parametric(spec);
    const ArcLength arc(pc, 512);
    if (arc.min_speed() < 1e-12)
        throw NonImmersion("curve speed drops below 1e-12");

    const int n = spec.samples;
    const bool closed = pc->closed();
    const int count = closed ? n + 1 : n;
    const double length = arc.total();
    const int d = pc->dim();

    SampledCurve out;
    out.closed = closed;
    out.total_length = length;
    out.s.resize(count);
    out.position.resize(d, count);
    out.tangent.resize(d, count);
    out.curvature.resize(d, count);

    for (int i = 0; i < count; ++i) {
        const double s = closed ? i * length / n : i * length / (n - 1);
        const double t = arc.invert(s);
        out.s[i] = s;
        const Vec p = pc->position(t);
        const Vec v = pc->velocity(t);
        const double vn = v.norm();
        if (vn < 1e-12) throw NonImmersion("curve speed drops below 1e-12");
        out.position.col(i) = p;
        out.tangent.col(i) = v / vn;
    }
    for (int i = 0; i < count; ++i) out.curvature.col(i) = curvature_vector(out, i);
    return out;
}

Vec curvature_vector(const SampledCurve& curve, int i) {
    const int n = curve.unique();
    if (i < 0 || i >= curve.count())
        throw BadSpec("curvature sample index out of range");
    const double h = curve.closed ? curve.total_length / n
                                  : curve.total_length / (n - 1);
    const auto& T = curve.tangent;

    if (curve.closed) {
        auto col = [&](int j) {
            j %= n;
            if (j < 0) j += n;
            return T.col(j);
        };
        if (i == n) i = 0;
        return (-col(i + 2) + 8.0 * col(i + 1) - 8.0 * col(i - 1) + col(i - 2)) /
               (12.0 * h);
    }

    auto col = [&](int j) { return T.col(j); };
    if (i >= 2 && i <= n - 3)
        return (-col(i + 2) + 8.0 * col(i + 1) - 8.0 * col(i - 1) + col(i - 2)) /
               (12.0 * h);
    if (i == 0)
        return (-25.0 * col(0) + 48.0 * col(1) - 36.0 * col(2) + 16.0 * col(3) -
                3.0 * col(4)) / (12.0 * h);
    if (i == 1)
        return (-3.0 * col(0) - 10.0 * col(1) + 18.0 * col(2) - 6.0 * col(3) +
                col(4)) / (12.0 * h);
    if (i == n - 2)
        return (3.0 * col(n - 1) + 10.0 * col(n - 2) - 18.0 * col(n - 3) +
                6.0 * col(n - 4) - col(n - 5)) / (12.0 * h);
    return (25.0 * col(n - 1) - 48.0 * col(n - 2) + 36.0 * col(n - 3) -
            16.0 * col(n - 4) + 3.0 * col(n - 5)) / (12.0 * h);
}

double min_curvature_radius(const SampledCurve& curve, double kappa_min) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < curve.unique(); ++i) {
        const double k = curve.curvature.col(i).norm();
        if (k > kappa_min) best = std::min(best, 1.0 / k);
    }
    if (!std::isfinite(best))
        throw NoFocalData("all curvatures below the focal threshold");
    return best;
}

}  // namespace pushout
