#include "pushout/frame.hpp"

#include <cmath>

namespace pushout {

namespace {

// Gram-Schmidt of the frame columns against the tangent and each other.
void renormalize(Eigen::Ref<Mat> frame, const Vec& tangent) {
    const int k = static_cast<int>(frame.cols());
    for (int j = 0; j < k; ++j) {
        Vec v = frame.col(j);
        v -= v.dot(tangent) * tangent;
        for (int l = 0; l < j; ++l) v -= v.dot(frame.col(l)) * frame.col(l);
        frame.col(j) = v / v.norm();
    }
}

// Nearest orthogonal matrix via QR with a positive diagonal.
Mat reorthogonalize(const Mat& m) {
    const int k = static_cast<int>(m.rows());
    Eigen::HouseholderQR<Mat> qr(m);
    Mat q = qr.householderQ() * Mat::Identity(k, k);
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < k; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    return q;
}

}  // namespace

Mat initial_frame(const SampledCurve& curve, int base_index) {
    const int d = curve.dim();
    const int k = d - 1;
    const Vec t = curve.tangent.col(base_index);

    int skip = 0;
    t.cwiseAbs().maxCoeff(&skip);

    Mat frame(d, k);
    int col = 0;
    for (int axis = 0; axis < d; ++axis) {
        if (axis == skip) continue;
        Vec v = Vec::Zero(d);
        v[axis] = 1.0;
        v -= v.dot(t) * t;
        for (int l = 0; l < col; ++l) v -= v.dot(frame.col(l)) * frame.col(l);
        frame.col(col++) = v / v.norm();
    }
    return frame;
}

FrameField transport_frame(const SampledCurve& curve, const Mat& frame0,
                           int base_index) {
    const int d = curve.dim();
    const int k = d - 1;
    const int count = curve.count();
    if (base_index != 0)
        throw BadSpec("transport currently starts at sample 0");
    if (frame0.rows() != d || frame0.cols() != k)
        throw BadSpec("initial frame has wrong shape");
    for (int i = 0; i < count; ++i) {
        if (std::abs(curve.tangent.col(i).norm() - 1.0) > 1e-9)
            throw NonUnitTangent("tangent column is not unit length");
    }

    Mat gram = frame0.transpose() * frame0;
    if ((gram - Mat::Identity(k, k)).norm() > 1e-9 ||
        (frame0.transpose() * curve.tangent.col(base_index)).norm() > 1e-9)
        throw BadSpec("initial frame must be orthonormal and normal to the tangent");

    FrameField field;
    field.curve = &curve;
    field.base_index = base_index;
    field.k = k;
    field.frames.resize(d, static_cast<Eigen::Index>(k) * count);

    Mat frame = frame0;
    field.frames.block(0, 0, d, k) = frame;

    for (int i = 0; i + 1 < count; ++i) {
        const Vec x0 = curve.position.col(i);
        const Vec x1 = curve.position.col(i + 1);
        const Vec t0 = curve.tangent.col(i);
        const Vec t1 = curve.tangent.col(i + 1);

        // reflect through the bisecting plane of the two points, then through
        // the bisecting plane of the reflected and target tangents
        const Vec v1 = x1 - x0;
        const double c1 = v1.squaredNorm();
        Mat mid = frame;
        Vec tl = t0;
        if (c1 > 0.0) {
            mid -= (2.0 / c1) * v1 * (v1.transpose() * frame);
            tl -= (2.0 / c1) * v1.dot(t0) * v1;
        }
        const Vec v2 = t1 - tl;
        const double c2 = v2.squaredNorm();
        if (c2 > 1e-30) mid -= (2.0 / c2) * v2 * (v2.transpose() * mid);

        frame = mid;
        if ((i + 1) % defaults::kRenormInterval == 0)
            renormalize(frame, t1);
        field.frames.block(0, static_cast<Eigen::Index>(k) * (i + 1), d, k) = frame;
    }
    return field;
}

HolonomyResult holonomy(const SampledCurve& curve, bool allow_open,
                        double closure_tol, int n_max) {
    const int k = curve.dim() - 1;
    HolonomyResult result;
    result.n_max = n_max;
    result.generator_tolerance = closure_tol;

    if (!curve.closed) {
        if (!allow_open)
            throw OpenCurve("holonomy needs a closed curve");
        result.g = Mat::Identity(k, k);
        result.open_trivial = true;
        if (k == 2) result.angle = 0.0;
        result.orbit_order = 1;
        return result;
    }

    const Mat e0 = initial_frame(curve);
    const FrameField field = transport_frame(curve, e0);
    const Mat once_around = field.at(field.count() - 1);
    result.g = e0.transpose() * once_around;
    if (k == 2) result.angle = std::atan2(result.g(1, 0), result.g(0, 0));
    result.orbit_order = orbit_order(result.g, closure_tol, n_max);
    return result;
}

std::optional<int> orbit_order(const Mat& g, double closure_tol, int n_max) {
    const int k = static_cast<int>(g.rows());
    if ((g.transpose() * g - Mat::Identity(k, k)).norm() > 1e-8)
        throw BadSpec("orbit order needs an orthogonal matrix");
    if (n_max < 1) throw BadSpec("n_max must be positive");

    const Mat identity = Mat::Identity(k, k);
    Mat power = g;
    for (int n = 1; n <= n_max; ++n) {
        if ((power - identity).norm() < closure_tol) return n;
        power = power * g;
        if (n % defaults::kPowerRenormInterval == 0) power = reorthogonalize(power);
    }
    return std::nullopt;
}

Mat orthogonal_power(const Mat& g, long m) {
    const int k = static_cast<int>(g.rows());
    const Mat base = m >= 0 ? g : Mat(g.transpose());
    const long count = std::labs(m);
    Mat power = Mat::Identity(k, k);
    for (long i = 0; i < count; ++i) {
        power = power * base;
        if ((i + 1) % defaults::kPowerRenormInterval == 0)
            power = reorthogonalize(power);
    }
    return power;
}

}  // namespace pushout
