#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "pushout/errors.hpp"

namespace pushout {

// Smooth step built from the exponential bump b(t) = exp(-1/t):
// flat_step = b(t) / (b(t) + b(1-t)). All derivatives vanish at t = 0 and
// t = 1; arguments outside [0,1] clamp to the endpoint values.
inline double flat_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double bt = std::exp(-1.0 / t);
    const double bc = std::exp(-1.0 / (1.0 - t));
    return bt / (bt + bc);
}

inline double flat_step_deriv(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double bt = std::exp(-1.0 / t);
    const double bc = std::exp(-1.0 / (1.0 - t));
    const double dbt = bt / (t * t);
    const double dbc = bc / ((1.0 - t) * (1.0 - t));
    const double s = bt + bc;
    if (s == 0.0) return 0.0;
    // d/dt [bt/(bt+bc)] = (dbt*bc + bt*dbc) / s^2
    return (dbt * bc + bt * dbc) / (s * s);
}

// Flat-contact bump with unit peak at t = 1/2, zero to all orders at the ends.
inline double flat_bump(double t) {
    const double u = flat_step(t);
    return 4.0 * u * (1.0 - u);
}

inline double flat_bump_deriv(double t) {
    const double u = flat_step(t);
    return 4.0 * flat_step_deriv(t) * (1.0 - 2.0 * u);
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
struct GaussLegendre16 {
    static constexpr int kN = 16;
    static const double node[kN];
    static const double weight[kN];

    // integral of f over [a, b] in a single panel
    template <typename F>
    static double panel(const F& f, double a, double b) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (int i = 0; i < kN; ++i) acc += weight[i] * f(mid + half * node[i]);
        return half * acc;
    }
};

inline const double GaussLegendre16::node[GaussLegendre16::kN] = {
    -0.98940093499164993260, -0.94457502307323257608, -0.86563120238783174388,
    -0.75540440835500303390, -0.61787624440264374845, -0.45801677765722738634,
    -0.28160355077925891323, -0.09501250983763744019,  0.09501250983763744019,
     0.28160355077925891323,  0.45801677765722738634,  0.61787624440264374845,
     0.75540440835500303390,  0.86563120238783174388,  0.94457502307323257608,
     0.98940093499164993260};

inline const double GaussLegendre16::weight[GaussLegendre16::kN] = {
    0.02715245941175409485, 0.06225352393864789286, 0.09515851168249278481,
    0.12462897125553387205, 0.14959598881657673208, 0.16915651939500253819,
    0.18260341504492358887, 0.18945061045506849629, 0.18945061045506849629,
    0.18260341504492358887, 0.16915651939500253819, 0.14959598881657673208,
    0.12462897125553387205, 0.09515851168249278481, 0.06225352393864789286,
    0.02715245941175409485};

template <typename F>
double integrate(const F& f, double a, double b, int panels) {
    double acc = 0.0;
    const double w = (b - a) / panels;
    for (int k = 0; k < panels; ++k)
        acc += GaussLegendre16::panel(f, a + k * w, a + (k + 1) * w);
    return acc;
}

// Cumulative integral of a positive smooth integrand with monotone inversion
// by Newton iteration. Panel prefix sums keep both directions at quadrature
// accuracy for smooth integrands.
class CumulativeIntegral {
public:
    CumulativeIntegral() = default;

    CumulativeIntegral(std::function<double(double)> f, double a, double b,
                       int panels)
        : f_(std::move(f)), a_(a), b_(b), width_((b - a) / panels) {
        prefix_.resize(static_cast<std::size_t>(panels) + 1, 0.0);
        for (int k = 0; k < panels; ++k) {
            const double lo = a_ + k * width_;
            prefix_[k + 1] = prefix_[k] + GaussLegendre16::panel(f_, lo, lo + width_);
        }
    }

    double domain_begin() const { return a_; }
    double domain_end() const { return b_; }
    double total() const { return prefix_.back(); }

    // integral of f over [a, t]
    double value(double t) const {
        t = std::clamp(t, a_, b_);
        const int k = panel_index(t);
        const double lo = a_ + k * width_;
        return prefix_[k] + GaussLegendre16::panel(f_, lo, t);
    }

    // t such that value(t) = v, for f > 0
    double invert(double v) const {
        v = std::clamp(v, 0.0, total());
        auto it = std::upper_bound(prefix_.begin(), prefix_.end(), v);
        int k = static_cast<int>(it - prefix_.begin()) - 1;
        k = std::clamp(k, 0, static_cast<int>(prefix_.size()) - 2);
        double lo = a_ + k * width_, hi = lo + width_;
        double t = lo + (v - prefix_[k]) / std::max(f_(lo), 1e-300) ;
        t = std::clamp(t, lo, hi);
        for (int it2 = 0; it2 < 60; ++it2) {
            const double err = value(t) - v;
            if (std::abs(err) < 1e-14 * std::max(1.0, total())) break;
            const double d = f_(t);
            double step = err / std::max(d, 1e-300);
            double tn = t - step;
            if (tn < lo || tn > hi) {      // bisect against the bracket
                if (err > 0) hi = t; else lo = t;
                tn = 0.5 * (lo + hi);
            } else {
                if (err > 0) hi = t; else lo = t;
            }
            t = tn;
        }
        return t;
    }

private:
    int panel_index(double t) const {
        int k = static_cast<int>((t - a_) / width_);
        return std::clamp(k, 0, static_cast<int>(prefix_.size()) - 2);
    }

    std::function<double(double)> f_;
    double a_ = 0.0, b_ = 1.0, width_ = 1.0;
    std::vector<double> prefix_;
};

}  // namespace pushout
