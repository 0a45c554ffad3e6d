#pragma once

// adaptive Dormand-Prince 5(4) over complex state arrays, real path parameter

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "pvi/types.hpp"

namespace pvi {

template <size_t N>
using State = std::array<cplx, N>;

struct OdeOptions {
    double rtol = 1e-12;
    double atol = 1e-14;
    double h0 = 0.0;  // 0: pick from the interval and max step
    long max_steps = 2'000'000;
};

struct OdeStats {
    long accepted = 0;
    long rejected = 0;
    double last_h = 0.0;
};

namespace detail {
// Dormand & Prince tableau
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                        e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

template <size_t N>
State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
    State<N> r = y;
    for (auto& [c, k] : terms)
        if (c != 0.0)
            for (size_t i = 0; i < N; ++i) r[i] += h * c * (*k)[i];
    return r;
}
}  // namespace detail

// Integrates y' = f(s, y) from s0 to s1 (s1 > s0).
// hmax(s, y) bounds each step; on_step(s, y, dy, err) sees every accepted step.
template <size_t N, class Rhs, class MaxStep, class OnStep>
State<N> integrate_interval(Rhs&& f, State<N> y, double s0, double s1, const OdeOptions& opt, MaxStep&& hmax,
                            OnStep&& on_step, OdeStats* stats = nullptr) {
    using namespace detail;
    if (!(s1 >= s0)) throw Error(ErrorKind::Precondition, "integration interval must be forward");
    if (s1 == s0) return y;
    const double span = s1 - s0;
    double s = s0;
    State<N> k1 = f(s, y);
    double h = opt.h0 > 0 ? opt.h0 : std::min(span, hmax(s, y)) * 0.1;
    long steps = 0;
    OdeStats local;
    while (s < s1) {
        if (++steps > opt.max_steps)
            throw Error(ErrorKind::StepUnderflow, "step budget exhausted at s=" + std::to_string(s));
        h = std::min({h, hmax(s, y), s1 - s});
        if (!(h > 1e-14 * std::max(1.0, std::abs(s))) && s1 - s > 1e-14 * std::max(1.0, std::abs(s)))
            throw Error(ErrorKind::StepUnderflow, "step size collapsed at s=" + std::to_string(s));
        State<N> k2 = f(s + c2 * h, axpy(y, h, {{a21, &k1}}));
        State<N> k3 = f(s + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        State<N> k4 = f(s + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        State<N> k5 = f(s + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        State<N> k6 = f(s + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        State<N> yn = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        State<N> k7 = f(s + h, yn);
        double err = 0.0;
        for (size_t i = 0; i < N; ++i) {
            cplx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(yn[i]));
            err = std::max(err, std::abs(e) / sc);
        }
        if (!std::isfinite(err))
            throw Error(ErrorKind::StepUnderflow, "non-finite state near s=" + std::to_string(s));
        if (err <= 1.0) {
            s = (s1 - s - h <= 1e-15 * span) ? s1 : s + h;
            y = yn;
            k1 = k7;
            ++local.accepted;
            local.last_h = h;
            on_step(s, y, k1, err);
        } else {
            ++local.rejected;
        }
        double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
    }
    if (stats) {
        stats->accepted += local.accepted;
        stats->rejected += local.rejected;
        stats->last_h = local.last_h;
    }
    return y;
}

}  // namespace pvi
