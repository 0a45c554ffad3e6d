#pragma once

// The Painleve flow in canonical coordinates: the Hamiltonian system over time space,
// the scalar PVI oracle, nonlinear monodromy along pure-braid loops and the Riccati locus.

#include <array>
#include <string>
#include <vector>

#include "pvi/dual.hpp"
#include "pvi/hamiltonian.hpp"
#include "pvi/modular.hpp"
#include "pvi/ode.hpp"
#include "pvi/polynomial.hpp"

namespace pvi {

using TimeTriple = std::array<cplx, 3>;

inline double norm3(const TimeTriple& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2])); }

// polyline in the space of pairwise distinct (t1, t2, t3)
struct TimePath {
    std::vector<TimeTriple> vertices;

    static TimePath segment(const TimeTriple& a, const TimeTriple& b) { return {{a, b}}; }

    double length() const {
        double L = 0;
        for (size_t k = 1; k < vertices.size(); ++k) {
            TimeTriple d;
            for (int i = 0; i < 3; ++i) d[i] = vertices[k][i] - vertices[k - 1][i];
            L += norm3(d);
        }
        return L;
    }

    TimePath reversed() const { return {{vertices.rbegin(), vertices.rend()}}; }

    // smallest |t_i - t_j| anywhere along the polyline (exact on each edge)
    double min_gap() const {
        double g = INFINITY;
        for (auto& v : vertices) g = std::min(g, pvi::min_gap(v));
        for (size_t k = 1; k < vertices.size(); ++k)
            for (int i = 0; i < 3; ++i) {
                int j = (i + 1) % 3;
                cplx A = vertices[k - 1][i] - vertices[k - 1][j];
                cplx B = vertices[k][i] - vertices[k][j] - A;
                double BB = std::norm(B);
                double u = BB == 0 ? 0.0 : std::clamp(-(std::conj(B) * A).real() / BB, 0.0, 1.0);
                g = std::min(g, std::abs(A + u * B));
            }
        return g;
    }

    void validate(double clearance) const {
        if (vertices.empty()) throw Error(ErrorKind::Precondition, "time path has no vertices");
        double g = min_gap();
        if (!(g > clearance))
            throw Error(ErrorKind::Precondition,
                        "time path brings two t_i within " + std::to_string(g) + " of each other");
    }
};

struct TrajectorySample {
    double s = 0;  // arclength along the time path
    TimeTriple t{};
    cplx q{}, p{};
    cplx dq_ds{}, dp_ds{};
    TimeTriple dt_ds{};
    double err = 0;  // scaled local error estimate of the step that produced it
};

struct Trajectory {
    ExponentVector kappa;
    std::vector<TrajectorySample> samples;

    PhasePoint at(size_t n) const { return {samples[n].q, samples[n].p, samples[n].t, kappa}; }
    PhasePoint start() const { return at(0); }
    PhasePoint end() const { return at(samples.size() - 1); }
};

struct FlowOptions {
    double rtol = 1e-12;
    double atol = 1e-14;
    double step_fraction = 0.05;  // max step / min |t_i - t_j|
    double clearance = 1e-6;      // q within this of some t_i counts as blow-up
    double bound = 1e8;           // |q| or |p| beyond this counts as blow-up
    long max_steps = 2'000'000;
};

// dq = sum dH_i/dp dt_i,  dp = -sum dH_i/dq dt_i
inline std::pair<cplx, cplx> vector_field(const PhasePoint& pt, const TimeTriple& dt) {
    cplx dq = 0, dp = 0;
    for (int i = 0; i < 3; ++i) {
        if (dt[i] == cplx(0)) continue;
        auto h = hamiltonian_terms<cplx, cplx>(i, pt.q, pt.p, pt.t, pt.kappa);
        dq += h.dp * dt[i];
        dp -= h.dq * dt[i];
    }
    return {dq, dp};
}

namespace detail {

inline std::string fmt(cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", z.real(), z.imag());
    return buf;
}

inline void check_blowup(const TimeTriple& t, cplx q, cplx p, double s, const FlowOptions& opt) {
    bool bad = !(std::abs(q) <= opt.bound && std::abs(p) <= opt.bound);
    for (auto& ti : t) bad = bad || std::abs(q - ti) < opt.clearance;
    if (bad)
        throw Error(ErrorKind::BlowUp, "blow-up near pole at s=" + std::to_string(s) + ", t=(" + fmt(t[0]) + ", " +
                                           fmt(t[1]) + ", " + fmt(t[2]) + "), q=" + fmt(q) + ", p=" + fmt(p) +
                                           "; the solution leaves this chart");
}

inline TimeTriple lerp(const TimeTriple& a, const TimeTriple& b, double u) {
    TimeTriple r;
    for (int i = 0; i < 3; ++i) r[i] = a[i] + (b[i] - a[i]) * u;
    return r;
}

// walks the edges of a time path; per edge calls run(a, b, L, dir, s_offset)
template <class F>
void for_each_edge(const TimePath& path, F&& run) {
    double off = 0;
    for (size_t k = 1; k < path.vertices.size(); ++k) {
        const auto& a = path.vertices[k - 1];
        const auto& b = path.vertices[k];
        TimeTriple d;
        for (int i = 0; i < 3; ++i) d[i] = b[i] - a[i];
        double L = norm3(d);
        if (L == 0) continue;
        for (auto& v : d) v /= L;
        run(a, b, L, d, off);
        off += L;
    }
}

inline void check_start(const PhasePoint& pt, const TimePath& path) {
    for (int i = 0; i < 3; ++i)
        if (std::abs(path.vertices.front()[i] - pt.t[i]) > 1e-12 * (1 + std::abs(pt.t[i])))
            throw Error(ErrorKind::Precondition, "time path must start at the point's t");
}

}  // namespace detail

inline Trajectory integrate(const PhasePoint& pt, const TimePath& path, const FlowOptions& opt = {}) {
    validate(pt);
    path.validate(0.0);
    detail::check_start(pt, path);
    Trajectory tr;
    tr.kappa = pt.kappa;
    {
        TrajectorySample s0;
        s0.t = pt.t;
        s0.q = pt.q;
        s0.p = pt.p;
        tr.samples.push_back(s0);
    }
    State<2> y{pt.q, pt.p};
    OdeOptions oo;
    oo.rtol = opt.rtol;
    oo.atol = opt.atol;
    oo.max_steps = opt.max_steps;
    bool first = true;
    detail::for_each_edge(path, [&](const TimeTriple& a, const TimeTriple& b, double L, const TimeTriple& dir,
                                    double off) {
        auto t_at = [&](double s) { return s >= L ? b : detail::lerp(a, b, s / L); };
        auto rhs = [&](double s, const State<2>& Y) {
            PhasePoint cur{Y[0], Y[1], t_at(s), pt.kappa};
            auto [dq, dp] = vector_field(cur, dir);
            return State<2>{dq, dp};
        };
        if (first) {  // derivative at the very start, along the first edge
            auto d0 = rhs(0.0, y);
            tr.samples[0].dq_ds = d0[0];
            tr.samples[0].dp_ds = d0[1];
            tr.samples[0].dt_ds = dir;
            first = false;
        }
        auto hmax = [&](double s, const State<2>&) { return opt.step_fraction * min_gap(t_at(s)); };
        auto on_step = [&](double s, const State<2>& Y, const State<2>& dY, double err) {
            TimeTriple t = t_at(s);
            detail::check_blowup(t, Y[0], Y[1], off + s, opt);
            tr.samples.push_back({off + s, t, Y[0], Y[1], dY[0], dY[1], dir, err});
        };
        y = integrate_interval<2>(rhs, y, 0.0, L, oo, hmax, on_step);
    });
    return tr;
}

// standard PVI right-hand side for q(x), t = (0, 1, x); coefficients
// alpha = k4^2/2, beta = -k1^2/2, gamma = k2^2/2, delta = (1 - k3^2)/2
inline cplx pvi_rhs(cplx q, cplx qx, cplx x, const ExponentVector& k) {
    const cplx al = k[4] * k[4] / 2.0, be = -k[1] * k[1] / 2.0, ga = k[2] * k[2] / 2.0,
               de = (1.0 - k[3] * k[3]) / 2.0;
    cplx r = 0.5 * (1.0 / q + 1.0 / (q - 1.0) + 1.0 / (q - x)) * qx * qx;
    r -= (1.0 / x + 1.0 / (x - 1.0) + 1.0 / (q - x)) * qx;
    cplx pre = q * (q - 1.0) * (q - x) / (x * x * (x - 1.0) * (x - 1.0));
    r += pre * (al + be * x / (q * q) + ga * (x - 1.0) / ((q - 1.0) * (q - 1.0)) +
                de * x * (x - 1.0) / ((q - x) * (q - x)));
    return r;
}

// |q_xx - PVI(q, q_x, x)| per sample. q_x is the recorded flow derivative; q_xx is the
// exact x-derivative of dH3/dp along the Hamiltonian system at the recorded (q, p).
inline std::vector<double> pvi_residual(const Trajectory& tr) {
    std::vector<double> out;
    out.reserve(tr.samples.size());
    for (auto& s : tr.samples) {
        if (std::abs(s.t[0]) > 1e-12 || std::abs(s.t[1] - 1.0) > 1e-12 || s.dt_ds[0] != cplx(0) ||
            s.dt_ds[1] != cplx(0) || s.dt_ds[2] == cplx(0))
            throw Error(ErrorKind::Precondition, "pvi_residual needs t1 = 0, t2 = 1 fixed and t3 moving");
        const cplx x = s.t[2];
        const cplx qx = s.dq_ds / s.dt_ds[2], px = s.dp_ds / s.dt_ds[2];
        std::array<Dual, 3> tD{Dual(s.t[0]), Dual(s.t[1]), Dual(x, 1.0)};
        auto h = hamiltonian_terms<Dual, Dual>(2, Dual(s.q, qx), Dual(s.p, px), tD, tr.kappa);
        const cplx qxx = h.dp.d;
        out.push_back(std::abs(qxx - pvi_rhs(s.q, qx, x, tr.kappa)));
    }
    return out;
}

// ---------------------------------------------------------------- nonlinear monodromy

enum class BraidRealization {
    HalfTwists,  // each letter: the two strands swap by a half turn about their midpoint
    OffCenter,   // squared letters only: both strands make a full turn about a point 3/10 of the way along
};

struct BraidPathOptions {
    int segments_per_half_turn = 24;
    double guard = 0.1;  // third point must stay this fraction of the radius outside the circle
};

namespace detail {

// b3 is written as b1^-1 b2^s b1 so that it swaps positions 1 and 3 passing below t2
inline std::vector<Letter> expand_b3(const std::vector<Letter>& w) {
    std::vector<Letter> r;
    for (auto& l : w) {
        if (l.gen == 3) {
            r.push_back({1, -1});
            r.push_back({2, l.sign});
            r.push_back({1, 1});
        } else {
            r.push_back(l);
        }
    }
    return r;
}

inline void guard_circle(cplx center, double radius, cplx other, double guard) {
    if (std::abs(other - center) < radius * (1.0 + guard))
        throw Error(ErrorKind::LoopGeometry, "third point lies too close to the braid circle");
}

}  // namespace detail

// closed time loop starting and ending at t realising a pure braid
inline TimePath braid_time_path(const TimeTriple& t, const BraidWord& braid,
                                BraidRealization how = BraidRealization::HalfTwists,
                                const BraidPathOptions& opt = {}) {
    for (auto& l : braid.letters)
        if (l.gen < 1 || l.gen > 3 || (l.sign != 1 && l.sign != -1))
            throw Error(ErrorKind::Parse, "bad braid letter");
    const std::array<cplx, 3> P = t;  // slot positions
    std::array<int, 3> slot{0, 1, 2};  // label sitting at each slot
    TimePath path{{t}};
    const int nseg = opt.segments_per_half_turn;

    if (how == BraidRealization::HalfTwists) {
        for (auto& l : detail::expand_b3(braid.letters)) {
            int u = l.gen - 1, v = l.gen;  // slots swapped
            cplx m = (P[u] + P[v]) / 2.0;
            double r = std::abs(P[v] - P[u]) / 2.0;
            detail::guard_circle(m, r, P[3 - u - v], opt.guard);
            int la = slot[u], lb = slot[v];
            for (int k = 1; k <= nseg; ++k) {
                TimeTriple cur = path.vertices.back();
                if (k == nseg) {
                    cur[la] = P[v];
                    cur[lb] = P[u];
                } else {
                    cplx rot = std::polar(1.0, l.sign * kPi * k / nseg);
                    cur[la] = m + (P[u] - m) * rot;
                    cur[lb] = m + (P[v] - m) * rot;
                }
                path.vertices.push_back(cur);
            }
            std::swap(slot[u], slot[v]);
        }
        if (slot != std::array<int, 3>{0, 1, 2})
            throw Error(ErrorKind::Precondition, "braid is not pure; its time path does not close");
        return path;
    }

    auto& w = braid.letters;
    if (w.size() % 2 != 0) throw Error(ErrorKind::Precondition, "off-centre realisation needs squared letters");
    for (size_t n = 0; n < w.size(); n += 2) {
        if (!(w[n] == w[n + 1]) || w[n].gen == 3)
            throw Error(ErrorKind::Precondition, "off-centre realisation takes only b1^{+-2} and b2^{+-2}");
        int u = w[n].gen - 1, v = w[n].gen;
        cplx c = P[u] + 0.3 * (P[v] - P[u]);
        detail::guard_circle(c, 0.7 * std::abs(P[v] - P[u]), P[3 - u - v], opt.guard);
        for (int k = 1; k <= 2 * nseg; ++k) {
            TimeTriple cur = t;
            if (k < 2 * nseg) {
                cplx rot = std::polar(1.0, w[n].sign * kPi * k / nseg);
                cur[u] = c + (P[u] - c) * rot;
                cur[v] = c + (P[v] - c) * rot;
            }
            path.vertices.push_back(cur);
        }
    }
    return path;
}

// Poincare return map of the flow along the loop realising a pure braid
inline PhasePoint nonlinear_monodromy(const PhasePoint& pt, const BraidWord& braid,
                                      BraidRealization how = BraidRealization::HalfTwists,
                                      const FlowOptions& opt = {}) {
    TimePath path = braid_time_path(pt.t, braid, how);
    PhasePoint end = integrate(pt, path, opt).end();
    end.t = pt.t;  // the loop closes exactly; drop rounding in the last vertex
    return end;
}

// ---------------------------------------------------------------- Riccati locus

// dq/ds = A q^2 + B q + C on p = 0, with d/ds of each coefficient
struct RiccatiCoefficients {
    std::array<cplx, 3> c{};   // C, B, A
    std::array<cplx, 3> dc{};  // their s-derivatives
    int degree = 0;            // exact degree of the extracted polynomial in q
};

// coefficients of sum_i dH_i/dp (q, p = 0) dt_i as an exact polynomial in q
inline RiccatiCoefficients riccati_coefficients(const TimeTriple& t, const TimeTriple& dt, const ExponentVector& k) {
    using P = Polynomial<Dual>;
    P q = P{Dual(0.0), Dual(1.0)};
    P p = P{Dual(0.0)};
    std::array<Dual, 3> tD{Dual(t[0], dt[0]), Dual(t[1], dt[1]), Dual(t[2], dt[2])};
    P sum{Dual(0.0)};
    for (int i = 0; i < 3; ++i) {
        if (dt[i] == cplx(0)) continue;
        sum += hamiltonian_terms<P, Dual>(i, q, p, tD, k).dp * dt[i];
    }
    RiccatiCoefficients r;
    int d = sum.storage_degree();
    while (d > 0 && sum.c[d].v == cplx(0) && sum.c[d].d == cplx(0)) --d;
    r.degree = d;
    for (int j = 0; j < 3; ++j) {
        r.c[j] = sum.coeff(j).v;
        r.dc[j] = sum.coeff(j).d;
    }
    return r;
}

struct RiccatiReport {
    Trajectory trajectory;
    double max_abs_p = 0;
    int max_degree = 0;          // of the induced q-equation over the path
    double max_linearization_error = 0;  // max |q - (-Y'/(A Y))|
    std::vector<double> linearization_error;  // per sample
};

// Flow on {k0 = 0, p = 0} with the linear equation Y'' = (A'/A + B) Y' - A C Y co-integrated;
// q = -Y'/(A Y) is checked at every sample.
inline RiccatiReport riccati_flow(const PhasePoint& pt, const TimePath& path, const FlowOptions& opt = {},
                                  double locus_tol = 1e-12) {
    if (!(std::abs(pt.kappa[0]) <= locus_tol) || !(std::abs(pt.p) <= locus_tol))
        throw Error(ErrorKind::NotOnRiccatiLocus, "Riccati flow needs k0 = 0 and p = 0");
    validate(pt);
    path.validate(0.0);
    detail::check_start(pt, path);

    RiccatiReport rep;
    auto& tr = rep.trajectory;
    tr.kappa = pt.kappa;
    tr.samples.push_back({0.0, pt.t, pt.q, pt.p, 0.0, 0.0, {}, 0.0});
    rep.linearization_error.push_back(0.0);
    State<4> y{pt.q, pt.p, 1.0, 0.0};  // q, p, Y, Y'
    OdeOptions oo;
    oo.rtol = opt.rtol;
    oo.atol = opt.atol;
    oo.max_steps = opt.max_steps;

    detail::for_each_edge(path, [&](const TimeTriple& a, const TimeTriple& b, double L, const TimeTriple& dir,
                                    double off) {
        auto t_at = [&](double s) { return s >= L ? b : detail::lerp(a, b, s / L); };
        auto coeff = [&](double s) {
            auto rc = riccati_coefficients(t_at(s), dir, pt.kappa);
            rep.max_degree = std::max(rep.max_degree, rc.degree);
            return rc;
        };
        {  // restart the linear solution so that it reproduces the current q
            auto rc = coeff(0.0);
            if (rc.c[2] == cplx(0))
                throw Error(ErrorKind::Precondition, "q-equation is linear here; nothing to linearise");
            y[3] = -rc.c[2] * y[0] * y[2];
        }
        auto rhs = [&](double s, const State<4>& Y) {
            PhasePoint cur{Y[0], Y[1], t_at(s), pt.kappa};
            auto [dq, dp] = vector_field(cur, dir);
            auto rc = coeff(s);
            const cplx A = rc.c[2], B = rc.c[1], C = rc.c[0], dA = rc.dc[2];
            return State<4>{dq, dp, Y[3], (dA / A + B) * Y[3] - A * C * Y[2]};
        };
        auto hmax = [&](double s, const State<4>&) { return opt.step_fraction * min_gap(t_at(s)); };
        auto on_step = [&](double s, const State<4>& Y, const State<4>& dY, double err) {
            TimeTriple t = t_at(s);
            detail::check_blowup(t, Y[0], Y[1], off + s, opt);
            if (!(std::abs(Y[2]) > 0))
                throw Error(ErrorKind::BlowUp, "linear solution vanished: q has a pole at s=" + std::to_string(off + s));
            tr.samples.push_back({off + s, t, Y[0], Y[1], dY[0], dY[1], dir, err});
            cplx A = coeff(s).c[2];
            double e = std::abs(Y[0] + Y[3] / (A * Y[2]));
            rep.linearization_error.push_back(e);
            rep.max_linearization_error = std::max(rep.max_linearization_error, e);
            rep.max_abs_p = std::max(rep.max_abs_p, std::abs(Y[1]));
        };
        y = integrate_interval<4>(rhs, y, 0.0, L, oo, hmax, on_step);
    });
    return rep;
}

}  // namespace pvi
