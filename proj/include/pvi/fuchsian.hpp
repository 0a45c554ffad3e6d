#pragma once

// Linear side of Riemann-Hilbert: the Fuchsian equation f'' - v1 f' + v2 f = 0
// attached to (q, p, t; kappa), its numeric monodromy and the resulting point of S(theta).

#include <future>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pvi/cubic.hpp"
#include "pvi/hamiltonian.hpp"
#include "pvi/ode.hpp"
#include "pvi/path.hpp"
#include "pvi/quad.hpp"

namespace pvi {

// v1 = 1/(z-q) + sum (k_i - 1)/(z-t_i),  v2 = p/(z-q) - sum H_i/(z-t_i)
struct FuchsianEquation {
    cplx q{};
    std::array<cplx, 3> t{};
    ExponentVector kappa;
    std::array<cplx, 3> hamiltonians{};
    cplx v1_res_q = 1.0;
    std::array<cplx, 3> v1_res{};
    cplx v2_res_q{};
    std::array<cplx, 3> v2_res{};
    std::array<qcplx, 3> v1_res_tail{};  // rounding remainders: exact residue = res + tail
    std::array<qcplx, 3> v2_res_tail{};

    cplx v1(cplx z) const {
        cplx r = v1_res_q / (z - q);
        for (int i = 0; i < 3; ++i) r += v1_res[i] / (z - t[i]);
        return r;
    }
    cplx v2(cplx z) const {
        cplx r = v2_res_q / (z - q);
        for (int i = 0; i < 3; ++i) r += v2_res[i] / (z - t[i]);
        return r;
    }

    std::array<cplx, 4> poles() const { return {t[0], t[1], t[2], q}; }

    double pole_distance(cplx z) const {
        double d = std::abs(z - q);
        for (auto& ti : t) d = std::min(d, std::abs(z - ti));
        return d;
    }

    double min_pole_gap() const {
        auto P = poles();
        double g = INFINITY;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) g = std::min(g, std::abs(P[a] - P[b]));
        return g;
    }

    // s(s-1) - r s + 0 = 0 at a finite pole with v1-residue r (v2 has simple poles only)
    std::array<cplx, 2> indicial_roots(int i) const { return {0.0, 1.0 + v1_res[i]}; }
    std::array<cplx, 2> indicial_roots_q() const { return {0.0, 1.0 + v1_res_q}; }

    // v2 must decay like 1/z^2: the sum of its residues
    cplx v2_residue_sum() const { return v2_res_q + v2_res[0] + v2_res[1] + v2_res[2]; }

    // f ~ z^-rho: rho^2 + (1 + R1) rho + c = 0, R1 = sum of v1 residues, c = lim z^2 v2
    std::array<cplx, 2> indicial_roots_infinity() const {
        cplx R1 = v1_res_q + v1_res[0] + v1_res[1] + v1_res[2];
        cplx c = v2_res_q * q;
        for (int i = 0; i < 3; ++i) c += v2_res[i] * t[i];
        cplx b = 1.0 + R1;
        cplx d = std::sqrt(b * b - 4.0 * c);
        return {(-b - d) / 2.0, (-b + d) / 2.0};
    }
};

// k0 recomputed so that the affine relation holds to 113 bits
inline qcplx k0_q(const ExponentVector& k) {
    return (qcplx(1) - to_q(k[1]) - to_q(k[2]) - to_q(k[3]) - to_q(k[4])) / qcplx(2);
}

// H_1..H_3 redone in 113-bit arithmetic
inline std::array<qcplx, 3> hamiltonians_q(const PhasePoint& pt) {
    const auto& k = pt.kappa;
    const qcplx q = to_q(pt.q), p = to_q(pt.p);
    const std::array<qcplx, 3> t{to_q(pt.t[0]), to_q(pt.t[1]), to_q(pt.t[2])};
    const qcplx k0 = k0_q(k);
    const qcplx c0 = k0 * (k0 + to_q(k[4]));
    std::array<qcplx, 3> H;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, m = (i + 2) % 3;
        qcplx qi = q - t[i], qj = q - t[j], qk = q - t[m];
        qcplx B = qj * qk * (to_q(k[i + 1]) - qcplx(1)) + qk * qi * to_q(k[j + 1]) + qi * qj * to_q(k[m + 1]);
        H[i] = (qi * qj * qk * p * p - B * p + qi * c0) / ((t[i] - t[j]) * (t[i] - t[m]));
    }
    return H;
}

inline FuchsianEquation build_equation(const PhasePoint& pt) {
    validate(pt);
    const auto Hq = hamiltonians_q(pt);
    FuchsianEquation eq;
    eq.q = pt.q;
    eq.t = pt.t;
    eq.kappa = pt.kappa;
    eq.v2_res_q = pt.p;
    for (int i = 0; i < 3; ++i) {
        eq.hamiltonians[i] = hamiltonian(i + 1, pt);
        eq.v1_res[i] = pt.kappa[i + 1] - 1.0;
        eq.v2_res[i] = -eq.hamiltonians[i];
        eq.v1_res_tail[i] = to_q(pt.kappa[i + 1]) - qcplx(1) - to_q(eq.v1_res[i]);
        eq.v2_res_tail[i] = -Hq[i] - to_q(eq.v2_res[i]);
    }
    return eq;
}

struct TransportOptions {
    double rtol = 1e-12;
    double atol = 1e-14;
    double clearance = -1.0;  // < 0: 0.05 * min pole gap
    double step_fraction = 0.25;
    long max_steps = 2'000'000;
};

using Mat2 = Eigen::Matrix2cd;

namespace detail {
inline double resolve_clearance(const FuchsianEquation& eq, double c) { return c >= 0 ? c : 0.05 * eq.min_pole_gap(); }

inline void check_clearance(const FuchsianEquation& eq, const Path& path, double clearance) {
    for (auto& pc : path.pieces)
        for (cplx P : eq.poles())
            if (pc.distance_to(P) < clearance)
                throw Error(ErrorKind::PoleClearance, "path passes within " + std::to_string(pc.distance_to(P)) +
                                                          " of a pole (clearance " + std::to_string(clearance) + ")");
}
}  // namespace detail

// transfer matrix of (f, f') along the path; later pieces multiply on the left
inline Mat2 transport(const FuchsianEquation& eq, const Path& path, const TransportOptions& opt = {}) {
    detail::check_clearance(eq, path, detail::resolve_clearance(eq, opt.clearance));
    OdeOptions oo;
    oo.rtol = opt.rtol;
    oo.atol = opt.atol;
    oo.max_steps = opt.max_steps;
    State<4> y{1.0, 0.0, 0.0, 1.0};
    for (auto& pc : path.pieces) {
        double L = pc.length();
        if (L == 0.0) continue;
        auto rhs = [&](double s, const State<4>& Y) {
            cplx z = pc.z(s), w = pc.dz(s);
            cplx a = eq.v1(z), b = eq.v2(z);
            // [[0,1],[-v2,v1]] * Y
            return State<4>{w * Y[2], w * Y[3], w * (-b * Y[0] + a * Y[2]), w * (-b * Y[1] + a * Y[3])};
        };
        auto hmax = [&](double s, const State<4>&) { return opt.step_fraction * eq.pole_distance(pc.z(s)); };
        y = integrate_interval<4>(rhs, y, 0.0, L, oo, hmax, [](double, const State<4>&, const State<4>&, double) {});
    }
    Mat2 M;
    M << y[0], y[1], y[2], y[3];
    return M;
}

struct SeriesOptions {
    double step_ratio = 1.0 / 3.0;  // |step| / distance to the nearest pole
    double clearance = -1.0;        // as in TransportOptions
    double tol = 1e-33;
    int max_order = 800;
    long max_steps = 1'000'000;
};

namespace detail {

// poles t1, t2, t3, q with their v1 and v2 residues, 113-bit
struct PoleDataQ {
    std::array<qcplx, 4> c, r1, r2;
};

inline PoleDataQ pole_data_q(const FuchsianEquation& eq) {
    PoleDataQ d;
    for (int i = 0; i < 3; ++i) {
        d.c[i] = to_q(eq.t[i]);
        d.r1[i] = to_q(eq.v1_res[i]) + eq.v1_res_tail[i];
        d.r2[i] = to_q(eq.v2_res[i]) + eq.v2_res_tail[i];
    }
    d.c[3] = to_q(eq.q);
    d.r1[3] = to_q(eq.v1_res_q);
    d.r2[3] = to_q(eq.v2_res_q);
    return d;
}

// One Taylor step z0 -> z0 + h for both columns of Y = [[f], [f']].
// With D = prod (z - c) the equation reads D f'' - (D v1) f' + (D v2) f = 0, all polynomial;
// in u = (z - z0)/h the coefficients of f = sum c_n u^n obey a five-term recurrence.
inline void series_step(const PoleDataQ& P, const qcplx& z0, const qcplx& h, Mat2q& Y, const SeriesOptions& opt) {
    using Poly = std::array<qcplx, 5>;
    auto mul_lin = [](const Poly& a, const qcplx& c0, const qcplx& c1) {  // a * (c0 + c1 u)
        Poly r{};
        for (int n = 4; n >= 0; --n) r[n] = a[n] * c0 + (n ? a[n - 1] * c1 : qcplx(0));
        return r;
    };
    std::array<qcplx, 4> d;
    for (int m = 0; m < 4; ++m) d[m] = z0 - P.c[m];
    Poly D{qcplx(1)}, A{}, B{};
    for (int m = 0; m < 4; ++m) {
        Poly rest{qcplx(1)};
        for (int n = 0; n < 4; ++n)
            if (n != m) rest = mul_lin(rest, d[n], h);
        for (int j = 0; j < 4; ++j) {
            A[j] += rest[j] * P.r1[m];
            B[j] += rest[j] * P.r2[m];
        }
        D = mul_lin(D, d[m], h);
    }
    const qcplx h2 = h * h;
    for (int j = 0; j < 4; ++j) {
        A[j] *= h;
        B[j] *= h2;
    }

    std::array<qcplx*, 2> f0{&Y.a, &Y.b}, f1{&Y.c, &Y.d};
    for (int col = 0; col < 2; ++col) {
        std::vector<qcplx> c{*f0[col], *f1[col] * h};
        qcplx S0 = c[0] + c[1], S1 = c[1];
        const double lead = qabs(c[0]) + qabs(c[1]);
        int quiet = 0;
        for (int n = 0;; ++n) {
            if (n + 2 > opt.max_order)
                throw Error(ErrorKind::NoConvergence, "Taylor series did not converge within the order cap");
            qcplx acc = 0;
            for (int j = 1; j <= 4 && j <= n + 2; ++j)
                acc += D[j] * qreal((n - j + 2) * (n - j + 1)) * c[n - j + 2];
            for (int j = 0; j <= 3 && j <= n + 1; ++j) acc -= A[j] * qreal(n - j + 1) * c[n - j + 1];
            for (int j = 0; j <= 3 && j <= n; ++j) acc += B[j] * c[n - j];
            qcplx next = -acc / (D[0] * qreal((n + 2) * (n + 1)));
            c.push_back(next);
            S0 += next;
            S1 += next * qreal(n + 2);
            double mag = qabs(next) * (n + 3);
            double scale = std::max(qabs(S0) + qabs(S1), lead);
            quiet = mag <= opt.tol * scale ? quiet + 1 : 0;
            if (quiet >= 3) break;
        }
        *f0[col] = S0;
        *f1[col] = S1 / h;
    }
}

}  // namespace detail

// same transfer matrix as transport(), by Taylor continuation in 113-bit arithmetic
inline Mat2q transport_series(const FuchsianEquation& eq, const Path& path, const SeriesOptions& opt = {}) {
    detail::check_clearance(eq, path, detail::resolve_clearance(eq, opt.clearance));
    const auto P = detail::pole_data_q(eq);
    Mat2q Y;
    if (path.pieces.empty()) return Y;
    qcplx z = to_q(path.pieces.front().start());
    long steps = 0;
    for (auto& pc : path.pieces) {
        const double L = pc.length();
        double s = 0.0;
        while (s < L) {
            if (++steps > opt.max_steps) throw Error(ErrorKind::StepUnderflow, "series transport step budget exhausted");
            double ds = opt.step_ratio * eq.pole_distance(to_d(z));
            bool last = s + ds >= L;
            qcplx target = to_q(last ? pc.end() : pc.z(s + ds));
            detail::series_step(P, z, target - z, Y, opt);
            z = target;
            s = last ? L : s + ds;
        }
    }
    return Y;
}

struct LoopOptions {
    double radius_fraction = 0.3;
    SeriesOptions transport;
    bool outer_check = true;
    bool parallel = true;
};

inline Mat2 to_eigen(const Mat2q& m) {
    Mat2 r;
    r << to_d(m.a), to_d(m.b), to_d(m.c), to_d(m.d);
    return r;
}

// matrices act on (f, f') at the basepoint; 113-bit throughout
struct MonodromyRep {
    std::array<Mat2q, 4> M;    // SL2-normalised, M4 M3 M2 M1 = I
    std::array<Mat2q, 4> raw;  // raw[3] from the product relation
    cplx basepoint{};
    std::optional<Mat2q> outer_raw;  // explicit loop around t1, t2, t3
    double outer_defect = NAN;       // || M4(outer) M3 M2 M1 - I || after normalisation
};

namespace detail {

inline double frob(const Mat2q& m) { return m.norm(); }

// straight tail a -> b, detouring on small arcs around the listed poles
inline Path tail_with_detours(cplx a, cplx b, const std::vector<std::pair<cplx, double>>& avoid) {
    struct Hit {
        double u1, u2;
        cplx P;
        double rho;
    };
    std::vector<Hit> hits;
    cplx D = b - a;
    double DD = std::norm(D);
    for (auto& [P, rho] : avoid) {
        if (DD == 0.0) break;
        cplx AP = a - P;
        double B = 2.0 * (std::conj(D) * AP).real(), C = std::norm(AP) - rho * rho;
        double disc = B * B - 4 * DD * C;
        if (disc <= 0) continue;
        double u1 = (-B - std::sqrt(disc)) / (2 * DD), u2 = (-B + std::sqrt(disc)) / (2 * DD);
        if (u2 <= 0 || u1 >= 1) continue;
        if (u1 <= 0 || u2 >= 1) throw Error(ErrorKind::LoopGeometry, "loop endpoint inside a detour disc");
        hits.push_back({u1, u2, P, rho});
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.u1 < y.u1; });
    Path p;
    cplx cur = a;
    for (auto& h : hits) {
        cplx e1 = a + h.u1 * D, e2 = a + h.u2 * D;
        p.pieces.push_back(PathPiece::segment(cur, e1));
        double f1 = std::arg(e1 - h.P), f2 = std::arg(e2 - h.P);
        double sweep = std::remainder(f2 - f1, 2 * kPi);
        p.pieces.push_back(PathPiece::arc(h.P, h.rho, f1, sweep));
        cur = e2;
    }
    p.pieces.push_back(PathPiece::segment(cur, b));
    return p;
}

inline double nearest_other(const std::array<cplx, 4>& P, int m) {
    double d = INFINITY;
    for (int n = 0; n < 4; ++n)
        if (n != m) d = std::min(d, std::abs(P[n] - P[m]));
    return d;
}

// tail . anticlockwise circle . tail^-1 around pole index m (0..2 = t_i, 3 = q)
inline Path loop_around(const FuchsianEquation& eq, int m, cplx b, const LoopOptions& opt, bool detour_all) {
    auto P = eq.poles();
    double r = opt.radius_fraction * nearest_other(P, m);
    if (std::abs(b - P[m]) <= r) throw Error(ErrorKind::LoopGeometry, "basepoint inside a loop circle");
    cplx dir = (b - P[m]) / std::abs(b - P[m]);
    cplx entry = P[m] + r * dir;
    std::vector<std::pair<cplx, double>> avoid;
    for (int n = 0; n < 4; ++n) {
        if (n == m) continue;
        bool apparent = n == 3;
        double rho = opt.radius_fraction * nearest_other(P, n);
        if (apparent || detour_all) {
            avoid.push_back({P[n], rho});
        } else if (PathPiece::segment(b, entry).distance_to(P[n]) < rho) {
            throw Error(ErrorKind::LoopGeometry, "tail to t" + std::to_string(m + 1) + " passes too close to t" +
                                                     std::to_string(n + 1) + "; choose another basepoint");
        }
    }
    Path tail = tail_with_detours(b, entry, avoid);
    Path circle;
    circle.pieces.push_back(PathPiece::arc(P[m], r, std::arg(dir), 2 * kPi));
    return tail + circle + tail.reversed();
}

// the outer anticlockwise circle through (or reached radially from) b, enclosing t1, t2, t3
inline Path outer_loop(const FuchsianEquation& eq, cplx b, const LoopOptions& opt) {
    cplx c = (eq.t[0] + eq.t[1] + eq.t[2]) / 3.0;
    double spread = 0;
    for (auto& ti : eq.t) spread = std::max(spread, std::abs(ti - c));
    double margin = 0.5 * min_gap(eq.t);
    double R0 = std::abs(b - c);
    double need = spread + margin;
    auto P = eq.poles();
    double rho_q = opt.radius_fraction * nearest_other(P, 3);
    cplx dir = (b - c) / R0;
    for (int k = 0; k < 20; ++k) {
        double R = std::max(R0, need) * (1.0 + 0.15 * k);
        if (std::abs(std::abs(eq.q - c) - R) < rho_q) continue;
        Path circle;
        circle.pieces.push_back(PathPiece::arc(c, R, std::arg(dir), 2 * kPi));
        if (R == R0) return circle;
        Path tail = tail_with_detours(b, c + R * dir, {{eq.q, rho_q}});
        return tail + circle + tail.reversed();
    }
    throw Error(ErrorKind::LoopGeometry, "no outer circle keeps clear of q");
}

}  // namespace detail

// above the t_i, far enough that the tails fan out left to right
inline cplx default_basepoint(const std::array<cplx, 3>& t, cplx q) {
    cplx c = (t[0] + t[1] + t[2]) / 3.0;
    double spread = 0;
    for (auto& ti : t) spread = std::max(spread, std::abs(ti - c));
    double gap = min_gap(t);
    cplx b = c + kI * (spread + gap);
    for (int k = 0; k < 20 && std::abs(b - q) < 0.5 * gap; ++k) b += kI * (0.5 * gap);
    return b;
}

inline cplx default_basepoint(const PhasePoint& pt) { return default_basepoint(pt.t, pt.q); }

// arg(t_i - b) relative to the centroid direction must increase with i
inline void check_loop_order(const std::array<cplx, 3>& t, cplx b) {
    cplx c = (t[0] + t[1] + t[2]) / 3.0;
    double a[3];
    for (int i = 0; i < 3; ++i) a[i] = std::arg((t[i] - b) / (c - b));
    if (!(a[0] < a[1] && a[1] < a[2]))
        throw Error(ErrorKind::LoopGeometry,
                    "t1, t2, t3 must appear left to right as seen from the basepoint; supply another basepoint");
}

inline MonodromyRep monodromy(const FuchsianEquation& eq, cplx b, const LoopOptions& opt = {}) {
    check_loop_order(eq.t, b);
    const double clearance = detail::resolve_clearance(eq, opt.transport.clearance);
    if (eq.pole_distance(b) < clearance) throw Error(ErrorKind::PoleClearance, "basepoint too close to a pole");

    std::array<Path, 3> loops;
    for (int i = 0; i < 3; ++i) loops[i] = detail::loop_around(eq, i, b, opt, false);
    std::optional<Path> outer;
    if (opt.outer_check) outer = detail::outer_loop(eq, b, opt);

    auto run = [&](const Path& p) { return transport_series(eq, p, opt.transport); };
    MonodromyRep rep;
    rep.basepoint = b;
    if (opt.parallel) {
        std::array<std::future<Mat2q>, 3> fut;
        for (int i = 0; i < 3; ++i) fut[i] = std::async(std::launch::async, run, std::cref(loops[i]));
        std::future<Mat2q> fo;
        if (outer) fo = std::async(std::launch::async, run, std::cref(*outer));
        for (int i = 0; i < 3; ++i) rep.raw[i] = fut[i].get();
        if (outer) rep.outer_raw = fo.get();
    } else {
        for (int i = 0; i < 3; ++i) rep.raw[i] = run(loops[i]);
        if (outer) rep.outer_raw = run(*outer);
    }
    rep.raw[3] = (rep.raw[2] * rep.raw[1] * rep.raw[0]).inverse();

    const auto& k = eq.kappa;
    const qcplx ipi = qcplx(0, 1) * qcplx(qpi());
    for (int i = 0; i < 3; ++i) rep.M[i] = rep.raw[i] * exp(-ipi * to_q(k[i + 1]));
    const qcplx s4 = -exp(-ipi * (qcplx(2) * k0_q(k) + to_q(k[4])));
    rep.M[3] = rep.raw[3] * s4;
    if (rep.outer_raw) {
        Mat2q M4o = rep.outer_raw->inverse() * s4;
        rep.outer_defect = detail::frob(M4o * rep.M[2] * rep.M[1] * rep.M[0] - Mat2q::identity());
    }
    return rep;
}

inline MonodromyRep monodromy(const PhasePoint& pt, std::optional<cplx> basepoint = std::nullopt,
                              const LoopOptions& opt = {}) {
    return monodromy(build_equation(pt), basepoint.value_or(default_basepoint(pt)), opt);
}

// ||M_q - I|| for the raw loop around the apparent point q
inline double apparent_check(const FuchsianEquation& eq, cplx b, const LoopOptions& opt = {}) {
    Path loop = detail::loop_around(eq, 3, b, opt, true);
    return detail::frob(transport_series(eq, loop, opt.transport) - Mat2q::identity());
}

inline double apparent_check(const PhasePoint& pt, std::optional<cplx> basepoint = std::nullopt,
                             const LoopOptions& opt = {}) {
    return apparent_check(build_equation(pt), basepoint.value_or(default_basepoint(pt)), opt);
}

inline TripleQ traces_x_q(const MonodromyRep& rep) {
    const auto& M = rep.M;
    return {(M[1] * M[2]).trace(), (M[2] * M[0]).trace(), (M[0] * M[1]).trace()};
}

inline Triple traces_x(const MonodromyRep& rep) {
    auto x = traces_x_q(rep);
    return {to_d(x[0]), to_d(x[1]), to_d(x[2])};
}

inline TraceData traces_a(const MonodromyRep& rep) {
    return {{to_d(rep.M[0].trace()), to_d(rep.M[1].trace()), to_d(rep.M[2].trace()), to_d(rep.M[3].trace())}};
}

// a_i(kappa), theta(a) and |f(x, theta)| in 113-bit arithmetic
inline std::array<qcplx, 4> kappa_to_a_q(const ExponentVector& k) {
    std::array<qcplx, 4> a;
    for (int i = 1; i <= 3; ++i) a[i - 1] = qcplx(2) * cos(qcplx(qpi()) * to_q(k[i]));
    a[3] = qcplx(-2) * cos(qcplx(qpi()) * to_q(k[4]));
    return a;
}

inline std::array<qcplx, 4> rh_param_q(const ExponentVector& k) {
    auto a = kappa_to_a_q(k);
    return {a[0] * a[3] + a[1] * a[2], a[1] * a[3] + a[2] * a[0], a[2] * a[3] + a[0] * a[1],
            a[0] * a[1] * a[2] * a[3] + a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3] - qcplx(4)};
}

inline double fricke_residual_q(const TripleQ& x, const std::array<qcplx, 4>& th) {
    qcplx f = x[0] * x[1] * x[2] + th[3];
    for (int i = 0; i < 3; ++i) f += x[i] * x[i] - th[i] * x[i];
    return qabs(f);
}

inline SurfacePoint rh_point(const PhasePoint& pt, std::optional<cplx> basepoint = std::nullopt,
                             const LoopOptions& opt = {}) {
    MonodromyRep rep = monodromy(pt, basepoint, opt);
    return {traces_x(rep), rh_param(pt.kappa), fricke_residual_q(traces_x_q(rep), rh_param_q(pt.kappa))};
}

struct RhReport {
    MonodromyRep rep;
    Triple x{};
    TraceData a_numeric;
    TraceData a_exact;
    ThetaVector theta;
    double fricke_residual = 0;   // evaluated before rounding x to double
    double trace_error = 0;       // max |Tr M_i - a_i(kappa)|
    double det_error = 0;         // max |det M_i - 1|
    double product_defect = 0;    // with M4 from the explicit outer loop when available
    double apparency = 0;
};

inline RhReport rh_evaluate(const PhasePoint& pt, std::optional<cplx> basepoint = std::nullopt,
                            const LoopOptions& opt = {}) {
    FuchsianEquation eq = build_equation(pt);
    cplx b = basepoint.value_or(default_basepoint(pt));
    RhReport r;
    r.rep = monodromy(eq, b, opt);
    r.x = traces_x(r.rep);
    r.a_numeric = traces_a(r.rep);
    r.a_exact = kappa_to_a(pt.kappa);
    r.theta = rh_param(pt.kappa);
    r.fricke_residual = fricke_residual_q(traces_x_q(r.rep), rh_param_q(pt.kappa));
    const auto aq = kappa_to_a_q(pt.kappa);
    for (int i = 0; i < 4; ++i) {
        r.trace_error = std::max(r.trace_error, qabs(r.rep.M[i].trace() - aq[i]));
        r.det_error = std::max(r.det_error, qabs(r.rep.M[i].det() - qcplx(1)));
    }
    r.product_defect = std::isnan(r.rep.outer_defect)
                           ? detail::frob(r.rep.M[3] * r.rep.M[2] * r.rep.M[1] * r.rep.M[0] - Mat2q::identity())
                           : r.rep.outer_defect;
    r.apparency = apparent_check(eq, b, opt);
    return r;
}

}  // namespace pvi
