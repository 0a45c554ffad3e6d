#pragma once

// The cubic surface S(theta): f = x1x2x3 + x1^2 + x2^2 + x3^2 - th1 x1 - th2 x2 - th3 x3 + th4

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "pvi/param.hpp"
#include "pvi/polynomial.hpp"

namespace pvi {

inline cplx eval_f(const Triple& x, const ThetaVector& th) {
    return x[0] * x[1] * x[2] + x[0] * x[0] + x[1] * x[1] + x[2] * x[2]
           - th[0] * x[0] - th[1] * x[1] - th[2] * x[2] + th[3];
}

inline Triple grad_f(const Triple& x, const ThetaVector& th) {
    return {x[1] * x[2] + 2.0 * x[0] - th[0],
            x[2] * x[0] + 2.0 * x[1] - th[1],
            x[0] * x[1] + 2.0 * x[2] - th[2]};
}

inline Eigen::Matrix3cd hessian_f(const Triple& x) {
    Eigen::Matrix3cd h;
    h << 2.0, x[2], x[1],
         x[2], 2.0, x[0],
         x[1], x[0], 2.0;
    return h;
}

struct CubicSurface {
    ThetaVector theta;
    cplx operator()(const Triple& x) const { return eval_f(x, theta); }
};

struct SurfacePoint {
    Triple x{};
    ThetaVector theta;
    double residual = 0.0;

    // checked constructor
    static SurfacePoint on_surface(const Triple& x, const ThetaVector& th, double tol) {
        double r = std::abs(eval_f(x, th));
        if (!(r <= tol))
            throw Error(ErrorKind::Precondition, "point is off the surface, |f| = " + std::to_string(r));
        return {x, th, r};
    }
};

// dx_i ^ dx_j / (df/dx_k), (i,j,k) cyclic with the largest |df/dx_k|
inline cplx residue_form(const SurfacePoint& pt, const Triple& u, const Triple& v, double tol = 1e-12) {
    Triple g = grad_f(pt.x, pt.theta);
    int k = 0;
    for (int m = 1; m < 3; ++m)
        if (std::abs(g[m]) > std::abs(g[k])) k = m;
    if (std::abs(g[k]) <= tol) throw Error(ErrorKind::SingularPoint, "all partials of f vanish");
    int i = (k + 1) % 3, j = (k + 2) % 3;
    return (u[i] * v[j] - u[j] * v[i]) / g[k];
}

// same, with the chart forced to k (0-based); for cross-checks
inline cplx residue_form_chart(int k, const SurfacePoint& pt, const Triple& u, const Triple& v) {
    Triple g = grad_f(pt.x, pt.theta);
    int i = (k + 1) % 3, j = (k + 2) % 3;
    return (u[i] * v[j] - u[j] * v[i]) / g[k];
}

namespace detail {
inline constexpr int kSigns[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
}

inline cplx fricke_w(const TraceData& a) {
    cplx p1 = 1.0;
    for (auto& e : detail::kSigns) p1 *= double(e[0]) * a[0] + double(e[1]) * a[1] + double(e[2]) * a[2] + a[3];
    cplx p2 = (a[0] * a[3] - a[1] * a[2]) * (a[1] * a[3] - a[2] * a[0]) * (a[2] * a[3] - a[0] * a[1]);
    return p1 - p2;
}

inline cplx discriminant_lift(const TraceData& a) {
    cplx w = fricke_w(a);
    cplx r = w * w;
    for (int i = 0; i < 4; ++i) r *= a[i] * a[i] - 4.0;
    return r;
}

// |Delta| relative to the size of the terms it is built from
inline double normalized_discriminant(const TraceData& a) {
    double s = std::abs(a[0]) + std::abs(a[1]) + std::abs(a[2]) + std::abs(a[3]);
    double w_scale = std::pow(s, 4);
    double m = 1.0;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        m *= std::abs(a[i] * a[3]) + std::abs(a[j] * a[k]);
    }
    w_scale += m;
    double den = (1.0 + w_scale) * (1.0 + w_scale);
    for (int i = 0; i < 4; ++i) den *= 4.0 + std::norm(a[i]);
    return std::abs(discriminant_lift(a)) / den;
}

enum class AdeType { A1, A2, A3, D4 };

inline const char* to_string(AdeType t) {
    switch (t) {
        case AdeType::A1: return "A1";
        case AdeType::A2: return "A2";
        case AdeType::A3: return "A3";
        case AdeType::D4: return "D4";
    }
    return "?";
}

inline int milnor_number(AdeType t) {
    switch (t) {
        case AdeType::A1: return 1;
        case AdeType::A2: return 2;
        case AdeType::A3: return 3;
        case AdeType::D4: return 4;
    }
    return 0;
}

struct SingularPoint {
    Triple x{};
    AdeType type = AdeType::A1;
    int milnor = 1;
    int hessian_corank = 0;
    double residual = 0.0;
};

struct SingularPointReport {
    std::vector<SingularPoint> points;
    int total_milnor() const {
        int s = 0;
        for (auto& p : points) s += p.milnor;
        return s;
    }
};

namespace detail {

inline double theta_scale(const ThetaVector& th) {
    return 1.0 + std::max({std::abs(th[0]), std::abs(th[1]), std::abs(th[2]), std::sqrt(std::abs(th[3]))});
}

inline double sing_residual(const Triple& x, const ThetaVector& th) {
    Triple g = grad_f(x, th);
    return std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]) + std::norm(eval_f(x, th)));
}

// agglomerate values closer than radius; returns the cluster means
inline std::vector<cplx> cluster_means(const std::vector<cplx>& v, double radius) {
    std::vector<int> label(v.size(), -1);
    int n = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (label[i] >= 0) continue;
        label[i] = n;
        // grow transitively
        for (bool grew = true; grew;) {
            grew = false;
            for (size_t j = 0; j < v.size(); ++j) {
                if (label[j] >= 0) continue;
                for (size_t k = 0; k < v.size(); ++k)
                    if (label[k] == n && std::abs(v[j] - v[k]) <= radius * (1.0 + std::abs(v[k]))) {
                        label[j] = n;
                        grew = true;
                        break;
                    }
            }
        }
        ++n;
    }
    std::vector<cplx> out;
    for (int c = 0; c < n; ++c) {
        cplx s = 0.0;
        int m = 0;
        for (size_t i = 0; i < v.size(); ++i)
            if (label[i] == c) { s += v[i]; ++m; }
        out.push_back(s / double(m));
    }
    return out;
}

inline SingularPoint type_point(const Triple& x, double residual) {
    Eigen::Matrix3cd H = hessian_f(x);
    Eigen::JacobiSVD<Eigen::Matrix3cd> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
    auto s = svd.singularValues();
    double thr = 1e-8 * s(0);
    int rank = 0;
    for (int i = 0; i < 3; ++i)
        if (s(i) > thr) ++rank;

    SingularPoint sp;
    sp.x = x;
    sp.residual = residual;
    sp.hessian_corank = 3 - rank;
    if (rank == 3) {
        sp.type = AdeType::A1;
    } else if (rank == 1) {
        sp.type = AdeType::D4;
    } else if (rank == 2) {
        // kernel line k; the cubic part of f is v1 v2 v3 exactly
        Eigen::Vector3cd k = svd.matrixV().col(2);
        cplx c3 = k(0) * k(1) * k(2);
        if (std::abs(c3) > 1e-6) {
            sp.type = AdeType::A2;
        } else {
            // quartic term of f restricted to the kernel after eliminating the range directions
            Eigen::Vector3cd dC(k(1) * k(2), k(0) * k(2), k(0) * k(1));
            Eigen::Vector3cd w = svd.solve(-dC);
            cplx c4 = 0.5 * (dC.transpose() * w)(0);  // bilinear, not hermitian
            if (std::abs(c4) <= 1e-6)
                throw Error(ErrorKind::Unclassifiable, "corank-1 point with vanishing cubic and quartic terms");
            sp.type = AdeType::A3;
        }
    } else {
        throw Error(ErrorKind::Unclassifiable, "Hessian of rank 0");
    }
    sp.milnor = milnor_number(sp.type);
    return sp;
}

}  // namespace detail

// Singular points of S(theta) with local ADE types.
// Eliminating x1 = (th1 - x2 x3)/2 leaves x2 (4 - x3^2) = 2 th2 - th1 x3 and
// th1 x2 - x2^2 x3 + 4 x3 - 2 th3 = 0, hence a quintic in x3 vanishing at every
// critical point of f; cyclic relabelling gives the quintics for x1 and x2.
// A degenerate critical point is a multiple root, so each coordinate is taken
// as the mean of its root cluster (stable where the individual roots are not).
inline Polynomial<cplx> critical_quintic(const ThetaVector& th) {
    using P = Polynomial<cplx>;
    const P s{0.0, 1.0};
    P u = 2.0 * th[1] - th[0] * s;
    P v = 4.0 - s * s;
    return th[0] * u * v - u * u * s + (4.0 * s - 2.0 * th[2]) * v * v;
}

inline SingularPointReport singular_points(const ThetaVector& th, double tol = 1e-8) {
    if (!(tol > 0)) throw Error(ErrorKind::Precondition, "tol must be positive");

    // coordinate c is the third coordinate after relabelling
    std::array<std::vector<cplx>, 3> values;
    const ThetaVector rel[3] = {
        {{th[1], th[2], th[0], th[3]}},
        {{th[2], th[0], th[1], th[3]}},
        th,
    };
    // means repair split multiple roots; raw roots keep close but distinct ones apart
    for (int c = 0; c < 3; ++c) {
        auto r = roots(critical_quintic(rel[c]));
        values[c] = detail::cluster_means(r, 5e-3);
        for (cplx z : r)
            if (std::find(values[c].begin(), values[c].end(), z) == values[c].end()) values[c].push_back(z);
    }

    const double scale = detail::theta_scale(th);
    const double accept = tol * scale * scale;
    const double ambiguous = 1e3 * accept;
    std::vector<std::pair<Triple, double>> found;
    std::vector<Triple> doubtful;
    for (cplx x1 : values[0])
        for (cplx x2 : values[1])
            for (cplx x3 : values[2]) {
                Triple x{x1, x2, x3};
                double r = detail::sing_residual(x, th);
                if (r <= accept) found.push_back({x, r});
                else if (r <= ambiguous) doubtful.push_back(x);
            }
    for (auto& d : doubtful) {
        bool near = false;
        for (auto& f : found)
            if (dist(f.first, d) <= 1e-2 * (1.0 + max_abs(d))) near = true;
        if (!near)
            throw Error(ErrorKind::NoConvergence,
                        "a critical point nearly lies on the surface (near-degenerate theta)");
    }

    // one representative per point: the best-fitting candidate
    std::sort(found.begin(), found.end(), [](auto& a, auto& b) { return a.second < b.second; });
    SingularPointReport rep;
    std::vector<Triple> kept;
    for (auto& f : found) {
        bool dup = false;
        for (auto& k : kept) dup = dup || dist(k, f.first) <= 1e-2 * (1.0 + max_abs(k));
        if (dup) continue;
        kept.push_back(f.first);
        rep.points.push_back(detail::type_point(f.first, f.second));
    }
    std::sort(rep.points.begin(), rep.points.end(), [](const SingularPoint& a, const SingularPoint& b) {
        for (int i = 0; i < 3; ++i) {
            if (a.x[i].real() != b.x[i].real()) return a.x[i].real() < b.x[i].real();
            if (a.x[i].imag() != b.x[i].imag()) return a.x[i].imag() < b.x[i].imag();
        }
        return false;
    });
    if (rep.points.size() > 4 || rep.total_milnor() > 4)
        throw Error(ErrorKind::Unclassifiable, "more than four rational double points found");
    return rep;
}

}  // namespace pvi
