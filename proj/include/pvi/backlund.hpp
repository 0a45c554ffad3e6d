#pragma once

// Backlund transformations s0..s4 as birational maps of (kappa, q, p) at fixed t

#include <string>

#include "pvi/flow.hpp"

namespace pvi {

// letters over 0..4, composed left to right
using BacklundWord = WeylWord;

// s0: q += k0/p.  s1..s3: p -= k_i/(q - t_i).  s4 moves kappa only (t4 sits at infinity).
inline PhasePoint apply_basic(int i, const PhasePoint& pt) {
    if (i < 0 || i > 4) throw Error(ErrorKind::Precondition, "Backlund index must be 0..4");
    PhasePoint r = pt;
    const auto& k = pt.kappa;
    if (i == 0) {
        if (pt.p == cplx(0)) throw Error(ErrorKind::PoleOfTransformation, "s0 needs p != 0");
        r.q = pt.q + k[0] / pt.p;
    } else if (i <= 3) {
        cplx d = pt.q - pt.t[i - 1];
        if (d == cplx(0)) throw Error(ErrorKind::PoleOfTransformation, "s" + std::to_string(i) + " needs q != t" +
                                                                           std::to_string(i));
        r.p = pt.p - k[i] / d;
    }
    r.kappa = weyl_reflect(i, k);
    return r;
}

inline PhasePoint apply_word(const BacklundWord& w, PhasePoint pt) {
    for (size_t n = 0; n < w.letters.size(); ++n) {
        try {
            pt = apply_basic(w.letters[n], pt);
        } catch (const Error& e) {
            throw Error(e.kind(), std::string(e.what()) + " (at letter " + std::to_string(n) + ")");
        }
    }
    return pt;
}

// max over q, p and kappa
inline double phase_distance(const PhasePoint& a, const PhasePoint& b) {
    double d = std::max(std::abs(a.q - b.q), std::abs(a.p - b.p));
    for (int j = 0; j < 5; ++j) d = std::max(d, std::abs(a.kappa[j] - b.kappa[j]));
    for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(a.t[j] - b.t[j]));
    return d;
}

struct EquivarianceReport {
    PhasePoint transform_then_flow;
    PhasePoint flow_then_transform;
    double deviation = 0;
    bool ok = false;
};

inline EquivarianceReport check_equivariance(int i, const PhasePoint& pt, const TimePath& path, double tol = 1e-6,
                                             const FlowOptions& opt = {}) {
    EquivarianceReport r;
    r.transform_then_flow = integrate(apply_basic(i, pt), path, opt).end();
    r.flow_then_transform = apply_basic(i, integrate(pt, path, opt).end());
    r.deviation = phase_distance(r.transform_then_flow, r.flow_then_transform);
    r.ok = r.deviation <= tol;
    return r;
}

}  // namespace pvi
