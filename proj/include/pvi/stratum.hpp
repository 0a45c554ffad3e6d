#pragma once

// wall membership and stratum labels, decided on the cubic side

#include "pvi/cubic.hpp"
#include "pvi/param.hpp"

namespace pvi {

inline bool on_wall(const ExponentVector& k, double tol = 1e-8) {
    if (!(tol > 0)) throw Error(ErrorKind::Precondition, "tol must be positive");
    return normalized_discriminant(kappa_to_a(k)) <= tol;
}

inline StratumLabel label_from_points(const SingularPointReport& rep) {
    const auto& pts = rep.points;
    if (pts.empty()) return {DynkinType::Empty, 0};
    bool all_a1 = true;
    for (auto& p : pts) all_a1 = all_a1 && p.type == AdeType::A1;
    if (all_a1) {
        static constexpr DynkinType nodes[] = {DynkinType::Empty, DynkinType::A1, DynkinType::A1x2,
                                               DynkinType::A1x3, DynkinType::A1x4};
        return {nodes[pts.size()], int(pts.size())};
    }
    if (pts.size() != 1)
        throw Error(ErrorKind::Unclassifiable, "mixed singularity types do not occur in D4^(1) strata");
    switch (pts[0].type) {
        case AdeType::A2: return {DynkinType::A2, 2};
        case AdeType::A3: return {DynkinType::A3, 3};
        case AdeType::D4: return {DynkinType::D4, 4};
        default: break;
    }
    throw Error(ErrorKind::Unclassifiable, "unexpected point type");
}

inline StratumLabel classify_theta(const ThetaVector& th, double tol = 1e-8) {
    return label_from_points(singular_points(th, tol));
}

inline StratumLabel classify_stratum(const ExponentVector& k, double tol = 1e-8) {
    try {
        return classify_theta(rh_param(k), tol);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NoConvergence) throw Error(ErrorKind::Unclassifiable, e.what());
        throw;
    }
}

}  // namespace pvi
