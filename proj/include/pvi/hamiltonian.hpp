#pragma once

// canonical coordinates (q, p, t; kappa) with t4 at infinity, and the Hamiltonians H1..H3

#include <array>
#include <string>

#include "pvi/param.hpp"

namespace pvi {

struct PhasePoint {
    cplx q{}, p{};
    std::array<cplx, 3> t{0.0, 1.0, 2.0};
    ExponentVector kappa;
};

inline double min_gap(const std::array<cplx, 3>& t) {
    return std::min({std::abs(t[0] - t[1]), std::abs(t[1] - t[2]), std::abs(t[2] - t[0])});
}

inline void validate(const PhasePoint& pt, double clearance = 0.0) {
    if (!(min_gap(pt.t) > clearance)) throw Error(ErrorKind::Precondition, "t_i must be pairwise distinct");
    for (int i = 0; i < 3; ++i)
        if (!(std::abs(pt.q - pt.t[i]) > clearance))
            throw Error(ErrorKind::Precondition, "q coincides with t" + std::to_string(i + 1));
}

template <class T>
struct HamiltonianValue {
    T value, dq, dp;
};

// H_i = [Q p^2 - B_i p + k0 (k0 + k4) q_i] / (t_ij t_ik),  Q = q1 q2 q3,
// B_i = (k_i - 1) q_j q_k + k_j q_k q_i + k_k q_i q_j,  q_m = q - t_m.
// T carries q, p (cplx, Dual, Polynomial); S carries t.
template <class T, class S>
HamiltonianValue<T> hamiltonian_terms(int i, const T& q, const T& p, const std::array<S, 3>& t,
                                      const ExponentVector& k) {
    const int j = (i + 1) % 3, m = (i + 2) % 3;  // i is 0-based here
    T qi = q - t[i], qj = q - t[j], qk = q - t[m];
    S d = (t[i] - t[j]) * (t[i] - t[m]);
    const cplx ki = k[i + 1] - 1.0, kj = k[j + 1], kk = k[m + 1];
    const cplx c0 = k[0] * (k[0] + k[4]);
    T Q = qi * qj * qk;
    T B = qj * qk * ki + qk * qi * kj + qi * qj * kk;
    T Qd = qj * qk + qi * qk + qi * qj;
    T Bd = (qj + qk) * ki + (qk + qi) * kj + (qi + qj) * kk;
    T p2 = p * p;
    return {(Q * p2 - B * p + qi * c0) / d, (Qd * p2 - Bd * p + T(c0)) / d, (Q * p * 2.0 - B) / d};
}

// i is 1-based
inline cplx hamiltonian(int i, const PhasePoint& pt) {
    if (i < 1 || i > 3) throw Error(ErrorKind::Precondition, "Hamiltonian index must be 1..3");
    return hamiltonian_terms<cplx, cplx>(i - 1, pt.q, pt.p, pt.t, pt.kappa).value;
}

inline HamiltonianValue<cplx> hamiltonian_partials(int i, const PhasePoint& pt) {
    if (i < 1 || i > 3) throw Error(ErrorKind::Precondition, "Hamiltonian index must be 1..3");
    return hamiltonian_terms<cplx, cplx>(i - 1, pt.q, pt.p, pt.t, pt.kappa);
}

}  // namespace pvi
