#pragma once

// seeded generators shared by the test batteries

#include <random>

#include <Eigen/Dense>

#include "pvi/hamiltonian.hpp"
#include "pvi/modular.hpp"
#include "pvi/param.hpp"

namespace testutil {

using pvi::cplx;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}

    double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng); }
    cplx c(double r = 1.0) { return {uni(-r, r), uni(-r, r)}; }
    pvi::Triple triple(double r = 1.0) { return {c(r), c(r), c(r)}; }
    pvi::ThetaVector theta(double r = 1.0) { return {{c(r), c(r), c(r), c(r)}}; }
    pvi::ExponentVector kappa_complex(double r = 0.9) { return pvi::ExponentVector::from_free(c(r), c(r), c(r), c(r)); }
    // all five components in [-r, r]; redraws until k0 lands there too
    pvi::ExponentVector kappa_real(double r = 0.9) {
        for (;;) {
            auto k = pvi::ExponentVector::from_free(uni(-r, r), uni(-r, r), uni(-r, r), uni(-r, r));
            if (std::abs(k[0].real()) <= r) return k;
        }
    }

    // t = (0, 1, 2), real kappa, q and p uniform in the unit square, q kept off the t_i
    pvi::PhasePoint phase_point(double clearance = 0.15) {
        pvi::PhasePoint pt;
        pt.kappa = kappa_real();
        for (;;) {
            pt.q = c();
            bool ok = true;
            for (auto& ti : pt.t) ok = ok && std::abs(pt.q - ti) > clearance;
            if (ok) break;
        }
        pt.p = c();
        return pt;
    }

    Eigen::Matrix2cd su2() {
        // unit quaternion
        double v[4], n = 0;
        for (double& c : v) { c = std::normal_distribution<double>()(eng); n += c * c; }
        n = std::sqrt(n);
        cplx a(v[0] / n, v[1] / n), b(v[2] / n, v[3] / n);
        Eigen::Matrix2cd m;
        m << a, b, -std::conj(b), std::conj(a);
        return m;
    }

    // character of a random SU(2) representation: real point with bounded orbits
    pvi::AmbientPoint su2_character() {
        Eigen::Matrix2cd M1 = su2(), M2 = su2(), M3 = su2();
        Eigen::Matrix2cd M4 = (M3 * M2 * M1).inverse();
        pvi::TraceData a{{M1.trace(), M2.trace(), M3.trace(), M4.trace()}};
        pvi::Triple x{(M2 * M3).trace(), (M3 * M1).trace(), (M1 * M2).trace()};
        return {x, pvi::theta_from_a(a)};
    }
};

}  // namespace testutil
