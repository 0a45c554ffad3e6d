#include <gtest/gtest.h>

#include "pvi/fuchsian.hpp"
#include "rng.hpp"

using namespace pvi;

namespace {

PhasePoint random_phase_point(testutil::Rng& rng, std::array<cplx, 3> t = {0.0, 1.0, 2.0}) {
    PhasePoint pt;
    pt.kappa = rng.kappa_real();
    pt.t = t;
    for (;;) {
        pt.q = rng.c();
        bool ok = true;
        for (auto& ti : t) ok = ok && std::abs(pt.q - ti) > 0.15;
        if (ok) break;
    }
    pt.p = rng.c();
    return pt;
}

bool same_set(std::array<cplx, 2> a, std::array<cplx, 2> b, double tol) {
    return (std::abs(a[0] - b[0]) <= tol && std::abs(a[1] - b[1]) <= tol) ||
           (std::abs(a[0] - b[1]) <= tol && std::abs(a[1] - b[0]) <= tol);
}

}  // namespace

TEST(Hamiltonian, VanishesOnRiccatiLocus) {
    testutil::Rng rng(30);
    auto pt = random_phase_point(rng);
    auto v = pt.kappa.values();
    pt.kappa = ExponentVector::from_free(v[1], v[2], v[3], 1.0 - v[1] - v[2] - v[3]);  // k0 = 0
    pt.p = 0.0;
    for (int i = 1; i <= 3; ++i) EXPECT_EQ(hamiltonian(i, pt), cplx(0));
}

TEST(Hamiltonian, ZeroMomentum) {
    testutil::Rng rng(31);
    auto pt = random_phase_point(rng);
    pt.p = 0.0;
    const auto& k = pt.kappa;
    for (int i = 1; i <= 3; ++i) {
        int a = i - 1, b = i % 3, c = (i + 1) % 3;
        cplx expect = k[0] * (k[0] + k[4]) * (pt.q - pt.t[a]) / ((pt.t[a] - pt.t[b]) * (pt.t[a] - pt.t[c]));
        EXPECT_LE(std::abs(hamiltonian(i, pt) - expect), 1e-14);
    }
}

TEST(Hamiltonian, PartialsMatchFiniteDifferences) {
    testutil::Rng rng(32);
    const double h = 1e-6;
    for (int n = 0; n < 50; ++n) {
        auto pt = random_phase_point(rng);
        for (int i = 1; i <= 3; ++i) {
            auto d = hamiltonian_partials(i, pt);
            auto qp = pt, qm = pt, pp = pt, pm = pt;
            qp.q += h;
            qm.q -= h;
            pp.p += h;
            pm.p -= h;
            EXPECT_LE(std::abs((hamiltonian(i, qp) - hamiltonian(i, qm)) / (2 * h) - d.dq), 1e-7);
            EXPECT_LE(std::abs((hamiltonian(i, pp) - hamiltonian(i, pm)) / (2 * h) - d.dp), 1e-7);
        }
    }
}

TEST(Equation, ResiduesAndExponents) {
    testutil::Rng rng(33);
    for (int n = 0; n < 20; ++n) {
        auto pt = random_phase_point(rng);
        auto eq = build_equation(pt);
        EXPECT_EQ(eq.v1_res_q, cplx(1));
        EXPECT_EQ(eq.v2_res_q, pt.p);
        cplx sum = eq.v1_res_q;
        for (int i = 0; i < 3; ++i) {
            EXPECT_TRUE(same_set(eq.indicial_roots(i), {0.0, pt.kappa[i + 1]}, 1e-10));
            sum += eq.v1_res[i];
        }
        EXPECT_LE(std::abs(sum - (pt.kappa[1] + pt.kappa[2] + pt.kappa[3] - 2.0)), 1e-14);
        EXPECT_TRUE(same_set(eq.indicial_roots_q(), {0.0, 2.0}, 1e-14));
        // Fuchsian at infinity, exponents k0 and k0 + k4
        EXPECT_LE(std::abs(eq.v2_residue_sum()), 1e-12);
        EXPECT_TRUE(same_set(eq.indicial_roots_infinity(), {pt.kappa[0], pt.kappa[0] + pt.kappa[4]}, 1e-10));
    }
}

TEST(Equation, V1ResidueNumerically) {
    testutil::Rng rng(34);
    auto eq = build_equation(random_phase_point(rng));
    double e = 1e-7;
    EXPECT_LE(std::abs(eq.v1(eq.q + e) * e - 1.0), 1e-5);
}

TEST(Transport, ConstantPathIsIdentity) {
    testutil::Rng rng(35);
    auto eq = build_equation(random_phase_point(rng));
    Path p = Path::polyline({{0.5, 3.0}, {0.5, 3.0}});
    EXPECT_LE((transport(eq, p) - Mat2::Identity()).norm(), 0.0);
}

TEST(Transport, ReverseAndConcatenation) {
    testutil::Rng rng(36);
    auto eq = build_equation(random_phase_point(rng));
    Path a = Path::polyline({{1.0, 2.0}, {-1.0, 1.5}});
    Path b = Path::polyline({{-1.0, 1.5}, {-1.5, -1.5}, {3.0, -1.0}});
    Mat2 Ta = transport(eq, a), Tb = transport(eq, b);
    EXPECT_LE((transport(eq, a + a.reversed()) - Mat2::Identity()).norm(), 1e-8);
    EXPECT_LE((transport(eq, a + b) - Tb * Ta).norm(), 1e-8 * (Tb * Ta).norm());
}

TEST(Transport, SeriesAgreesWithRungeKutta) {
    testutil::Rng rng(44);
    auto eq = build_equation(random_phase_point(rng));
    Path a = Path::polyline({{1.0, 2.0}, {-1.0, 1.5}, {-1.5, -1.5}, {3.0, -1.0}});
    Mat2 rk = transport(eq, a);
    Mat2 ts = to_eigen(transport_series(eq, a));
    EXPECT_LE((rk - ts).norm(), 1e-9 * rk.norm());
    Mat2q back = transport_series(eq, a + a.reversed());
    EXPECT_LE((back - Mat2q::identity()).norm(), 1e-28);
}

TEST(Transport, PoleClearance) {
    testutil::Rng rng(37);
    auto pt = random_phase_point(rng);
    auto eq = build_equation(pt);
    Path p = Path::polyline({{-1.0, 0.01}, {3.0, 0.01}});
    EXPECT_THROW(transport(eq, p), Error);
}

TEST(Monodromy, TracesAndProduct) {
    testutil::Rng rng(38);
    for (int n = 0; n < 5; ++n) {
        auto r = rh_evaluate(random_phase_point(rng));
        EXPECT_LE(r.trace_error, 1e-6);
        EXPECT_LE(r.det_error, 1e-8);
        EXPECT_LE(r.product_defect, 1e-6);
        EXPECT_LE(r.fricke_residual, 1e-6);
        EXPECT_LE(r.apparency, 1e-6);
    }
}

TEST(Monodromy, OffsetTimes) {
    testutil::Rng rng(39);
    auto pt = random_phase_point(rng, {cplx(-0.3, 0.2), cplx(0.9, -0.4), cplx(1.7, 0.5)});
    auto r = rh_evaluate(pt);
    EXPECT_LE(r.trace_error, 1e-6);
    EXPECT_LE(r.fricke_residual, 1e-6);
    EXPECT_LE(r.product_defect, 1e-6);
}

TEST(Monodromy, BasepointIndependence) {
    testutil::Rng rng(40);
    auto pt = random_phase_point(rng);
    auto x1 = rh_point(pt, cplx(1.0, 2.0)).x;
    auto x2 = rh_point(pt, cplx(0.6, 3.5)).x;
    EXPECT_LE(dist(x1, x2), 1e-8);
}

TEST(Monodromy, RejectsMisorderedBasepoint) {
    testutil::Rng rng(41);
    auto pt = random_phase_point(rng);
    EXPECT_THROW(monodromy(pt, cplx(1.0, -2.0)), Error);
}

TEST(Apparency, NegativeControl) {
    testutil::Rng rng(42);
    auto pt = random_phase_point(rng);
    auto eq = build_equation(pt);
    cplx b = default_basepoint(pt);
    EXPECT_LE(apparent_check(eq, b), 1e-6);
    eq.v2_res[0] -= 0.1;  // H1 + 0.1
    EXPECT_GT(apparent_check(eq, b), 1e-3);
}

TEST(RhPoint, D4ParameterGenericPointIsSmooth) {
    testutil::Rng rng(43);
    PhasePoint pt = random_phase_point(rng);
    pt.kappa = ExponentVector::from_components({0, 0, 0, 0, 1});
    auto sp = rh_point(pt);
    EXPECT_LE(sp.residual, 1e-6);
    EXPECT_GT(dist(sp.x, Triple{2, 2, 2}), 1e-3);
    pt.p = 0.0;  // Riccati locus
    auto sing = rh_point(pt);
    EXPECT_LE(dist(sing.x, Triple{2, 2, 2}), 1e-5);
}
