#include <gtest/gtest.h>

#include "pvi/flow.hpp"
#include "pvi/fuchsian.hpp"
#include "rng.hpp"

using namespace pvi;

namespace {

PhasePoint generic_point(testutil::Rng& rng) {
    PhasePoint pt;
    pt.kappa = rng.kappa_real();
    for (;;) {
        pt.q = rng.c();
        bool ok = true;
        for (auto& ti : pt.t) ok = ok && std::abs(pt.q - ti) > 0.2;
        if (ok) break;
    }
    pt.p = rng.c();
    return pt;
}

TimeTriple moved_t3(const TimeTriple& t, cplx dx) { return {t[0], t[1], t[2] + dx}; }

PhasePoint riccati_point(testutil::Rng& rng) {
    PhasePoint pt = generic_point(rng);
    auto v = pt.kappa.values();
    pt.kappa = ExponentVector::from_free(v[1], v[2], v[3], 1.0 - v[1] - v[2] - v[3]);
    pt.p = 0.0;
    return pt;
}

// seeded search for a point whose loop stays in the chart
template <class F>
PhasePoint in_chart(testutil::Rng& rng, F&& probe) {
    for (int attempt = 0; attempt < 50; ++attempt) {
        PhasePoint pt = generic_point(rng);
        try {
            probe(pt);
            return pt;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BlowUp) throw;
        }
    }
    throw std::runtime_error("no in-chart point found");
}

}  // namespace

TEST(VectorField, ZeroDirection) {
    testutil::Rng rng(50);
    auto [dq, dp] = vector_field(generic_point(rng), {0.0, 0.0, 0.0});
    EXPECT_EQ(dq, cplx(0));
    EXPECT_EQ(dp, cplx(0));
}

TEST(VectorField, RiccatiLocusHasNoMomentumDrift) {
    testutil::Rng rng(51);
    for (int n = 0; n < 20; ++n) {
        PhasePoint pt = riccati_point(rng);
        auto dp = vector_field(pt, {rng.c(), rng.c(), rng.c()}).second;
        EXPECT_LE(std::abs(dp), 1e-15);
    }
}

TEST(VectorField, MatchesFiniteDifferencesOfHamiltonians) {
    testutil::Rng rng(52);
    const double h = 1e-6;
    for (int n = 0; n < 20; ++n) {
        PhasePoint pt = generic_point(rng);
        TimeTriple dt{rng.c(), rng.c(), rng.c()};
        cplx dq = 0, dp = 0;
        for (int i = 1; i <= 3; ++i) {
            auto qp = pt, qm = pt, pp = pt, pm = pt;
            qp.q += h;
            qm.q -= h;
            pp.p += h;
            pm.p -= h;
            dq += (hamiltonian(i, pp) - hamiltonian(i, pm)) / (2 * h) * dt[i - 1];
            dp -= (hamiltonian(i, qp) - hamiltonian(i, qm)) / (2 * h) * dt[i - 1];
        }
        auto v = vector_field(pt, dt);
        EXPECT_LE(std::abs(v.first - dq), 1e-7);
        EXPECT_LE(std::abs(v.second - dp), 1e-7);
    }
}

TEST(Integrate, ZeroLengthPath) {
    testutil::Rng rng(53);
    PhasePoint pt = generic_point(rng);
    auto tr = integrate(pt, TimePath::segment(pt.t, pt.t));
    ASSERT_EQ(tr.samples.size(), 1u);
    EXPECT_EQ(tr.end().q, pt.q);
    EXPECT_EQ(tr.end().p, pt.p);
}

TEST(Integrate, ReversalReturnsToStart) {
    testutil::Rng rng(54);
    PhasePoint pt = generic_point(rng);
    TimePath path{{pt.t, moved_t3(pt.t, {0.3, 0.2}), moved_t3(pt.t, {0.5, -0.1})}};
    auto there = integrate(pt, path).end();
    auto back = integrate(there, path.reversed()).end();
    EXPECT_LE(std::abs(back.q - pt.q), 1e-7);
    EXPECT_LE(std::abs(back.p - pt.p), 1e-7);
}

TEST(Integrate, SamplesCarryTheFlowDerivative) {
    testutil::Rng rng(55);
    PhasePoint pt = generic_point(rng);
    auto tr = integrate(pt, TimePath::segment(pt.t, moved_t3(pt.t, {0.4, 0.1})));
    ASSERT_GT(tr.samples.size(), 3u);
    for (size_t n = 0; n < tr.samples.size(); ++n) {
        const auto& s = tr.samples[n];
        auto v = vector_field(tr.at(n), s.dt_ds);
        EXPECT_LE(std::abs(v.first - s.dq_ds), 1e-12 * (1 + std::abs(s.dq_ds)));
        EXPECT_LE(std::abs(v.second - s.dp_ds), 1e-12 * (1 + std::abs(s.dp_ds)));
    }
}

TEST(Integrate, IsomonodromyOverShortPaths) {
    testutil::Rng rng(56);
    for (int n = 0; n < 3; ++n) {
        PhasePoint pt = generic_point(rng);
        TimePath path = TimePath::segment(pt.t, {pt.t[0] + cplx(0.1, -0.1), pt.t[1], pt.t[2] + cplx(0.3, 0.3)});
        auto end = integrate(pt, path).end();
        auto x0 = rh_point(pt).x, x1 = rh_point(end).x;
        EXPECT_LE(dist(x0, x1), 1e-5 * path.length()) << "|x| = " << max_abs(x0);
    }
}

TEST(Integrate, RejectsCollidingTimes) {
    testutil::Rng rng(57);
    PhasePoint pt = generic_point(rng);
    EXPECT_THROW(integrate(pt, TimePath::segment(pt.t, {0.0, 1.0, 1.0})), Error);
    EXPECT_THROW(integrate(pt, TimePath::segment({0.0, 1.0, 3.0}, {0.0, 1.0, 4.0})), Error);
}

TEST(Integrate, ReportsBlowUp) {
    testutil::Rng rng(58);
    PhasePoint pt = generic_point(rng);
    FlowOptions opt;
    opt.bound = 0.5 * std::max(std::abs(pt.q), std::abs(pt.p));  // already outside after one step
    TimePath path = TimePath::segment(pt.t, moved_t3(pt.t, {0.5, 0.5}));
    try {
        integrate(pt, path, opt);
        ADD_FAILURE() << "no blow-up reported";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BlowUp);
        EXPECT_NE(std::string(e.what()).find("blow-up near pole"), std::string::npos);
    }
}

TEST(PviResidual, GenericShortTrajectory) {
    testutil::Rng rng(59);
    for (int n = 0; n < 5; ++n) {
        PhasePoint pt = generic_point(rng);
        auto tr = integrate(pt, TimePath::segment(pt.t, moved_t3(pt.t, {0.3, 0.2})));
        for (double r : pvi_residual(tr)) EXPECT_LE(r, 1e-6);
    }
}

TEST(PviResidual, SymmetricToyCase) {
    PhasePoint pt;
    pt.kappa = ExponentVector::from_free(0.25, 0.25, 0.25, 0.25);
    pt.t = {0.0, 1.0, cplx(2.0, 0.1)};
    pt.q = cplx(0.5, 0.5);
    pt.p = cplx(0.1, 0.0);
    auto tr = integrate(pt, TimePath::segment(pt.t, {0.0, 1.0, cplx(3.0, 0.1)}));
    auto r = pvi_residual(tr);
    EXPECT_LE(*std::max_element(r.begin(), r.end()), 1e-6);
}

TEST(PviResidual, MomentumKickIsDetected) {
    testutil::Rng rng(60);
    PhasePoint pt = generic_point(rng);
    auto tr = integrate(pt, TimePath::segment(pt.t, moved_t3(pt.t, {0.5, 0.0})));
    for (size_t n = tr.samples.size() / 2; n < tr.samples.size(); ++n) tr.samples[n].p += 0.1;
    auto r = pvi_residual(tr);
    EXPECT_LE(r.front(), 1e-6);
    EXPECT_GT(r.back(), 1e-3);
}

TEST(PviResidual, NeedsNormalisedTimes) {
    testutil::Rng rng(61);
    PhasePoint pt = generic_point(rng);
    auto tr = integrate(pt, TimePath::segment(pt.t, {cplx(0.1), pt.t[1], pt.t[2]}));
    EXPECT_THROW(pvi_residual(tr), Error);
}

TEST(BraidPath, ClosesAndRejectsImpureBraids) {
    TimeTriple t{0.0, 1.0, 2.0};
    for (const char* w : {"1 1", "2 -2", "-3 -3", "1 2 2 -1"}) {
        auto p = braid_time_path(t, BraidWord::parse(w));
        EXPECT_EQ(p.vertices.back(), t) << w;
        EXPECT_GT(p.min_gap(), 0.5) << w;
    }
    EXPECT_THROW(braid_time_path(t, BraidWord::parse("1")), Error);
    EXPECT_THROW(braid_time_path(t, BraidWord::parse("1 2")), Error);
    EXPECT_THROW(braid_time_path(t, BraidWord::parse("1 2"), BraidRealization::OffCenter), Error);
}

TEST(BraidPath, GuardsTheThirdPoint) {
    // t3 sits on the circle through t1 and t2
    EXPECT_THROW(braid_time_path({0.0, 1.0, cplx(0.5, 0.5)}, BraidWord::parse("1 1")), Error);
}

TEST(NonlinearMonodromy, TrivialBraid) {
    testutil::Rng rng(62);
    PhasePoint pt = generic_point(rng);
    auto end = nonlinear_monodromy(pt, BraidWord{});
    EXPECT_LE(std::abs(end.q - pt.q) + std::abs(end.p - pt.p), 1e-6);
}

// RH image of the return map against the modular action, forward convention
class BraidVsModular : public ::testing::TestWithParam<const char*> {};

TEST_P(BraidVsModular, Agree) {
    testutil::Rng rng(63);
    BraidWord b = BraidWord::parse(GetParam());
    PhasePoint end;
    PhasePoint pt = in_chart(rng, [&](const PhasePoint& p) { end = nonlinear_monodromy(p, b); });
    AmbientPoint start{rh_point(pt).x, rh_param(pt.kappa)};
    Triple image = rh_point(end).x;
    Triple fwd = apply_word(braid_to_modular(b, Orientation::Forward), start).x;
    double scale = std::max(1.0, max_abs(image));
    EXPECT_LE(dist(image, fwd), 1e-4 * scale) << "|x| = " << max_abs(image);
}

INSTANTIATE_TEST_SUITE_P(PureBraids, BraidVsModular,
                         ::testing::Values("1 1", "-1 -1", "2 2", "3 3", "1 2 2 -1", "1 1 2 2"));

TEST(NonlinearMonodromy, OnlyOneOrientationMatches) {
    testutil::Rng rng(64);
    BraidWord b = BraidWord::parse("1 1");
    PhasePoint end;
    PhasePoint pt = in_chart(rng, [&](const PhasePoint& p) { end = nonlinear_monodromy(p, b); });
    AmbientPoint start{rh_point(pt).x, rh_param(pt.kappa)};
    Triple image = rh_point(end).x;
    EXPECT_LE(dist(image, apply_word(braid_to_modular(b, Orientation::Forward), start).x), 1e-4);
    EXPECT_GT(dist(image, apply_word(braid_to_modular(b, Orientation::Inverse), start).x), 1e-2);
}

TEST(NonlinearMonodromy, HomotopyInvariance) {
    testutil::Rng rng(65);
    for (const char* w : {"1 1", "-2 -2", "1 1 2 2"}) {
        BraidWord b = BraidWord::parse(w);
        PhasePoint a;
        PhasePoint pt = in_chart(rng, [&](const PhasePoint& p) {
            a = nonlinear_monodromy(p, b, BraidRealization::HalfTwists);
            nonlinear_monodromy(p, b, BraidRealization::OffCenter);
        });
        PhasePoint c = nonlinear_monodromy(pt, b, BraidRealization::OffCenter);
        EXPECT_LE(std::abs(a.q - c.q) + std::abs(a.p - c.p), 1e-7) << w;
    }
}

TEST(NonlinearMonodromy, RiccatiLocusIsInvariant) {
    testutil::Rng rng(66);
    PhasePoint pt = riccati_point(rng);
    auto end = nonlinear_monodromy(pt, BraidWord::parse("1 1"));
    EXPECT_LE(std::abs(end.p), 1e-7);
}

TEST(Riccati, CoefficientsAreTheClosedForm) {
    testutil::Rng rng(67);
    for (int n = 0; n < 10; ++n) {
        PhasePoint pt = riccati_point(rng);
        const auto& k = pt.kappa;
        cplx x(2.0 + rng.uni(0, 1), 0.1);
        auto rc = riccati_coefficients({0.0, 1.0, x}, {0.0, 0.0, 1.0}, k);
        EXPECT_EQ(rc.degree, 2);
        cplx K = k[1] + k[2] + k[3] - 1.0, d = x * (x - 1.0);
        cplx A = -K / d, B = ((k[3] - 1.0) + k[1] * (1.0 + x) + k[2] * x) / d, C = -k[1] / (x - 1.0);
        EXPECT_LE(std::abs(rc.c[2] - A), 1e-13);
        EXPECT_LE(std::abs(rc.c[1] - B), 1e-13);
        EXPECT_LE(std::abs(rc.c[0] - C), 1e-13);
        // dA/dx
        cplx dA = K * (2.0 * x - 1.0) / (d * d);
        EXPECT_LE(std::abs(rc.dc[2] - dA), 1e-12);
    }
}

TEST(Riccati, FlowStaysOnLocusAndLinearises) {
    testutil::Rng rng(68);
    for (int n = 0; n < 3; ++n) {
        PhasePoint pt = riccati_point(rng);
        TimePath path{{pt.t, moved_t3(pt.t, {0.4, 0.3}), {cplx(0.1, -0.1), 1.0, pt.t[2] + cplx(0.6, 0.0)}}};
        auto rep = riccati_flow(pt, path);
        EXPECT_LE(rep.max_abs_p, 1e-8);
        EXPECT_EQ(rep.max_degree, 2);
        EXPECT_LE(rep.max_linearization_error, 1e-6);
    }
}

TEST(Riccati, LocusMapsToSingularPoints) {
    testutil::Rng rng(69);
    for (int n = 0; n < 3; ++n) {
        PhasePoint pt = riccati_point(rng);
        auto sp = rh_point(pt);
        auto sing = singular_points(sp.theta);
        ASSERT_FALSE(sing.points.empty());
        double d = INFINITY;
        for (auto& s : sing.points) d = std::min(d, dist(s.x, sp.x));
        EXPECT_LE(d, 1e-5);
    }
}

TEST(Riccati, RejectsPointsOffTheLocus) {
    testutil::Rng rng(70);
    PhasePoint pt = generic_point(rng);
    try {
        riccati_flow(pt, TimePath::segment(pt.t, moved_t3(pt.t, {0.1, 0.0})));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotOnRiccatiLocus);
    }
}
