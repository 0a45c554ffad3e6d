#include <gtest/gtest.h>

#include "pvi/backlund.hpp"
#include "pvi/fuchsian.hpp"
#include "rng.hpp"

using namespace pvi;

namespace {

PhasePoint random_point(testutil::Rng& rng, bool complex_kappa = false) {
    PhasePoint pt;
    pt.kappa = complex_kappa ? rng.kappa_complex() : rng.kappa_real();
    for (;;) {
        pt.q = rng.c();
        bool ok = true;
        for (auto& ti : pt.t) ok = ok && std::abs(pt.q - ti) > 0.2;
        if (ok) break;
    }
    pt.p = rng.c();
    if (std::abs(pt.p) < 0.1) pt.p += 0.5;
    return pt;
}

double rel_distance(const PhasePoint& a, const PhasePoint& b) {
    double s = std::max({1.0, std::abs(a.q), std::abs(a.p)});
    return phase_distance(a, b) / s;
}

}  // namespace

TEST(Backlund, KappaPartIsTheWeylReflection) {
    testutil::Rng rng(80);
    for (int n = 0; n < 20; ++n) {
        PhasePoint pt = random_point(rng, true);
        for (int i = 0; i <= 4; ++i) {
            auto r = apply_basic(i, pt);
            auto w = weyl_reflect(i, pt.kappa);
            for (int j = 0; j < 5; ++j) EXPECT_EQ(r.kappa[j], w[j]);
            EXPECT_EQ(r.t, pt.t);
        }
    }
}

TEST(Backlund, S0Example) {
    PhasePoint pt;
    pt.q = 1.0;
    pt.p = 2.0;
    pt.t = {0.0, cplx(0.5, 1.0), 3.0};
    pt.kappa = ExponentVector::from_free(-0.5, 0.25, -0.25, -0.5);  // k0 = 1
    ASSERT_EQ(pt.kappa[0], cplx(1.0));
    auto r = apply_basic(0, pt);
    EXPECT_EQ(r.q, cplx(1.5));
    EXPECT_EQ(r.p, cplx(2.0));
    auto w = weyl_reflect(0, pt.kappa);
    for (int j = 0; j < 5; ++j) EXPECT_EQ(r.kappa[j], w[j]);
}

TEST(Backlund, VanishingExponentActsTriviallyOnQP) {
    testutil::Rng rng(81);
    PhasePoint pt = random_point(rng);
    auto v = pt.kappa.values();
    for (int i = 1; i <= 3; ++i) {
        std::array<cplx, 4> f{v[1], v[2], v[3], v[4]};
        f[i - 1] = 0.0;
        pt.kappa = ExponentVector::from_free(f[0], f[1], f[2], f[3]);
        auto r = apply_basic(i, pt);
        EXPECT_EQ(r.q, pt.q);
        EXPECT_EQ(r.p, pt.p);
    }
    pt.kappa = ExponentVector::from_components({0.0, 0.2, 0.3, 0.1, 0.4});
    auto r = apply_basic(0, pt);
    EXPECT_EQ(r.q, pt.q);
}

TEST(Backlund, Involutions) {
    testutil::Rng rng(82);
    for (int n = 0; n < 100; ++n) {
        PhasePoint pt = random_point(rng, true);
        for (int i = 0; i <= 4; ++i) EXPECT_LE(rel_distance(apply_word(BacklundWord{{i, i}}, pt), pt), 1e-10);
    }
}

TEST(Backlund, CoxeterRelations) {
    testutil::Rng rng(83);
    for (int n = 0; n < 100; ++n) {
        PhasePoint pt = random_point(rng, true);
        for (int i = 1; i <= 4; ++i) {
            BacklundWord w{{0, i, 0, i, 0, i}};
            EXPECT_LE(rel_distance(apply_word(w, pt), pt), 1e-10) << "(s0 s" << i << ")^3";
        }
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j) {
                BacklundWord w{{i, j, i, j}};
                EXPECT_LE(rel_distance(apply_word(w, pt), pt), 1e-10) << "(s" << i << " s" << j << ")^2";
            }
    }
}

TEST(Backlund, EmptyWordAndParsing) {
    testutil::Rng rng(84);
    PhasePoint pt = random_point(rng);
    EXPECT_EQ(phase_distance(apply_word(BacklundWord{}, pt), pt), 0.0);
    EXPECT_EQ(BacklundWord::parse("0 1 2").letters, (std::vector<int>{0, 1, 2}));
    EXPECT_THROW(BacklundWord::parse("05"), Error);
}

TEST(Backlund, PolesAreReportedWithTheStep) {
    testutil::Rng rng(85);
    PhasePoint pt = random_point(rng);
    pt.p = 0.0;
    try {
        apply_word(BacklundWord::parse("10"), pt);  // s1 keeps p = 0 only if k1 = 0, so force it
        pt.kappa = ExponentVector::from_free(0.0, 0.3, 0.2, 0.1);
        apply_word(BacklundWord::parse("10"), pt);
        ADD_FAILURE() << "no pole reported";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PoleOfTransformation);
        EXPECT_NE(std::string(e.what()).find("letter 1"), std::string::npos);
    }
}

TEST(Backlund, ThetaIsInvariant) {
    testutil::Rng rng(86);
    for (int n = 0; n < 50; ++n) {
        PhasePoint pt = random_point(rng, true);
        auto th = rh_param(pt.kappa);
        double scale = 1;
        for (auto& v : th.th) scale = std::max(scale, std::abs(v));
        for (int i = 0; i <= 4; ++i) EXPECT_LE(dist(rh_param(apply_basic(i, pt).kappa), th), 1e-12 * scale);
    }
}

TEST(Backlund, FlowEquivariance) {
    testutil::Rng rng(87);
    PhasePoint pt = random_point(rng);
    TimePath path = TimePath::segment(pt.t, {pt.t[0], pt.t[1] + cplx(0.1, 0.1), pt.t[2] + cplx(0.2, -0.1)});
    for (int i = 0; i <= 4; ++i) {
        auto r = check_equivariance(i, pt, path);
        EXPECT_TRUE(r.ok) << "s" << i << " deviation " << r.deviation;
    }
}

TEST(Backlund, RiemannHilbertInvariance) {
    testutil::Rng rng(88);
    for (int n = 0; n < 2; ++n) {
        PhasePoint pt = random_point(rng);
        auto x = rh_point(pt).x;
        for (int i = 0; i <= 4; ++i) {
            auto y = rh_point(apply_basic(i, pt)).x;
            EXPECT_LE(dist(x, y), 1e-5 * std::max(1.0, max_abs(x))) << "s" << i;
        }
    }
}
