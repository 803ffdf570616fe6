#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hydro/analysis.hpp"
#include "hydro/nonlinear.hpp"

#include <cmath>

using namespace hydro;

TEST_CASE("advection of a constant field vanishes") {
    Domain d = make_domain({1.0, 12, 12, 8, GammaD::Empty});
    VelocityField v(d);
    v.c1[0] = 2.0;
    v.c2[0] = -1.0;
    VelocityField f = advect(v, v);
    CHECK(l2_norm(f) <= 1e-13);
}

TEST_CASE("energy neutrality of the projected advection term") {
    for (GammaD bc : {GammaD::Empty, GammaD::Upper, GammaD::Bottom, GammaD::Both}) {
        Domain d = make_domain({1.0, 16, 16, 10, bc});
        VelocityField v = random_solenoidal(d, 1.2, 3);
        VelocityField f = advect(v, v);
        double scale = grad_norm(v) * lp_norm(v, 4.0) * lp_norm(v, 4.0);
        CHECK(std::abs(inner(f, v)) <= 1e-8 * std::max(1e-30, scale));
    }
}

TEST_CASE("bilinearity") {
    Domain d = make_domain({1.0, 12, 12, 8, GammaD::Upper});
    VelocityField a = random_solenoidal(d, 1.0, 1);
    VelocityField b = random_solenoidal(d, 1.0, 2);
    VelocityField c = random_solenoidal(d, 1.0, 3);

    VelocityField ab(d);
    for (size_t i = 0; i < ab.c1.size(); ++i) {
        ab.c1[i] = 2.0 * a.c1[i] - 0.5 * b.c1[i];
        ab.c2[i] = 2.0 * a.c2[i] - 0.5 * b.c2[i];
    }
    VelocityField lhs = advect(ab, c);
    VelocityField fa = advect(a, c), fb = advect(b, c);
    double worst = 0.0, scale = 0.0;
    for (size_t i = 0; i < lhs.c1.size(); ++i) {
        cplx w1 = 2.0 * fa.c1[i] - 0.5 * fb.c1[i];
        cplx w2 = 2.0 * fa.c2[i] - 0.5 * fb.c2[i];
        worst = std::max({worst, std::abs(lhs.c1[i] - w1), std::abs(lhs.c2[i] - w2)});
        scale = std::max({scale, std::abs(w1), std::abs(w2)});
    }
    CHECK(worst <= 1e-12 * std::max(1.0, scale));
}

TEST_CASE("divergence form agrees with the advective form") {
    for (GammaD bc : {GammaD::Empty, GammaD::Both}) {
        Domain d = make_domain({0.8, 16, 12, 8, bc});
        VelocityField v = random_solenoidal(d, 1.0, 7);
        VelocityField a = advect(v, v);
        VelocityField b = advect_divergence_form(v, v);
        double worst = 0.0;
        for (size_t i = 0; i < a.c1.size(); ++i)
            worst = std::max({worst, std::abs(a.c1[i] - b.c1[i]), std::abs(a.c2[i] - b.c2[i])});
        CHECK(worst <= 1e-8 * std::max(1.0, l2_norm(a)));
    }
}

TEST_CASE("random data generator is deterministic and resolution-consistent") {
    Domain d1 = make_domain({1.0, 12, 12, 8, GammaD::Empty});
    VelocityField a = random_solenoidal(d1, 1.5, 42);
    VelocityField b = random_solenoidal(d1, 1.5, 42);
    CHECK(a.c1 == b.c1);
    CHECK(a.c2 == b.c2);

    VelocityField c = random_solenoidal(d1, 1.5, 43);
    double diff = 0.0;
    for (size_t i = 0; i < a.c1.size(); ++i) diff = std::max(diff, std::abs(a.c1[i] - c.c1[i]));
    CHECK(diff > 1e-6);
}

TEST_CASE("bilinear probe: zero partner, homogeneity") {
    Domain d = make_domain({1.0, 8, 8, 8, GammaD::Empty});
    VelocityField v = random_solenoidal(d, 1.0, 11);
    VelocityField z(d);
    CHECK(l2_norm(advect(v, z)) <= 1e-14);
    CHECK(l2_norm(advect(z, v)) <= 1e-14);

    // the estimate ratio is invariant under positive rescaling of both slots
    VelocityField v2 = v, v3 = v;
    for (size_t i = 0; i < v.c1.size(); ++i) {
        v2.c1[i] *= 3.0;
        v2.c2[i] *= 3.0;
    }
    double r1 = sobolev_norm(advect(v, v), 0.0) /
                (sobolev_norm(v, 1.5) * sobolev_norm(v, 1.5));
    double r2 = sobolev_norm(advect(v2, v3), 0.0) /
                (sobolev_norm(v2, 1.5) * sobolev_norm(v3, 1.5));
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-10));
}

TEST_CASE("probe statistics are populated") {
    Domain d = make_domain({1.0, 8, 8, 8, GammaD::Empty});
    ProbeStats st = bilinear_estimate_probe(d, 10, 0.0, 5);
    CHECK(st.ratios.size() == 10);
    CHECK(st.max > 0.0);
    CHECK(st.median > 0.0);
    CHECK(st.median <= st.max);
}
