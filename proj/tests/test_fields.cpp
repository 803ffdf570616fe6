#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hydro/analysis.hpp"
#include "hydro/fields.hpp"
#include "hydro/hydrostatic.hpp"
#include "hydro/nonlinear.hpp"

#include <cmath>

using namespace hydro;

namespace {

double max_abs(const std::vector<cplx>& c) {
    double m = 0.0;
    for (const auto& x : c) m = std::max(m, std::abs(x));
    return m;
}

double max_abs(const std::vector<double>& g) {
    double m = 0.0;
    for (double x : g) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

TEST_CASE("vertical average of a constant is the constant") {
    Domain d = make_domain({1.0, 8, 8, 8, GammaD::Empty});
    VelocityField v(d);
    std::vector<double> g1(d.grid_size(), 2.5), g2(d.grid_size(), -0.5);
    v.set_grid(g1, g2);
    auto vb = vertical_average(v);
    auto gb1 = vb[0].grid(), gb2 = vb[1].grid();
    for (double x : gb1) CHECK(x == doctest::Approx(2.5).epsilon(1e-13));
    for (double x : gb2) CHECK(x == doctest::Approx(-0.5).epsilon(1e-13));
}

TEST_CASE("zero-mean profiles average to zero") {
    Domain d = make_domain({1.0, 8, 8, 8, GammaD::Empty});

    // first cosine mode
    VelocityField v(d);
    v.c1[d.plane()] = 1.0;  // m = 1, k = 0
    auto vb = vertical_average(v);
    CHECK(max_abs(vb[0].c) <= 1e-14);

    // v1 = z + h/2, antisymmetric about mid-depth
    VelocityField u(d);
    std::vector<double> g1(d.grid_size()), g2(d.grid_size(), 0.0);
    size_t pl = size_t(d.spec.nx) * d.spec.ny;
    for (int z = 0; z < d.spec.nz; ++z)
        for (size_t p = 0; p < pl; ++p) g1[z * pl + p] = d.zg[z] + d.spec.h / 2.0;
    u.set_grid(g1, g2);
    auto ub = vertical_average(u);
    CHECK(max_abs(ub[0].c) <= 1e-13);
}

TEST_CASE("fluctuation removes exactly the depth mean") {
    for (GammaD bc : {GammaD::Empty, GammaD::Upper, GammaD::Both}) {
        Domain d = make_domain({1.2, 12, 12, 8, bc});
        VelocityField v = random_solenoidal(d, 1.0, 3);
        VelocityField f = fluctuation(v);
        auto fb = vertical_average(f);
        double scale = std::max(1.0, l2_norm(v));
        CHECK(max_abs(fb[0].c) <= 1e-12 * scale);
        CHECK(max_abs(fb[1].c) <= 1e-12 * scale);

        // barotropic input -> zero fluctuation
        VelocityField b(d);
        for (size_t p = 0; p < d.plane(); ++p)
            for (int m = 0; m < d.spec.nz; ++m) {
                b.c1[m * d.plane() + p] = d.elift[m] / d.smean * v.c1[p];
                b.c2[m * d.plane() + p] = d.elift[m] / d.smean * v.c2[p];
            }
        VelocityField fb2 = fluctuation(b);
        CHECK(max_abs(fb2.c1) <= 1e-13 * std::max(1.0, max_abs(b.c1)));

        // zero-mean modes are untouched
        if (bc == GammaD::Empty) {
            VelocityField m1(d);
            m1.c1[d.plane() + 1] = cplx(0.3, -0.1);  // m = 1, kx = 1
            VelocityField fm = fluctuation(m1);
            CHECK(max_abs(fm.c1) == doctest::Approx(0.3162277660168379).epsilon(1e-12));
            CHECK(std::abs(fm.c1[d.plane() + 1] - m1.c1[d.plane() + 1]) <= 1e-15);
        }
    }
}

TEST_CASE("vertical velocity of a z-independent shear matches the closed form") {
    Domain d = make_domain({1.0, 16, 16, 8, GammaD::Empty});
    VelocityField v(d);
    std::vector<double> g1(d.grid_size()), g2(d.grid_size(), 0.0);
    size_t pl = size_t(d.spec.nx) * d.spec.ny;
    for (int z = 0; z < d.spec.nz; ++z)
        for (int y = 0; y < d.spec.ny; ++y)
            for (int x = 0; x < d.spec.nx; ++x)
                g1[z * pl + y * d.spec.nx + x] = std::sin(2.0 * pi * d.xg[x]);
    v.set_grid(g1, g2);
    std::vector<double> w = vertical_velocity(v);
    double worst = 0.0;
    for (int z = 0; z < d.spec.nz; ++z)
        for (int y = 0; y < d.spec.ny; ++y)
            for (int x = 0; x < d.spec.nx; ++x) {
                double want = -2.0 * pi * std::cos(2.0 * pi * d.xg[x]) * (d.zg[z] + d.spec.h);
                worst = std::max(worst,
                                 std::abs(w[z * pl + y * d.spec.nx + x] - want));
            }
    CHECK(worst <= 1e-10);
}

TEST_CASE("vertical velocity vanishes at the surface for solenoidal fields") {
    for (GammaD bc : {GammaD::Empty, GammaD::Both}) {
        Domain d = make_domain({1.0, 12, 12, 8, bc});
        VelocityField v = random_solenoidal(d, 1.0, 9);
        // w at z = 0 equals -integral over the full depth of div_H v
        std::vector<cplx> dv = minus_div_coeffs(v);
        double top = 0.0;
        for (int j = 0; j < d.spec.ny; ++j)
            for (int i = 0; i < d.nxh; ++i) {
                cplx acc{};
                for (int m = 0; m < d.spec.nz; ++m)
                    acc += d.basis.ieval(m, 0.0) * dv[(size_t(m) * d.spec.ny + j) * d.nxh + i];
                top = std::max(top, std::abs(acc));
            }
        CHECK(top <= 1e-10 * std::max(1.0, grad_norm(v)));
    }
}

TEST_CASE("horizontally divergence-free field has w = 0") {
    Domain d = make_domain({1.0, 12, 12, 6, GammaD::Empty});
    VelocityField v(d);
    std::vector<double> g1(d.grid_size()), g2(d.grid_size());
    size_t pl = size_t(d.spec.nx) * d.spec.ny;
    for (int z = 0; z < d.spec.nz; ++z)
        for (int y = 0; y < d.spec.ny; ++y)
            for (int x = 0; x < d.spec.nx; ++x) {
                g1[z * pl + y * d.spec.nx + x] = std::sin(2.0 * pi * d.yg[y]);
                g2[z * pl + y * d.spec.nx + x] = std::cos(2.0 * pi * d.xg[x]);
            }
    v.set_grid(g1, g2);
    CHECK(max_abs(vertical_velocity(v)) <= 1e-12);
}

TEST_CASE("spectral differential operators act as multipliers") {
    Domain d = make_domain({0.5, 12, 12, 6, GammaD::Both});
    VelocityField v(d);
    size_t idx = (size_t(2) * d.spec.ny + 3) * d.nxh + 1;  // m-index 2, ky = 3, kx = 1
    v.c1[idx] = cplx(1.0, -2.0);
    VelocityField lv = laplacian(v);
    double lam = d.lambda(1, 3, 2);
    CHECK(std::abs(lv.c1[idx] + lam * v.c1[idx]) <= 1e-12 * lam);

    // div of a gradient equals the horizontal Laplacian
    SurfaceField s(d);
    s.c[3 * d.nxh + 1] = cplx(0.7, 0.1);
    auto gs = grad_h(s);
    VelocityField g(d);
    // lift the surface gradient barotropically
    for (int m = 0; m < d.spec.nz; ++m) {
        if (d.elift[m] == 0.0) continue;
        for (size_t p = 0; p < d.plane(); ++p) {
            g.c1[m * d.plane() + p] = d.elift[m] / d.smean * gs[0].c[p];
            g.c2[m * d.plane() + p] = d.elift[m] / d.smean * gs[1].c[p];
        }
    }
    ScalarField3D dv = div_h(g);
    double kk = 4.0 * pi * pi * (1.0 + 9.0);
    for (int m = 0; m < d.spec.nz; ++m) {
        cplx want = -kk * d.elift[m] / d.smean * s.c[3 * d.nxh + 1];
        CHECK(std::abs(dv.c[m * d.plane() + 3 * d.nxh + 1] - want) <= 1e-12 * kk);
    }
}

TEST_CASE("vertical average commutes with horizontal derivatives") {
    Domain d = make_domain({1.0, 12, 12, 8, GammaD::Upper});
    VelocityField v = random_solenoidal(d, 1.0, 17);
    // d/dx then average
    VelocityField dx = v;
    apply_ik(d, dx.c1, 0);
    apply_ik(d, dx.c2, 0);
    auto a1 = vertical_average(dx);
    // average then d/dx
    auto a2 = vertical_average(v);
    apply_ik(d, a2[0].c, 0);
    apply_ik(d, a2[1].c, 0);
    double diff = 0.0, scale = 0.0;
    for (size_t p = 0; p < d.plane(); ++p) {
        diff = std::max({diff, std::abs(a1[0].c[p] - a2[0].c[p]),
                         std::abs(a1[1].c[p] - a2[1].c[p])});
        scale = std::max({scale, std::abs(a1[0].c[p]), std::abs(a1[1].c[p])});
    }
    CHECK(diff <= 1e-12 * std::max(1.0, scale));
}

TEST_CASE("d_z of a barotropic field vanishes") {
    Domain d = make_domain({1.0, 8, 8, 8, GammaD::Empty});
    VelocityField v(d);
    v.c1[1] = cplx(1.0, 0.5);  // m = 0, kx = 1: z-independent
    std::vector<double> g1, g2;
    d_z_grid(v, g1, g2);
    CHECK(max_abs(g1) <= 1e-13);
    CHECK(max_abs(g2) <= 1e-13);
}
