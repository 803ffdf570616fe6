#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hydro/analysis.hpp"
#include "hydro/hydrostatic.hpp"
#include "hydro/nonlinear.hpp"

#include <cmath>

using namespace hydro;

namespace {

VelocityField diff(const VelocityField& a, const VelocityField& b) {
    VelocityField out = a;
    for (size_t i = 0; i < out.c1.size(); ++i) {
        out.c1[i] -= b.c1[i];
        out.c2[i] -= b.c2[i];
    }
    return out;
}

// z-constant lift of the surface gradient of pr (the part the projection
// removes and the pressure recovery inverts)
void add_grad_lift(VelocityField& R, const SurfaceField& pr) {
    const Domain& d = *R.dom;
    size_t plane = d.plane();
    for (int j = 0; j < d.spec.ny; ++j)
        for (int i = 0; i < d.nxh; ++i) {
            if (!d.retained(i, j)) continue;
            size_t idx = size_t(j) * d.nxh + i;
            cplx g1 = pr.c[idx] * cplx(0.0, 2.0 * pi * d.kx_of(i));
            cplx g2 = pr.c[idx] * cplx(0.0, 2.0 * pi * d.ky_of(j));
            for (int m = 0; m < d.spec.nz; ++m) {
                double w = d.elift[m] / d.smean;
                R.c1[m * plane + idx] += w * g1;
                R.c2[m * plane + idx] += w * g2;
            }
        }
}

} // namespace

TEST_CASE("projection annihilates barotropic gradients") {
    Domain d = make_domain({1.0, 12, 12, 8, GammaD::Empty});
    SurfaceField phi(d);
    phi.c[d.nxh + 2] = cplx(1.0, -0.4);  // ky = 1, kx = 2
    auto g = grad_h(phi);
    VelocityField v(d);
    for (int m = 0; m < d.spec.nz; ++m) {
        if (d.elift[m] == 0.0) continue;
        for (size_t p = 0; p < d.plane(); ++p) {
            v.c1[m * d.plane() + p] = d.elift[m] / d.smean * g[0].c[p];
            v.c2[m * d.plane() + p] = d.elift[m] / d.smean * g[1].c[p];
        }
    }
    double before = l2_norm(v);
    project(v);
    CHECK(l2_norm(v) <= 1e-12 * before);
}

TEST_CASE("projection: idempotent, orthogonal, divergence-free") {
    for (GammaD bc : {GammaD::Empty, GammaD::Upper, GammaD::Both}) {
        Domain d = make_domain({0.9, 16, 12, 8, bc});
        VelocityField v = random_solenoidal(d, 0.8, 2);
        // make it non-solenoidal again by adding a gradient lift
        SurfaceField phi(d);
        phi.c[2 * d.nxh + 1] = cplx(0.5, 0.25);
        VelocityField raw = v;
        add_grad_lift(raw, phi);

        VelocityField pv = raw;
        project(pv);
        VelocityField ppv = pv;
        project(ppv);
        CHECK(l2_norm(diff(ppv, pv)) <= 1e-12 * l2_norm(pv));
        CHECK(mean_divergence_residual(pv) <= 1e-13);

        // orthogonality: <raw - P raw, P u> = 0
        VelocityField u = random_solenoidal(d, 1.1, 5);
        CHECK(std::abs(inner(diff(raw, pv), u)) <= 1e-10 * l2_norm(raw) * l2_norm(u));

        // fixes its range
        VelocityField fixed = v;
        project(fixed);
        CHECK(l2_norm(diff(fixed, v)) <= 1e-12 * l2_norm(v));
    }
}

TEST_CASE("surface pressure recovery inverts the barotropic gradient") {
    Domain d = make_domain({1.0, 16, 16, 6, GammaD::Upper});
    SurfaceField phi(d);
    phi.c[d.nxh + 1] = cplx(0.8, -0.3);
    phi.c[3 * d.nxh + 2] = cplx(-0.2, 0.6);
    VelocityField r(d);
    add_grad_lift(r, phi);
    SurfaceField rec = recover_surface_pressure(r);
    double worst = 0.0;
    for (size_t p = 0; p < d.plane(); ++p) worst = std::max(worst, std::abs(rec.c[p] - phi.c[p]));
    CHECK(worst <= 1e-12);

    VelocityField sol = random_solenoidal(d, 1.0, 4);
    SurfaceField zero = recover_surface_pressure(sol);
    double z = 0.0;
    for (size_t p = 0; p < d.plane(); ++p) z = std::max(z, std::abs(zero.c[p]));
    CHECK(z <= 1e-12 * std::max(1.0, l2_norm(sol)));
}

TEST_CASE("Stokes operator: eigenmodes, kernel, Dirichlet form") {
    Domain d = make_domain({1.0, 12, 12, 8, GammaD::Empty});
    StokesOperator op = make_stokes(d);

    // zero-mean eigenmode (k, m = 1): A v = -lambda v
    VelocityField v(d);
    size_t idx = d.plane() + 1;  // m = 1, kx = 1
    v.c2[idx] = 1.0;             // perpendicular to k = (1, 0): solenoidal
    VelocityField av = apply_stokes(op, v);
    double lam = d.lambda(1, 0, 1);
    CHECK(std::abs(av.c2[idx] + lam) <= 1e-12 * lam);

    // constants are the kernel
    VelocityField k0(d);
    k0.c1[0] = 1.0;
    VelocityField ak = apply_stokes(op, k0);
    CHECK(l2_norm(ak) <= 1e-12);

    // <-A v, v> = |grad v|^2
    VelocityField r = random_solenoidal(d, 1.0, 8);
    VelocityField ar = apply_stokes(op, r);
    double lhs = -inner(ar, r);
    double rhs = grad_norm(r) * grad_norm(r);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));

    // rejects non-solenoidal input
    VelocityField bad(d);
    bad.c1[1] = 1.0;  // pure gradient direction at k = (1, 0)
    CHECK_THROWS_AS(apply_stokes(op, bad), HydroError);
}

TEST_CASE("semigroup decay bound under Dirichlet conditions") {
    Domain d = make_domain({1.0, 12, 12, 8, GammaD::Both});
    StokesOperator op = make_stokes(d);
    VelocityField v0 = random_solenoidal(d, 1.0, 6);
    double n0 = l2_norm(v0);
    for (double t : {0.1, 0.5, 1.0}) {
        double nt = l2_norm(apply_semigroup(op, v0, t));
        CHECK(nt <= std::exp(-pi * pi * t) * n0 * (1.0 + 1e-12));
    }
}

TEST_CASE("eigenmode semigroup factor is exact") {
    Domain d = make_domain({1.0, 12, 12, 6, GammaD::Empty});
    StokesOperator op = make_stokes(d);
    VelocityField v(d);
    size_t idx = 2 * d.plane() + 1;  // m = 2, k = (1, 0)
    v.c2[idx] = cplx(0.5, -0.5);     // perpendicular polarization: solenoidal
    double lam = d.lambda(1, 0, 2);
    VelocityField vt = apply_semigroup(op, v, 1.0);
    double want = std::exp(-lam) * l2_norm(v);
    CHECK(l2_norm(vt) == doctest::Approx(want).epsilon(1e-11));
}

TEST_CASE("spectrum oracle values at h = 1") {
    Domain dn = make_domain({1.0, 12, 12, 12, GammaD::Empty});
    SpectrumReport rn = spectrum(dn, 5);
    CHECK(rn.smallest == 0.0);
    // next eigenvalue: the first vertical cosine mode at k = 0
    CHECK(rn.entries[1].lambda == doctest::Approx(pi * pi).epsilon(1e-12));

    Domain db = make_domain({1.0, 12, 12, 12, GammaD::Both});
    CHECK(spectrum(db, 3).smallest == doctest::Approx(pi * pi).epsilon(1e-12));

    Domain du = make_domain({1.0, 12, 12, 12, GammaD::Upper});
    CHECK(spectrum(du, 3).smallest == doctest::Approx(pi * pi / 4.0).epsilon(1e-12));
}
