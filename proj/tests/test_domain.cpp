#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hydro/domain.hpp"
#include "hydro/fields.hpp"

#include <cmath>
#include <random>

using namespace hydro;

namespace {

const GammaD kAll[] = {GammaD::Empty, GammaD::Upper, GammaD::Bottom, GammaD::Both};

std::vector<cplx> random_retained(const Domain& d, uint32_t seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> c(d.spec_size());
    for (int m = 0; m < d.spec.nz; ++m)
        for (int j = 0; j < d.spec.ny; ++j)
            for (int i = 0; i < d.nxh; ++i) {
                if (!d.retained(i, j)) continue;
                c[(size_t(m) * d.spec.ny + j) * d.nxh + i] = cplx(g(gen), g(gen));
            }
    hermitize(d, c);
    return c;
}

} // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(make_domain({1.0, 7, 8, 8, GammaD::Empty}), HydroError);
    CHECK_THROWS_AS(make_domain({1.0, 8, 9, 8, GammaD::Empty}), HydroError);
    CHECK_THROWS_AS(make_domain({0.0, 8, 8, 8, GammaD::Empty}), HydroError);
    CHECK_THROWS_AS(make_domain({1.0, 2, 8, 8, GammaD::Empty}), HydroError);
    CHECK_NOTHROW(make_domain({1.0, 8, 8, 8, GammaD::Empty}));
}

TEST_CASE("vertical bases carry the expected mode labels") {
    Domain dn = make_domain({1.0, 8, 8, 8, GammaD::Empty});
    CHECK(dn.basis.label(0) == 0);
    CHECK(dn.basis.label(7) == 7);
    CHECK(dn.basis.nu(0) == 0.0);
    Domain db = make_domain({1.0, 8, 8, 8, GammaD::Both});
    CHECK(db.basis.label(0) == 1);
    CHECK(db.basis.label(7) == 8);
    CHECK(db.basis.nu(0) == doctest::Approx(pi).epsilon(1e-15));
}

TEST_CASE("transform round trip on representable fields") {
    for (GammaD bc : kAll) {
        Domain d = make_domain({0.8, 12, 16, 9, bc});
        std::vector<cplx> c = random_retained(d, 11);
        std::vector<double> g;
        from_spectral(d, c, g);
        std::vector<cplx> c2;
        to_spectral(d, g, c2);
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < c.size(); ++i) {
            num = std::max(num, std::abs(c[i] - c2[i]));
            den = std::max(den, std::abs(c[i]));
        }
        CHECK(num <= 1e-12 * den);
    }
}

TEST_CASE("constant field has a single spectral coefficient (Neumann)") {
    Domain d = make_domain({1.0, 8, 8, 8, GammaD::Empty});
    std::vector<double> g(d.grid_size(), 3.25);
    std::vector<cplx> c;
    to_spectral(d, g, c);
    for (size_t i = 0; i < c.size(); ++i) {
        if (i == 0)
            CHECK(std::abs(c[i] - cplx(3.25, 0.0)) <= 1e-13);
        else
            CHECK(std::abs(c[i]) <= 1e-13);
    }
}

TEST_CASE("Parseval: spectral L2 equals grid quadrature") {
    for (GammaD bc : kAll) {
        Domain d = make_domain({1.3, 16, 12, 8, bc});
        std::vector<cplx> c = random_retained(d, 21);
        std::vector<double> g;
        from_spectral(d, c, g);
        // quadrature side
        double q = 0.0;
        size_t pl = size_t(d.spec.nx) * d.spec.ny;
        for (int z = 0; z < d.spec.nz; ++z) {
            double s = 0.0;
            for (size_t p = 0; p < pl; ++p) s += g[z * pl + p] * g[z * pl + p];
            q += d.wz[z] * s / double(pl);
        }
        // spectral side: sum of mult * |phi_m|_{L2}^2 * |c|^2
        double sp = 0.0;
        for (int m = 0; m < d.spec.nz; ++m)
            for (int j = 0; j < d.spec.ny; ++j)
                for (int i = 0; i < d.nxh; ++i) {
                    double mult = i > 0 ? 2.0 : 1.0;
                    sp += mult * d.basis.norm2(m) *
                          std::norm(c[(size_t(m) * d.spec.ny + j) * d.nxh + i]);
                }
        CHECK(q == doctest::Approx(sp).epsilon(1e-10));
    }
}

TEST_CASE("basis orthogonality under the quadrature rule") {
    for (GammaD bc : kAll) {
        Domain d = make_domain({0.7, 8, 8, 10, bc});
        for (int a = 0; a < d.spec.nz; ++a)
            for (int b = 0; b < d.spec.nz; ++b) {
                double s = 0.0;
                for (int z = 0; z < d.spec.nz; ++z)
                    s += d.wz[z] * d.basis.eval(a, d.zg[z]) * d.basis.eval(b, d.zg[z]);
                double want = a == b ? d.basis.norm2(a) : 0.0;
                CHECK(std::abs(s - want) <= 1e-12 * std::max(1.0, d.basis.norm2(a)));
            }
        double wsum = 0.0;
        for (double w : d.wz) wsum += w;
        // midpoint rules carry the full depth; the interior-node rule of the
        // sine basis drops the two (zero-valued) endpoints
        double want = d.basis.kind == BasisKind::SineDirichlet
                          ? d.spec.h * d.spec.nz / (d.spec.nz + 1.0)
                          : d.spec.h;
        CHECK(wsum == doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("boundary conformance of synthesized profiles") {
    // one-sided 5-point derivative of the nodal interpolant at each end
    auto fd = [](auto&& f, double x0, double step) {
        return (-25.0 * f(x0) + 48.0 * f(x0 + step) - 36.0 * f(x0 + 2 * step) +
                16.0 * f(x0 + 3 * step) - 3.0 * f(x0 + 4 * step)) /
               (12.0 * step);
    };
    std::mt19937 gen(5);
    std::normal_distribution<double> g;
    for (GammaD bc : kAll) {
        Domain d = make_domain({1.0, 8, 8, 8, bc});
        std::vector<double> coef(d.spec.nz);
        for (auto& x : coef) x = g(gen);
        auto prof = [&](double z) {
            double s = 0.0;
            for (int m = 0; m < d.spec.nz; ++m) s += coef[m] * d.basis.eval(m, z);
            return s;
        };
        double scale = 0.0;
        for (int m = 0; m < d.spec.nz; ++m)
            scale += std::abs(coef[m]) * (1.0 + d.basis.nu(m));
        double step = d.spec.h / 4096.0;
        bool dir_top = bc == GammaD::Upper || bc == GammaD::Both;
        bool dir_bot = bc == GammaD::Bottom || bc == GammaD::Both;
        if (dir_top)
            CHECK(std::abs(prof(0.0)) <= 1e-12 * scale);
        else
            CHECK(std::abs(fd(prof, 0.0, -step)) <= 1e-8 * scale);
        if (dir_bot)
            CHECK(std::abs(prof(-d.spec.h)) <= 1e-12 * scale);
        else
            CHECK(std::abs(fd(prof, -d.spec.h, step)) <= 1e-8 * scale);
    }
}

TEST_CASE("derivative and antiderivative matrices match the basis calculus") {
    Domain d = make_domain({1.1, 8, 8, 7, GammaD::Upper});
    for (int m = 0; m < d.spec.nz; ++m)
        for (int z = 0; z < d.spec.nz; ++z) {
            CHECK(d.Dg(z, m) == doctest::Approx(d.basis.deval(m, d.zg[z])).epsilon(1e-13));
            CHECK(d.Ig(z, m) == doctest::Approx(d.basis.ieval(m, d.zg[z])).epsilon(1e-13));
        }
}
