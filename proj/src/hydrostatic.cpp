#include "hydro/hydrostatic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace hydro {

void project(VelocityField& v) {
    const Domain& d = *v.dom;
    size_t plane = d.plane();
    auto vbar = vertical_average(v);
    for (int j = 0; j < d.spec.ny; ++j)
        for (int i = 0; i < d.nxh; ++i) {
            if (!d.retained(i, j)) continue;
            double kx = d.kx_of(i), ky = d.ky_of(j);
            double kk = kx * kx + ky * ky;
            if (kk == 0.0) continue;
            size_t idx = static_cast<size_t>(j) * d.nxh + i;
            cplx kdotv = (kx * vbar[0].c[idx] + ky * vbar[1].c[idx]) / kk;
            cplx g1 = kx * kdotv, g2 = ky * kdotv;
            if (g1 == cplx{} && g2 == cplx{}) continue;
            for (int m = 0; m < d.spec.nz; ++m) {
                double w = d.elift[m] / d.smean;
                if (w == 0.0) continue;
                v.c1[m * plane + idx] -= w * g1;
                v.c2[m * plane + idx] -= w * g2;
            }
        }
}

double mean_divergence_residual(const VelocityField& v) {
    const Domain& d = *v.dom;
    auto vbar = vertical_average(v);
    double div2 = 0.0, grad2 = 0.0;
    for (int j = 0; j < d.spec.ny; ++j)
        for (int i = 0; i < d.nxh; ++i) {
            if (!d.retained(i, j)) continue;
            double kx = d.kx_of(i), ky = d.ky_of(j);
            double mult = i > 0 ? 2.0 : 1.0;  // half-plane storage
            size_t idx = static_cast<size_t>(j) * d.nxh + i;
            cplx b1 = vbar[0].c[idx], b2 = vbar[1].c[idx];
            div2 += mult * std::norm(kx * b1 + ky * b2);
            grad2 += mult * (kx * kx + ky * ky) * (std::norm(b1) + std::norm(b2));
        }
    if (grad2 == 0.0) return 0.0;
    return std::sqrt(div2 / grad2);
}

SurfaceField recover_surface_pressure(const VelocityField& residual) {
    const Domain& d = *residual.dom;
    auto rbar = vertical_average(residual);
    SurfaceField out(d);
    for (int j = 0; j < d.spec.ny; ++j)
        for (int i = 0; i < d.nxh; ++i) {
            if (!d.retained(i, j)) continue;
            double kx = d.kx_of(i), ky = d.ky_of(j);
            double kk = kx * kx + ky * ky;
            if (kk == 0.0) continue;
            size_t idx = static_cast<size_t>(j) * d.nxh + i;
            out.c[idx] = cplx(0.0, -1.0) * (kx * rbar[0].c[idx] + ky * rbar[1].c[idx]) /
                         (2.0 * pi * kk);
        }
    return out;
}

StokesOperator make_stokes(const Domain& d) {
    StokesOperator op;
    op.dom = &d;
    int nz = d.spec.nz;
    op.sqb.resize(nz);
    for (int m = 0; m < nz; ++m) op.sqb[m] = std::sqrt(d.basis.norm2(m));

    // Constrained vertical block for the k-parallel polarization, in
    // coordinates d_m = sqrt(beta_m) c_m where the solenoidal projection is
    // the orthogonal projection along e_m = h mu_m / sqrt(beta_m).
    Eigen::VectorXd e(nz);
    for (int m = 0; m < nz; ++m) e(m) = d.spec.h * d.basis.mean(m) / op.sqb[m];
    double en2 = d.spec.h * d.smean;  // equals e.squaredNorm()
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(nz, nz) - (e * e.transpose()) / en2;
    Eigen::VectorXd nu2(nz);
    for (int m = 0; m < nz; ++m) {
        double v = d.basis.nu(m);
        nu2(m) = v * v;
    }
    Eigen::MatrixXd A = P * nu2.asDiagonal() * P;
    A = 0.5 * (A + A.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    op.theta.assign(es.eigenvalues().data(), es.eigenvalues().data() + nz);
    op.Q = Mat(nz, nz);
    for (int r = 0; r < nz; ++r)
        for (int c = 0; c < nz; ++c) op.Q(r, c) = es.eigenvectors()(r, c);
    return op;
}

void apply_fn(const StokesOperator& op, VelocityField& v,
              const std::function<double(double)>& f) {
    const Domain& d = *op.dom;
    check_conforms(d, v);
    int nz = d.spec.nz;
    size_t plane = d.plane();
    std::vector<cplx> a(nz), b(nz), e(nz);
    for (int j = 0; j < d.spec.ny; ++j)
        for (int i = 0; i < d.nxh; ++i) {
            size_t idx = static_cast<size_t>(j) * d.nxh + i;
            if (!d.retained(i, j)) continue;
            double kx = d.kx_of(i), ky = d.ky_of(j);
            double kk = kx * kx + ky * ky;
            if (kk == 0.0) {
                for (int m = 0; m < nz; ++m) {
                    double nu = d.basis.nu(m);
                    double fm = f(nu * nu);
                    v.c1[m * plane + idx] *= fm;
                    v.c2[m * plane + idx] *= fm;
                }
                continue;
            }
            double kn = std::sqrt(kk), hk = 4.0 * pi * pi * kk;
            double ex = kx / kn, ey = ky / kn;
            for (int m = 0; m < nz; ++m) {
                cplx c1 = v.c1[m * plane + idx], c2 = v.c2[m * plane + idx];
                a[m] = (ex * c1 + ey * c2) * op.sqb[m];
                double nu = d.basis.nu(m);
                b[m] = (-ey * c1 + ex * c2) * f(hk + nu * nu);
            }
            for (int r = 0; r < nz; ++r) {
                cplx s{};
                for (int m = 0; m < nz; ++m) s += op.Q(m, r) * a[m];
                e[r] = s * f(op.theta[r] + hk);
            }
            for (int m = 0; m < nz; ++m) {
                cplx s{};
                for (int r = 0; r < nz; ++r) s += op.Q(m, r) * e[r];
                cplx am = s / op.sqb[m];
                v.c1[m * plane + idx] = ex * am - ey * b[m];
                v.c2[m * plane + idx] = ey * am + ex * b[m];
            }
        }
}

VelocityField apply_stokes(const StokesOperator& op, const VelocityField& v) {
    if (mean_divergence_residual(v) > 1e-8)
        throw HydroError("apply_stokes: input is not solenoidal (project it first)");
    VelocityField out = v;
    apply_fn(op, out, [](double l) { return -l; });
    return out;
}

VelocityField apply_semigroup(const StokesOperator& op, const VelocityField& v0, double t) {
    if (t < 0) throw HydroError("apply_semigroup: negative time");
    VelocityField out = v0;
    apply_fn(op, out, [t](double l) { return std::exp(-l * t); });
    return out;
}

SpectrumReport spectrum(const Domain& d, int count) {
    std::vector<SpectrumEntry> all;
    int mx = d.spec.nx / 2 - 1, my = d.spec.ny / 2 - 1;
    for (int kx = -mx; kx <= mx; ++kx)
        for (int ky = -my; ky <= my; ++ky)
            for (int m = 0; m < d.spec.nz; ++m) {
                double nu = d.basis.nu(m);
                double lam = 4.0 * pi * pi * (double(kx) * kx + double(ky) * ky) + nu * nu;
                bool zero_k = (kx == 0 && ky == 0);
                int mult = (zero_k || d.basis.mean(m) == 0.0) ? 2 : 1;
                all.push_back({lam, kx, ky, m, mult});
            }
    std::sort(all.begin(), all.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        if (a.kx != b.kx) return a.kx < b.kx;
        if (a.ky != b.ky) return a.ky < b.ky;
        return a.m < b.m;
    });
    if (count < 0 || count > static_cast<int>(all.size()))
        throw HydroError("spectrum: count out of range");
    SpectrumReport rep;
    rep.entries.assign(all.begin(), all.begin() + count);
    rep.smallest = rep.entries.empty() ? 0.0 : rep.entries.front().lambda;
    return rep;
}

void write_spectrum_csv(const SpectrumReport& rep, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw HydroError("cannot open " + path);
    out << "index,eigenvalue,kx,ky,m,multiplicity\n";
    out.precision(17);
    for (size_t i = 0; i < rep.entries.size(); ++i) {
        const auto& e = rep.entries[i];
        out << i << ',' << e.lambda << ',' << e.kx << ',' << e.ky << ',' << e.m << ','
            << e.multiplicity << '\n';
    }
}

} // namespace hydro
