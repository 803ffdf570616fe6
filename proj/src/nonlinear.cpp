#include "hydro/nonlinear.hpp"

#include "hydro/analysis.hpp"
#include "hydro/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace hydro {

namespace {

void mask_plane(const Domain& d, cplx* p) {
    for (int j = 0; j < d.spec.ny; ++j)
        for (int i = 0; i < d.nxh; ++i)
            if (!d.retained(i, j) || !d.in_mask(i, j)) p[static_cast<size_t>(j) * d.nxh + i] = 0.0;
}

/// Synthesize grids on all np padded z-levels: M is np x nz.
std::vector<double> padded_grid(const Domain& d, const Mat& M, const std::vector<cplx>& c) {
    size_t plane = d.plane();
    std::vector<cplx> nodes(static_cast<size_t>(d.np) * plane);
    vmat_apply(M, c.data(), nodes.data(), plane);
    std::vector<double> g(static_cast<size_t>(d.np) * d.spec.nx * d.spec.ny);
    for (int z = 0; z < d.np; ++z)
        fft2_backward(d, nodes.data() + static_cast<size_t>(z) * plane,
                      g.data() + static_cast<size_t>(z) * d.spec.nx * d.spec.ny);
    return g;
}

/// Analyze per-level grids back to masked spectral planes (np planes).
std::vector<cplx> padded_spec(const Domain& d, const std::vector<double>& g) {
    size_t plane = d.plane();
    std::vector<cplx> s(static_cast<size_t>(d.np) * plane);
    for (int z = 0; z < d.np; ++z) {
        fft2_forward(d, g.data() + static_cast<size_t>(z) * d.spec.nx * d.spec.ny,
                     s.data() + static_cast<size_t>(z) * plane);
        mask_plane(d, s.data() + static_cast<size_t>(z) * plane);
    }
    return s;
}

struct AdvectingGrids {
    std::vector<double> v1, v2, w;
};

AdvectingGrids advecting_grids(const Domain& d, const VelocityField& vm) {
    AdvectingGrids g;
    g.v1 = padded_grid(d, d.Sp, vm.c1);
    g.v2 = padded_grid(d, d.Sp, vm.c2);
    g.w = padded_grid(d, d.Ip, minus_div_coeffs(vm));
    return g;
}

VelocityField masked_copy(const VelocityField& v) {
    VelocityField m = v;
    apply_mask(*m.dom, m.c1);
    apply_mask(*m.dom, m.c2);
    return m;
}

} // namespace

VelocityField advect_raw(const VelocityField& v, const VelocityField& vp) {
    const Domain& d = *v.dom;
    check_conforms(d, v);
    check_conforms(d, vp);
    VelocityField vm = masked_copy(v), vpm = masked_copy(vp);
    AdvectingGrids adv = advecting_grids(d, vm);

    const auto& K = kernels::active();
    size_t gsz = adv.v1.size();
    VelocityField out(d);
    std::vector<double> n(gsz), tmp(gsz);
    for (int comp = 0; comp < 2; ++comp) {
        std::vector<cplx> cx = vpm.comp(comp);
        apply_ik(d, cx, 0);
        std::vector<double> dx = padded_grid(d, d.Sp, cx);
        cx = vpm.comp(comp);
        apply_ik(d, cx, 1);
        std::vector<double> dy = padded_grid(d, d.Sp, cx);
        std::vector<double> dz = padded_grid(d, d.Dp, vpm.comp(comp));

        K.mul(adv.v1.data(), dx.data(), n.data(), gsz);
        K.fma_acc(adv.v2.data(), dy.data(), n.data(), gsz);
        K.fma_acc(adv.w.data(), dz.data(), n.data(), gsz);
        std::vector<cplx> ns = padded_spec(d, n);
        vmat_apply(d.Gp, ns.data(), out.comp(comp).data(), d.plane());
    }
    return out;
}

VelocityField advect(const VelocityField& v, const VelocityField& vp) {
    VelocityField out = advect_raw(v, vp);
    project(out);
    return out;
}

VelocityField advect_divergence_form(const VelocityField& v, const VelocityField& vp) {
    const Domain& d = *v.dom;
    check_conforms(d, v);
    check_conforms(d, vp);
    VelocityField vm = masked_copy(v), vpm = masked_copy(vp);
    AdvectingGrids adv = advecting_grids(d, vm);

    const auto& K = kernels::active();
    size_t gsz = adv.v1.size();
    VelocityField out(d);
    std::vector<double> prod(gsz);
    for (int comp = 0; comp < 2; ++comp) {
        std::vector<double> vpg = padded_grid(d, d.Sp, vpm.comp(comp));
        std::vector<cplx> part(d.spec_size());

        K.mul(adv.v1.data(), vpg.data(), prod.data(), gsz);
        std::vector<cplx> s = padded_spec(d, prod);
        vmat_apply(d.Gp, s.data(), part.data(), d.plane());
        apply_ik(d, part, 0);
        out.comp(comp) = part;

        K.mul(adv.v2.data(), vpg.data(), prod.data(), gsz);
        s = padded_spec(d, prod);
        vmat_apply(d.Gp, s.data(), part.data(), d.plane());
        apply_ik(d, part, 1);
        for (size_t p = 0; p < part.size(); ++p) out.comp(comp)[p] += part[p];

        // vertical flux term: w vp vanishes at both ends, so the
        // integration-by-parts analysis carries no boundary terms
        K.mul(adv.w.data(), vpg.data(), prod.data(), gsz);
        s = padded_spec(d, prod);
        vmat_apply(d.GpD, s.data(), part.data(), d.plane());
        for (size_t p = 0; p < part.size(); ++p) out.comp(comp)[p] += part[p];
    }
    project(out);
    return out;
}

namespace {

double unit_open(uint64_t h) { return (double(h >> 11) + 0.5) * 0x1p-53; }

void gauss_pair(uint64_t key, double& g0, double& g1) {
    double u1 = unit_open(hash_mix(key ^ 0x1111111111111111ULL));
    double u2 = unit_open(hash_mix(key ^ 0x2222222222222222ULL));
    double r = std::sqrt(-2.0 * std::log(u1));
    g0 = r * std::cos(2.0 * pi * u2);
    g1 = r * std::sin(2.0 * pi * u2);
}

} // namespace

VelocityField random_solenoidal(const Domain& d, double gamma, uint64_t seed) {
    VelocityField v(d);
    size_t plane = d.plane();
    for (int comp = 0; comp < 2; ++comp) {
        cplx* c = v.comp(comp).data();
        for (int m = 0; m < d.spec.nz; ++m)
            for (int j = 0; j < d.spec.ny; ++j)
                for (int i = 0; i < d.nxh; ++i) {
                    if (!d.retained(i, j) || !d.in_mask(i, j)) continue;
                    uint64_t key = seed;
                    key = hash_mix(key ^ uint64_t(int64_t(d.kx_of(i)) + (1 << 20)));
                    key = hash_mix(key ^ uint64_t(int64_t(d.ky_of(j)) + (1 << 20)));
                    key = hash_mix(key ^ uint64_t(m));
                    key = hash_mix(key ^ uint64_t(comp));
                    double g0, g1;
                    gauss_pair(key, g0, g1);
                    double mag = std::pow(1.0 + d.lambda(i, j, m), -gamma);
                    c[(static_cast<size_t>(m) * d.spec.ny + j) * d.nxh + i] =
                        cplx(g0, g1) * mag;
                }
    }
    hermitize(d, v.c1);
    hermitize(d, v.c2);
    project(v);
    return v;
}

ProbeStats bilinear_estimate_probe(const Domain& d, int samples, double s, uint64_t seed) {
    if (samples < 1) throw HydroError("bilinear_estimate_probe: samples must be >= 1");
    ProbeStats st;
    for (int n = 0; n < samples; ++n) {
        VelocityField v = random_solenoidal(d, 1.2, seed + 2 * uint64_t(n));
        VelocityField vp = random_solenoidal(d, 1.2, seed + 2 * uint64_t(n) + 1);
        VelocityField F = advect(v, vp);
        double den = sobolev_norm(v, s + 1.5) * sobolev_norm(vp, s + 1.5);
        st.ratios.push_back(den > 0 ? sobolev_norm(F, s) / den : 0.0);
    }
    std::vector<double> sorted = st.ratios;
    std::sort(sorted.begin(), sorted.end());
    st.max = sorted.back();
    st.median = sorted[sorted.size() / 2];
    return st;
}

void write_probe_csv(const ProbeStats& st, const Domain& d, double s, uint64_t seed,
                     const std::string& path) {
    std::ofstream out(path);
    if (!out) throw HydroError("cannot open " + path);
    out << "seed,resolution,s,ratio\n";
    out.precision(17);
    for (size_t n = 0; n < st.ratios.size(); ++n)
        out << (seed + 2 * n) << ',' << d.spec.nx << 'x' << d.spec.ny << 'x' << d.spec.nz
            << ',' << s << ',' << st.ratios[n] << '\n';
}

} // namespace hydro
