#include "hydro/fields.hpp"

namespace hydro {

void check_conforms(const Domain& d, const VelocityField& v) {
    if (v.dom == nullptr || !(v.dom->spec == d.spec) || v.c1.size() != d.spec_size() ||
        v.c2.size() != d.spec_size())
        throw HydroError("velocity field does not conform to domain");
}

std::array<SurfaceField, 2> vertical_average(const VelocityField& v) {
    const Domain& d = *v.dom;
    std::array<SurfaceField, 2> out{SurfaceField(d), SurfaceField(d)};
    size_t plane = d.plane();
    for (int comp = 0; comp < 2; ++comp) {
        const cplx* c = v.comp(comp).data();
        cplx* o = out[comp].c.data();
        for (int m = 0; m < d.spec.nz; ++m) {
            double mu = d.basis.mean(m);
            if (mu == 0.0) continue;
            for (size_t p = 0; p < plane; ++p) o[p] += mu * c[m * plane + p];
        }
    }
    return out;
}

VelocityField fluctuation(const VelocityField& v) {
    const Domain& d = *v.dom;
    auto vbar = vertical_average(v);
    VelocityField out = v;
    size_t plane = d.plane();
    for (int comp = 0; comp < 2; ++comp) {
        const cplx* b = vbar[comp].c.data();
        cplx* o = out.comp(comp).data();
        for (int m = 0; m < d.spec.nz; ++m) {
            double w = d.elift[m] / d.smean;
            if (w == 0.0) continue;
            for (size_t p = 0; p < plane; ++p) o[m * plane + p] -= w * b[p];
        }
    }
    return out;
}

std::vector<cplx> minus_div_coeffs(const VelocityField& v) {
    const Domain& d = *v.dom;
    size_t plane = d.plane();
    std::vector<cplx> dv(d.spec_size());
    for (int m = 0; m < d.spec.nz; ++m)
        for (int j = 0; j < d.spec.ny; ++j)
            for (int i = 0; i < d.nxh; ++i) {
                size_t idx = (static_cast<size_t>(m) * d.spec.ny + j) * d.nxh + i;
                cplx div = cplx(0.0, 2.0 * pi) *
                           (double(d.kx_of(i)) * v.c1[idx] + double(d.ky_of(j)) * v.c2[idx]);
                dv[idx] = -div;
            }
    // no rigid-lid correction: for solenoidal v the depth mean of the
    // divergence is already zero, so w(., ., 0) = 0 up to roundoff
    return dv;
}

std::vector<double> vertical_velocity(const VelocityField& v) {
    const Domain& d = *v.dom;
    std::vector<cplx> dv = minus_div_coeffs(v);
    std::vector<cplx> nodes(d.spec_size());
    vmat_apply(d.Ig, dv.data(), nodes.data(), d.plane());
    std::vector<double> w(d.grid_size());
    for (int z = 0; z < d.spec.nz; ++z)
        fft2_backward(d, nodes.data() + static_cast<size_t>(z) * d.plane(),
                      w.data() + static_cast<size_t>(z) * d.spec.nx * d.spec.ny);
    return w;
}

void apply_ik(const Domain& d, std::vector<cplx>& c, int axis) {
    size_t plane = d.plane();
    int nplanes = static_cast<int>(c.size() / plane);
    for (int m = 0; m < nplanes; ++m)
        for (int j = 0; j < d.spec.ny; ++j)
            for (int i = 0; i < d.nxh; ++i) {
                double k = axis == 0 ? double(d.kx_of(i)) : double(d.ky_of(j));
                c[(static_cast<size_t>(m) * d.spec.ny + j) * d.nxh + i] *= cplx(0.0, 2.0 * pi * k);
            }
}

std::array<SurfaceField, 2> grad_h(const SurfaceField& s) {
    const Domain& d = *s.dom;
    std::array<SurfaceField, 2> out{SurfaceField(d), SurfaceField(d)};
    for (int j = 0; j < d.spec.ny; ++j)
        for (int i = 0; i < d.nxh; ++i) {
            size_t idx = static_cast<size_t>(j) * d.nxh + i;
            out[0].c[idx] = s.c[idx] * cplx(0.0, 2.0 * pi * d.kx_of(i));
            out[1].c[idx] = s.c[idx] * cplx(0.0, 2.0 * pi * d.ky_of(j));
        }
    return out;
}

ScalarField3D div_h(const VelocityField& v) {
    const Domain& d = *v.dom;
    ScalarField3D out(d);
    for (int m = 0; m < d.spec.nz; ++m)
        for (int j = 0; j < d.spec.ny; ++j)
            for (int i = 0; i < d.nxh; ++i) {
                size_t idx = (static_cast<size_t>(m) * d.spec.ny + j) * d.nxh + i;
                out.c[idx] = cplx(0.0, 2.0 * pi) *
                             (double(d.kx_of(i)) * v.c1[idx] + double(d.ky_of(j)) * v.c2[idx]);
            }
    return out;
}

VelocityField laplacian(const VelocityField& v) {
    const Domain& d = *v.dom;
    VelocityField out = v;
    for (int comp = 0; comp < 2; ++comp) {
        cplx* c = out.comp(comp).data();
        for (int m = 0; m < d.spec.nz; ++m)
            for (int j = 0; j < d.spec.ny; ++j)
                for (int i = 0; i < d.nxh; ++i)
                    c[(static_cast<size_t>(m) * d.spec.ny + j) * d.nxh + i] *=
                        -d.lambda(i, j, m);
    }
    return out;
}

namespace {

std::vector<double> synth_with(const Domain& d, const Mat& M, const std::vector<cplx>& c) {
    std::vector<cplx> nodes(static_cast<size_t>(M.rows) * d.plane());
    vmat_apply(M, c.data(), nodes.data(), d.plane());
    std::vector<double> g(static_cast<size_t>(M.rows) * d.spec.nx * d.spec.ny);
    for (int z = 0; z < M.rows; ++z)
        fft2_backward(d, nodes.data() + static_cast<size_t>(z) * d.plane(),
                      g.data() + static_cast<size_t>(z) * d.spec.nx * d.spec.ny);
    return g;
}

} // namespace

void d_z_grid(const VelocityField& v, std::vector<double>& g1, std::vector<double>& g2) {
    g1 = synth_with(*v.dom, v.dom->Dg, v.c1);
    g2 = synth_with(*v.dom, v.dom->Dg, v.c2);
}

std::vector<double> d_z_grid(const ScalarField3D& s) { return synth_with(*s.dom, s.dom->Dg, s.c); }

void hermitize(const Domain& d, std::vector<cplx>& c) {
    size_t plane = d.plane();
    int nplanes = static_cast<int>(c.size() / plane);
    for (int m = 0; m < nplanes; ++m) {
        cplx* p = c.data() + static_cast<size_t>(m) * plane;
        p[0] = cplx(p[0].real(), 0.0);
        for (int j = 1; j < d.spec.ny / 2; ++j)
            p[static_cast<size_t>(d.spec.ny - j) * d.nxh] = std::conj(p[static_cast<size_t>(j) * d.nxh]);
        // Nyquist entries stay zero
        for (int i = 0; i < d.nxh; ++i) p[static_cast<size_t>(d.spec.ny / 2) * d.nxh + i] = 0.0;
        for (int j = 0; j < d.spec.ny; ++j) p[static_cast<size_t>(j) * d.nxh + d.spec.nx / 2] = 0.0;
    }
}

void apply_mask(const Domain& d, std::vector<cplx>& c) {
    size_t plane = d.plane();
    int nplanes = static_cast<int>(c.size() / plane);
    for (int m = 0; m < nplanes; ++m)
        for (int j = 0; j < d.spec.ny; ++j)
            for (int i = 0; i < d.nxh; ++i)
                if (!d.retained(i, j) || !d.in_mask(i, j))
                    c[(static_cast<size_t>(m) * d.spec.ny + j) * d.nxh + i] = 0.0;
}

} // namespace hydro
