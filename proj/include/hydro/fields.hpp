#pragma once

#include "hydro/domain.hpp"

#include <array>

namespace hydro {

/// Horizontal velocity v = (v1, v2) on the cylinder. The spectral
/// coefficients are the source of truth; grid views are synthesized on
/// demand and cached. Layout per component: [m][ky][kx] spectral,
/// [z][y][x] grid.
struct VelocityField {
    const Domain* dom = nullptr;
    std::vector<cplx> c1, c2;

    VelocityField() = default;
    explicit VelocityField(const Domain& d)
        : dom(&d), c1(d.spec_size(), cplx{}), c2(d.spec_size(), cplx{}) {}

    std::vector<cplx>& comp(int i) { return i == 0 ? c1 : c2; }
    const std::vector<cplx>& comp(int i) const { return i == 0 ? c1 : c2; }

    void grid(std::vector<double>& g1, std::vector<double>& g2) const {
        from_spectral(*dom, c1, g1);
        from_spectral(*dom, c2, g2);
    }
    void set_grid(const std::vector<double>& g1, const std::vector<double>& g2) {
        to_spectral(*dom, g1, c1);
        to_spectral(*dom, g2, c2);
    }
};

/// Scalar on the cylinder, spectral view in the velocity's vertical basis.
struct ScalarField3D {
    const Domain* dom = nullptr;
    std::vector<cplx> c;

    ScalarField3D() = default;
    explicit ScalarField3D(const Domain& d) : dom(&d), c(d.spec_size(), cplx{}) {}

    std::vector<double> grid() const {
        std::vector<double> g;
        from_spectral(*dom, c, g);
        return g;
    }
};

/// Scalar on the surface G (2D, half-plane spectral layout [ky][kx]).
struct SurfaceField {
    const Domain* dom = nullptr;
    std::vector<cplx> c;

    SurfaceField() = default;
    explicit SurfaceField(const Domain& d) : dom(&d), c(d.plane(), cplx{}) {}

    std::vector<double> grid() const {
        std::vector<double> g(static_cast<size_t>(dom->spec.nx) * dom->spec.ny);
        fft2_backward(*dom, c.data(), g.data());
        return g;
    }
    void set_grid(const std::vector<double>& g) {
        c.resize(dom->plane());
        fft2_forward(*dom, g.data(), c.data());
    }
};

// --- shape checks -----------------------------------------------------------

void check_conforms(const Domain& d, const VelocityField& v);

// --- vertical structure -----------------------------------------------------

/// Depth mean (1/h) integral of v; exact on the retained basis.
std::array<SurfaceField, 2> vertical_average(const VelocityField& v);

/// v minus the lift of its depth mean; the result has exactly zero depth
/// mean in spectral coefficients.
VelocityField fluctuation(const VelocityField& v);

/// Diagnostic vertical velocity w(v)(z) = -int_{-h}^z div_H v, returned on
/// collocation nodes (its antiderivative profile leaves the basis).
/// w(.,.,-h) = 0 by construction; w(.,.,0) = 0 when div_H vbar = 0.
std::vector<double> vertical_velocity(const VelocityField& v);

// --- differential operators (exact on retained modes) -----------------------

std::array<SurfaceField, 2> grad_h(const SurfaceField& s);
ScalarField3D div_h(const VelocityField& v);
VelocityField laplacian(const VelocityField& v);
/// z-derivative sampled on collocation nodes (one grid per component).
void d_z_grid(const VelocityField& v, std::vector<double>& g1, std::vector<double>& g2);
/// z-derivative of a scalar's spectral coefficients, synthesized to grid.
std::vector<double> d_z_grid(const ScalarField3D& s);

/// In-place horizontal derivative of one spectral component:
/// multiply mode (kx, ky) by 2*pi*i*k_axis.
void apply_ik(const Domain& d, std::vector<cplx>& c, int axis);

/// Spectral coefficients of -div_H v; feeds the w synthesis. For solenoidal
/// v the depth mean vanishes and w satisfies the rigid lid w(., ., 0) = 0.
std::vector<cplx> minus_div_coeffs(const VelocityField& v);

/// Enforce conjugate symmetry on the kx = 0 column so the represented field
/// is real-valued; used by random generators that fill coefficients directly.
void hermitize(const Domain& d, std::vector<cplx>& c);

/// Zero every mode outside the 2/3 dealiasing mask (and non-retained modes).
void apply_mask(const Domain& d, std::vector<cplx>& c);

} // namespace hydro
