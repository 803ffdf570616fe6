#pragma once

#include "hydro/common.hpp"

#include <memory>

namespace hydro {

/// Dirichlet part of the top/bottom boundary; the Neumann part is the
/// complement. Lateral boundaries are always periodic.
enum class GammaD { Empty, Upper, Bottom, Both };

GammaD parse_gamma_d(const std::string& name);
std::string gamma_d_name(GammaD bc);

struct DomainSpec {
    double h = 1.0;        // depth; the horizontal periods are fixed to 1
    int nx = 16, ny = 16;  // horizontal grid counts, even, >= 4
    int nz = 16;           // vertical mode/grid count, >= 4
    GammaD bc = GammaD::Empty;

    bool operator==(const DomainSpec&) const = default;
};

enum class BasisKind { CosineNeumann, SineDirichlet, QuarterCos, QuarterSin };

/// Trigonometric Galerkin basis in z, adapted to the boundary-condition
/// variant. Basis index i runs 0..nmodes-1; label(i) is the conventional
/// mode number m (sine modes are labelled from 1).
struct VerticalBasis {
    BasisKind kind;
    int nmodes;
    double h;

    int label(int i) const { return kind == BasisKind::SineDirichlet ? i + 1 : i; }

    /// vertical angular wavenumber of mode i (the nu in -phi'' = nu^2 phi)
    double nu(int i) const;
    /// L^2(-h,0) norm squared of mode i
    double norm2(int i) const;
    /// depth mean (1/h) * integral of mode i
    double mean(int i) const;
    /// squared L^2 norm of the z-derivative of mode i
    double dnorm2(int i) const { double v = nu(i); return v * v * h / 2.0; }

    double eval(int i, double z) const;
    double deval(int i, double z) const;
    /// integral of mode i from -h to z (closed form)
    double ieval(int i, double z) const;

    /// period of the basis functions viewed as global trig functions
    double torus_period() const;
    /// integer frequency of mode i in units of 2*pi/torus_period()
    int torus_freq(int i) const;
};

BasisKind basis_for(GammaD bc);

struct Domain {
    DomainSpec spec;
    VerticalBasis basis;
    int nxh = 0;  // nx/2 + 1 (r2c width)
    int np = 0;   // padded z-node count used for dealiased products

    std::vector<double> xg, yg;  // horizontal collocation nodes
    std::vector<double> zg, wz;  // vertical collocation nodes and quadrature weights
    std::vector<double> zp;      // padded z nodes (uniform on the basis torus)

    // vertical transform matrices; rows index nodes (or modes for analysis)
    Mat S0, A0;      // synthesis / analysis on physical nodes (nz x nz)
    Mat Dg, Ig;      // d/dz and antiderivative synthesis on physical nodes
    Mat Sp, Dp, Ip;  // synthesis variants on padded nodes (np x nz)
    Mat Gp, GpD;     // exact Galerkin analysis from padded nodes (nz x np)

    // constant-lift data for the hydrostatic projection:
    // elift = basis coefficients of the L^2 projection of the constant 1,
    // smean = depth mean of that projection (1 for the Neumann basis)
    std::vector<double> elift;
    double smean = 1.0;

    int kx_of(int i) const { return i; }
    int ky_of(int j) const { return j <= spec.ny / 2 ? j : j - spec.ny; }
    /// modes kept in the spectral representation (Nyquist line dropped)
    bool retained(int i, int j) const {
        return i < spec.nx / 2 && ky_of(j) != spec.ny / 2 && j != spec.ny / 2;
    }
    /// 2/3-rule dealiasing mask
    int kmax_x() const { return (spec.nx - 1) / 3; }
    int kmax_y() const { return (spec.ny - 1) / 3; }
    bool in_mask(int i, int j) const {
        int ky = ky_of(j);
        return i <= kmax_x() && ky >= -kmax_y() && ky <= kmax_y();
    }

    double lambda(int kxi, int kyj, int m) const {
        double kx = kx_of(kxi), ky = ky_of(kyj);
        double v = basis.nu(m);
        return 4.0 * pi * pi * (kx * kx + ky * ky) + v * v;
    }

    size_t grid_size() const { return static_cast<size_t>(spec.nx) * spec.ny * spec.nz; }
    size_t spec_size() const { return static_cast<size_t>(nxh) * spec.ny * spec.nz; }
    size_t plane() const { return static_cast<size_t>(nxh) * spec.ny; }  // complex per z-plane

    Domain();
    ~Domain();
    Domain(Domain&&) noexcept;
    Domain& operator=(Domain&&) noexcept;
    Domain(const Domain&) = delete;
    Domain& operator=(const Domain&) = delete;

    struct Plans;
    std::unique_ptr<Plans> plans;
};

/// Validates the sizes and builds grids, basis matrices and FFT plans.
Domain make_domain(const DomainSpec& spec);

// Scalar-field transforms. Grid layout: [z][y][x] row-major; spectral layout:
// [m][ky][kx] with kx in 0..nxh-1 (r2c half-plane). Nyquist entries are zeroed.
void to_spectral(const Domain& d, const std::vector<double>& grid, std::vector<cplx>& spec);
void from_spectral(const Domain& d, const std::vector<cplx>& spec, std::vector<double>& grid);

// Single horizontal plane (used for surface fields and padded levels).
void fft2_forward(const Domain& d, const double* grid, cplx* spec);
void fft2_backward(const Domain& d, const cplx* spec, double* grid);

/// out[r] = sum_c M(r,c) * in[c], acting on contiguous complex planes.
void vmat_apply(const Mat& M, const cplx* in, cplx* out, size_t plane);

} // namespace hydro
