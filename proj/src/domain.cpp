#include "hydro/domain.hpp"
#include "hydro/kernels.hpp"

#include <fftw3.h>

#include <Eigen/Dense>

#include <cmath>
#include <cstring>
#include <mutex>

namespace hydro {

GammaD parse_gamma_d(const std::string& name) {
    if (name == "neumann" || name == "empty" || name == "none") return GammaD::Empty;
    if (name == "upper" || name == "top") return GammaD::Upper;
    if (name == "bottom") return GammaD::Bottom;
    if (name == "both" || name == "dirichlet") return GammaD::Both;
    throw HydroError("unknown boundary-condition variant: " + name);
}

std::string gamma_d_name(GammaD bc) {
    switch (bc) {
        case GammaD::Empty: return "neumann";
        case GammaD::Upper: return "upper";
        case GammaD::Bottom: return "bottom";
        case GammaD::Both: return "both";
    }
    return "?";
}

BasisKind basis_for(GammaD bc) {
    switch (bc) {
        case GammaD::Empty: return BasisKind::CosineNeumann;
        case GammaD::Both: return BasisKind::SineDirichlet;
        case GammaD::Upper: return BasisKind::QuarterCos;
        case GammaD::Bottom: return BasisKind::QuarterSin;
    }
    return BasisKind::CosineNeumann;
}

double VerticalBasis::nu(int i) const {
    switch (kind) {
        case BasisKind::CosineNeumann: return i * pi / h;
        case BasisKind::SineDirichlet: return (i + 1) * pi / h;
        case BasisKind::QuarterCos:
        case BasisKind::QuarterSin: return (i + 0.5) * pi / h;
    }
    return 0;
}

double VerticalBasis::norm2(int i) const {
    if (kind == BasisKind::CosineNeumann && i == 0) return h;
    return h / 2.0;
}

double VerticalBasis::mean(int i) const {
    switch (kind) {
        case BasisKind::CosineNeumann: return i == 0 ? 1.0 : 0.0;
        case BasisKind::SineDirichlet: {
            int m = i + 1;
            return (m % 2 == 1) ? 2.0 / (m * pi) : 0.0;
        }
        case BasisKind::QuarterCos: return ((i % 2 == 0) ? 1.0 : -1.0) / ((i + 0.5) * pi);
        case BasisKind::QuarterSin: return 1.0 / ((i + 0.5) * pi);
    }
    return 0;
}

double VerticalBasis::eval(int i, double z) const {
    double s = z + h, v = nu(i);
    switch (kind) {
        case BasisKind::CosineNeumann:
        case BasisKind::QuarterCos: return std::cos(v * s);
        case BasisKind::SineDirichlet:
        case BasisKind::QuarterSin: return std::sin(v * s);
    }
    return 0;
}

double VerticalBasis::deval(int i, double z) const {
    double s = z + h, v = nu(i);
    switch (kind) {
        case BasisKind::CosineNeumann:
        case BasisKind::QuarterCos: return -v * std::sin(v * s);
        case BasisKind::SineDirichlet:
        case BasisKind::QuarterSin: return v * std::cos(v * s);
    }
    return 0;
}

double VerticalBasis::ieval(int i, double z) const {
    double s = z + h, v = nu(i);
    switch (kind) {
        case BasisKind::CosineNeumann:
            if (i == 0) return s;
            return std::sin(v * s) / v;
        case BasisKind::QuarterCos: return std::sin(v * s) / v;
        case BasisKind::SineDirichlet:
        case BasisKind::QuarterSin: return (1.0 - std::cos(v * s)) / v;
    }
    return 0;
}

double VerticalBasis::torus_period() const {
    return (kind == BasisKind::QuarterCos || kind == BasisKind::QuarterSin) ? 4 * h : 2 * h;
}

int VerticalBasis::torus_freq(int i) const {
    switch (kind) {
        case BasisKind::CosineNeumann: return i;
        case BasisKind::SineDirichlet: return i + 1;
        case BasisKind::QuarterCos:
        case BasisKind::QuarterSin: return 2 * i + 1;
    }
    return 0;
}

struct Domain::Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    int nx = 0, ny = 0;

    ~Plans() {
        if (r2c) fftw_destroy_plan(r2c);
        if (c2r) fftw_destroy_plan(c2r);
    }
};

Domain::Domain() = default;
Domain::~Domain() = default;
Domain::Domain(Domain&&) noexcept = default;
Domain& Domain::operator=(Domain&&) noexcept = default;

namespace {

std::mutex fftw_planner_mutex;

// integral of e^{i g s} over (0, h)
cplx cexp_int(double g, double h) {
    if (std::abs(g) * h < 1e-13) return cplx(h, 0.0);
    cplx ig(0.0, g);
    return (std::exp(ig * h) - 1.0) / ig;
}

// integral over (0,h) of e^{i w s} * phi_i(s + offset -h ... ), with phi given
// as cos(nu s) or sin(nu s)
cplx trig_exp_int(double w, double nu, bool is_cos, double h) {
    if (is_cos)
        return 0.5 * (cexp_int(w + nu, h) + cexp_int(w - nu, h));
    return (cexp_int(w + nu, h) - cexp_int(w - nu, h)) / cplx(0.0, 2.0);
}

bool mode_is_cos(BasisKind k) {
    return k == BasisKind::CosineNeumann || k == BasisKind::QuarterCos;
}

// Exact Galerkin analysis matrix: maps point values of a band-limited product
// on the np padded torus nodes to basis coefficients (1/beta_i) <g, phi_i>.
// `use_derivative` replaces phi_i by -phi_i' (integration-by-parts analysis
// of d/dz g for g vanishing at the ends).
Mat build_galerkin_analysis(const VerticalBasis& b, int np, bool use_derivative) {
    const double P = b.torus_period();
    const double w0 = 2.0 * pi / P;
    const int B = np / 2 - 1;
    Mat G(b.nmodes, np);
    for (int i = 0; i < b.nmodes; ++i) {
        double nu = b.nu(i);
        bool phi_cos = mode_is_cos(b.kind);
        // J(K) = integral over the physical interval of e^{i w0 K s} phi_i(s)
        std::vector<cplx> J(B + 1);
        for (int K = 0; K <= B; ++K) {
            if (!use_derivative) {
                J[K] = trig_exp_int(w0 * K, nu, phi_cos, b.h);
            } else {
                // phi' = -nu sin (cos modes) or nu cos (sin modes); sign for
                // the integration-by-parts convention applied by the caller
                cplx v = trig_exp_int(w0 * K, nu, !phi_cos, b.h) * nu;
                J[K] = phi_cos ? v : -v;
            }
        }
        double inv = 1.0 / (b.norm2(i) * np);
        for (int j = 0; j < np; ++j) {
            double acc = J[0].real();
            for (int K = 1; K <= B; ++K) {
                double ang = -2.0 * pi * K * j / np;
                acc += 2.0 * (J[K].real() * std::cos(ang) - J[K].imag() * std::sin(ang));
            }
            G(i, j) = acc * inv;
        }
    }
    return G;
}

} // namespace

Domain make_domain(const DomainSpec& spec) {
    if (spec.nx < 4 || spec.nx % 2 != 0) throw HydroError("nx must be even and >= 4");
    if (spec.ny < 4 || spec.ny % 2 != 0) throw HydroError("ny must be even and >= 4");
    if (spec.nz < 4) throw HydroError("nz must be >= 4");
    if (!(spec.h > 0)) throw HydroError("depth h must be positive");

    Domain d;
    d.spec = spec;
    d.basis = VerticalBasis{basis_for(spec.bc), spec.nz, spec.h};
    d.nxh = spec.nx / 2 + 1;

    const int nz = spec.nz;
    const double h = spec.h;
    const auto& b = d.basis;

    d.xg.resize(spec.nx);
    for (int i = 0; i < spec.nx; ++i) d.xg[i] = double(i) / spec.nx;
    d.yg.resize(spec.ny);
    for (int j = 0; j < spec.ny; ++j) d.yg[j] = double(j) / spec.ny;

    // Physical z nodes. Half-offset midpoints for the cosine and quarter-wave
    // bases; for the sine basis the nodes sit strictly inside the interval so
    // that equal-weight quadrature is exact on products of the full retained
    // mode set m = 1..nz.
    d.zg.resize(nz);
    d.wz.resize(nz);
    if (b.kind == BasisKind::SineDirichlet) {
        for (int j = 0; j < nz; ++j) {
            d.zg[j] = -h + (j + 1) * h / (nz + 1);
            d.wz[j] = h / (nz + 1);
        }
    } else {
        for (int j = 0; j < nz; ++j) {
            d.zg[j] = -h + (j + 0.5) * h / nz;
            d.wz[j] = h / nz;
        }
    }

    // Padded nodes on the basis torus, enough to hold any product of two
    // retained modes without aliasing.
    int fmax = b.torus_freq(nz - 1);
    d.np = 4 * fmax + 4;
    d.zp.resize(d.np);
    double P = b.torus_period();
    for (int j = 0; j < d.np; ++j) d.zp[j] = -h + j * P / d.np;

    auto fill = [&](Mat& M, const std::vector<double>& nodes, auto&& f) {
        M = Mat(static_cast<int>(nodes.size()), nz);
        for (int j = 0; j < M.rows; ++j)
            for (int i = 0; i < nz; ++i) M(j, i) = f(i, nodes[j]);
    };
    fill(d.S0, d.zg, [&](int i, double z) { return b.eval(i, z); });
    fill(d.Dg, d.zg, [&](int i, double z) { return b.deval(i, z); });
    fill(d.Ig, d.zg, [&](int i, double z) { return b.ieval(i, z); });
    fill(d.Sp, d.zp, [&](int i, double z) { return b.eval(i, z); });
    fill(d.Dp, d.zp, [&](int i, double z) { return b.deval(i, z); });
    fill(d.Ip, d.zp, [&](int i, double z) { return b.ieval(i, z); });

    {
        Eigen::MatrixXd S(nz, nz);
        for (int r = 0; r < nz; ++r)
            for (int c = 0; c < nz; ++c) S(r, c) = d.S0(r, c);
        Eigen::MatrixXd A = S.partialPivLu().inverse();
        d.A0 = Mat(nz, nz);
        for (int r = 0; r < nz; ++r)
            for (int c = 0; c < nz; ++c) d.A0(r, c) = A(r, c);
    }

    d.Gp = build_galerkin_analysis(b, d.np, false);
    d.GpD = build_galerkin_analysis(b, d.np, true);

    d.elift.resize(nz);
    d.smean = 0.0;
    for (int i = 0; i < nz; ++i) {
        d.elift[i] = h * b.mean(i) / b.norm2(i);
        d.smean += b.mean(i) * d.elift[i];
    }

    d.plans = std::make_unique<Domain::Plans>();
    d.plans->nx = spec.nx;
    d.plans->ny = spec.ny;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex);
        std::vector<double> rbuf(static_cast<size_t>(spec.nx) * spec.ny);
        std::vector<cplx> cbuf(static_cast<size_t>(d.nxh) * spec.ny);
        d.plans->r2c = fftw_plan_dft_r2c_2d(spec.ny, spec.nx, rbuf.data(),
                                            reinterpret_cast<fftw_complex*>(cbuf.data()),
                                            FFTW_ESTIMATE | FFTW_UNALIGNED);
        d.plans->c2r = fftw_plan_dft_c2r_2d(spec.ny, spec.nx,
                                            reinterpret_cast<fftw_complex*>(cbuf.data()),
                                            rbuf.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    return d;
}

void fft2_forward(const Domain& d, const double* grid, cplx* spec) {
    thread_local std::vector<double> scratch;
    size_t n = static_cast<size_t>(d.spec.nx) * d.spec.ny;
    scratch.assign(grid, grid + n);
    fftw_execute_dft_r2c(d.plans->r2c, scratch.data(), reinterpret_cast<fftw_complex*>(spec));
    double norm = 1.0 / double(n);
    kernels::active().scale(norm, reinterpret_cast<double*>(spec), 2 * d.plane());
    // drop the Nyquist line
    for (int j = 0; j < d.spec.ny; ++j) spec[static_cast<size_t>(j) * d.nxh + d.spec.nx / 2] = 0.0;
    for (int i = 0; i < d.nxh; ++i) spec[static_cast<size_t>(d.spec.ny / 2) * d.nxh + i] = 0.0;
}

void fft2_backward(const Domain& d, const cplx* spec, double* grid) {
    thread_local std::vector<cplx> scratch;
    scratch.assign(spec, spec + d.plane());
    fftw_execute_dft_c2r(d.plans->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), grid);
}

void vmat_apply(const Mat& M, const cplx* in, cplx* out, size_t plane) {
    const auto& K = kernels::active();
    size_t n = 2 * plane;
    for (int r = 0; r < M.rows; ++r) {
        double* dst = reinterpret_cast<double*>(out + static_cast<size_t>(r) * plane);
        std::memset(dst, 0, n * sizeof(double));
        const double* mrow = M.row(r);
        for (int c = 0; c < M.cols; ++c) {
            if (mrow[c] == 0.0) continue;
            const double* src = reinterpret_cast<const double*>(in + static_cast<size_t>(c) * plane);
            K.axpy(mrow[c], src, dst, n);
        }
    }
}

void to_spectral(const Domain& d, const std::vector<double>& grid, std::vector<cplx>& spec) {
    if (grid.size() != d.grid_size()) throw HydroError("to_spectral: grid size mismatch");
    size_t plane = d.plane();
    std::vector<cplx> tmp(plane * d.spec.nz);
    for (int z = 0; z < d.spec.nz; ++z)
        fft2_forward(d, grid.data() + static_cast<size_t>(z) * d.spec.nx * d.spec.ny,
                     tmp.data() + static_cast<size_t>(z) * plane);
    spec.resize(plane * d.spec.nz);
    vmat_apply(d.A0, tmp.data(), spec.data(), plane);
}

void from_spectral(const Domain& d, const std::vector<cplx>& spec, std::vector<double>& grid) {
    if (spec.size() != d.spec_size()) throw HydroError("from_spectral: spectral size mismatch");
    size_t plane = d.plane();
    std::vector<cplx> tmp(plane * d.spec.nz);
    vmat_apply(d.S0, spec.data(), tmp.data(), plane);
    grid.resize(d.grid_size());
    for (int z = 0; z < d.spec.nz; ++z)
        fft2_backward(d, tmp.data() + static_cast<size_t>(z) * plane,
                      grid.data() + static_cast<size_t>(z) * d.spec.nx * d.spec.ny);
}

} // namespace hydro
