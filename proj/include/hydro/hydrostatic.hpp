#pragma once

#include "hydro/fields.hpp"

#include <functional>

namespace hydro {

/// Helmholtz-type projection onto fields whose depth mean is divergence-free.
/// Per horizontal wavenumber k != 0, subtracts the L^2-orthogonal lift of the
/// gradient part k (k . vbar(k)) / |k|^2; k = 0 is untouched (pressure gauge:
/// zero surface mean). Exactly idempotent and L^2-orthogonal in the retained
/// basis.
void project(VelocityField& v);

/// max_k |k . vbar(k)| relative to the field scale; zero for projected fields.
double mean_divergence_residual(const VelocityField& v);

/// Surface pressure whose horizontal gradient is the non-solenoidal part of
/// `residual`: pi(k) = -i k . (residual depth mean)(k) / (2 pi |k|^2), with
/// pi(0) = 0.
SurfaceField recover_surface_pressure(const VelocityField& residual);

/// The Stokes operator A = (projection) o Laplacian, realized by functional
/// calculus. Per k != 0, the polarization perpendicular to k is diagonal with
/// eigenvalue -(4 pi^2 |k|^2 + nu_m^2); the parallel polarization couples
/// vertical modes through the solenoidal constraint and is handled by one
/// symmetric eigendecomposition of the constrained vertical block, shared by
/// every k.
struct StokesOperator {
    const Domain* dom = nullptr;
    Mat Q;                      // eigenvectors of the constrained block (columns)
    std::vector<double> theta;  // its eigenvalues (one ~0 kernel direction)
    std::vector<double> sqb;    // sqrt of the basis L^2 norms
};

StokesOperator make_stokes(const Domain& d);

/// Applies f(lambda) where lambda ranges over the eigenvalues of -A.
/// Preserves solenoidality. f = -x gives A itself, exp(-x t) the semigroup,
/// rational functions the implicit steps.
void apply_fn(const StokesOperator& op, VelocityField& v,
              const std::function<double(double)>& f);

/// A v for solenoidal v; rejects inputs whose depth-mean divergence exceeds
/// 1e-8 relative (a missing projection).
VelocityField apply_stokes(const StokesOperator& op, const VelocityField& v);

/// e^{tA} v0, t >= 0.
VelocityField apply_semigroup(const StokesOperator& op, const VelocityField& v0, double t);

struct SpectrumEntry {
    double lambda;  // eigenvalue of -A
    int kx, ky, m;
    int multiplicity;
};

struct SpectrumReport {
    std::vector<SpectrumEntry> entries;  // sorted ascending
    double smallest = 0.0;
};

/// Smallest `count` eigenvalues of -A with (k, m) labels. Multiplicity
/// accounting: k = 0 keeps both vector directions; for k != 0 a vertical mode
/// with nonzero depth mean loses its k-parallel direction to the solenoidal
/// constraint (2D Helmholtz on the torus), zero-mean modes keep both.
SpectrumReport spectrum(const Domain& d, int count);

/// CSV columns: index, eigenvalue, kx, ky, m, multiplicity.
void write_spectrum_csv(const SpectrumReport& rep, const std::string& path);

} // namespace hydro
