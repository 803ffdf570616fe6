#pragma once

#include "hydro/hydrostatic.hpp"

namespace hydro {

/// Advection nonlinearity N(v, vp) = v . grad_H vp + w(v) d_z vp, evaluated
/// pseudo-spectrally: 2/3-rule mask horizontally, padded collocation
/// vertically with an exact Galerkin analysis of the product back onto the
/// retained modes. Not projected.
VelocityField advect_raw(const VelocityField& v, const VelocityField& vp);

/// F(v, vp) = P N(v, vp); bilinear, and exactly energy-neutral against v for
/// solenoidal v (up to FFT roundoff).
VelocityField advect(const VelocityField& v, const VelocityField& vp);

/// Same bilinear form in divergence shape, P div(u (x) vp) with
/// u = (v, w(v)); agrees with advect because div u = 0 identically.
/// Kept as an independent cross-check.
VelocityField advect_divergence_form(const VelocityField& v, const VelocityField& vp);

/// Random solenoidal field: per-mode Gaussian coefficients with magnitude
/// (1 + lambda(k,m))^{-gamma}, deterministic in (seed, kx, ky, m, component)
/// so coarse-grid modes are reproduced exactly on finer grids; masked and
/// projected.
VelocityField random_solenoidal(const Domain& d, double gamma, uint64_t seed);

struct ProbeStats {
    double max = 0.0;
    double median = 0.0;
    std::vector<double> ratios;  // one per sample pair
};

/// Empirical boundedness probe for the bilinear estimate: over seeded random
/// pairs, ratios |F(v, vp)|_{H^s} / (|v|_{H^{s+1.5}} |vp|_{H^{s+1.5}}).
ProbeStats bilinear_estimate_probe(const Domain& d, int samples, double s, uint64_t seed);

/// CSV columns: seed, resolution, s, ratio.
void write_probe_csv(const ProbeStats& st, const Domain& d, double s, uint64_t seed,
                     const std::string& path);

} // namespace hydro
