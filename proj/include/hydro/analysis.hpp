#pragma once

#include "hydro/stepper.hpp"

namespace hydro {

enum class NormFamily { Lp, Sobolev, Besov, TimeWeighted };

struct NormSpec {
    NormFamily family = NormFamily::Sobolev;
    double p = 2.0, q = 2.0;
    double s = 0.0;
    double mu = 1.0;
};

/// Parses "l2", "h1", "lp:p=4", "sobolev:s=1.5", "besov:s=0.5,p=4,q=4",
/// "timeweighted:mu=0.5,q=4".
NormSpec parse_norm_spec(const std::string& text);

/// Dispatch over families; Sobolev supports p = 2 only (exact spectral
/// multiplier) and rejects other p. TimeWeighted is record-level, not
/// field-level, and is rejected here.
double norm(const VelocityField& v, const NormSpec& spec);

// --- exact spectral norms (p = 2) -------------------------------------------

double l2_norm(const VelocityField& v);
double inner(const VelocityField& a, const VelocityField& b);
/// (sum (1 + lambda)^s |coeff|^2)^(1/2)
double sobolev_norm(const VelocityField& v, double s);
/// |grad v|_{L2} including the z-derivative
double grad_norm(const VelocityField& v);
/// |A v|_{L2} = |Laplacian v|_{L2} = |grad^2 v|_{L2} (exact identities here)
double a_norm(const VelocityField& v);
double l2_norm_surface(const SurfaceField& s);
double grad_norm_surface(const SurfaceField& s);

// --- quadrature norms -------------------------------------------------------

/// L^p of |v| = sqrt(v1^2 + v2^2) by grid quadrature.
double lp_norm(const VelocityField& v, double p);
double lp_norm_scalar(const Domain& d, const std::vector<double>& g, double p);

/// Besov norm: l^q over dyadic blocks j of 2^{js} |block_j v|_{Lp}, blocks
/// cut with a smooth partition of unity in sqrt(lambda(k,m)).
double besov_norm(const VelocityField& v, double s, double p, double q);
/// Smooth dyadic cutoff used for the blocks (1 for r <= 1, 0 for r >= 2).
double dyadic_cutoff(double r);

// --- rough initial data -----------------------------------------------------

/// Solenoidal random data normalized so the B^{2 theta}_{pq} estimator is 1.
/// Coefficient decay carries an epsilon = 0.05 margin above critical so the
/// estimator converges at finite resolution while stronger norms (H^2) grow
/// without bound under refinement. Warns near the trace-threshold exponents
/// theta = 1/(2p), 1/2 + 1/(2p) where the boundary characterization changes.
VelocityField generate_rough_data(const Domain& d, double p, double q, double theta,
                                  uint64_t seed);

// --- trajectory diagnostics -------------------------------------------------

struct AprioriLedger {
    std::vector<std::string> names;
    std::vector<double> times;
    std::vector<std::vector<double>> rows;  // rows[t][quantity]
    std::vector<double> running_max;        // per quantity
    double bound = 0.0;                     // max of running_max
    bool finite = true;
    bool vt_available = true;
};

/// Per-snapshot energy-type functionals of the a priori estimate chain:
/// fluctuation L4 and its gradient-product integral, barotropic gradient and
/// pressure-gradient integral, v_z levels, full gradient/dissipation, v_t,
/// and second derivatives.
AprioriLedger apriori_ledger(const TrajectoryRecord& rec);
void write_ledger_csv(const AprioriLedger& led, const std::string& path);
void write_ledger_summary_json(const AprioriLedger& led, const std::string& path);

struct SplitResidualStats {
    std::vector<double> times;
    std::vector<double> mean_residual;   // barotropic (depth-mean) equation
    std::vector<double> fluct_residual;  // fluctuation equation
    double max_mean = 0.0, max_fluct = 0.0;
};

/// Residuals of the depth-averaged / fluctuation split of the equations,
/// evaluated on stored snapshots with centered differences in time for v_t
/// and the recovered snapshot pressure. Needs >= 3 uniformly spaced
/// snapshots.
SplitResidualStats split_residual(const TrajectoryRecord& rec);

struct SmoothingStats {
    std::vector<double> times;       // snapshot times > 0
    std::vector<double> av;          // |A v(t)|
    std::vector<double> weighted;    // t^{1-mu} |A v(t)|
    std::vector<double> t_vt;        // t |v_t(t)|
    double av_initial = 0.0;         // |A v| at the earliest snapshot
    double sup_weighted = 0.0;
    double sup_t_vt = 0.0;
};

SmoothingStats smoothing_tracker(const TrajectoryRecord& rec, double mu, double p, double q);

/// Trapezoid quadrature of int t^{(1-mu) q} |A v(t)|^q dt over snapshots.
double weighted_time_integral(const TrajectoryRecord& rec, double mu, double q);

struct RadiusSample {
    double t = 0.0;
    double sigma = 0.0;
    bool ok = false;  // false when the fit is underdetermined
};

/// Least-squares fit of log |coeff| against -(|2 pi k| + nu_m) over modes
/// above a 1e-13 relative floor: the exponential-decay radius proxy.
RadiusSample fit_radius(const VelocityField& v, double t);
std::vector<RadiusSample> analyticity_radius(const TrajectoryRecord& rec);

/// Plot-ready series output: header "time,<name>,..." one row per time.
void write_series_csv(const std::string& path, const std::vector<std::string>& names,
                      const std::vector<double>& times,
                      const std::vector<std::vector<double>>& rows);

} // namespace hydro
