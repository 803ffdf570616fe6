#pragma once

#include "hydro/nonlinear.hpp"

#include <memory>

namespace hydro {

struct RunConfig {
    DomainSpec domain;

    std::string initial = "zero";  // zero | taylor-green | random | rough | snapshot path
    double amplitude = 1.0;        // norm scale of the preset initial data
    uint64_t seed = 1;
    double rough_p = 4.0, rough_q = 4.0, rough_theta = 0.25;

    std::string forcing = "none";  // none | gyre
    double forcing_amplitude = 0.0;

    double dt = 1e-3;
    double t_end = 1.0;

    int snapshot_stride = 10;          // steps between stored snapshots
    bool geometric_snapshots = false;  // refine snapshot times near t = 0
    int snapshot_count = 20;           // target count for the geometric schedule
    double first_snapshot = 0.0;       // earliest geometric snapshot (0: 5*dt)

    // time-weight parameters (mu, p, q) of the recorded weighted integrals
    double mu = 1.0, p = 2.0, q = 2.0;

    std::vector<std::string> norms;  // extra per-snapshot diagnostics
    std::string out_dir;             // empty: in-memory only
};

/// Reads a flat TOML document (key = value) or a JSON object with the same
/// keys; keys mirror the RunConfig fields (domain fields: h, nx, ny, nz, bc).
RunConfig parse_run_config(const std::string& path);
RunConfig parse_run_config_text(const std::string& text);

/// Throws on invalid ranges; warns on stderr when (p, q, mu) violate the
/// criticality condition 1/p + 1/q <= mu <= 1.
void validate(const RunConfig& cfg);

struct Snapshot {
    double t = 0.0;
    VelocityField v;
    SurfaceField pressure;  // recovered surface pressure, zero surface mean
};

struct TrajectoryRecord {
    std::shared_ptr<Domain> domain;
    RunConfig cfg;
    StokesOperator op;

    std::vector<Snapshot> snaps;

    // Per-step energy bookkeeping. The scheme satisfies, exactly in floating
    // point, final_energy + 2*grad_integral - initial_energy
    //   = forcing_work + nonlinear_work
    // with midpoint-sampled gradients; nonlinear_work is pure discretization
    // error of the energy equality.
    double initial_energy = 0.0;
    double final_energy = 0.0;
    double grad_integral = 0.0;   // ~ int |grad v|^2 dt
    double forcing_work = 0.0;    // ~ 2 int <f, v> dt
    double nonlinear_work = 0.0;  // ~ 2 int <F(v), v> dt (0 in the continuum)
    // sum of |per-step nonlinear work|: an L1-in-time closure residual that
    // scales as dt^2 without the sign cancellations of the plain sum
    double nonlinear_work_abs = 0.0;

    double t_final = 0.0;
    bool blowup = false;
    double blowup_time = 0.0;
    bool has_forcing_derivative = true;

    std::vector<std::string> diag_names;
    std::vector<std::vector<double>> diag_rows;  // one row per snapshot
};

/// Integrates the primitive equations with Crank-Nicolson on the Stokes part
/// and 2nd-order Adams-Bashforth on advection and forcing (explicit Euler on
/// the first step). Solenoidality is exact per step. Throws on blowup only if
/// asked; otherwise records the flag and stops.
TrajectoryRecord run(const RunConfig& cfg);

/// Forcing presets evaluated at time t (already projected); derivative = true
/// returns d/dt of the forcing.
VelocityField forcing_field(const Domain& d, const RunConfig& cfg, double t, bool derivative);

/// v_t from the equation residual v_t = A v - F(v) + P f; spectrally exact
/// given v (no finite differencing).
VelocityField equation_time_derivative(const StokesOperator& op, const VelocityField& v,
                                       const VelocityField* pf);

struct TimeDerivativeStats {
    std::vector<double> t, vt_l2, t_vt_l2, t_avt_l2;
    double sup_t_avt = 0.0;
    bool bounded = true;
};

TimeDerivativeStats time_derivative_record(const TrajectoryRecord& rec);

} // namespace hydro
