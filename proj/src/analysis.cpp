#include "hydro/analysis.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hydro {

namespace {

/// Sum over stored spectral coefficients of weight(lambda) * |c|^2 with the
/// half-plane multiplicity and basis norms folded in.
template <class W>
double spectral_sum2(const VelocityField& v, W&& weight) {
    const Domain& d = *v.dom;
    size_t plane = d.plane();
    double acc = 0.0;
    for (int m = 0; m < d.spec.nz; ++m) {
        double beta = d.basis.norm2(m);
        for (int j = 0; j < d.spec.ny; ++j)
            for (int i = 0; i < d.nxh; ++i) {
                if (!d.retained(i, j)) continue;
                double mult = i > 0 ? 2.0 : 1.0;
                size_t idx = (static_cast<size_t>(m) * d.spec.ny + j) * d.nxh + i;
                acc += mult * beta * weight(d.lambda(i, j, m), d.basis.nu(m)) *
                       (std::norm(v.c1[idx]) + std::norm(v.c2[idx]));
            }
    }
    return acc;
}

} // namespace

double l2_norm(const VelocityField& v) {
    return std::sqrt(spectral_sum2(v, [](double, double) { return 1.0; }));
}

double sobolev_norm(const VelocityField& v, double s) {
    return std::sqrt(spectral_sum2(v, [s](double l, double) { return std::pow(1.0 + l, s); }));
}

double grad_norm(const VelocityField& v) {
    return std::sqrt(spectral_sum2(v, [](double l, double) { return l; }));
}

double a_norm(const VelocityField& v) {
    return std::sqrt(spectral_sum2(v, [](double l, double) { return l * l; }));
}

double inner(const VelocityField& a, const VelocityField& b) {
    const Domain& d = *a.dom;
    check_conforms(d, b);
    size_t plane = d.plane();
    double acc = 0.0;
    for (int m = 0; m < d.spec.nz; ++m) {
        double beta = d.basis.norm2(m);
        for (int j = 0; j < d.spec.ny; ++j)
            for (int i = 0; i < d.nxh; ++i) {
                if (!d.retained(i, j)) continue;
                double mult = i > 0 ? 2.0 : 1.0;
                size_t idx = (static_cast<size_t>(m) * d.spec.ny + j) * d.nxh + i;
                acc += mult * beta *
                       (std::real(a.c1[idx] * std::conj(b.c1[idx])) +
                        std::real(a.c2[idx] * std::conj(b.c2[idx])));
            }
    }
    return acc;
}

double l2_norm_surface(const SurfaceField& s) {
    const Domain& d = *s.dom;
    double acc = 0.0;
    for (int j = 0; j < d.spec.ny; ++j)
        for (int i = 0; i < d.nxh; ++i) {
            if (!d.retained(i, j)) continue;
            acc += (i > 0 ? 2.0 : 1.0) * std::norm(s.c[static_cast<size_t>(j) * d.nxh + i]);
        }
    return std::sqrt(acc);
}

double grad_norm_surface(const SurfaceField& s) {
    const Domain& d = *s.dom;
    double acc = 0.0;
    for (int j = 0; j < d.spec.ny; ++j)
        for (int i = 0; i < d.nxh; ++i) {
            if (!d.retained(i, j)) continue;
            double kx = d.kx_of(i), ky = d.ky_of(j);
            acc += (i > 0 ? 2.0 : 1.0) * 4.0 * pi * pi * (kx * kx + ky * ky) *
                   std::norm(s.c[static_cast<size_t>(j) * d.nxh + i]);
        }
    return std::sqrt(acc);
}

double lp_norm_scalar(const Domain& d, const std::vector<double>& g, double p) {
    double acc = 0.0;
    double wxy = 1.0 / (double(d.spec.nx) * d.spec.ny);
    for (int z = 0; z < d.spec.nz; ++z) {
        double w = d.wz[z] * wxy;
        const double* gz = g.data() + static_cast<size_t>(z) * d.spec.nx * d.spec.ny;
        for (int p2 = 0; p2 < d.spec.nx * d.spec.ny; ++p2)
            acc += w * std::pow(std::abs(gz[p2]), p);
    }
    return std::pow(acc, 1.0 / p);
}

double lp_norm(const VelocityField& v, double p) {
    const Domain& d = *v.dom;
    std::vector<double> g1, g2;
    v.grid(g1, g2);
    double acc = 0.0;
    double wxy = 1.0 / (double(d.spec.nx) * d.spec.ny);
    for (int z = 0; z < d.spec.nz; ++z) {
        double w = d.wz[z] * wxy;
        size_t off = static_cast<size_t>(z) * d.spec.nx * d.spec.ny;
        for (int p2 = 0; p2 < d.spec.nx * d.spec.ny; ++p2) {
            double mag2 = g1[off + p2] * g1[off + p2] + g2[off + p2] * g2[off + p2];
            acc += w * std::pow(mag2, p / 2.0);
        }
    }
    return std::pow(acc, 1.0 / p);
}

double dyadic_cutoff(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    auto eta = [](double x) { return std::exp(-1.0 / x); };
    return eta(2.0 - r) / (eta(2.0 - r) + eta(r - 1.0));
}

double besov_norm(const VelocityField& v, double s, double p, double q) {
    const Domain& d = *v.dom;
    double ximax = 0.0;
    for (int m = 0; m < d.spec.nz; ++m)
        ximax = std::max(ximax, std::sqrt(d.lambda(d.spec.nx / 2 - 1, d.spec.ny / 2, m)));
    int J = 1;
    while (std::pow(2.0, J + 1) < ximax) ++J;
    if (J + 1 < 3) throw HydroError("besov_norm: fewer than 3 dyadic blocks at this resolution");

    double acc = 0.0;
    VelocityField block(d);
    for (int j = 0; j <= J; ++j) {
        double lo = std::pow(2.0, j), hi = 2.0 * lo;
        block = v;
        size_t plane = d.plane();
        for (int m = 0; m < d.spec.nz; ++m)
            for (int jy = 0; jy < d.spec.ny; ++jy)
                for (int ix = 0; ix < d.nxh; ++ix) {
                    double xi = std::sqrt(d.lambda(ix, jy, m));
                    double th = dyadic_cutoff(xi / hi) - (j > 0 ? dyadic_cutoff(xi / lo) : 0.0);
                    size_t idx = (static_cast<size_t>(m) * d.spec.ny + jy) * d.nxh + ix;
                    block.c1[idx] *= th;
                    block.c2[idx] *= th;
                }
        double bn = lp_norm(block, p);
        acc += std::pow(std::pow(2.0, j * s) * bn, q);
    }
    return std::pow(acc, 1.0 / q);
}

NormSpec parse_norm_spec(const std::string& text) {
    NormSpec spec;
    if (text == "l2") return spec;
    if (text == "h1") {
        spec.s = 1.0;
        return spec;
    }
    auto colon = text.find(':');
    std::string fam = text.substr(0, colon);
    if (fam == "lp") spec.family = NormFamily::Lp;
    else if (fam == "sobolev") spec.family = NormFamily::Sobolev;
    else if (fam == "besov") spec.family = NormFamily::Besov;
    else if (fam == "timeweighted") spec.family = NormFamily::TimeWeighted;
    else throw HydroError("unknown norm family: " + fam);
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw HydroError("bad norm parameter: " + kv);
            std::string key = kv.substr(0, eq);
            double val = std::stod(kv.substr(eq + 1));
            if (key == "p") spec.p = val;
            else if (key == "q") spec.q = val;
            else if (key == "s") spec.s = val;
            else if (key == "mu") spec.mu = val;
            else throw HydroError("unknown norm parameter: " + key);
        }
    }
    return spec;
}

double norm(const VelocityField& v, const NormSpec& spec) {
    switch (spec.family) {
        case NormFamily::Lp:
            if (!(spec.p > 1.0)) throw HydroError("Lp norm needs p > 1");
            return lp_norm(v, spec.p);
        case NormFamily::Sobolev:
            if (spec.p != 2.0)
                throw HydroError("unsupported: Sobolev norms are exact for p = 2 only");
            return sobolev_norm(v, spec.s);
        case NormFamily::Besov:
            if (!(spec.p > 1.0) || !(spec.q > 1.0))
                throw HydroError("Besov norm needs p, q > 1");
            return besov_norm(v, spec.s, spec.p, spec.q);
        case NormFamily::TimeWeighted:
            throw HydroError("time-weighted norms apply to trajectories, not fields");
    }
    throw HydroError("bad norm family");
}

VelocityField generate_rough_data(const Domain& d, double p, double q, double theta,
                                  uint64_t seed) {
    if (!(theta > 0.0 && theta <= 1.0)) throw HydroError("rough data: theta must be in (0,1]");
    for (double thr : {1.0 / (2.0 * p), 0.5 + 1.0 / (2.0 * p)})
        if (std::abs(theta - thr) < 1e-9)
            std::cerr << "warning: theta = " << theta
                      << " sits on a boundary-trace threshold; the trace space changes here\n";
    // decay exponent: critical theta + 3/4, plus epsilon/2 = 0.025 margin
    VelocityField v = random_solenoidal(d, theta + 0.75 + 0.025, seed);
    double b = besov_norm(v, 2.0 * theta, p, q);
    if (b <= 0.0) throw HydroError("rough data: degenerate sample");
    double scale = 1.0 / b;
    for (size_t i = 0; i < v.c1.size(); ++i) {
        v.c1[i] *= scale;
        v.c2[i] *= scale;
    }
    return v;
}

namespace {

/// Grids of a component list synthesized from spectral coefficients.
std::vector<double> grid_of(const Domain& d, const std::vector<cplx>& c) {
    std::vector<double> g;
    from_spectral(d, c, g);
    return g;
}

/// Adds the z-constant lift of the surface gradient of pr to R (the same
/// lift convention the projection removes).
void add_pressure_gradient(VelocityField& R, const SurfaceField& pr) {
    const Domain& d = *R.dom;
    size_t plane = d.plane();
    for (int j = 0; j < d.spec.ny; ++j)
        for (int i = 0; i < d.nxh; ++i) {
            if (!d.retained(i, j)) continue;
            size_t idx = static_cast<size_t>(j) * d.nxh + i;
            cplx g1 = pr.c[idx] * cplx(0.0, 2.0 * pi * d.kx_of(i));
            cplx g2 = pr.c[idx] * cplx(0.0, 2.0 * pi * d.ky_of(j));
            if (g1 == cplx{} && g2 == cplx{}) continue;
            for (int m = 0; m < d.spec.nz; ++m) {
                double w = d.elift[m] / d.smean;
                if (w == 0.0) continue;
                R.c1[m * plane + idx] += w * g1;
                R.c2[m * plane + idx] += w * g2;
            }
        }
}

} // namespace

AprioriLedger apriori_ledger(const TrajectoryRecord& rec) {
    const Domain& d = *rec.domain;
    AprioriLedger led;
    led.names = {"tilde_l4",   "int_tilde_grad2", "gradH_vbar_l2", "int_gradH_p2",
                 "vz_l2",      "int_grad_vz2",    "grad_l2",       "int_lap2",
                 "vt_l2",      "vz_l3",           "grad2_l2"};
    led.vt_available = true;  // v_t comes from the equation residual, always computable
    double acc_tilde = 0.0, acc_p = 0.0, acc_vz = 0.0, acc_lap = 0.0;
    double prev_t = 0.0, prev_tilde = 0.0, prev_p = 0.0, prev_vz = 0.0, prev_lap = 0.0;
    bool first = true;

    for (const auto& snap : rec.snaps) {
        const VelocityField& v = snap.v;
        VelocityField vt = fluctuation(v);

        double tilde_l4 = lp_norm(vt, 4.0);

        // pointwise |vtilde|^2 |grad vtilde|^2, quadrature in all variables
        std::vector<double> g1, g2, dz1, dz2;
        vt.grid(g1, g2);
        d_z_grid(vt, dz1, dz2);
        std::vector<cplx> cx;
        double tilde_grad2 = 0.0;
        {
            std::vector<std::vector<double>> derivs;
            for (int comp = 0; comp < 2; ++comp)
                for (int axis = 0; axis < 2; ++axis) {
                    cx = vt.comp(comp);
                    apply_ik(d, cx, axis);
                    derivs.push_back(grid_of(d, cx));
                }
            double wxy = 1.0 / (double(d.spec.nx) * d.spec.ny);
            for (int z = 0; z < d.spec.nz; ++z) {
                double w = d.wz[z] * wxy;
                size_t off = static_cast<size_t>(z) * d.spec.nx * d.spec.ny;
                for (int p2 = 0; p2 < d.spec.nx * d.spec.ny; ++p2) {
                    size_t ix = off + p2;
                    double m2 = g1[ix] * g1[ix] + g2[ix] * g2[ix];
                    double gg = dz1[ix] * dz1[ix] + dz2[ix] * dz2[ix];
                    for (const auto& dg : derivs) gg += dg[ix] * dg[ix];
                    tilde_grad2 += w * m2 * gg;
                }
            }
        }

        auto vbar = vertical_average(v);
        double gradH_vbar =
            std::sqrt(grad_norm_surface(vbar[0]) * grad_norm_surface(vbar[0]) +
                      grad_norm_surface(vbar[1]) * grad_norm_surface(vbar[1]));
        double gradp = grad_norm_surface(snap.pressure);
        double gradp2 = gradp * gradp;

        double vz_l2 = std::sqrt(spectral_sum2(
            v, [&d](double, double nu) { return nu * nu; }));
        double grad_vz2 = spectral_sum2(
            v, [](double l, double nu) { return nu * nu * l; });
        double grad = grad_norm(v);
        double lap = a_norm(v);
        double lap2 = lap * lap;

        VelocityField pf = forcing_field(d, rec.cfg, snap.t, false);
        VelocityField vtime = equation_time_derivative(rec.op, v, &pf);
        double vt_l2 = l2_norm(vtime);

        std::vector<double> vzg1, vzg2;
        d_z_grid(v, vzg1, vzg2);
        double vz_l3;
        {
            double acc = 0.0, wxy = 1.0 / (double(d.spec.nx) * d.spec.ny);
            for (int z = 0; z < d.spec.nz; ++z) {
                double w = d.wz[z] * wxy;
                size_t off = static_cast<size_t>(z) * d.spec.nx * d.spec.ny;
                for (int p2 = 0; p2 < d.spec.nx * d.spec.ny; ++p2) {
                    double m2 = vzg1[off + p2] * vzg1[off + p2] + vzg2[off + p2] * vzg2[off + p2];
                    acc += w * std::pow(m2, 1.5);
                }
            }
            vz_l3 = std::pow(acc, 1.0 / 3.0);
        }

        if (!first) {
            double hdt = 0.5 * (snap.t - prev_t);
            acc_tilde += hdt * (prev_tilde + tilde_grad2);
            acc_p += hdt * (prev_p + gradp2);
            acc_vz += hdt * (prev_vz + grad_vz2);
            acc_lap += hdt * (prev_lap + lap2);
        }
        first = false;
        prev_t = snap.t;
        prev_tilde = tilde_grad2;
        prev_p = gradp2;
        prev_vz = grad_vz2;
        prev_lap = lap2;

        led.times.push_back(snap.t);
        led.rows.push_back({tilde_l4, acc_tilde, gradH_vbar, acc_p, vz_l2, acc_vz, grad,
                            acc_lap, vt_l2, vz_l3, lap});
    }

    led.running_max.assign(led.names.size(), 0.0);
    for (const auto& row : led.rows)
        for (size_t c = 0; c < row.size(); ++c) {
            if (!std::isfinite(row[c])) led.finite = false;
            led.running_max[c] = std::max(led.running_max[c], std::abs(row[c]));
        }
    led.bound = *std::max_element(led.running_max.begin(), led.running_max.end());
    return led;
}

void write_ledger_csv(const AprioriLedger& led, const std::string& path) {
    write_series_csv(path, led.names, led.times, led.rows);
}

void write_ledger_summary_json(const AprioriLedger& led, const std::string& path) {
    nlohmann::json j;
    for (size_t c = 0; c < led.names.size(); ++c) j["running_max"][led.names[c]] = led.running_max[c];
    j["bound"] = led.bound;
    j["finite"] = led.finite;
    std::ofstream out(path);
    if (!out) throw HydroError("cannot open " + path);
    out << j.dump(2) << '\n';
}

SplitResidualStats split_residual(const TrajectoryRecord& rec) {
    const Domain& d = *rec.domain;
    SplitResidualStats st;
    for (size_t i = 1; i + 1 < rec.snaps.size(); ++i) {
        const Snapshot& a = rec.snaps[i - 1];
        const Snapshot& b = rec.snaps[i];
        const Snapshot& c = rec.snaps[i + 1];
        double dl = b.t - a.t, dr = c.t - b.t;
        if (std::abs(dl - dr) > 1e-9 * std::max(dl, dr)) continue;  // nonuniform gap

        VelocityField R(d);
        double inv = 1.0 / (dl + dr);
        for (size_t p2 = 0; p2 < R.c1.size(); ++p2) {
            R.c1[p2] = (c.v.c1[p2] - a.v.c1[p2]) * inv;
            R.c2[p2] = (c.v.c2[p2] - a.v.c2[p2]) * inv;
        }
        VelocityField nl = advect_raw(b.v, b.v);
        VelocityField lap = laplacian(b.v);
        VelocityField f = forcing_field(d, rec.cfg, b.t, false);
        for (size_t p2 = 0; p2 < R.c1.size(); ++p2) {
            R.c1[p2] += nl.c1[p2] - lap.c1[p2] - f.c1[p2];
            R.c2[p2] += nl.c2[p2] - lap.c2[p2] - f.c2[p2];
        }
        add_pressure_gradient(R, b.pressure);

        auto rbar = vertical_average(R);
        double mean_res = std::sqrt(l2_norm_surface(rbar[0]) * l2_norm_surface(rbar[0]) +
                                    l2_norm_surface(rbar[1]) * l2_norm_surface(rbar[1]));
        double fluct_res = l2_norm(fluctuation(R));
        st.times.push_back(b.t);
        st.mean_residual.push_back(mean_res);
        st.fluct_residual.push_back(fluct_res);
        st.max_mean = std::max(st.max_mean, mean_res);
        st.max_fluct = std::max(st.max_fluct, fluct_res);
    }
    if (st.times.empty()) throw HydroError("split_residual: need >= 3 uniformly spaced snapshots");
    return st;
}

SmoothingStats smoothing_tracker(const TrajectoryRecord& rec, double mu, double /*p*/,
                                 double /*q*/) {
    const Domain& d = *rec.domain;
    SmoothingStats st;
    bool first = true;
    for (const auto& snap : rec.snaps) {
        double av = a_norm(snap.v);
        if (first) {
            st.av_initial = av;
            first = false;
        }
        if (snap.t <= 0.0) continue;
        VelocityField pf = forcing_field(d, rec.cfg, snap.t, false);
        VelocityField vt = equation_time_derivative(rec.op, snap.v, &pf);
        double w = std::pow(snap.t, 1.0 - mu) * av;
        double tvt = snap.t * l2_norm(vt);
        st.times.push_back(snap.t);
        st.av.push_back(av);
        st.weighted.push_back(w);
        st.t_vt.push_back(tvt);
        st.sup_weighted = std::max(st.sup_weighted, w);
        st.sup_t_vt = std::max(st.sup_t_vt, tvt);
    }
    return st;
}

double weighted_time_integral(const TrajectoryRecord& rec, double mu, double q) {
    double acc = 0.0, prev_t = 0.0, prev_val = 0.0;
    bool first = true;
    for (const auto& snap : rec.snaps) {
        double val = snap.t > 0.0
                         ? std::pow(snap.t, (1.0 - mu) * q) * std::pow(a_norm(snap.v), q)
                         : 0.0;
        if (!first) acc += 0.5 * (snap.t - prev_t) * (prev_val + val);
        first = false;
        prev_t = snap.t;
        prev_val = val;
    }
    return acc;
}

RadiusSample fit_radius(const VelocityField& v, double t) {
    const Domain& d = *v.dom;
    RadiusSample out;
    out.t = t;
    double cmax = 0.0;
    size_t plane = d.plane();
    for (size_t i = 0; i < v.c1.size(); ++i)
        cmax = std::max(cmax, std::sqrt(std::norm(v.c1[i]) + std::norm(v.c2[i])));
    if (cmax <= 0.0) return out;
    double floor = 1e-13 * cmax;

    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int m = 0; m < d.spec.nz; ++m)
        for (int j = 0; j < d.spec.ny; ++j)
            for (int i = 0; i < d.nxh; ++i) {
                if (!d.retained(i, j)) continue;
                size_t idx = (static_cast<size_t>(m) * d.spec.ny + j) * d.nxh + i;
                double mag = std::sqrt(std::norm(v.c1[idx]) + std::norm(v.c2[idx]));
                if (mag <= floor) continue;
                double kx = d.kx_of(i), ky = d.ky_of(j);
                double x = 2.0 * pi * std::sqrt(kx * kx + ky * ky) + d.basis.nu(m);
                double y = std::log(mag);
                double w = i > 0 ? 2.0 : 1.0;
                sw += w;
                sx += w * x;
                sy += w * y;
                sxx += w * x * x;
                sxy += w * x * y;
                ++n;
            }
    double var = sxx - sx * sx / sw;
    if (n < 8 || var <= 1e-12) return out;  // underdetermined
    out.sigma = -(sxy - sx * sy / sw) / var;
    out.ok = true;
    return out;
}

std::vector<RadiusSample> analyticity_radius(const TrajectoryRecord& rec) {
    std::vector<RadiusSample> out;
    for (const auto& snap : rec.snaps) out.push_back(fit_radius(snap.v, snap.t));
    return out;
}

void write_series_csv(const std::string& path, const std::vector<std::string>& names,
                      const std::vector<double>& times,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw HydroError("cannot open " + path);
    out << "time";
    for (const auto& n : names) out << ',' << n;
    out << '\n';
    out.precision(17);
    for (size_t r = 0; r < rows.size(); ++r) {
        out << times[r];
        for (double vv : rows[r]) out << ',' << vv;
        out << '\n';
    }
}

} // namespace hydro
