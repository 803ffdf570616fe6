#include "hydro/stepper.hpp"

#include "hydro/analysis.hpp"
#include "hydro/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <iostream>
#include <set>
#include <sstream>

namespace hydro {

namespace {

void add_scaled(VelocityField& y, const VelocityField& x, double a) {
    for (size_t i = 0; i < y.c1.size(); ++i) {
        y.c1[i] += a * x.c1[i];
        y.c2[i] += a * x.c2[i];
    }
}

void scale_field(VelocityField& v, double a) {
    for (size_t i = 0; i < v.c1.size(); ++i) {
        v.c1[i] *= a;
        v.c2[i] *= a;
    }
}

// --- config parsing ---------------------------------------------------------

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct FlatValue {
    std::string raw;  // unquoted scalar or quoted string content
    std::vector<std::string> list;
    bool is_list = false;
};

/// Minimal flat TOML: `key = value` lines, # comments, quoted strings,
/// numbers, booleans, and one-level arrays of strings.
std::map<std::string, FlatValue> parse_flat_toml(const std::string& text) {
    std::map<std::string, FlatValue> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            // keep # inside quotes
            bool quoted = false;
            size_t cut = std::string::npos;
            for (size_t i = 0; i < line.size(); ++i) {
                if (line[i] == '"') quoted = !quoted;
                else if (line[i] == '#' && !quoted) {
                    cut = i;
                    break;
                }
            }
            if (cut != std::string::npos) line = line.substr(0, cut);
        }
        std::string t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw HydroError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        FlatValue fv;
        if (!val.empty() && val.front() == '[') {
            if (val.back() != ']')
                throw HydroError("config line " + std::to_string(lineno) + ": unterminated array");
            fv.is_list = true;
            std::string body = val.substr(1, val.size() - 2);
            // split on commas outside quotes (norm specs contain commas)
            std::vector<std::string> parts;
            std::string cur;
            bool q = false;
            for (char ch : body) {
                if (ch == '"') q = !q;
                if (ch == ',' && !q) {
                    parts.push_back(cur);
                    cur.clear();
                } else {
                    cur += ch;
                }
            }
            parts.push_back(cur);
            for (std::string item : parts) {
                item = trim(item);
                if (item.empty()) continue;
                if (item.front() == '"' && item.back() == '"' && item.size() >= 2)
                    item = item.substr(1, item.size() - 2);
                fv.list.push_back(item);
            }
        } else if (!val.empty() && val.front() == '"') {
            if (val.size() < 2 || val.back() != '"')
                throw HydroError("config line " + std::to_string(lineno) + ": unterminated string");
            fv.raw = val.substr(1, val.size() - 2);
        } else {
            fv.raw = val;
        }
        kv[key] = std::move(fv);
    }
    return kv;
}

void apply_config_pair(RunConfig& cfg, const std::string& key, const FlatValue& v) {
    auto num = [&] { return std::stod(v.raw); };
    auto integer = [&] { return std::stoi(v.raw); };
    auto boolean = [&] {
        if (v.raw == "true") return true;
        if (v.raw == "false") return false;
        throw HydroError("config key " + key + ": expected true/false");
    };
    if (key == "h") cfg.domain.h = num();
    else if (key == "nx") cfg.domain.nx = integer();
    else if (key == "ny") cfg.domain.ny = integer();
    else if (key == "nz") cfg.domain.nz = integer();
    else if (key == "bc") cfg.domain.bc = parse_gamma_d(v.raw);
    else if (key == "initial") cfg.initial = v.raw;
    else if (key == "amplitude") cfg.amplitude = num();
    else if (key == "seed") cfg.seed = static_cast<uint64_t>(std::stoull(v.raw));
    else if (key == "rough_p") cfg.rough_p = num();
    else if (key == "rough_q") cfg.rough_q = num();
    else if (key == "rough_theta") cfg.rough_theta = num();
    else if (key == "forcing") cfg.forcing = v.raw;
    else if (key == "forcing_amplitude") cfg.forcing_amplitude = num();
    else if (key == "dt") cfg.dt = num();
    else if (key == "t_end") cfg.t_end = num();
    else if (key == "snapshot_stride") cfg.snapshot_stride = integer();
    else if (key == "geometric_snapshots") cfg.geometric_snapshots = boolean();
    else if (key == "snapshot_count") cfg.snapshot_count = integer();
    else if (key == "first_snapshot") cfg.first_snapshot = num();
    else if (key == "mu") cfg.mu = num();
    else if (key == "p") cfg.p = num();
    else if (key == "q") cfg.q = num();
    else if (key == "norms") cfg.norms = v.list;
    else if (key == "out_dir") cfg.out_dir = v.raw;
    else throw HydroError("unknown config key: " + key);
}

RunConfig from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RunConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        FlatValue fv;
        if (it->is_array()) {
            fv.is_list = true;
            for (const auto& e : *it) fv.list.push_back(e.get<std::string>());
        } else if (it->is_string()) {
            fv.raw = it->get<std::string>();
        } else if (it->is_boolean()) {
            fv.raw = it->get<bool>() ? "true" : "false";
        } else {
            std::ostringstream os;
            os.precision(17);
            os << it->get<double>();
            fv.raw = os.str();
        }
        apply_config_pair(cfg, it.key(), fv);
    }
    return cfg;
}

} // namespace

RunConfig parse_run_config_text(const std::string& text) {
    std::string t = trim(text);
    if (!t.empty() && t.front() == '{') return from_json_text(text);
    RunConfig cfg;
    for (const auto& [key, val] : parse_flat_toml(text)) apply_config_pair(cfg, key, val);
    return cfg;
}

RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw HydroError("config not found: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    RunConfig cfg = parse_run_config_text(ss.str());
    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw HydroError("config: dt must be positive");
    if (!(cfg.t_end > 0.0)) throw HydroError("config: t_end must be positive");
    if (!(cfg.mu > 1.0 / cfg.q && cfg.mu <= 1.0))
        throw HydroError("config: mu must lie in (1/q, 1]");
    if (cfg.snapshot_stride < 1) throw HydroError("config: snapshot_stride must be >= 1");
    if (1.0 / cfg.p + 1.0 / cfg.q > cfg.mu)
        std::cerr << "warning: 1/p + 1/q > mu violates the criticality window\n";
    for (const auto& n : cfg.norms)
        if (parse_norm_spec(n).family == NormFamily::TimeWeighted)
            throw HydroError("config: time-weighted norms are trajectory-level, not per-snapshot");
}

VelocityField forcing_field(const Domain& d, const RunConfig& cfg, double t, bool derivative) {
    VelocityField f(d);
    if (cfg.forcing == "none" || cfg.forcing_amplitude == 0.0) return f;
    if (cfg.forcing != "gyre") throw HydroError("unknown forcing preset: " + cfg.forcing);
    // barotropic shear f = A cos(2 pi t) (sin(2 pi y), 0), solenoidal as-is;
    // lifted to z with the constant's basis expansion
    double amp = derivative ? -2.0 * pi * cfg.forcing_amplitude * std::sin(2.0 * pi * t)
                            : cfg.forcing_amplitude * std::cos(2.0 * pi * t);
    size_t plane = d.plane();
    for (int m = 0; m < d.spec.nz; ++m) {
        double w = d.elift[m] / d.smean;
        if (w == 0.0) continue;
        // sin(2 pi y): ky = +-1 at kx = 0
        f.c1[m * plane + static_cast<size_t>(1) * d.nxh] = cplx(0.0, -0.5) * amp * w;
        f.c1[m * plane + static_cast<size_t>(d.spec.ny - 1) * d.nxh] = cplx(0.0, 0.5) * amp * w;
    }
    return f;
}

VelocityField equation_time_derivative(const StokesOperator& op, const VelocityField& v,
                                       const VelocityField* pf) {
    VelocityField vt = v;
    apply_fn(op, vt, [](double l) { return -l; });
    VelocityField F = advect(v, v);
    add_scaled(vt, F, -1.0);
    if (pf) {
        VelocityField f = *pf;
        project(f);
        add_scaled(vt, f, 1.0);
    }
    return vt;
}

namespace {

VelocityField initial_data(const Domain& d, const RunConfig& cfg) {
    if (cfg.initial == "zero") return VelocityField(d);
    if (cfg.initial == "taylor-green") {
        std::vector<double> g1(d.grid_size()), g2(d.grid_size());
        for (int z = 0; z < d.spec.nz; ++z)
            for (int j = 0; j < d.spec.ny; ++j)
                for (int i = 0; i < d.spec.nx; ++i) {
                    size_t idx = (static_cast<size_t>(z) * d.spec.ny + j) * d.spec.nx + i;
                    double x = d.xg[i], y = d.yg[j];
                    g1[idx] = cfg.amplitude * std::sin(2.0 * pi * x) * std::cos(2.0 * pi * y);
                    g2[idx] = -cfg.amplitude * std::cos(2.0 * pi * x) * std::sin(2.0 * pi * y);
                }
        VelocityField v(d);
        v.set_grid(g1, g2);
        apply_mask(d, v.c1);
        apply_mask(d, v.c2);
        project(v);
        return v;
    }
    if (cfg.initial == "random") {
        VelocityField v = random_solenoidal(d, 1.5, cfg.seed);
        double h1 = sobolev_norm(v, 1.0);
        if (h1 > 0.0) scale_field(v, cfg.amplitude / h1);
        return v;
    }
    if (cfg.initial == "rough") {
        VelocityField v = generate_rough_data(d, cfg.rough_p, cfg.rough_q, cfg.rough_theta,
                                              cfg.seed);
        scale_field(v, cfg.amplitude);
        return v;
    }
    // otherwise: a snapshot path
    std::vector<double> g1, g2;
    SnapshotHeader h = read_snapshot(cfg.initial, g1, g2);
    if (!(h.domain == cfg.domain))
        throw HydroError("initial snapshot domain does not match config");
    VelocityField v(d);
    v.set_grid(g1, g2);
    apply_mask(d, v.c1);
    apply_mask(d, v.c2);
    project(v);
    return v;
}

std::set<long> snapshot_steps(const RunConfig& cfg, long nsteps) {
    std::set<long> steps{0, nsteps};
    if (cfg.geometric_snapshots) {
        double tmin = cfg.first_snapshot > 0.0 ? cfg.first_snapshot : 5.0 * cfg.dt;
        int count = std::max(2, cfg.snapshot_count);
        double ratio = std::pow(tmin / cfg.t_end, 1.0 / (count - 1));
        for (int j = 0; j < count; ++j) {
            double tj = cfg.t_end * std::pow(ratio, count - 1 - j);
            long n = std::lround(tj / cfg.dt);
            if (n >= 1 && n <= nsteps) steps.insert(n);
        }
    } else {
        for (long n = cfg.snapshot_stride; n < nsteps; n += cfg.snapshot_stride) steps.insert(n);
    }
    return steps;
}

void take_snapshot(TrajectoryRecord& rec, const Domain& d, const VelocityField& v, double t) {
    Snapshot snap;
    snap.t = t;
    snap.v = v;
    // pressure from the non-solenoidal part of f - N(v) + Laplacian v
    VelocityField r = forcing_field(d, rec.cfg, t, false);
    VelocityField nl = advect_raw(v, v);
    add_scaled(r, nl, -1.0);
    VelocityField lap = laplacian(v);
    add_scaled(r, lap, 1.0);
    snap.pressure = recover_surface_pressure(r);
    rec.snaps.push_back(std::move(snap));

    std::vector<double> row{l2_norm(v), grad_norm(v), a_norm(v)};
    for (const auto& n : rec.cfg.norms) row.push_back(norm(v, parse_norm_spec(n)));
    rec.diag_rows.push_back(std::move(row));
}

} // namespace

TrajectoryRecord run(const RunConfig& cfg) {
    validate(cfg);
    TrajectoryRecord rec;
    rec.cfg = cfg;
    rec.domain = std::make_shared<Domain>(make_domain(cfg.domain));
    const Domain& d = *rec.domain;
    rec.op = make_stokes(d);

    rec.diag_names = {"l2", "grad_l2", "a_l2"};
    for (const auto& n : cfg.norms) rec.diag_names.push_back(n);

    long nsteps = std::lround(cfg.t_end / cfg.dt);
    if (nsteps < 1) throw HydroError("config: t_end shorter than one step");
    std::set<long> snap_at = snapshot_steps(cfg, nsteps);

    VelocityField v = initial_data(d, cfg);
    rec.initial_energy = l2_norm(v) * l2_norm(v);
    take_snapshot(rec, d, v, 0.0);

    double dt = cfg.dt;
    auto gain = [dt](double l) { return (1.0 - 0.5 * dt * l) / (1.0 + 0.5 * dt * l); };
    auto solve = [dt](double l) { return 1.0 / (1.0 + 0.5 * dt * l); };

    VelocityField Gnl_prev(d), Gf_prev(d);
    bool have_prev = false;
    double t = 0.0;

    for (long n = 0; n < nsteps; ++n) {
        VelocityField Gnl = advect(v, v);
        scale_field(Gnl, -1.0);
        VelocityField Gf = forcing_field(d, cfg, t, false);
        project(Gf);

        VelocityField gnl_ab = Gnl, gf_ab = Gf;
        if (have_prev) {
            scale_field(gnl_ab, 1.5);
            add_scaled(gnl_ab, Gnl_prev, -0.5);
            scale_field(gf_ab, 1.5);
            add_scaled(gf_ab, Gf_prev, -0.5);
        }

        VelocityField vlin = v;
        apply_fn(rec.op, vlin, gain);
        VelocityField gsum = gnl_ab;
        add_scaled(gsum, gf_ab, 1.0);
        apply_fn(rec.op, gsum, solve);
        VelocityField vnew = vlin;
        add_scaled(vnew, gsum, dt);

        VelocityField mid = v;
        add_scaled(mid, vnew, 1.0);
        scale_field(mid, 0.5);
        rec.grad_integral += dt * grad_norm(mid) * grad_norm(mid);
        double nl_step = 2.0 * dt * inner(gnl_ab, mid);
        rec.nonlinear_work += nl_step;
        rec.nonlinear_work_abs += std::abs(nl_step);
        rec.forcing_work += 2.0 * dt * inner(gf_ab, mid);

        Gnl_prev = std::move(Gnl);
        Gf_prev = std::move(Gf);
        have_prev = true;
        v = std::move(vnew);
        t = (n + 1) * dt;

        double l2 = l2_norm(v);
        if (!std::isfinite(l2) || l2 > 1e12) {
            rec.blowup = true;
            rec.blowup_time = t;
            break;
        }
        if (snap_at.count(n + 1)) take_snapshot(rec, d, v, t);
    }

    rec.t_final = t;
    rec.final_energy = l2_norm(v) * l2_norm(v);

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        DiagWriter diag(cfg.out_dir + "/diagnostics.csv", rec.diag_names);
        for (size_t s = 0; s < rec.snaps.size(); ++s)
            diag.append(rec.snaps[s].t, rec.diag_rows[s]);
        for (size_t s = 0; s < rec.snaps.size(); ++s) {
            SnapshotHeader h{cfg.domain, rec.snaps[s].t, cfg.dt};
            std::vector<double> g1, g2;
            rec.snaps[s].v.grid(g1, g2);
            std::ostringstream name;
            name << cfg.out_dir << "/snap_" << s << ".bin";
            write_snapshot(name.str(), h, g1, g2);
        }
    }
    return rec;
}

TimeDerivativeStats time_derivative_record(const TrajectoryRecord& rec) {
    const Domain& d = *rec.domain;
    TimeDerivativeStats st;
    for (const auto& snap : rec.snaps) {
        VelocityField pf = forcing_field(d, rec.cfg, snap.t, false);
        VelocityField vt = equation_time_derivative(rec.op, snap.v, &pf);
        double n = l2_norm(vt);
        double an = a_norm(vt);
        st.t.push_back(snap.t);
        st.vt_l2.push_back(n);
        st.t_vt_l2.push_back(snap.t * n);
        st.t_avt_l2.push_back(snap.t * an);
        if (!std::isfinite(n) || !std::isfinite(an)) st.bounded = false;
        if (snap.t > 0.0) st.sup_t_avt = std::max(st.sup_t_avt, snap.t * an);
    }
    return st;
}

} // namespace hydro
