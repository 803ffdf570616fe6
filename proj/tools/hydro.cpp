#include "hydro/analysis.hpp"
#include "hydro/hydrostatic.hpp"
#include "hydro/io.hpp"
#include "hydro/stepper.hpp"
#include "hydro/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace hydro;

namespace {

void ensure_dir(const std::string& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw HydroError("cannot create output directory " + dir + ": " + ec.message());
}

VelocityField load_snapshot_field(const std::string& path, std::shared_ptr<Domain>& dom,
                                  SnapshotHeader& hdr) {
    std::vector<double> g1, g2;
    hdr = read_snapshot(path, g1, g2);
    dom = std::make_shared<Domain>(make_domain(hdr.domain));
    VelocityField v(*dom);
    v.set_grid(g1, g2);
    return v;
}

int cmd_run(const std::string& config, const std::string& out) {
    RunConfig cfg = parse_run_config(config);
    if (!out.empty()) cfg.out_dir = out;
    validate(cfg);
    ensure_dir(cfg.out_dir);
    TrajectoryRecord rec = run(cfg);
    std::printf("t_final=%.17g snapshots=%zu energy_initial=%.17g energy_final=%.17g\n",
                rec.t_final, rec.snaps.size(), rec.initial_energy, rec.final_energy);
    if (rec.blowup) {
        std::printf("blowup at t=%.17g\n", rec.blowup_time);
        return 3;
    }
    return 0;
}

int cmd_spectrum(const std::string& bc, double h, int count, int res, const std::string& out) {
    DomainSpec spec;
    spec.h = h;
    spec.nx = spec.ny = spec.nz = res;
    spec.bc = parse_gamma_d(bc);
    Domain d = make_domain(spec);
    SpectrumReport rep = spectrum(d, count);
    ensure_dir(out);
    std::string path = (out.empty() ? std::string(".") : out) + "/spectrum.csv";
    write_spectrum_csv(rep, path);
    std::printf("wrote %s (smallest eigenvalue %.17g)\n", path.c_str(), rep.smallest);
    return 0;
}

int cmd_project(const std::string& in, const std::string& out) {
    std::shared_ptr<Domain> dom;
    SnapshotHeader hdr;
    VelocityField v = load_snapshot_field(in, dom, hdr);
    double before = mean_divergence_residual(v);
    project(v);
    std::vector<double> g1, g2;
    v.grid(g1, g2);
    write_snapshot(out, hdr, g1, g2);
    std::printf("projected %s -> %s (mean divergence %.3e -> %.3e)\n", in.c_str(), out.c_str(),
                before, mean_divergence_residual(v));
    return 0;
}

int cmd_norms(const std::string& in, const std::vector<std::string>& specs) {
    std::shared_ptr<Domain> dom;
    SnapshotHeader hdr;
    VelocityField v = load_snapshot_field(in, dom, hdr);
    for (const auto& s : specs)
        std::printf("%s,%.17g\n", s.c_str(), norm(v, parse_norm_spec(s)));
    return 0;
}

int cmd_verify(const std::string& suite, int res, uint64_t seed) {
    SuiteResult r = run_suite(suite, res, seed);
    for (const auto& c : r.checks)
        std::printf("%s: %s%s%s\n", c.pass ? "ok" : "FAIL", r.suite.c_str(), c.name.empty() ? "" : " ",
                    (c.name + (c.detail.empty() ? "" : " [" + c.detail + "]")).c_str());
    std::printf("suite %s: %s\n", r.suite.c_str(), r.pass() ? "PASS" : "FAIL");
    return r.pass() ? 0 : 1;
}

int cmd_roughdata(double p, double q, double theta, uint64_t seed, const std::string& out,
                  const std::string& bc, double h, int res, int nz) {
    DomainSpec spec;
    spec.h = h;
    spec.nx = spec.ny = res;
    spec.nz = nz > 0 ? nz : res;
    spec.bc = parse_gamma_d(bc);
    Domain d = make_domain(spec);
    VelocityField v = generate_rough_data(d, p, q, theta, seed);
    std::vector<double> g1, g2;
    v.grid(g1, g2);
    SnapshotHeader hdr;
    hdr.domain = spec;
    write_snapshot(out, hdr, g1, g2);
    std::printf("wrote %s (besov estimator %.17g)\n", out.c_str(),
                besov_norm(v, 2.0 * theta, p, q));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral primitive-equations toolbox"};
    app.require_subcommand(1);
    // keep -h free: the depth option is spelled --h
    app.set_help_flag("--help", "print help");

    std::string run_config, run_out;
    auto* c_run = app.add_subcommand("run", "integrate a configured trajectory");
    c_run->add_option("config", run_config, "TOML or JSON run configuration")->required();
    c_run->add_option("--out", run_out, "output directory (overrides the config)");

    std::string sp_bc = "neumann", sp_out;
    double sp_h = 1.0;
    int sp_count = 50, sp_res = 16;
    auto* c_sp = app.add_subcommand("spectrum", "leading Stokes eigenvalues as CSV");
    c_sp->set_help_flag("--help", "print help");
    c_sp->add_option("--bc", sp_bc, "boundary condition (neumann|upper|bottom|dirichlet)");
    c_sp->add_option("--h", sp_h, "domain depth")->check(CLI::PositiveNumber);
    c_sp->add_option("--count", sp_count, "number of eigenvalues")->check(CLI::PositiveNumber);
    c_sp->add_option("--res", sp_res, "grid resolution");
    c_sp->add_option("--out", sp_out, "output directory");

    std::string pr_in, pr_out;
    auto* c_pr = app.add_subcommand("project", "apply the hydrostatic projection to a snapshot");
    c_pr->add_option("input", pr_in, "input snapshot")->required();
    c_pr->add_option("output", pr_out, "output snapshot")->required();

    std::string no_in;
    std::vector<std::string> no_specs;
    auto* c_no = app.add_subcommand("norms", "evaluate norms of a snapshot");
    c_no->add_option("input", no_in, "input snapshot")->required();
    c_no->add_option("spec", no_specs, "norm specs, e.g. l2 h1 besov:s=0.5,p=4,q=4")->required();

    std::string ve_suite;
    int ve_res = 16;
    uint64_t ve_seed = 1;
    auto* c_ve = app.add_subcommand("verify", "run a named verification suite");
    c_ve->add_option("suite", ve_suite, "suite name")->required();
    c_ve->add_option("--res", ve_res, "working resolution");
    c_ve->add_option("--seed", ve_seed, "random seed");

    double rd_p = 4.0, rd_q = 4.0, rd_theta = 0.25, rd_h = 1.0;
    uint64_t rd_seed = 1;
    int rd_res = 16, rd_nz = 0;
    std::string rd_out = "rough.bin", rd_bc = "neumann";
    auto* c_rd = app.add_subcommand("roughdata", "generate normalized rough initial data");
    c_rd->set_help_flag("--help", "print help");
    c_rd->add_option("--p", rd_p, "Besov integrability p");
    c_rd->add_option("--q", rd_q, "Besov summability q");
    c_rd->add_option("--theta", rd_theta, "half the Besov smoothness (B^{2 theta})");
    c_rd->add_option("--seed", rd_seed, "random seed");
    c_rd->add_option("--out", rd_out, "output snapshot path");
    c_rd->add_option("--bc", rd_bc, "boundary condition");
    c_rd->add_option("--h", rd_h, "domain depth")->check(CLI::PositiveNumber);
    c_rd->add_option("--res", rd_res, "horizontal resolution");
    c_rd->add_option("--nz", rd_nz, "vertical resolution (default: --res)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (c_run->parsed()) return cmd_run(run_config, run_out);
        if (c_sp->parsed()) return cmd_spectrum(sp_bc, sp_h, sp_count, sp_res, sp_out);
        if (c_pr->parsed()) return cmd_project(pr_in, pr_out);
        if (c_no->parsed()) return cmd_norms(no_in, no_specs);
        if (c_ve->parsed()) return cmd_verify(ve_suite, ve_res, ve_seed);
        if (c_rd->parsed())
            return cmd_roughdata(rd_p, rd_q, rd_theta, rd_seed, rd_out, rd_bc, rd_h, rd_res, rd_nz);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: unknown command\n";
    return 2;
}
