#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fcl/config.hpp"
#include "fcl/error.hpp"
#include "fcl/identities.hpp"
#include "fcl/io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInvariant = 4;

fs::path output_for(const fcl::RunConfig& cfg, const std::string& override_dir) {
    return fcl::resolve_output_dir(override_dir.empty() ? fs::path(cfg.run.output_dir) : fs::path(override_dir));
}

int cmd_run(const std::string& config, const std::string& out) {
    fcl::RunConfig cfg = fcl::parse_config(config);
    fs::path dir = output_for(cfg, out);
    fcl::RunOutput r = fcl::run_to_directory(cfg, fs::path(config).parent_path(), dir);
    const auto& l = r.trajectory.ledger;
    std::cout << "run: " << r.trajectory.snapshots.size() << " snapshots, " << l.steps
              << " steps, dt " << r.trajectory.dt << " (cfl " << r.trajectory.cfl_dt << ") -> "
              << dir.string() << "\n";
    if (!r.ok) {
        std::cerr << "invariant failure: max_principle=" << l.max_principle
                  << " conservation=" << l.conservation << " l1=" << l.l1_stability
                  << " support_escape=" << l.support_escape << "\n";
        return kExitInvariant;
    }
    return 0;
}

int cmd_diagnose(const std::string& run_dir) {
    fcl::DiagnoseOutput d = fcl::diagnose_directory(run_dir);
    std::cout << "diagnose: " << d.manifest["checks"].dump() << "\n";
    return d.ok ? 0 : kExitInvariant;
}

int cmd_pair(const std::string& config, const std::string& out) {
    fcl::RunConfig cfg = fcl::parse_config(config);
    fs::path dir = output_for(cfg, out);
    fcl::PairOutput p = fcl::pair_to_directory(cfg, fs::path(config).parent_path(), dir);
    std::cout << "pair (" << p.report.mode << "): distance " << p.report.initial_distance << " -> "
              << p.report.l1_distance.back() << ", max increase " << p.report.max_increase
              << (p.report.pass() ? ", pass" : ", FAIL") << "\n";
    return p.report.pass() ? 0 : kExitInvariant;
}

int cmd_identities(double scale, std::uint64_t seed) {
    fcl::IdentityOptions o;
    auto scaled = [&](std::size_t n) {
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(scale * static_cast<double>(n))));
    };
    o.chi_samples = scaled(o.chi_samples);
    o.representation_samples = scaled(o.representation_samples);
    o.taylor_samples = scaled(o.taylor_samples);
    o.fg_samples = scaled(o.fg_samples);
    o.fg_quadrature_samples = scaled(o.fg_quadrature_samples);
    o.truncation_samples = scaled(o.truncation_samples);
    o.seed = seed;
    bool ok = true;
    for (const fcl::SweepResult& r : fcl::verify_identities(o)) {
        std::printf("%-4s %-16s samples=%zu violations=%zu worst=%.3e tol=%.1e time=%.2fs %s\n",
                    r.pass() ? "PASS" : "FAIL", r.name.c_str(), r.samples, r.violations, r.worst,
                    r.tolerance, r.seconds, r.detail.c_str());
        ok = ok && r.pass();
    }
    return ok ? 0 : kExitInvariant;
}

int cmd_convergence(const std::string& config, std::size_t levels, const std::string& out) {
    fcl::RunConfig cfg = fcl::parse_config(config);
    fs::path dir = output_for(cfg, out);
    fcl::ConvergenceReport r = fcl::convergence_to_directory(cfg, fs::path(config).parent_path(), levels, dir);
    std::cout << "convergence:";
    for (std::size_t k = 0; k < r.orders.size(); ++k) std::cout << " " << r.orders[k];
    std::cout << " (fitted " << r.fitted_order << ") -> " << (dir / "convergence.json").string() << "\n";
    return r.ledgers_ok ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fcl: nonlocal conservation law solver and verification tools"};
    app.require_subcommand(1);

    std::string config, out, run_dir;
    std::size_t levels = 4;
    double scale = 1.0;
    std::uint64_t seed = fcl::IdentityOptions{}.seed;

    auto* run = app.add_subcommand("run", "advance a config and write snapshots and manifest.json");
    run->add_option("config", config, "config file")->required()->check(CLI::ExistingFile);
    run->add_option("-o,--output", out, "output directory (default run.output_dir)");

    auto* diag = app.add_subcommand("diagnose", "dissipation fields, bounds and entropy residuals of a run");
    diag->add_option("run_dir", run_dir, "directory written by run")->required()->check(CLI::ExistingDirectory);

    auto* pair = app.add_subcommand("pair", "paired runs from the [pair] block");
    pair->add_option("config", config, "config file")->required()->check(CLI::ExistingFile);
    pair->add_option("-o,--output", out, "output directory (default run.output_dir)");

    auto* ids = app.add_subcommand("verify-identities", "randomized kinetic identity sweeps");
    ids->add_option("--scale", scale, "sample count multiplier")->check(CLI::PositiveNumber);
    ids->add_option("--seed", seed, "random seed");

    auto* conv = app.add_subcommand("convergence", "self-convergence ladder from grid.cells upward");
    conv->add_option("config", config, "config file")->required()->check(CLI::ExistingFile);
    conv->add_option("--levels", levels, "number of grid levels")->check(CLI::Range(3, 10));
    conv->add_option("-o,--output", out, "output directory (default run.output_dir)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) return cmd_run(config, out);
        if (*diag) return cmd_diagnose(run_dir);
        if (*pair) return cmd_pair(config, out);
        if (*ids) return cmd_identities(scale, seed);
        if (*conv) return cmd_convergence(config, levels, out);
    } catch (const fcl::CflViolation& e) {
        std::cerr << "config error: " << e.what() << "\nadmissible dt: " << e.admissible_dt() << "\n";
        return kExitConfig;
    } catch (const fcl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const fcl::DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const fcl::NumericError& e) {
        std::cerr << "numeric error at step " << e.step() << ": " << e.what() << "\n";
        return kExitNumeric;
    } catch (const fcl::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    }
    return 0;
}
