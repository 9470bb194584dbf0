// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fcl/contraction.hpp"
#include "fcl/convergence.hpp"
#include "fcl/diagnostics.hpp"
#include "fcl/identities.hpp"
#include "fcl/nonlocal_operator.hpp"
#include "fcl/numerics.hpp"
#include "fcl/scheme.hpp"
#include "oracles.hpp"

using namespace fcl;

namespace {

int failures = 0;

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void report(bool ok, const std::string& name, double seconds, double limit, const std::string& detail) {
    bool in_time = limit <= 0.0 || seconds <= limit;
    ok = ok && in_time;
    if (!ok) ++failures;
    char lim[32] = "none";
    if (limit > 0.0) std::snprintf(lim, sizeof lim, "%.0fs", limit);
    std::printf("%s %-22s time=%.2fs limit=%s %s\n", ok ? "PASS" : "FAIL", name.c_str(), seconds, lim,
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char b[64];
    std::snprintf(b, sizeof b, f, a);
    return b;
}

struct MatrixModel {
    std::string name;
    ModelSpec model;
};

std::vector<MatrixModel> model_matrix(std::size_t cells) {
    std::vector<MatrixModel> out;
    const std::vector<std::pair<std::string, Flux>> fluxes{{"burgers", Flux::burgers()},
                                                           {"linear", Flux::linear(1.0)}};
    const std::vector<std::pair<std::string, Nonlinearity>> diffs{
        {"zero", Nonlinearity::zero()}, {"identity", Nonlinearity::identity()}, {"power2", Nonlinearity::power(2.0)}};
    const std::vector<std::pair<std::string, LevyMeasure>> measures{
        {"a0.5", LevyMeasure::fractional_laplacian(0.5)},
        {"a1", LevyMeasure::fractional_laplacian(1.0)},
        {"a1.5", LevyMeasure::fractional_laplacian(1.5)},
        {"bounded", LevyMeasure::uniform(1.0, 1.0)}};
    for (const auto& [fn, f] : fluxes)
        for (const auto& [an, a] : diffs)
            for (const auto& [mn, m] : measures) {
                ModelSpec s;
                s.flux = f;
                s.diffusion = a;
                s.measure = m;
                s.domain = Domain{-4.0, 8.0, cells, Boundary::Periodic};
                out.push_back({fn + "/" + an + "/" + mn, s});
            }
    return out;
}

// Sign-changing data with a jump: box on [-2, 0] of height 1 minus a bump of height 0.7 at 1.5.
std::vector<double> mixed_data(const Domain& d) {
    GridFunction box = InitialProfile::box(-1.0, 2.0, 1.0).sample(d);
    GridFunction bump = InitialProfile::bump(1.5, 2.0, 0.7).sample(d);
    std::vector<double> v(d.cells);
    for (std::size_t i = 0; i < d.cells; ++i) v[i] = box[i] - bump[i];
    return v;
}

void identity_criteria() {
    const IdentityOptions o;
    Timer t;
    SweepResult chi = chi_identity_sweep(o.chi_samples, o.seed);
    SweepResult iso = isometry_sweep(o.chi_samples, o.seed + 1);
    SweepResult rep = representation_sweep(o.representation_samples, o.seed + 2);
    report(chi.pass() && iso.pass() && rep.pass(), "chi_identities", t.seconds(), 5.0,
           "tuples=" + std::to_string(chi.samples) + " violations=" +
               std::to_string(chi.violations + iso.violations + rep.violations) +
               fmt(" isometry_worst=%.2e", iso.worst) + fmt(" tol=%.0e", iso.tolerance));

    Timer t2;
    SweepResult tay = taylor_sweep(o.taylor_samples, o.seed + 3);
    report(tay.pass() && tay.worst <= 1e-8, "taylor_identity", t2.seconds(), 60.0,
           "samples=" + std::to_string(tay.samples) + fmt(" worst=%.2e", tay.worst) + " tol=1e-08");

    Timer t3;
    SweepResult fg = f_le_g_sweep(o.fg_samples, o.seed + 4);
    SweepResult fq = f_quadrature_sweep(o.fg_quadrature_samples, o.seed + 5);
    report(fg.pass() && fq.pass() && fq.worst <= 1e-8, "f_le_g", t3.seconds(), 120.0,
           "quadruples=" + std::to_string(fg.samples) + " violations=" + std::to_string(fg.violations) +
               fmt(" worst_excess=%.2e", fg.worst) + " closed_form_samples=" +
               std::to_string(fq.samples) + fmt(" closed_form_worst=%.2e", fq.worst));

    Timer t4;
    SweepResult tr = truncation_sweep(o.truncation_samples, o.seed + 6);
    report(tr.pass(), "truncation", t4.seconds(), 0.0,
           "samples=" + std::to_string(tr.samples) + " violations=" + std::to_string(tr.violations));
}

void spectral_criterion() {
    Timer t;
    const double L = 2.0 * std::numbers::pi;
    const std::size_t n = 2048;
    const double h = L / static_cast<double>(n);
    double worst = 0.0;
    bool ok = true;
    for (double a : {0.5, 1.0, 1.5}) {
        LevyMeasure m = LevyMeasure::fractional_laplacian(a);
        NonlocalOperator op(default_weights(m, h, n, Boundary::Periodic), n, Boundary::Periodic);
        for (double k : {1.0, 2.0, 4.0}) {
            double psi = oracle::levy_symbol([&](double z) { return m.density(z); }, k);
            std::vector<double> f(n);
            for (std::size_t i = 0; i < n; ++i) f[i] = std::cos(k * (static_cast<double>(i) + 0.5) * h);
            GridFunction out = op.apply(GridFunction(f, h, 0.0, Boundary::Periodic));
            double err = 0.0;
            for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::fabs(out[i] - psi * f[i]));
            worst = std::max(worst, err / psi);
            ok = ok && err / psi <= 1e-2;
        }
    }
    report(ok, "spectral", t.seconds(), 30.0, fmt("worst_rel_error=%.2e tol=1e-02", worst));
}

void self_adjoint_criterion() {
    Timer t;
    std::mt19937_64 g(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 256;
    const double h = 8.0 / static_cast<double>(n);
    double worst = 0.0;
    int pairs = 0;
    for (Boundary b : {Boundary::Periodic, Boundary::ZeroExtension})
        for (double a : {0.5, 1.5})
            for (int k = 0; k < 25; ++k, ++pairs) {
                NonlocalOperator op(default_weights(LevyMeasure::fractional_laplacian(a), h, n, b), n, b);
                std::vector<double> f(n), p(n);
                for (std::size_t i = 0; i < n; ++i) f[i] = u(g), p[i] = u(g);
                GridFunction gf = op.apply(GridFunction(f, h, -4.0, b));
                GridFunction gp = op.apply(GridFunction(p, h, -4.0, b));
                std::vector<double> l(n), r(n);
                for (std::size_t i = 0; i < n; ++i) l[i] = h * p[i] * gf[i], r[i] = h * f[i] * gp[i];
                double lv = pairwise_sum(l), rv = pairwise_sum(r);
                worst = std::max(worst, std::fabs(lv - rv) / std::max(1.0, std::fabs(lv)));
            }
    report(worst <= 1e-12, "self_adjoint", t.seconds(), 0.0,
           "pairs=" + std::to_string(pairs) + fmt(" worst=%.2e tol=1e-12", worst));
}

void max_principle_criterion() {
    Timer t;
    bool ok = true;
    std::string bad;
    double worst_excess = 0.0, worst_l1 = 0.0;
    for (auto& mm : model_matrix(512)) {
        mm.model.initial_values = mixed_data(mm.model.domain);
        RunOptions o;
        o.T = 1.0;
        o.output_every = 1u << 30;
        Trajectory tr = run(mm.model, o);
        const InvariantLedger& L = tr.ledger;
        bool pass = L.max_principle && L.l1_stability && L.conservation;
        worst_excess = std::max({worst_excess, L.observed_max - L.umax0, L.umin0 - L.observed_min});
        worst_l1 = std::max(worst_l1, L.max_l1_excess);
        if (!pass) bad += " " + mm.name;
        ok = ok && pass;
    }
    report(ok, "max_principle_l1", t.seconds(), 0.0,
           "models=24 N=512 T=1" + fmt(" range_excess=%.2e", worst_excess) +
               fmt(" l1_excess=%.2e", worst_l1) + (bad.empty() ? "" : " failed:" + bad));
}

void contraction_criterion() {
    Timer t;
    bool ok = true;
    std::string bad;
    double worst_increase = 0.0;
    std::size_t total_steps = 0;
    for (auto& mm : model_matrix(512)) {
        const Domain& d = mm.model.domain;
        GridFunction a = InitialProfile::bump(0.0, 2.0, 1.0).sample(d);
        GridFunction b = InitialProfile::box(0.5, 1.5, 0.8).sample(d);
        PairedRunReport c = contraction_check(mm.model, a, b, 1.0, 1u << 30);
        GridFunction lo = InitialProfile::bump(0.0, 2.0, 0.5).sample(d);
        GridFunction hi = InitialProfile::box(0.0, 3.0, 1.0).sample(d);
        PairedRunReport o = comparison_check(mm.model, lo, hi, 1.0, 1u << 30);
        worst_increase = std::max({worst_increase, c.max_increase, o.max_increase});
        total_steps += c.steps + o.steps;
        bool pass = c.contraction && o.pass();
        if (!pass) bad += " " + mm.name;
        ok = ok && pass;
    }
    report(ok, "contraction_comparison", t.seconds(), 300.0,
           "pairs=48 N=512 T=1 steps=" + std::to_string(total_steps) +
               fmt(" max_step_increase=%.2e tol=1e-12/step", worst_increase) +
               (bad.empty() ? "" : " failed:" + bad));
}

ModelSpec bump_model(std::size_t cells) {
    ModelSpec s;
    s.flux = Flux::burgers();
    s.diffusion = Nonlinearity::identity();
    s.measure = LevyMeasure::fractional_laplacian(1.0);
    s.domain = Domain{-4.0, 8.0, cells, Boundary::Periodic};
    s.initial = InitialProfile::bump(0.0, 2.0, 1.0);
    s.op.strategy = Strategy::Fft;
    return s;
}

Trajectory every_step(const Solver& solver, double T) {
    RunOptions o;
    o.T = T;
    o.output_every = 1;
    return run(solver, o);
}

void dissipation_criterion() {
    Timer t;
    const double T = 0.5;
    bool exact_ok = true;
    std::vector<double> c_slice, c_quad;
    std::string detail;
    for (std::size_t n : {256u, 512u, 1024u}) {
        Solver solver(bump_model(n));
        Trajectory tr = every_step(solver, T);
        XiGrid xi = XiGrid::for_range(0.0, 1.0, 64);
        DissipationField f = recover_m(tr, solver, xi, 0);
        BoundsReport b = xi_slice_bounds(tr, solver, f);
        exact_ok = exact_ok && f.min_n >= 0.0 && f.n_support_ok;
        // violations at roundoff level relative to the bound count as zero
        double nu_max = *std::max_element(f.nu.begin(), f.nu.end());
        double sv = b.slice_violation <= 1e-10 * nu_max ? 0.0 : b.slice_violation;
        double qv = b.quadratic_violation <= 1e-10 * b.quadratic_bound ? 0.0 : b.quadratic_violation;
        double scale = b.h + b.dt;
        c_slice.push_back(sv / scale);
        c_quad.push_back(qv / scale);
        detail += " N=" + std::to_string(n) + fmt(":min_n=%.1e", f.min_n) + fmt(",C_slice=%.2e", sv / scale) +
                  fmt(",C_quad=%.2e", qv / scale);
    }
    bool mono = true;
    for (std::size_t k = 1; k < c_slice.size(); ++k)
        mono = mono && c_slice[k] <= c_slice[k - 1] && c_quad[k] <= c_quad[k - 1];
    report(exact_ok && mono, "dissipation", t.seconds(), 0.0,
           std::string("n_nonneg_and_support=") + (exact_ok ? "exact" : "violated") +
               " C_nonincreasing=" + (mono ? "yes" : "no") + detail);
}

void entropy_criterion() {
    Timer t;
    std::vector<double> worst;
    std::string detail;
    for (std::size_t n : {256u, 512u, 1024u}) {
        Solver solver(bump_model(n));
        Trajectory tr = every_step(solver, 1.0);
        XiGrid xi = XiGrid::for_range(0.0, 1.0, 128);
        TestFunction phi{1.0, 0.0, 2.0, {}};
        EntropyResidualReport r = entropy_residuals(tr, solver, kruzhkov_family(xi, 8, 0.0, 1.0), phi);
        worst.push_back(r.worst);
        detail += " N=" + std::to_string(n) + fmt(":%.3e", r.worst);
    }
    bool floor_ok = worst[1] >= -1e-3;
    double shrink = INFINITY;
    for (std::size_t k = 1; k < worst.size(); ++k) {
        double prev = std::max(0.0, -worst[k - 1]), cur = std::max(0.0, -worst[k]);
        if (cur > 0.0) shrink = std::min(shrink, prev / cur);
    }
    double secs = t.seconds();
    report(floor_ok, "entropy_residual_floor", secs, 0.0, "worst_at_N512" + fmt("=%.3e floor=-1e-03", worst[1]) + detail);
    report(shrink >= 1.5, "entropy_residual_shrink", secs, 0.0, fmt("min_shrink=%.2f need>=1.5", shrink) + detail);
}

void convergence_criterion() {
    Timer t;
    ConvergenceReport r = self_convergence(bump_model(256), 1.0, 4);
    std::string orders;
    for (double o : r.orders) orders += fmt(" %.3f", o);
    report(r.min_order >= 0.5 && r.ledgers_ok, "self_convergence", t.seconds(), 600.0,
           "cells=256..2048 orders=" + orders + fmt(" fitted=%.3f need>=0.5", r.fitted_order));
}

}  // namespace

int main() {
    identity_criteria();
    spectral_criterion();
    self_adjoint_criterion();
    max_principle_criterion();
    contraction_criterion();
    dissipation_criterion();
    entropy_criterion();
    convergence_criterion();
    std::printf("%s %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
