#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fcl/diagnostics.hpp"
#include "fcl/error.hpp"
#include "oracles.hpp"

using namespace fcl;

namespace {

ModelSpec smooth_model(std::size_t cells, Flux f = Flux::burgers(), Nonlinearity a = Nonlinearity::identity()) {
    ModelSpec s;
    s.flux = std::move(f);
    s.diffusion = std::move(a);
    s.measure = LevyMeasure::fractional_laplacian(1.0);
    s.domain.cells = cells;
    s.initial = InitialProfile::bump(0.0, 2.0, 1.0);
    return s;
}

Trajectory every_step(const Solver& s, double T) {
    RunOptions o;
    o.T = T;
    o.output_every = 1;
    return run(s, o);
}

}  // namespace

TEST(ComputeN, MatchesPairwiseOracle) {
    std::mt19937_64 g(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 48;
    const double h = 8.0 / n;
    std::vector<double> v(n);
    for (double& x : v) x = u(g);
    GridFunction f(v, h, -4.0, Boundary::Periodic);
    NonlocalOperator op(default_weights(LevyMeasure::fractional_laplacian(0.8), h, n, Boundary::Periodic), n,
                        Boundary::Periodic);
    Nonlinearity A = Nonlinearity::power(2.0);
    XiGrid xi = XiGrid::for_range(-1.0, 1.0, 40);
    NField nf = compute_n(f, A, op, xi);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < xi.size(); ++k) {
            double ref = oracle::n_value(v, op.jump_kernel(), [&](double x) { return A(x); }, i, xi.xi[k]);
            ASSERT_NEAR(nf.at(i, k, xi.size()), ref, 1e-13 * (1.0 + ref));
            ASSERT_GE(nf.at(i, k, xi.size()), 0.0);
        }
}

TEST(ComputeN, FrozenExamples) {
    WeightTable t;
    t.h = 1.0;
    t.weights = {1.0};
    NonlocalOperator op(t, 4, Boundary::Periodic);
    GridFunction u({0.0, 1.0, 0.0, 0.0}, 1.0, 0.0, Boundary::Periodic);
    XiGrid xi;
    xi.xi = {0.5, 2.0};
    xi.dxi = 0.1;
    NField nf = compute_n(u, Nonlinearity::identity(), op, xi);
    EXPECT_GE(nf.at(0, 0, 2), 0.5);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(nf.at(i, 1, 2), 0.0);

    GridFunction c(std::vector<double>(4, 0.3), 1.0, 0.0, Boundary::Periodic);
    XiGrid x2 = XiGrid::for_range(0.0, 1.0, 32);
    NField z = compute_n(c, Nonlinearity::identity(), op, x2);
    for (double v : z.values) EXPECT_EQ(v, 0.0);
}

TEST(XiGrid, AvoidsSampledValuesAndCoversRange) {
    XiGrid xi = XiGrid::for_range(0.0, 1.0, 128);
    EXPECT_EQ(xi.size(), 128u);
    EXPECT_LT(xi.xi.front(), 0.0);
    EXPECT_GT(xi.xi.back(), 1.0);
    for (double x : xi.xi) {
        EXPECT_NE(x, 0.0);
        EXPECT_NE(x, 1.0);
    }
}

TEST(NuBound, BoxFrozenExample) {
    Domain d{-2.0, 4.0, 400, Boundary::Periodic};
    GridFunction u0 = InitialProfile::box(0.5, 1.0, 1.0).sample(d);
    EXPECT_NEAR(nu_bound(u0, 0.5), 0.5, 1e-12);
    EXPECT_EQ(nu_bound(u0, 1.5), 0.0);
}

TEST(RecoverM, StructureOnSmoothRun) {
    ModelSpec s = smooth_model(128);
    Solver solver(s);
    Trajectory tr = every_step(solver, 0.3);
    XiGrid xi = XiGrid::for_range(0.0, 1.0, 64);
    DissipationField f = recover_m(tr, solver, xi);
    EXPECT_GE(f.min_n, 0.0);
    EXPECT_TRUE(f.n_support_ok);
    EXPECT_EQ(f.n_values.size(), tr.snapshots.size() - 1);
    BoundsReport b = xi_slice_bounds(tr, solver, f);
    EXPECT_LE(b.slice_violation, 1e-12);
    EXPECT_EQ(b.quadratic_violation, 0.0);
    EXPECT_EQ(b.bilinear_violation, 0.0);
    // xi above the data: slice mass and nu both vanish
    for (std::size_t k = 0; k < xi.size(); ++k)
        if (xi.xi[k] > 1.0) {
            EXPECT_EQ(f.nu[k], 0.0);
            EXPECT_NEAR(f.slice[k], 0.0, 1e-14);
        }
    // below min u over the window (u >= 0, xi < 0): chi vanishes, so m does too
    for (std::size_t j = 0; j < f.m_values.size(); ++j)
        for (std::size_t i = 0; i < f.cells; ++i)
            for (std::size_t k = 0; k < xi.size() && xi.xi[k] < 0.0; ++k)
                ASSERT_NEAR(f.m_values[j][i * xi.size() + k], 0.0, 1e-12);
}

TEST(RecoverM, NeedsTwoSnapshots) {
    ModelSpec s = smooth_model(32);
    Solver solver(s);
    RunOptions o;
    o.T = 0.0;
    Trajectory tr = run(solver, o);
    EXPECT_THROW(recover_m(tr, solver, XiGrid::for_range(0, 1, 8)), ConfigError);
}

TEST(RecoverM, BurgersShockConcentratesM) {
    ModelSpec s;
    s.flux = Flux::burgers();
    s.diffusion = Nonlinearity::zero();
    s.domain = Domain{-2.0, 4.0, 200, Boundary::Periodic};
    s.initial = InitialProfile::riemann(1.0, 0.0, 0.0);
    Solver solver(s);
    Trajectory tr = every_step(solver, 0.5);
    XiGrid xi = XiGrid::for_range(0.0, 1.0, 64);
    DissipationField f = recover_m(tr, solver, xi);
    // xi-integrated m at the final interval, located near the shock x = 0.25
    const auto& m = f.m_values.back();
    std::size_t best = 0;
    double best_v = -INFINITY, total = 0.0, near = 0.0;
    const GridFunction& u = tr.snapshots.back().u;
    for (std::size_t i = 0; i < f.cells; ++i) {
        double v = 0.0;
        for (std::size_t k = 0; k < xi.size(); ++k) v += m[i * xi.size() + k] * xi.dxi;
        if (v > best_v) best_v = v, best = i;
        total += std::max(v, 0.0);
        if (std::fabs(u.x(i) - 0.25) < 0.1) near += std::max(v, 0.0);
    }
    EXPECT_NEAR(u.x(best), 0.25, 0.1);
    EXPECT_GT(near, 0.5 * total);
    EXPECT_GE(f.min_m, -1e-12);
}

TEST(EntropyResidual, LinearEntropyIsWeakFormOfScheme) {
    ModelSpec s = smooth_model(128);
    Solver solver(s);
    Trajectory tr = every_step(solver, 0.4);
    TestFunction phi{0.4, 0.0, 2.0, {}};
    EntropyTriple t(Entropy::linear(1.0), s.flux, s.diffusion, 0.0, 1.0);
    EXPECT_NEAR(entropy_residual(tr, solver, t, phi).value, 0.0, 1e-12);
}

TEST(EntropyResidual, ZeroTestFunctionGivesZero) {
    ModelSpec s = smooth_model(64);
    Solver solver(s);
    Trajectory tr = every_step(solver, 0.2);
    TestFunction phi;
    phi.custom = [](double, double) { return 0.0; };
    EntropyTriple t(Entropy::quadratic(), s.flux, s.diffusion, 0.0, 1.0);
    EXPECT_EQ(entropy_residual(tr, solver, t, phi).value, 0.0);
    TestFunction bad;
    bad.custom = [](double, double) { return -1.0; };
    EXPECT_THROW(entropy_residual(tr, solver, t, bad), DomainError);
}

TEST(EntropyResidual, QuadraticImprovesUnderRefinement) {
    std::vector<double> worst;
    for (std::size_t n : {512u, 1024u}) {
        ModelSpec s = smooth_model(n);
        s.op.strategy = Strategy::Fft;
        Solver solver(s);
        Trajectory tr = every_step(solver, 1.0);
        TestFunction phi{1.0, 0.0, 2.0, {}};
        auto rep = entropy_residuals(tr, solver, {Entropy::quadratic()}, phi);
        worst.push_back(rep.worst);
    }
    EXPECT_GE(worst[0], -1e-3);
    if (worst[0] < 0.0) {
        EXPECT_GE(worst[1], 0.5 * worst[0]);
    }
}

TEST(EntropyResidual, ReportWorstIsMinimum) {
    ModelSpec s = smooth_model(64);
    Solver solver(s);
    Trajectory tr = every_step(solver, 0.2);
    XiGrid xi = XiGrid::for_range(0.0, 1.0, 32);
    auto fam = kruzhkov_family(xi, 4, 0.0, 1.0);
    TestFunction phi{0.2, 0.0, 2.0, {}};
    auto rep = entropy_residuals(tr, solver, fam, phi);
    double w = INFINITY;
    for (const auto& e : rep.entries) {
        w = std::min(w, e.value);
        for (double p : e.partial) w = std::min(w, p);
    }
    EXPECT_EQ(rep.worst, w);
}

TEST(KineticWeakForm, MatchesEntropyResidual) {
    for (const auto& a : {Nonlinearity::identity(), Nonlinearity::power(2.0)}) {
        ModelSpec s = smooth_model(48, Flux::burgers(), a);
        Solver solver(s);
        Trajectory tr = every_step(solver, 0.1);
        TestFunction phi{0.1, 0.0, 2.0, {}};
        for (const Entropy& S : {Entropy::quadratic(), Entropy::smooth_kruzhkov(0.4, 0.05)}) {
            EntropyTriple t(S, s.flux, s.diffusion, 0.0, 1.0);
            double e = entropy_residual(tr, solver, t, phi).value;
            double k = kinetic_weak_residual(tr, solver, S, phi);
            EXPECT_NEAR(e, k, 1e-10) << a.name() << " " << S.name();
        }
    }
}

TEST(RecoverM, SmoothDiffusionMVanishesAtFirstOrder) {
    // |m| and the mass of its negative part, both as measures on (t, x, xi)
    std::vector<double> norm, neg;
    for (std::size_t n : {128u, 256u, 512u}) {
        ModelSpec s;
        s.flux = Flux::zero();
        s.diffusion = Nonlinearity::identity();
        s.domain.cells = n;
        s.initial = InitialProfile::gaussian(0.0, 0.5, 1.0);
        s.op.strategy = Strategy::Fft;
        Solver solver(s);
        Trajectory tr = every_step(solver, 0.25);
        XiGrid xi = XiGrid::for_range(0.0, 1.0, 64);
        DissipationField f = recover_m(tr, solver, xi);
        double a = 0.0, b = 0.0;
        for (std::size_t j = 0; j < f.m_values.size(); ++j)
            for (double v : f.m_values[j]) {
                double w = f.dt[j] * s.domain.h() * xi.dxi;
                a += std::fabs(v) * w;
                b += std::max(-v, 0.0) * w;
            }
        norm.push_back(a);
        neg.push_back(b);
    }
    for (std::size_t k = 1; k < norm.size(); ++k) {
        EXPECT_LT(norm[k], norm[k - 1]);
        EXPECT_NEAR(neg[k - 1] / neg[k], 2.0, 0.5) << "level " << k;
    }
}
