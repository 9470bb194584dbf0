#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcl/grid.hpp"
#include "fcl/levy_kernel.hpp"
#include "fcl/nonlinearity.hpp"
#include "fcl/nonlocal_operator.hpp"

namespace fcl {

struct Domain {
    double x0 = -4.0;
    double length = 8.0;
    std::size_t cells = 512;
    Boundary boundary = Boundary::Periodic;

    double h() const { return length / static_cast<double>(cells); }
    bool operator==(const Domain&) const = default;
};

struct InitialProfile {
    enum class Kind { Box, Bump, Riemann, Gaussian };
    Kind kind = Kind::Bump;
    double center = 0.0;
    double width = 1.0;   // full support for box and bump, standard deviation for gaussian
    double height = 1.0;
    double left = 1.0;    // riemann states
    double right = 0.0;

    static InitialProfile box(double center, double width, double height);
    static InitialProfile bump(double center, double width, double height);
    static InitialProfile riemann(double left, double right, double center = 0.0);
    static InitialProfile gaussian(double center, double sigma, double height);

    double operator()(double x) const;
    GridFunction sample(const Domain& d) const;
    bool operator==(const InitialProfile&) const = default;
};

std::string to_string(InitialProfile::Kind k);
InitialProfile::Kind profile_from_string(const std::string& s);

struct OperatorOptions {
    Strategy strategy = Strategy::Direct;
    double split_radius = 0.0;  // 0: use h
    double cutoff = 0.0;        // 0: periodic_images * length, or length for zero extension
    int periodic_images = 64;
    bool operator==(const OperatorOptions&) const = default;
};

struct ModelSpec {
    Flux flux = Flux::burgers();
    Nonlinearity diffusion = Nonlinearity::identity();
    LevyMeasure measure = LevyMeasure::fractional_laplacian(1.0);
    Domain domain;
    InitialProfile initial;
    std::optional<std::vector<double>> initial_values;  // overrides the profile
    OperatorOptions op;

    GridFunction initial_data() const;
    WeightTable weights() const;
    // Throws ConfigError on non-finite initial data or a zero-extension margin below 10 h.
    void validate() const;
};

struct SolverState {
    GridFunction u;
    double t = 0.0;
    std::size_t step = 0;
    double cfl_record = 0.0;  // dt / cfl_dt of the step that produced this state
};

// F^+ and F^- of the Engquist-Osher splitting, exact for the polynomial flux on [lo, hi].
class EngquistOsher {
public:
    EngquistOsher(const Flux& f, double lo, double hi);
    double plus(double u) const;
    double minus(double u) const;
    double flux(double a, double b) const { return f0_ + plus(a) + minus(b); }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    std::size_t piece(double u) const;
    Flux f_;
    double lo_, hi_, f0_;
    std::vector<double> pts_, fp_, fm_;
    std::vector<bool> increasing_;
};

double cfl_dt(const ModelSpec& model, const WeightTable& w, double umin, double umax);

class Solver {
public:
    explicit Solver(const ModelSpec& model);
    // Bounds widen the flux evaluation interval (paired runs share one).
    Solver(const ModelSpec& model, double umin, double umax);

    const ModelSpec& model() const { return model_; }
    const WeightTable& weights() const { return w_; }
    const NonlocalOperator& op() const { return op_; }
    const EngquistOsher& eo() const { return eo_; }
    double cfl_dt() const { return cfl_; }
    double umin() const { return umin_; }
    double umax() const { return umax_; }

    // One forward Euler step, no CFL check.
    void step_into(std::span<const double> u, std::span<double> out, double dt) const;
    // Checked step: CflViolation above cfl_dt, NumericError on non-finite output.
    SolverState step(const SolverState& s, double dt) const;

private:
    ModelSpec model_;
    WeightTable w_;
    NonlocalOperator op_;
    double umin_, umax_;
    EngquistOsher eo_;
    double cfl_;
};

struct RunOptions {
    double T = 1.0;
    double safety = 0.9;
    std::size_t output_every = 1;
    std::optional<double> dt;  // manual step; must not exceed cfl_dt
};

struct InvariantLedger {
    double umin0 = 0.0, umax0 = 0.0;
    double observed_min = 0.0, observed_max = 0.0;
    bool max_principle = true;
    double mass0 = 0.0, max_mass_drift = 0.0;
    bool conservation = true;  // periodic only
    double l1_0 = 0.0, max_l1_excess = 0.0;
    bool l1_stability = true;
    bool support_escape = false;  // zero extension only
    double final_mass = 0.0;
    std::size_t steps = 0;

    bool ok() const { return max_principle && conservation && l1_stability && !support_escape; }
};

struct Trajectory {
    std::vector<SolverState> snapshots;
    std::vector<double> step_dt;  // every step, including the shortened last one
    double dt = 0.0;              // nominal step
    double cfl_dt = 0.0;
    InvariantLedger ledger;
};

Trajectory run(const Solver& solver, const RunOptions& opt);
Trajectory run(const ModelSpec& model, const RunOptions& opt);

// Fixed step sequence hitting T exactly: full steps of dt, last one shortened.
std::vector<double> step_sequence(double T, double dt);

}  // namespace fcl
