#include "fcl/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fcl/error.hpp"
#include "fcl/numerics.hpp"

namespace fcl {

CflViolation::CflViolation(double requested, double admissible)
    : ConfigError("time step " + std::to_string(requested) + " exceeds the CFL limit; admissible dt <= " +
                  std::to_string(admissible)),
      requested_(requested),
      admissible_(admissible) {}

InitialProfile InitialProfile::box(double center, double width, double height) {
    return {Kind::Box, center, width, height, 1.0, 0.0};
}

InitialProfile InitialProfile::bump(double center, double width, double height) {
    return {Kind::Bump, center, width, height, 1.0, 0.0};
}

InitialProfile InitialProfile::riemann(double left, double right, double center) {
    return {Kind::Riemann, center, 1.0, 1.0, left, right};
}

InitialProfile InitialProfile::gaussian(double center, double sigma, double height) {
    return {Kind::Gaussian, center, sigma, height, 1.0, 0.0};
}

double InitialProfile::operator()(double x) const {
    switch (kind) {
    case Kind::Box:
        return std::fabs(x - center) <= 0.5 * width ? height : 0.0;
    case Kind::Bump: {
        double s = (x - center) / (0.5 * width);
        if (std::fabs(s) >= 1.0) return 0.0;
        return height * std::exp(1.0 - 1.0 / (1.0 - s * s));
    }
    case Kind::Riemann:
        return x < center ? left : right;
    case Kind::Gaussian: {
        double s = (x - center) / width;
        return height * std::exp(-0.5 * s * s);
    }
    }
    return 0.0;
}

GridFunction InitialProfile::sample(const Domain& d) const {
    std::vector<double> v(d.cells);
    double h = d.h();
    for (std::size_t i = 0; i < d.cells; ++i)
        v[i] = (*this)(d.x0 + (static_cast<double>(i) + 0.5) * h);
    return GridFunction(std::move(v), h, d.x0, d.boundary);
}

std::string to_string(InitialProfile::Kind k) {
    switch (k) {
    case InitialProfile::Kind::Box:
        return "box";
    case InitialProfile::Kind::Bump:
        return "bump";
    case InitialProfile::Kind::Riemann:
        return "riemann";
    case InitialProfile::Kind::Gaussian:
        return "gaussian";
    }
    return "?";
}

InitialProfile::Kind profile_from_string(const std::string& s) {
    if (s == "box") return InitialProfile::Kind::Box;
    if (s == "bump") return InitialProfile::Kind::Bump;
    if (s == "riemann") return InitialProfile::Kind::Riemann;
    if (s == "gaussian") return InitialProfile::Kind::Gaussian;
    throw ConfigError("initial profile must be box, bump, riemann or gaussian, got '" + s + "'");
}

GridFunction ModelSpec::initial_data() const {
    if (initial_values) {
        if (initial_values->size() != domain.cells)
            throw ConfigError("initial values do not match the cell count");
        return GridFunction(*initial_values, domain.h(), domain.x0, domain.boundary);
    }
    return initial.sample(domain);
}

WeightTable ModelSpec::weights() const {
    return default_weights(measure, domain.h(), domain.cells, domain.boundary, op.split_radius,
                           op.cutoff, op.periodic_images);
}

void ModelSpec::validate() const {
    if (!(domain.length > 0.0) || !std::isfinite(domain.length) || !std::isfinite(domain.x0))
        throw ConfigError("domain length must be finite and > 0");
    if (domain.cells < 3) throw ConfigError("at least 3 cells required");
    GridFunction u0 = initial_data();  // throws on non-finite values
    if (domain.boundary == Boundary::ZeroExtension) {
        double sup = 0.0;
        for (double v : u0.values()) sup = std::max(sup, std::fabs(v));
        std::size_t n = u0.size();
        for (std::size_t i = 0; i < std::min<std::size_t>(10, n); ++i)
            if (std::fabs(u0[i]) > 1e-14 * sup || std::fabs(u0[n - 1 - i]) > 1e-14 * sup)
                throw ConfigError(
                    "zero extension needs initial data supported at least 10 cells inside the "
                    "domain");
    }
    if (op.strategy == Strategy::Fft && domain.boundary != Boundary::Periodic)
        throw ConfigError("operator.strategy = fft requires a periodic grid");
}

EngquistOsher::EngquistOsher(const Flux& f, double lo, double hi)
    : f_(f), lo_(std::min(lo, 0.0)), hi_(std::max(hi, 0.0)), f0_(f(0.0)) {
    pts_.push_back(lo_);
    for (double t : f.turning_points(lo_, hi_)) pts_.push_back(t);
    pts_.push_back(hi_);
    if (0.0 > lo_ && 0.0 < hi_) pts_.push_back(0.0);
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
    std::size_t pieces = pts_.size() > 1 ? pts_.size() - 1 : 0;
    increasing_.resize(pieces);
    for (std::size_t k = 0; k < pieces; ++k)
        increasing_[k] = f.derivative(0.5 * (pts_[k] + pts_[k + 1])) > 0.0;
    std::size_t z = static_cast<std::size_t>(std::find(pts_.begin(), pts_.end(), 0.0) - pts_.begin());
    fp_.assign(pts_.size(), 0.0);
    fm_.assign(pts_.size(), 0.0);
    for (std::size_t k = z; k + 1 < pts_.size(); ++k) {
        double d = f(pts_[k + 1]) - f(pts_[k]);
        fp_[k + 1] = fp_[k] + (increasing_[k] ? d : 0.0);
        fm_[k + 1] = fm_[k] + (increasing_[k] ? 0.0 : d);
    }
    for (std::size_t k = z; k-- > 0;) {
        double d = f(pts_[k + 1]) - f(pts_[k]);
        fp_[k] = fp_[k + 1] - (increasing_[k] ? d : 0.0);
        fm_[k] = fm_[k + 1] - (increasing_[k] ? 0.0 : d);
    }
}

std::size_t EngquistOsher::piece(double u) const {
    if (!(u >= lo_ && u <= hi_))
        throw DomainError("flux evaluated outside its working interval");
    if (pts_.size() < 2) return 0;
    std::size_t k = static_cast<std::size_t>(std::upper_bound(pts_.begin(), pts_.end(), u) -
                                             pts_.begin());
    k = k == 0 ? 0 : k - 1;
    return std::min(k, pts_.size() - 2);
}

double EngquistOsher::plus(double u) const {
    if (pts_.size() < 2) return 0.0;
    std::size_t k = piece(u);
    if (!increasing_[k]) return fp_[k];
    if (pts_[k] >= 0.0) return fp_[k] + (f_(u) - f_(pts_[k]));
    return fp_[k + 1] - (f_(pts_[k + 1]) - f_(u));
}

double EngquistOsher::minus(double u) const {
    if (pts_.size() < 2) return 0.0;
    std::size_t k = piece(u);
    if (increasing_[k]) return fm_[k];
    if (pts_[k] >= 0.0) return fm_[k] + (f_(u) - f_(pts_[k]));
    return fm_[k + 1] - (f_(pts_[k + 1]) - f_(u));
}

double cfl_dt(const ModelSpec& model, const WeightTable& w, double umin, double umax) {
    if (umin > umax) std::swap(umin, umax);
    double h = w.h;
    double lf = umin == umax ? 0.0 : model.flux.lipschitz(umin, umax);
    double la = umin == umax ? std::fabs(model.diffusion.derivative(umin))
                             : model.diffusion.lipschitz(umin, umax);
    double denom = lf / h + la * (2.0 * w.sigma2 / (h * h) + w.tail_r);
    if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
    return 1.0 / denom;
}

namespace {

std::pair<double, double> data_range(const GridFunction& u) {
    auto [lo, hi] = std::minmax_element(u.values().begin(), u.values().end());
    return {*lo, *hi};
}

}  // namespace

Solver::Solver(const ModelSpec& model) : Solver(model, INFINITY, -INFINITY) {}

Solver::Solver(const ModelSpec& model, double umin, double umax)
    : model_(model),
      w_(model.weights()),
      op_(w_, model.domain.cells, model.domain.boundary, model.op.strategy),
      umin_(std::min(umin, data_range(model.initial_data()).first)),
      umax_(std::max(umax, data_range(model.initial_data()).second)),
      eo_(model.flux, umin_, umax_),
      cfl_(fcl::cfl_dt(model, w_, umin_, umax_)) {
    model.validate();
}

void Solver::step_into(std::span<const double> u, std::span<double> out, double dt) const {
    const std::size_t n = u.size();
    const double h = w_.h;
    std::vector<double> a(n), ga(n), fp(n + 2), fm(n + 2);
    for (std::size_t i = 0; i < n; ++i) a[i] = model_.diffusion(u[i]);
    op_.apply(a, ga);
    // fp[i+1] = F+(u_i); ghosts at 0 and n+1
    for (std::size_t i = 0; i < n; ++i) {
        fp[i + 1] = eo_.plus(u[i]);
        fm[i + 1] = eo_.minus(u[i]);
    }
    if (model_.domain.boundary == Boundary::Periodic) {
        fp[0] = fp[n];
        fm[n + 1] = fm[1];
    } else {
        fp[0] = eo_.plus(0.0);
        fm[n + 1] = eo_.minus(0.0);
    }
    const double lam = dt / h;
    for (std::size_t i = 0; i < n; ++i) {
        double right = fp[i + 1] + fm[i + 2];
        double left = fp[i] + fm[i + 1];
        out[i] = u[i] - lam * (right - left) - dt * ga[i];
    }
}

SolverState Solver::step(const SolverState& s, double dt) const {
    if (!(dt > 0.0)) throw ConfigError("time step must be > 0");
    if (dt > cfl_) throw CflViolation(dt, cfl_);
    SolverState next{s.u, s.t + dt, s.step + 1, dt / cfl_};
    step_into(s.u.values(), next.u.values(), dt);
    for (double v : next.u.values())
        if (!std::isfinite(v))
            throw NumericError("non-finite value after step " + std::to_string(next.step),
                               next.step);
    return next;
}

std::vector<double> step_sequence(double T, double dt) {
    std::vector<double> out;
    if (!(T > 0.0)) return out;
    auto m = static_cast<std::size_t>(std::ceil(T / dt * (1.0 - 1e-12)));
    m = std::max<std::size_t>(m, 1);
    out.assign(m, dt);
    out.back() = T - static_cast<double>(m - 1) * dt;
    return out;
}

Trajectory run(const ModelSpec& model, const RunOptions& opt) {
    return run(Solver(model), opt);
}

Trajectory run(const Solver& solver, const RunOptions& opt) {
    if (!(opt.T >= 0.0) || !std::isfinite(opt.T)) throw ConfigError("T must be >= 0");
    if (!(opt.safety > 0.0 && opt.safety <= 1.0)) throw ConfigError("safety must be in (0,1]");
    if (opt.output_every < 1) throw ConfigError("output_every must be >= 1");
    const ModelSpec& model = solver.model();
    Trajectory tr;
    tr.cfl_dt = solver.cfl_dt();
    if (opt.dt) {
        if (!(*opt.dt > 0.0)) throw ConfigError("run.dt must be > 0");
        if (*opt.dt > tr.cfl_dt) throw CflViolation(*opt.dt, tr.cfl_dt);
        tr.dt = *opt.dt;
    } else {
        tr.dt = opt.safety * tr.cfl_dt;
        if (!std::isfinite(tr.dt)) tr.dt = opt.T > 0.0 ? opt.T : 1.0;
    }
    SolverState s{model.initial_data(), 0.0, 0, 0.0};
    InvariantLedger& L = tr.ledger;
    auto [lo, hi] = data_range(s.u);
    L.umin0 = L.observed_min = lo;
    L.umax0 = L.observed_max = hi;
    L.mass0 = L.final_mass = s.u.integral();
    L.l1_0 = s.u.l1_norm();
    double sup0 = std::max(std::fabs(lo), std::fabs(hi));
    const bool periodic = model.domain.boundary == Boundary::Periodic;
    tr.snapshots.push_back(s);
    tr.step_dt = step_sequence(opt.T, tr.dt);
    SolverState next = s;
    for (std::size_t k = 0; k < tr.step_dt.size(); ++k) {
        double dt = tr.step_dt[k];
        solver.step_into(s.u.values(), next.u.values(), dt);
        next.step = k + 1;
        next.t = k + 1 == tr.step_dt.size() ? opt.T : static_cast<double>(k + 1) * tr.dt;
        next.cfl_record = dt / tr.cfl_dt;
        for (double v : next.u.values())
            if (!std::isfinite(v))
                throw NumericError("non-finite value after step " + std::to_string(next.step),
                                   next.step);
        auto [a, b] = data_range(next.u);
        L.observed_min = std::min(L.observed_min, a);
        L.observed_max = std::max(L.observed_max, b);
        if (a < L.umin0 || b > L.umax0) L.max_principle = false;
        double mass = next.u.integral();
        double drift = std::fabs(mass - L.mass0);
        L.max_mass_drift = std::max(L.max_mass_drift, drift);
        if (periodic && drift > 1e-12 * static_cast<double>(k + 1) * L.l1_0) L.conservation = false;
        double l1x = next.u.l1_norm() - L.l1_0;
        L.max_l1_excess = std::max(L.max_l1_excess, l1x);
        if (l1x > 1e-12 * static_cast<double>(k + 1)) L.l1_stability = false;
        if (!periodic) {
            std::size_t n = next.u.size();
            for (std::size_t i = 0; i < std::min<std::size_t>(5, n); ++i)
                if (std::fabs(next.u[i]) > 1e-8 * sup0 || std::fabs(next.u[n - 1 - i]) > 1e-8 * sup0)
                    L.support_escape = true;
        }
        L.final_mass = mass;
        std::swap(s, next);
        if ((k + 1) % opt.output_every == 0 || k + 1 == tr.step_dt.size()) tr.snapshots.push_back(s);
    }
    L.steps = tr.step_dt.size();
    return tr;
}

}  // namespace fcl
