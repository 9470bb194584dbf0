#include "fcl/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fcl/error.hpp"
#include "fcl/numerics.hpp"

namespace fcl {

nlohmann::json PairedRunReport::to_json() const {
    return {
        {"schema", "fcl-pair/1"},
        {"mode", mode},
        {"dt", dt},
        {"steps", steps},
        {"initial_distance", initial_distance},
        {"initial_pos_part", initial_pos},
        {"initial_neg_part", initial_neg},
        {"max_increase", max_increase},
        {"verdicts",
         {{"contraction", contraction},
          {"ordering", ordering},
          {"parts_bounded", parts_bounded},
          {"pass", pass()}}},
        {"first_order_violation_step", first_order_violation},
        {"times", times},
        {"l1_distance", l1_distance},
        {"l1_pos_part", l1_pos_part},
        {"l1_neg_part", l1_neg_part},
    };
}

namespace {

struct Parts {
    double dist, pos, neg;
};

Parts parts(const std::vector<double>& u, const std::vector<double>& v, double h) {
    std::vector<double> a(u.size()), p(u.size()), n(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        double d = u[i] - v[i];
        a[i] = std::fabs(d);
        p[i] = std::max(d, 0.0);
        n[i] = std::max(-d, 0.0);
    }
    return {h * pairwise_sum(a), h * pairwise_sum(p), h * pairwise_sum(n)};
}

PairedRunReport paired(const ModelSpec& model, const GridFunction& u0, const GridFunction& v0,
                       double T, std::size_t output_every, double safety, bool comparison) {
    if (!u0.same_grid(v0)) throw ConfigError("paired runs need the same grid");
    if (u0.size() != model.domain.cells || u0.h() != model.domain.h() ||
        u0.boundary() != model.domain.boundary)
        throw ConfigError("initial data does not match the model grid");
    if (output_every < 1) throw ConfigError("output_every must be >= 1");
    auto [ua, ub] = std::minmax_element(u0.values().begin(), u0.values().end());
    auto [va, vb] = std::minmax_element(v0.values().begin(), v0.values().end());
    double lo = std::min(*ua, *va), hi = std::max(*ub, *vb);
    ModelSpec mu = model, mv = model;
    mu.initial_values = u0.values();
    mv.initial_values = v0.values();
    Solver su(mu, lo, hi), sv(mv, lo, hi);
    double dt = safety * std::min(su.cfl_dt(), sv.cfl_dt());
    if (!std::isfinite(dt)) dt = T > 0.0 ? T : 1.0;

    PairedRunReport r;
    r.mode = comparison ? "comparison" : "contraction";
    r.dt = dt;
    const double h = u0.h();
    std::vector<double> u = u0.values(), v = v0.values(), un(u.size()), vn(v.size());
    Parts p0 = parts(u, v, h);
    r.initial_distance = p0.dist;
    r.initial_pos = p0.pos;
    r.initial_neg = p0.neg;
    r.times.push_back(0.0);
    r.l1_distance.push_back(p0.dist);
    r.l1_pos_part.push_back(p0.pos);
    r.l1_neg_part.push_back(p0.neg);
    std::vector<double> seq = step_sequence(T, dt);
    r.steps = seq.size();
    double prev = p0.dist;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        su.step_into(u, un, seq[k]);
        sv.step_into(v, vn, seq[k]);
        std::swap(u, un);
        std::swap(v, vn);
        for (std::size_t i = 0; i < u.size(); ++i)
            if (!std::isfinite(u[i]) || !std::isfinite(v[i]))
                throw NumericError("non-finite value in paired run", k + 1);
        Parts p = parts(u, v, h);
        r.max_increase = std::max(r.max_increase, p.dist - prev);
        if (p.dist > prev + 1e-12) r.contraction = false;
        prev = p.dist;
        double tol = 1e-12 * static_cast<double>(k + 1);
        if (comparison) {
            for (std::size_t i = 0; i < u.size(); ++i)
                if (u[i] > v[i]) {
                    if (r.ordering) r.first_order_violation = k + 1;
                    r.ordering = false;
                    break;
                }
        }
        if (p.pos > p0.pos + tol || p.neg > p0.neg + tol) r.parts_bounded = false;
        if ((k + 1) % output_every == 0 || k + 1 == seq.size()) {
            r.times.push_back(k + 1 == seq.size() ? T : static_cast<double>(k + 1) * dt);
            r.l1_distance.push_back(p.dist);
            r.l1_pos_part.push_back(p.pos);
            r.l1_neg_part.push_back(p.neg);
        }
    }
    return r;
}

}  // namespace

PairedRunReport contraction_check(const ModelSpec& model, const GridFunction& u0,
                                  const GridFunction& v0, double T, std::size_t output_every,
                                  double safety) {
    return paired(model, u0, v0, T, output_every, safety, false);
}

PairedRunReport comparison_check(const ModelSpec& model, const GridFunction& u0,
                                 const GridFunction& v0, double T, std::size_t output_every,
                                 double safety) {
    if (!u0.same_grid(v0)) throw ConfigError("paired runs need the same grid");
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < u0.size(); ++i)
        if (u0[i] > v0[i]) bad.push_back(i);
    if (!bad.empty()) {
        std::ostringstream s;
        s << "comparison needs u0 <= v0; violated at indices";
        for (std::size_t k = 0; k < std::min<std::size_t>(bad.size(), 20); ++k) s << ' ' << bad[k];
        if (bad.size() > 20) s << " ... (" << bad.size() << " total)";
        throw DomainError(s.str());
    }
    return paired(model, u0, v0, T, output_every, safety, true);
}

MonotonicityCertificate monotonicity_certificate(const ModelSpec& model, std::size_t trials,
                                                 std::uint64_t seed, double safety) {
    Solver solver(model);
    const double lo = solver.umin(), hi = solver.umax();
    const double dt = safety * solver.cfl_dt();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const std::size_t n = model.domain.cells;
    const bool zero_ext = model.domain.boundary == Boundary::ZeroExtension;
    MonotonicityCertificate c;
    std::vector<double> u(n), v(n), su(n), sv(n);
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            double a = lo + (hi - lo) * U(rng), b = lo + (hi - lo) * U(rng);
            // keep some exact ties so equal entries are exercised
            if (U(rng) < 0.2) b = a;
            u[i] = std::min(a, b);
            v[i] = std::max(a, b);
            if (zero_ext && (i < 10 || i + 10 >= n)) u[i] = v[i] = 0.0;
        }
        solver.step_into(u, su, std::isfinite(dt) ? dt : 1.0);
        solver.step_into(v, sv, std::isfinite(dt) ? dt : 1.0);
        ++c.trials;
        for (std::size_t i = 0; i < n; ++i)
            if (su[i] > sv[i]) {
                ++c.failures;
                break;
            }
    }
    return c;
}

}  // namespace fcl
