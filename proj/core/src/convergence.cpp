#include "fcl/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "fcl/error.hpp"
#include "fcl/numerics.hpp"

namespace fcl {

std::vector<double> restrict_half(const std::vector<double>& fine) {
    if (fine.size() % 2 != 0) throw ConfigError("restriction needs an even number of cells");
    std::vector<double> c(fine.size() / 2);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (fine[2 * i] + fine[2 * i + 1]);
    return c;
}

ConvergenceReport self_convergence(const ModelSpec& model, double T, std::size_t levels,
                                   double safety) {
    if (levels < 3) throw ConfigError("self-convergence needs at least 3 levels");
    if (model.initial_values) throw ConfigError("self-convergence needs a profile, not sampled data");
    ConvergenceReport r;
    r.T = T;
    std::vector<std::vector<double>> finals;
    for (std::size_t k = 0; k < levels; ++k) {
        ModelSpec m = model;
        m.domain.cells = model.domain.cells << k;
        Solver solver(m);
        RunOptions opt;
        opt.T = T;
        opt.safety = safety;
        opt.output_every = static_cast<std::size_t>(-1);
        Trajectory tr = run(solver, opt);
        r.cells.push_back(m.domain.cells);
        r.dt.push_back(tr.dt);
        r.ledgers_ok = r.ledgers_ok && tr.ledger.ok();
        finals.push_back(tr.snapshots.back().u.values());
    }
    for (std::size_t k = 0; k + 1 < levels; ++k) {
        std::vector<double> c = restrict_half(finals[k + 1]);
        std::vector<double> d(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) d[i] = std::fabs(c[i] - finals[k][i]);
        r.differences.push_back(model.domain.length / static_cast<double>(c.size()) * pairwise_sum(d));
    }
    for (std::size_t k = 0; k + 1 < r.differences.size(); ++k)
        r.orders.push_back(std::log2(r.differences[k] / r.differences[k + 1]));
    r.min_order = *std::min_element(r.orders.begin(), r.orders.end());
    // slope of -log2 e_k against k
    const double n = static_cast<double>(r.differences.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < r.differences.size(); ++k) {
        double x = static_cast<double>(k), y = -std::log2(r.differences[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    r.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return r;
}

nlohmann::json ConvergenceReport::to_json() const {
    return {{"schema", "fcl-convergence/1"},
            {"T", T},
            {"cells", cells},
            {"dt", dt},
            {"l1_differences", differences},
            {"observed_orders", orders},
            {"min_order", min_order},
            {"fitted_order", fitted_order},
            {"ledgers_ok", ledgers_ok}};
}

}  // namespace fcl
