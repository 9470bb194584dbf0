#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "fcl/scheme.hpp"

namespace fcl {

struct ConvergenceReport {
    std::vector<std::size_t> cells;
    std::vector<double> dt;
    std::vector<double> differences;  // L1 distance between level k and the restriction of k+1
    std::vector<double> orders;       // log2 of successive difference ratios
    double min_order = 0.0;
    double fitted_order = 0.0;        // least-squares slope of -log2 differences against level
    double T = 0.0;
    bool ledgers_ok = true;

    nlohmann::json to_json() const;
};

// Averages pairs of fine cells onto the coarse grid of half the size.
std::vector<double> restrict_half(const std::vector<double>& fine);

// Runs the model to time T on cells = base, 2 base, ..., 2^(levels-1) base and measures the
// self-convergence order in L1. Needs levels >= 3.
ConvergenceReport self_convergence(const ModelSpec& model, double T, std::size_t levels,
                                   double safety = 0.9);

}  // namespace fcl
