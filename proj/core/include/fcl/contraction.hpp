#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fcl/scheme.hpp"

namespace fcl {

struct PairedRunReport {
    std::string mode;  // "contraction" or "comparison"
    std::vector<double> times, l1_distance, l1_pos_part, l1_neg_part;
    double initial_distance = 0.0, initial_pos = 0.0, initial_neg = 0.0;
    double dt = 0.0;
    std::size_t steps = 0;
    double max_increase = 0.0;  // largest d_k - d_{k-1} over all steps
    bool contraction = true;    // d_k <= d_{k-1} + 1e-12 at every step
    bool ordering = true;       // u^n <= v^n componentwise (comparison mode)
    bool parts_bounded = true;  // (u - v)^{+-} masses never exceed their initial values
    std::size_t first_order_violation = 0;  // step index, 0 if none

    bool pass() const { return contraction && (mode != "comparison" || (ordering && parts_bounded)); }
    nlohmann::json to_json() const;
};

// Both runs use the solver of `model` with the initial data replaced, one shared flux interval
// and one shared dt (the smaller CFL limit times the safety factor).
PairedRunReport contraction_check(const ModelSpec& model, const GridFunction& u0,
                                  const GridFunction& v0, double T, std::size_t output_every = 1,
                                  double safety = 0.9);
// Requires u0 <= v0; otherwise DomainError listing the offending indices.
PairedRunReport comparison_check(const ModelSpec& model, const GridFunction& u0,
                                 const GridFunction& v0, double T, std::size_t output_every = 1,
                                 double safety = 0.9);

struct MonotonicityCertificate {
    std::size_t trials = 0;
    std::size_t failures = 0;
    bool pass() const { return failures == 0; }
};

// Random ordered pairs u <= v inside the initial data range; checks step(u) <= step(v).
MonotonicityCertificate monotonicity_certificate(const ModelSpec& model, std::size_t trials = 100,
                                                 std::uint64_t seed = 12345, double safety = 0.9);

}  // namespace fcl
