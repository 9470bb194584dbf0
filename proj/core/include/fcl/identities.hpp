#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fcl/nonlinearity.hpp"

namespace fcl {

struct SweepResult {
    std::string name;
    std::size_t samples = 0;
    std::size_t violations = 0;
    double worst = 0.0;      // largest residual / violation seen
    double tolerance = 0.0;
    double seconds = 0.0;
    std::string detail;
    bool pass() const { return violations == 0; }
};

struct IdentityOptions {
    std::size_t chi_samples = 1'000'000;
    std::size_t representation_samples = 1'000;
    std::size_t taylor_samples = 10'000;
    std::size_t fg_samples = 1'000'000;
    std::size_t fg_quadrature_samples = 10'000;
    std::size_t truncation_samples = 1'000'000;
    std::uint64_t seed = 20240611;
};

// Draws mixing U(-5, 5) with the lattice {-3, ..., 3} / 2 so that ties and endpoints occur.
class SweepRng {
public:
    explicit SweepRng(std::uint64_t seed) : g_(seed) {}
    double real();
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(g_); }
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(g_);
    }
    // Sum of squared affine terms plus even monomials with nonnegative coefficients, degree <= 6.
    Entropy convex_polynomial();
    Nonlinearity piecewise_linear();
    std::mt19937_64& engine() { return g_; }

private:
    std::mt19937_64 g_;
};

// Identity, Power(2), Power(3), a random piecewise-linear A, Zero.
std::vector<Nonlinearity> sweep_nonlinearities(SweepRng& rng);

SweepResult chi_identity_sweep(std::size_t n, std::uint64_t seed);
SweepResult isometry_sweep(std::size_t n, std::uint64_t seed);
SweepResult representation_sweep(std::size_t n, std::uint64_t seed);
SweepResult taylor_sweep(std::size_t n, std::uint64_t seed);
// n quadruples for each of the five nonlinearities; also checks F and G symmetry exactly.
SweepResult f_le_g_sweep(std::size_t n, std::uint64_t seed);
SweepResult f_quadrature_sweep(std::size_t n, std::uint64_t seed);
SweepResult truncation_sweep(std::size_t n, std::uint64_t seed);

std::vector<SweepResult> verify_identities(const IdentityOptions& opt = {});

}  // namespace fcl
