#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fcl {

// Fixed-order tree summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> v);

// Adaptive Gauss-Kronrod (15 points). Infinite limits are allowed.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

// Same, split at the given interior points (kinks, jumps of f).
double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::vector<double> breaks, double rel_tol = 1e-12);

// Dense polynomial c[0] + c[1] u + ... with exact derivative and root bracketing.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    double operator()(double u) const;
    Polynomial derivative() const;
    Polynomial antiderivative() const;  // zero at u = 0
    const std::vector<double>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    // Real roots in (a, b), sorted, found by sign changes on a fine sample plus bisection
    // on the derivative's monotone pieces.
    std::vector<double> roots_in(double a, double b) const;

    bool operator==(const Polynomial&) const = default;

private:
    std::vector<double> c_{0.0};
};

// G(u) = int_0^u g, tabulated on [lo, hi] and interpolated by cubic Hermite with exact g.
class TabulatedAntiderivative {
public:
    TabulatedAntiderivative() = default;
    TabulatedAntiderivative(std::function<double(double)> g, double lo, double hi,
                            std::size_t nodes, std::vector<double> breaks = {});

    double operator()(double u) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    std::function<double(double)> g_;
    double lo_ = 0.0, hi_ = 0.0, step_ = 1.0;
    std::vector<double> x_, val_, der_;
};

}  // namespace fcl
