#include "fcl/grid.hpp"

#include <cmath>

#include "fcl/error.hpp"
#include "fcl/numerics.hpp"

namespace fcl {

std::string to_string(Boundary b) {
    return b == Boundary::Periodic ? "periodic" : "zero";
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "periodic") return Boundary::Periodic;
    if (s == "zero") return Boundary::ZeroExtension;
    throw ConfigError("boundary must be periodic or zero, got '" + s + "'");
}

GridFunction::GridFunction(std::vector<double> values, double h, double x0, Boundary boundary)
    : v_(std::move(values)), h_(h), x0_(x0), b_(boundary) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("grid spacing must be > 0");
    if (v_.empty()) throw ConfigError("grid function needs at least one cell");
    check_finite();
}

double GridFunction::at(long i) const {
    long n = static_cast<long>(v_.size());
    if (i >= 0 && i < n) return v_[static_cast<std::size_t>(i)];
    if (b_ == Boundary::ZeroExtension) return 0.0;
    long k = i % n;
    if (k < 0) k += n;
    return v_[static_cast<std::size_t>(k)];
}

bool GridFunction::same_grid(const GridFunction& o) const {
    return v_.size() == o.v_.size() && h_ == o.h_ && x0_ == o.x0_ && b_ == o.b_;
}

void GridFunction::check_finite() const {
    for (std::size_t i = 0; i < v_.size(); ++i)
        if (!std::isfinite(v_[i]))
            throw DomainError("non-finite grid value at index " + std::to_string(i));
}

double GridFunction::integral() const {
    return h_ * pairwise_sum(v_);
}

double GridFunction::l1_norm() const {
    std::vector<double> a(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) a[i] = std::fabs(v_[i]);
    return h_ * pairwise_sum(a);
}

}  // namespace fcl
