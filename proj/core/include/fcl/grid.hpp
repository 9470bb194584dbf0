#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fcl {

enum class Boundary { Periodic, ZeroExtension };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

// Cell-centred samples x_i = x0 + (i + 1/2) h on [x0, x0 + N h).
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(std::vector<double> values, double h, double x0, Boundary boundary);

    std::size_t size() const { return v_.size(); }
    double h() const { return h_; }
    double x0() const { return x0_; }
    double length() const { return h_ * static_cast<double>(v_.size()); }
    Boundary boundary() const { return b_; }
    double x(std::size_t i) const { return x0_ + (static_cast<double>(i) + 0.5) * h_; }

    double operator[](std::size_t i) const { return v_[i]; }
    double& operator[](std::size_t i) { return v_[i]; }
    // Index may be outside [0, N): wraps for Periodic, 0 for ZeroExtension.
    double at(long i) const;

    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

    bool same_grid(const GridFunction& o) const;
    void check_finite() const;

    double integral() const;  // h * sum u_i
    double l1_norm() const;   // h * sum |u_i|

private:
    std::vector<double> v_;
    double h_ = 1.0;
    double x0_ = 0.0;
    Boundary b_ = Boundary::Periodic;
};

}  // namespace fcl
