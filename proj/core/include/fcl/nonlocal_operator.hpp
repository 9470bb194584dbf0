#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fcl/grid.hpp"
#include "fcl/levy_kernel.hpp"

namespace fcl {

enum class Strategy { Direct, Fft };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

// Discrete g on a fixed grid of N cells:
//   (g f)_i = -sum_d K[d] (f_{i+d} - f_i) + kill_i f_i
// K[1] carries the small-jump surrogate sigma^2_r / (2 h^2). Periodic grids fold all jumps onto
// residues mod N (the remainder Lambda_cutoff spread evenly); zero-extension grids turn every jump
// that leaves the domain into the killing rate kill_i.
class NonlocalOperator {
public:
    NonlocalOperator(const WeightTable& table, std::size_t cells, Boundary boundary,
                     Strategy strategy = Strategy::Direct);

    std::size_t cells() const { return n_; }
    double h() const { return table_.h; }
    Boundary boundary() const { return boundary_; }
    Strategy strategy() const { return strategy_; }
    const WeightTable& table() const { return table_; }

    // Offsets d = 1..D, index d-1. Periodic: d = 1..N-1 (already symmetric, K[d] = K[N-d]).
    const std::vector<double>& kernel() const { return full_; }
    const std::vector<double>& jump_kernel() const { return jump_; }
    // Zero extension only, per cell; empty for periodic grids.
    const std::vector<double>& killing() const { return kill_full_; }
    const std::vector<double>& jump_killing() const { return kill_jump_; }
    // Periodic eigenvalues of g on e^{2 pi i k j / N}, k = 0..N/2.
    const std::vector<double>& eigenvalues() const { return eig_; }

    void apply(std::span<const double> f, std::span<double> out, bool jumps_only = false) const;
    GridFunction apply(const GridFunction& f, bool jumps_only = false) const;
    void apply_direct(std::span<const double> f, std::span<double> out,
                      bool jumps_only = false) const;

    // 1/2 h sum_i sum_d K (f_{i+d}-f_i)(f2_{i+d}-f2_i) + h sum_i kill_i f_i f2_i.
    double bilinear_form(const GridFunction& f, const GridFunction& f2) const;

private:
    struct Fft;
    void check(const GridFunction& f) const;
    void apply_fft(std::span<const double> f, std::span<double> out) const;

    WeightTable table_;
    std::size_t n_;
    Boundary boundary_;
    Strategy strategy_;
    std::vector<double> full_, jump_, kill_full_, kill_jump_, eig_;
    std::shared_ptr<const Fft> fft_;
};

// Free-function forms. The table's spacing must equal f.h().
GridFunction apply_g(const WeightTable& w, const GridFunction& f);
double bilinear_form(const WeightTable& w, const GridFunction& f, const GridFunction& f2);

// Defaults: split radius h; cutoff = periodic_images * length (periodic) or length (zero ext.).
WeightTable default_weights(const LevyMeasure& m, double h, std::size_t cells, Boundary b,
                            double split_radius = 0.0, double cutoff = 0.0,
                            int periodic_images = 64);

}  // namespace fcl
