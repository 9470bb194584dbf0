#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fcl/nonlinearity.hpp"
#include "fcl/scheme.hpp"

namespace fcl {

// Uniform xi nodes over [min - 0.1 range, max + 0.1 range], shifted by dxi (sqrt2 - 1) so that
// they avoid sampled u values.
struct XiGrid {
    std::vector<double> xi;
    double dxi = 0.0;
    double lo = 0.0, hi = 0.0;

    static XiGrid for_range(double umin, double umax, std::size_t points = 128);
    std::size_t size() const { return xi.size(); }
};

struct NField {
    std::size_t cells = 0;
    std::vector<double> values;     // row-major, values[i * xi.size() + k]
    double small_jump_bound = 0.0;  // bound on the omitted |z| <= r part of int n dxi, per x
    double at(std::size_t i, std::size_t k, std::size_t nxi) const { return values[i * nxi + k]; }
};

// n_i(xi) = sum_d K_d |A(u_{i+d}) - A(xi)| Char_{conv{u_i, u_{i+d}}}(xi) over the jump kernel.
NField compute_n(const GridFunction& u, const Nonlinearity& A, const NonlocalOperator& op,
                 const XiGrid& xi);

// nu(xi) = h sum (u0 - xi)^+ for xi >= 0, h sum (u0 - xi)^- for xi < 0.
double nu_bound(const GridFunction& u0, double xi);

struct DissipationField {
    XiGrid xi;
    std::size_t cells = 0;
    std::vector<double> times;                   // left end of each snapshot interval
    std::vector<double> dt;                      // interval lengths
    std::vector<std::size_t> field_interval;     // interval index of each kept field
    std::vector<std::vector<double>> n_values;   // per kept interval, cells x xi
    std::vector<std::vector<double>> m_values;   // per kept interval, cells x xi
    std::vector<double> small_jump_error_bound;  // per interval
    std::vector<double> nu;                      // per xi
    std::vector<double> slice;                   // h sum_t dt sum_x (m + n), per xi
    double min_n = 0.0;
    double min_m = 0.0;
    bool n_support_ok = true;  // n = 0 outside [min u - dxi, max u + dxi]
};

// m + n from the discrete kinetic equation between consecutive snapshots (spatial terms at the
// left snapshot, exact xi antiderivatives), minus n. Fields are kept for every keep_every-th
// interval; keep_every = 0 only accumulates slices and extrema.
DissipationField recover_m(const Trajectory& tr, const Solver& solver, const XiGrid& xi,
                           std::size_t keep_every = 1);

// phi(t, x) = cos^2(pi t / 2T) (1 - s^2)^3, s = (x - center) / half_width, unless custom is set.
struct TestFunction {
    double T = 1.0;
    double center = 0.0;
    double half_width = 1.0;
    std::function<double(double, double)> custom;

    double operator()(double t, double x) const;
    std::vector<double> sample(double t, const GridFunction& grid) const;
};

struct ResidualTerms {
    double time = 0.0;         // sum S(u^n)(phi^{n+1} - phi^n) h, including the final-time term
    double initial = 0.0;      // h sum S(u0) phi(0)
    double flux = 0.0;         // Engquist-Osher entropy flux against the phi differences
    double nonlocal = 0.0;     // -beta(u) g[phi]
    double dissipation = 0.0;  // -int S'' n phi
    double total() const { return time + initial + flux + nonlocal + dissipation; }
};

struct EntropyResidualEntry {
    std::string entropy;
    std::vector<double> times;     // snapshot times
    std::vector<double> partial;   // residual of the window [0, t]
    ResidualTerms terms;           // full window
    double value = 0.0;            // = terms.total()
};

struct EntropyResidualReport {
    std::vector<EntropyResidualEntry> entries;
    double worst = 0.0;  // min over all values and partials
};

// Discrete entropy inequality residual; >= 0 up to roundoff for the monotone scheme when every
// step is a snapshot.
EntropyResidualEntry entropy_residual(const Trajectory& tr, const Solver& solver,
                                      const EntropyTriple& triple, const TestFunction& phi);
EntropyResidualReport entropy_residuals(const Trajectory& tr, const Solver& solver,
                                        const std::vector<Entropy>& family,
                                        const TestFunction& phi);

// Smoothed Kruzhkov family at levels k in [umin, umax], delta = dxi.
std::vector<Entropy> kruzhkov_family(const XiGrid& xi, std::size_t levels, double umin,
                                     double umax);

// Kinetic weak form tested with phi(t,x) psi(xi), psi = S', every xi integral by quadrature.
// Matches entropy_residual for the same S.
double kinetic_weak_residual(const Trajectory& tr, const Solver& solver, const Entropy& S,
                             const TestFunction& phi);

struct BoundsReport {
    std::vector<double> xi, slice, nu;
    double slice_violation = 0.0;  // max(0, slice - nu)
    double quadratic_total = 0.0, quadratic_bound = 0.0, quadratic_violation = 0.0;
    double bilinear_total = 0.0, bilinear_bound = 0.0, bilinear_violation = 0.0;
    double h = 0.0, dt = 0.0;
};

BoundsReport xi_slice_bounds(const Trajectory& tr, const Solver& solver,
                             const DissipationField& field);

}  // namespace fcl
