#include "fcl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fcl/error.hpp"
#include "fcl/kinetic.hpp"
#include "fcl/numerics.hpp"

namespace fcl {

XiGrid XiGrid::for_range(double umin, double umax, std::size_t points) {
    if (points < 2) throw ConfigError("xi grid needs at least 2 points");
    double range = umax - umin;
    if (!(range > 0.0)) range = std::max(1.0, std::fabs(umax));
    XiGrid g;
    g.lo = umin - 0.1 * range;
    g.hi = umax + 0.1 * range;
    g.dxi = (g.hi - g.lo) / static_cast<double>(points);
    const double shift = std::numbers::sqrt2 - 1.0;
    for (std::size_t k = 0; k < points; ++k)
        g.xi.push_back(g.lo + (static_cast<double>(k) + shift) * g.dxi);
    return g;
}

namespace {

// Visits every jump partner (value, weight) of cell i for the jump kernel of op.
template <class Fn>
void for_each_partner(const GridFunction& u, const NonlocalOperator& op, std::size_t i, Fn&& fn) {
    const auto& k = op.jump_kernel();
    const std::size_t n = u.size();
    if (u.boundary() == Boundary::Periodic) {
        for (std::size_t d = 1; d < n; ++d) fn(u[(i + d) % n], k[d - 1]);
        return;
    }
    for (std::size_t d = 1; d <= k.size(); ++d) {
        if (i + d < n) fn(u[i + d], k[d - 1]);
        if (i >= d) fn(u[i - d], k[d - 1]);
    }
    fn(0.0, op.jump_killing()[i]);
}

double max_slope(const GridFunction& u) {
    double m = 0.0;
    long n = static_cast<long>(u.size());
    for (long i = 0; i < n; ++i) m = std::max(m, std::fabs(u.at(i + 1) - u.at(i)));
    return m / u.h();
}

std::pair<double, double> range_of(const std::vector<double>& v) {
    auto [a, b] = std::minmax_element(v.begin(), v.end());
    return {*a, *b};
}

// Operator used for xi-slices: FFT when periodic, else the solver's own.
NonlocalOperator slice_operator(const Solver& s) {
    if (s.model().domain.boundary == Boundary::Periodic && s.op().strategy() == Strategy::Direct)
        return NonlocalOperator(s.weights(), s.model().domain.cells, Boundary::Periodic,
                                Strategy::Fft);
    return s.op();
}

}  // namespace

NField compute_n(const GridFunction& u, const Nonlinearity& A, const NonlocalOperator& op,
                 const XiGrid& xi) {
    if (u.size() != op.cells() || u.h() != op.h()) throw ConfigError("grid does not match operator");
    const std::size_t n = u.size(), m = xi.size();
    NField f;
    f.cells = n;
    f.values.assign(n * m, 0.0);
    std::vector<double> axi(m);
    for (std::size_t k = 0; k < m; ++k) axi[k] = A(xi.xi[k]);
    const double x0 = xi.xi.empty() ? 0.0 : xi.xi.front();
    for (std::size_t i = 0; i < n; ++i) {
        const double ui = u[i];
        double* row = f.values.data() + i * m;
        for_each_partner(u, op, i, [&](double v, double w) {
            if (w == 0.0 || v == ui) return;
            double lo = std::min(ui, v), hi = std::max(ui, v);
            double a = std::floor((lo - x0) / xi.dxi), b = std::ceil((hi - x0) / xi.dxi);
            long k0 = std::max(0L, static_cast<long>(a));
            long k1 = std::min(static_cast<long>(m) - 1, static_cast<long>(b));
            const double av = A(v);
            for (long k = k0; k <= k1; ++k) {
                double c = char_conv(xi.xi[static_cast<std::size_t>(k)], ui, v);
                if (c > 0.0) row[k] += w * std::fabs(av - axi[static_cast<std::size_t>(k)]) * c;
            }
        });
    }
    auto [lo, hi] = range_of(u.values());
    f.small_jump_bound = A.lipschitz(lo, hi) * op.table().sigma2 * std::pow(max_slope(u), 2);
    return f;
}

double nu_bound(const GridFunction& u0, double xi) {
    std::vector<double> t(u0.size());
    for (std::size_t i = 0; i < u0.size(); ++i) {
        double d = u0[i] - xi;
        t[i] = xi >= 0.0 ? std::max(d, 0.0) : std::max(-d, 0.0);
    }
    return u0.h() * pairwise_sum(t);
}

DissipationField recover_m(const Trajectory& tr, const Solver& solver, const XiGrid& xi,
                           std::size_t keep_every) {
    if (tr.snapshots.size() < 2) throw ConfigError("recover_m needs at least 2 snapshots");
    const ModelSpec& model = solver.model();
    const Nonlinearity& A = model.diffusion;
    const EngquistOsher& eo = solver.eo();
    const NonlocalOperator gop = slice_operator(solver);
    const std::size_t n = model.domain.cells, m = xi.size();
    const double h = model.domain.h();
    const bool periodic = model.domain.boundary == Boundary::Periodic;
    DissipationField F;
    F.xi = xi;
    F.cells = n;
    F.slice.assign(m, 0.0);
    F.nu.resize(m);
    const GridFunction& u0 = tr.snapshots.front().u;
    for (std::size_t k = 0; k < m; ++k) F.nu[k] = nu_bound(u0, xi.xi[k]);
    F.min_n = INFINITY;
    F.min_m = INFINITY;

    // int_{-inf}^{xi} G'(z) chi(z; u) dz = G(u ^ xi) - G(0 ^ xi)
    auto anti = [](auto&& G, double u, double x) {
        if (x <= std::min(u, 0.0)) return 0.0;
        return G(std::min(u, x)) - G(std::min(0.0, x));
    };
    auto Fp = [&](double u) { return eo.plus(u); };
    auto Fm = [&](double u) { return eo.minus(u); };
    auto Ad = [&](double u) { return A(u); };
    auto Id = [](double u) { return u; };

    std::vector<std::vector<double>> slice_terms(m);
    std::vector<double> kp(n + 2), km(n + 2), ka(n), gka(n), mn(n), rowsum(n);
    for (std::size_t s = 0; s + 1 < tr.snapshots.size(); ++s) {
        const GridFunction& u = tr.snapshots[s].u;
        const GridFunction& v = tr.snapshots[s + 1].u;
        const double dt = tr.snapshots[s + 1].t - tr.snapshots[s].t;
        if (!(dt > 0.0)) continue;
        F.times.push_back(tr.snapshots[s].t);
        F.dt.push_back(dt);
        NField nf = compute_n(u, A, solver.op(), xi);
        F.small_jump_error_bound.push_back(nf.small_jump_bound);
        const bool keep_fields = keep_every > 0 && (F.dt.size() - 1) % keep_every == 0;
        std::vector<double> mfield;
        if (keep_fields) mfield.assign(n * m, 0.0);
        auto [ulo, uhi] = range_of(u.values());
        for (std::size_t k = 0; k < m; ++k) {
            const double x = xi.xi[k];
            for (std::size_t i = 0; i < n; ++i) {
                kp[i + 1] = anti(Fp, u[i], x);
                km[i + 1] = anti(Fm, u[i], x);
                ka[i] = anti(Ad, u[i], x);
            }
            if (periodic) {
                kp[0] = kp[n];
                km[n + 1] = km[1];
            } else {
                kp[0] = anti(Fp, 0.0, x);
                km[n + 1] = anti(Fm, 0.0, x);
            }
            gop.apply(ka, gka);
            for (std::size_t i = 0; i < n; ++i) {
                double time = (anti(Id, v[i], x) - anti(Id, u[i], x)) / dt;
                double flux = ((kp[i + 1] - kp[i]) + (km[i + 2] - km[i + 1])) / h;
                mn[i] = time + flux + gka[i];
                double nv = nf.values[i * m + k];
                F.min_n = std::min(F.min_n, nv);
                F.min_m = std::min(F.min_m, mn[i] - nv);
                if ((x < ulo - xi.dxi || x > uhi + xi.dxi) && nv != 0.0) F.n_support_ok = false;
                if (keep_fields) mfield[i * m + k] = mn[i] - nv;
            }
            slice_terms[k].push_back(h * dt * pairwise_sum(mn));
        }
        if (keep_fields) {
            F.field_interval.push_back(F.dt.size() - 1);
            F.n_values.push_back(std::move(nf.values));
            F.m_values.push_back(std::move(mfield));
        }
    }
    for (std::size_t k = 0; k < m; ++k) F.slice[k] = pairwise_sum(slice_terms[k]);
    return F;
}

double TestFunction::operator()(double t, double x) const {
    double v;
    if (custom) {
        v = custom(t, x);
    } else {
        double c = std::cos(0.5 * std::numbers::pi * t / T);
        double s = (x - center) / half_width;
        double q = std::fabs(s) < 1.0 ? 1.0 - s * s : 0.0;
        v = c * c * q * q * q;
    }
    if (v < 0.0 || std::isnan(v)) throw DomainError("test function must be nonnegative");
    return v;
}

std::vector<double> TestFunction::sample(double t, const GridFunction& grid) const {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = (*this)(t, grid.x(i));
    return v;
}

EntropyResidualEntry entropy_residual(const Trajectory& tr, const Solver& solver,
                                      const EntropyTriple& triple, const TestFunction& phi) {
    if (tr.snapshots.empty()) throw ConfigError("empty trajectory");
    const ModelSpec& model = solver.model();
    const NonlocalOperator& op = solver.op();
    const Entropy& S = triple.S();
    const std::size_t n = model.domain.cells;
    const double h = model.domain.h();
    const bool periodic = model.domain.boundary == Boundary::Periodic;
    EntropyResidualEntry e;
    e.entropy = S.name();

    std::vector<double> t_time, t_flux, t_nl, t_diss, tmp(n);
    const GridFunction& u0 = tr.snapshots.front().u;
    std::vector<double> phi0 = phi.sample(tr.snapshots.front().t, u0);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = S(u0[i]) * phi0[i];
    e.terms.initial = h * pairwise_sum(tmp);

    std::vector<double> g(n + 1), a(n), b(n), ga(n), gb(n), gphi(n), row(n);
    std::vector<double> phia = phi0;
    auto sum_of = [](const std::vector<double>& v) {
        return pairwise_sum(v);
    };
    for (std::size_t s = 0; s + 1 < tr.snapshots.size(); ++s) {
        const GridFunction& u = tr.snapshots[s].u;
        const GridFunction& un = tr.snapshots[s + 1].u;
        const double dt = tr.snapshots[s + 1].t - tr.snapshots[s].t;
        std::vector<double> phib = phi.sample(tr.snapshots[s + 1].t, u);

        for (std::size_t i = 0; i < n; ++i) row[i] = S(u[i]) * (phib[i] - phia[i]);
        t_time.push_back(h * sum_of(row));

        // g[k] = G_{k - 1/2}, k = 0..n
        auto val = [&](long i) { return u.at(i); };
        for (long k = 0; k <= static_cast<long>(n); ++k)
            g[static_cast<std::size_t>(k)] = triple.q_plus(val(k - 1)) + triple.q_minus(val(k));
        for (std::size_t i = 0; i < n; ++i) row[i] = phib[i] * (g[i + 1] - g[i]);
        t_flux.push_back(-dt * sum_of(row));

        op.apply(phib, gphi);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = model.diffusion(u[i]);
            b[i] = triple.beta(u[i]);
            row[i] = b[i] * gphi[i];
        }
        t_nl.push_back(-dt * h * sum_of(row));

        op.apply(a, ga, true);
        op.apply(b, gb, true);
        for (std::size_t i = 0; i < n; ++i) row[i] = phib[i] * (S.d1(u[i]) * ga[i] - gb[i]);
        t_diss.push_back(-dt * h * sum_of(row));

        for (std::size_t i = 0; i < n; ++i) tmp[i] = S(un[i]) * phib[i];
        double final_term = -h * pairwise_sum(tmp);
        e.times.push_back(tr.snapshots[s + 1].t);
        e.partial.push_back(pairwise_sum(t_time) + final_term + e.terms.initial +
                            pairwise_sum(t_flux) + pairwise_sum(t_nl) + pairwise_sum(t_diss));
        phia = std::move(phib);
        (void)periodic;
    }
    const GridFunction& uM = tr.snapshots.back().u;
    for (std::size_t i = 0; i < n; ++i) tmp[i] = S(uM[i]) * phia[i];
    t_time.push_back(-h * pairwise_sum(tmp));
    e.terms.time = pairwise_sum(t_time);
    e.terms.flux = pairwise_sum(t_flux);
    e.terms.nonlocal = pairwise_sum(t_nl);
    e.terms.dissipation = pairwise_sum(t_diss);
    e.value = e.terms.total();
    return e;
}

EntropyResidualReport entropy_residuals(const Trajectory& tr, const Solver& solver,
                                        const std::vector<Entropy>& family,
                                        const TestFunction& phi) {
    EntropyResidualReport r;
    r.worst = INFINITY;
    for (const Entropy& S : family) {
        EntropyTriple triple(S, solver.model().flux, solver.model().diffusion, solver.umin(),
                             solver.umax());
        r.entries.push_back(entropy_residual(tr, solver, triple, phi));
        r.worst = std::min(r.worst, r.entries.back().value);
        for (double p : r.entries.back().partial) r.worst = std::min(r.worst, p);
    }
    return r;
}

std::vector<Entropy> kruzhkov_family(const XiGrid& xi, std::size_t levels, double umin,
                                     double umax) {
    std::vector<Entropy> out;
    for (std::size_t j = 0; j < levels; ++j) {
        double k = umin + (umax - umin) * (static_cast<double>(j) + 0.5) / static_cast<double>(levels);
        out.push_back(Entropy::smooth_kruzhkov(k, xi.dxi));
    }
    return out;
}

double kinetic_weak_residual(const Trajectory& tr, const Solver& solver, const Entropy& S,
                             const TestFunction& phi) {
    if (tr.snapshots.empty()) throw ConfigError("empty trajectory");
    const ModelSpec& model = solver.model();
    const Nonlinearity& A = model.diffusion;
    const Flux& F = model.flux;
    const NonlocalOperator& op = solver.op();
    const std::size_t n = model.domain.cells;
    const double h = model.domain.h();
    const bool periodic = model.domain.boundary == Boundary::Periodic;
    std::vector<double> breaks = A.kinks();
    for (double t : F.turning_points(solver.eo().lo(), solver.eo().hi())) breaks.push_back(t);
    breaks.push_back(0.0);

    // int psi(xi) w(xi) chi(xi; u) dxi
    auto kin = [&](auto&& w, double u) {
        if (u == 0.0) return 0.0;
        double sgn = u > 0.0 ? 1.0 : -1.0;
        return sgn * integrate_piecewise([&](double x) { return S.d1(x) * w(x); }, std::min(u, 0.0),
                                         std::max(u, 0.0), breaks);
    };
    auto one = [](double) { return 1.0; };
    auto fplus = [&](double x) { return std::max(F.derivative(x), 0.0); };
    auto fminus = [&](double x) { return std::min(F.derivative(x), 0.0); };
    auto adash = [&](double x) { return A.derivative(x); };
    auto ndiss = [&](double a, double v) {
        if (a == v) return 0.0;
        double Av = A(v);
        std::vector<double> br = breaks;
        br.push_back(a);
        br.push_back(v);
        return integrate_piecewise([&](double x) { return S.d2(x) * std::fabs(Av - A(x)); },
                                   std::min(a, v), std::max(a, v), br);
    };

    std::vector<double> terms, row(n), gphi(n), g(n + 1);
    const GridFunction& u0 = tr.snapshots.front().u;
    std::vector<double> phia = phi.sample(tr.snapshots.front().t, u0);
    for (std::size_t i = 0; i < n; ++i) row[i] = kin(one, u0[i]) * phia[i];
    terms.push_back(h * pairwise_sum(row));
    for (std::size_t s = 0; s + 1 < tr.snapshots.size(); ++s) {
        const GridFunction& u = tr.snapshots[s].u;
        const double dt = tr.snapshots[s + 1].t - tr.snapshots[s].t;
        std::vector<double> phib = phi.sample(tr.snapshots[s + 1].t, u);
        for (std::size_t i = 0; i < n; ++i) row[i] = kin(one, u[i]) * (phib[i] - phia[i]);
        terms.push_back(h * pairwise_sum(row));
        for (long k = 0; k <= static_cast<long>(n); ++k)
            g[static_cast<std::size_t>(k)] = kin(fplus, u.at(k - 1)) + kin(fminus, u.at(k));
        if (periodic) {
            for (std::size_t i = 0; i < n; ++i) row[i] = g[i + 1] * (phib[(i + 1) % n] - phib[i]);
        } else {
            for (std::size_t i = 0; i < n; ++i) row[i] = -phib[i] * (g[i + 1] - g[i]);
        }
        terms.push_back(dt * pairwise_sum(row));
        op.apply(phib, gphi);
        for (std::size_t i = 0; i < n; ++i) row[i] = kin(adash, u[i]) * gphi[i];
        terms.push_back(-dt * h * pairwise_sum(row));
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> parts;
            for_each_partner(u, op, i,
                             [&](double v, double w) { parts.push_back(w * ndiss(u[i], v)); });
            row[i] = phib[i] * pairwise_sum(parts);
        }
        terms.push_back(-dt * h * pairwise_sum(row));
        phia = std::move(phib);
    }
    const GridFunction& uM = tr.snapshots.back().u;
    for (std::size_t i = 0; i < n; ++i) row[i] = kin(one, uM[i]) * phia[i];
    terms.push_back(-h * pairwise_sum(row));
    return pairwise_sum(terms);
}

BoundsReport xi_slice_bounds(const Trajectory& tr, const Solver& solver,
                             const DissipationField& field) {
    BoundsReport r;
    const ModelSpec& model = solver.model();
    const double h = model.domain.h();
    r.h = h;
    r.dt = tr.dt;
    r.xi = field.xi.xi;
    r.slice = field.slice;
    r.nu = field.nu;
    for (std::size_t k = 0; k < r.xi.size(); ++k)
        r.slice_violation = std::max(r.slice_violation, r.slice[k] - r.nu[k]);
    std::vector<double> q(r.slice.size());
    for (std::size_t k = 0; k < q.size(); ++k) q[k] = r.slice[k] * field.xi.dxi;
    r.quadratic_total = pairwise_sum(q);
    const GridFunction& u0 = tr.snapshots.front().u;
    std::vector<double> sq(u0.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = u0[i] * u0[i];
    r.quadratic_bound = 0.5 * h * pairwise_sum(sq);
    r.quadratic_violation = std::max(0.0, r.quadratic_total - r.quadratic_bound);

    const Nonlinearity& A = model.diffusion;
    const NonlocalOperator gop = slice_operator(solver);
    std::vector<double> parts, a(u0.size()), ga(u0.size()), row(u0.size());
    for (std::size_t s = 0; s + 1 < tr.snapshots.size(); ++s) {
        const GridFunction& u = tr.snapshots[s].u;
        double dt = tr.snapshots[s + 1].t - tr.snapshots[s].t;
        for (std::size_t i = 0; i < u.size(); ++i) a[i] = A(u[i]);
        gop.apply(a, ga);
        for (std::size_t i = 0; i < u.size(); ++i) row[i] = a[i] * ga[i];
        parts.push_back(dt * h * pairwise_sum(row));
    }
    r.bilinear_total = pairwise_sum(parts);
    std::vector<double> br = A.kinks();
    br.push_back(0.0);
    for (std::size_t i = 0; i < u0.size(); ++i)
        sq[i] = std::fabs(integrate_piecewise([&](double x) { return A(x); }, 0.0, u0[i], br));
    r.bilinear_bound = h * pairwise_sum(sq);
    r.bilinear_violation = std::max(0.0, r.bilinear_total - r.bilinear_bound);
    return r;
}

}  // namespace fcl
