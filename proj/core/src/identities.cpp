#include "fcl/identities.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "fcl/kinetic.hpp"
#include "fcl/numerics.hpp"

namespace fcl {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

double SweepRng::real() {
    if (uniform(0.0, 1.0) < 0.25) return 0.5 * (static_cast<double>(index(7)) - 3.0);
    return uniform(-5.0, 5.0);
}

Entropy SweepRng::convex_polynomial() {
    // (p + q u)^2 terms, then c_2 u^2 + c_4 u^4 + c_6 u^6; optional linear part.
    std::vector<double> c(7, 0.0);
    std::size_t squares = index(3);
    for (std::size_t k = 0; k < squares; ++k) {
        double p = uniform(-1.0, 1.0), q = uniform(-1.0, 1.0);
        c[0] += p * p;
        c[1] += 2.0 * p * q;
        c[2] += q * q;
    }
    std::size_t degree = 2 * (1 + index(3));
    for (std::size_t d = 2; d <= degree; d += 2) c[d] += uniform(0.0, 1.0) / static_cast<double>(d * d * d);
    c[1] += uniform(-1.0, 1.0);
    return Entropy::polynomial(c);
}

Nonlinearity SweepRng::piecewise_linear() {
    std::size_t k = 1 + index(4);
    std::vector<double> b;
    for (std::size_t i = 0; i < k; ++i) b.push_back(uniform(-4.0, 4.0));
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    std::vector<double> s;
    for (std::size_t i = 0; i <= b.size(); ++i) s.push_back(index(4) == 0 ? 0.0 : uniform(0.0, 3.0));
    return Nonlinearity::piecewise_linear(b, s);
}

std::vector<Nonlinearity> sweep_nonlinearities(SweepRng& rng) {
    return {Nonlinearity::identity(), Nonlinearity::power(2.0), Nonlinearity::power(3.0),
            rng.piecewise_linear(), Nonlinearity::zero()};
}

SweepResult chi_identity_sweep(std::size_t n, std::uint64_t seed) {
    auto t0 = Clock::now();
    SweepRng rng(seed);
    SweepResult r{"chi identities sgn(xi)chi = |chi| = chi^2", n, 0, 0.0, 0.0, 0.0, {}};
    for (std::size_t k = 0; k < n; ++k) {
        double xi = rng.real(), u = rng.real();
        int c = chi(xi, u);
        int a = sgn(xi) * c, b = c < 0 ? -c : c, q = c * c;
        if (a != b || b != q) ++r.violations;
    }
    r.seconds = seconds_since(t0);
    return r;
}

SweepResult isometry_sweep(std::size_t n, std::uint64_t seed) {
    auto t0 = Clock::now();
    SweepRng rng(seed);
    SweepResult r{"isometry int|chi(u)-chi(v)| = |u-v|", n, 0, 0.0, 1e-12, 0.0, {}};
    for (std::size_t k = 0; k < n; ++k) {
        double u = rng.real(), v = rng.real();
        double e = std::fabs(chi_l1_distance(u, v) - std::fabs(u - v));
        r.worst = std::max(r.worst, e);
        if (e > r.tolerance) ++r.violations;
    }
    r.seconds = seconds_since(t0);
    return r;
}

SweepResult representation_sweep(std::size_t n, std::uint64_t seed) {
    auto t0 = Clock::now();
    SweepRng rng(seed);
    SweepResult r{"representation S(u)-S(0) = int S' chi", n, 0, 0.0, 1e-8, 0.0, {}};
    for (std::size_t k = 0; k < n; ++k) {
        Entropy S = rng.convex_polynomial();
        double u = rng.real();
        double q = integrate_piecewise([&](double x) { return S.d1(x) * chi(x, u); },
                                       std::min(u, 0.0), std::max(u, 0.0), {0.0});
        double e = std::fabs((S(u) - S(0.0)) - q);
        r.worst = std::max(r.worst, e);
        if (e > r.tolerance) ++r.violations;
    }
    r.seconds = seconds_since(t0);
    return r;
}

SweepResult taylor_sweep(std::size_t n, std::uint64_t seed) {
    auto t0 = Clock::now();
    SweepRng rng(seed);
    SweepResult r{"Taylor identity residual", n, 0, 0.0, 1e-8, 0.0, {}};
    for (std::size_t k = 0; k < n; ++k) {
        Entropy S = rng.convex_polynomial();
        auto family = sweep_nonlinearities(rng);
        const Nonlinearity& A = family[k % family.size()];
        double a = rng.real(), b = rng.real();
        double e = taylor_identity_residual(S, A, a, b);
        r.worst = std::max(r.worst, e);
        if (!(e <= r.tolerance)) ++r.violations;
    }
    r.seconds = seconds_since(t0);
    return r;
}

SweepResult f_le_g_sweep(std::size_t n, std::uint64_t seed) {
    auto t0 = Clock::now();
    SweepRng rng(seed);
    auto family = sweep_nonlinearities(rng);
    SweepResult r{"F <= G and F, G symmetry", n * family.size(), 0, 0.0, 1e-12, 0.0, {}};
    std::size_t equal = 0, symmetry = 0;
    double min_margin = INFINITY;
    for (const Nonlinearity& A : family) {
        for (std::size_t k = 0; k < n; ++k) {
            double a = rng.real(), b = rng.real(), c = rng.real(), d = rng.real();
            double F = F_functional(A, a, b, c, d), G = G_functional(A, a, b, c, d);
            if (F != F_functional(A, c, d, a, b) || G != G_functional(A, c, d, a, b)) ++symmetry;
            double margin = G - F;
            min_margin = std::min(min_margin, margin);
            if (margin == 0.0) ++equal;
            r.worst = std::max(r.worst, -margin);
            if (F > G + r.tolerance) ++r.violations;
        }
    }
    r.violations += symmetry;
    std::ostringstream s;
    s << "equality cases " << equal << ", min margin " << min_margin << ", symmetry failures "
      << symmetry;
    r.detail = s.str();
    r.seconds = seconds_since(t0);
    return r;
}

SweepResult f_quadrature_sweep(std::size_t n, std::uint64_t seed) {
    auto t0 = Clock::now();
    SweepRng rng(seed);
    SweepResult r{"F closed form vs quadrature", n, 0, 0.0, 1e-8, 0.0, {}};
    for (std::size_t k = 0; k < n; ++k) {
        auto family = sweep_nonlinearities(rng);
        const Nonlinearity& A = family[k % family.size()];
        double a = rng.real(), b = rng.real(), c = rng.real(), d = rng.real();
        double e = std::fabs(F_functional(A, a, b, c, d) - F_functional_quadrature(A, a, b, c, d));
        r.worst = std::max(r.worst, e);
        if (!(e <= r.tolerance)) ++r.violations;
    }
    r.seconds = seconds_since(t0);
    return r;
}

SweepResult truncation_sweep(std::size_t n, std::uint64_t seed) {
    auto t0 = Clock::now();
    SweepRng rng(seed);
    auto family = sweep_nonlinearities(rng);
    SweepResult r{"truncation inequalities", n, 0, 0.0, 0.0, 0.0, {}};
    for (std::size_t k = 0; k < n; ++k) {
        const Nonlinearity& A = family[k % family.size()];
        double a = rng.real(), b = rng.real(), xi = rng.real();
        double R = std::fabs(rng.real());
        if (R == 0.0) R = 0.5;
        if (!truncation_inequality_check(A, a, b, xi, R)) ++r.violations;
    }
    r.seconds = seconds_since(t0);
    return r;
}

std::vector<SweepResult> verify_identities(const IdentityOptions& opt) {
    return {
        chi_identity_sweep(opt.chi_samples, opt.seed),
        isometry_sweep(opt.chi_samples, opt.seed + 1),
        representation_sweep(opt.representation_samples, opt.seed + 2),
        taylor_sweep(opt.taylor_samples, opt.seed + 3),
        f_le_g_sweep(opt.fg_samples, opt.seed + 4),
        f_quadrature_sweep(opt.fg_quadrature_samples, opt.seed + 5),
        truncation_sweep(opt.truncation_samples, opt.seed + 6),
    };
}

}  // namespace fcl
