#pragma once

// Independent reference computations used by the tests. Nothing here calls the library's
// closed forms; only densities and raw weight tables are read.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

namespace oracle {

// Finite-interval adaptive quadrature: bisection driven by the GK31 error estimate of each piece,
// with the tolerance shared out by length and a roundoff floor on each piece.
inline double quad_piece(const std::function<double(double)>& f, double a, double b, double abs_tol,
                         int depth) {
    using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double err = 0.0, l1 = 0.0;
    double v = gk::integrate([&](double s) { return half * f(mid + half * s); }, -1.0, 1.0, 0, 0.0, &err, &l1);
    if (depth == 0 || err <= abs_tol || err <= 64.0 * 2.2e-16 * l1) return v;
    return quad_piece(f, a, mid, 0.5 * abs_tol, depth - 1) + quad_piece(f, mid, b, 0.5 * abs_tol, depth - 1);
}

inline double quad(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
    if (a == b) return 0.0;
    using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double err = 0.0, l1 = 0.0;
    double first = gk::integrate([&](double s) { return half * f(mid + half * s); }, -1.0, 1.0, 0, 0.0, &err, &l1);
    double scale = std::max(std::fabs(first), 1e-300);
    return quad_piece(f, a, b, tol * scale, 40);
}

// int_a^inf rho(z) dz for a > 0 through z = a / s^2, graded towards s = 0.
inline double tail_integral(const std::function<double(double)>& rho, double a) {
    auto mapped = [&](double s) { return rho(a / (s * s)) * 2.0 * a / (s * s * s); };
    double t = 0.0;
    for (double b = 1.0; b > 1e-12; b *= 0.5) t += quad(mapped, 0.5 * b, b);
    return t;
}

// Levy symbol psi(k) = 2 int_0^inf (1 - cos kz) rho(z) dz for an even density rho. The part below
// a = 2 pi M / k is done by Gauss-Kronrod on periods, the tail by Ooura's oscillatory rules.
inline double levy_symbol(const std::function<double(double)>& rho, double k, int periods = 64) {
    const double p = 2.0 * std::numbers::pi / k;
    const double a = periods * p;
    // 1 - cos kz = 2 sin^2(kz / 2) avoids cancellation near 0
    auto f = [&](double z) {
        double sn = std::sin(0.5 * k * z);
        return 2.0 * sn * sn * rho(z);
    };
    double near = 0.0;
    // geometric grading towards the singularity at 0
    double lo = p * std::pow(2.0, -60);
    near += quad(f, 0.0, lo);
    for (double hi = 2.0 * lo; hi < p; lo = hi, hi *= 2.0)
        near += quad(f, lo, hi);
    for (int m = 0; m < periods; ++m) {
        double s = std::max(lo, m * p), e = (m + 1) * p;
        if (e > s) near += quad(f, s, e);
    }
    // tail: int_a^inf rho - int_a^inf cos(kz) rho, with z = a + t and cos(k a) = 1
    auto shifted = [&](double t) { return rho(a + t); };
    double mass = tail_integral(rho, a);
    boost::math::quadrature::ooura_fourier_cos<double> oc;
    double c = oc.integrate(shifted, k).first;
    return 2.0 * (near + mass - c);
}

// Brute-force periodic operator straight from a raw weight table: every offset j <= len(weights)
// is wrapped explicitly, the small-jump surrogate is sigma2 / (2 h^2) times the second
// difference, and the remainder mass is spread over all N residues.
inline std::vector<double> periodic_apply(const std::vector<double>& f, double h,
                                          const std::vector<double>& w, double sigma2,
                                          double remainder) {
    const long n = static_cast<long>(f.size());
    std::vector<double> out(f.size());
    double total = 0.0;
    for (double v : f) total += v;
    for (long i = 0; i < n; ++i) {
        auto at = [&](long j) { return f[static_cast<std::size_t>(((j % n) + n) % n)]; };
        double s = -sigma2 / (2.0 * h * h) * (at(i + 1) - 2.0 * at(i) + at(i - 1));
        for (std::size_t j = 1; j <= w.size(); ++j) {
            long d = static_cast<long>(j);
            s -= w[j - 1] * (at(i + d) - at(i)) + w[j - 1] * (at(i - d) - at(i));
        }
        s -= remainder / static_cast<double>(n) * (total - static_cast<double>(n) * at(i));
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

// Zero-extension operator from a raw table: values outside [0, N) are 0 and jumps beyond the
// table are lost at rate `remainder`.
inline std::vector<double> zero_apply(const std::vector<double>& f, double h,
                                      const std::vector<double>& w, double sigma2,
                                      double remainder) {
    const long n = static_cast<long>(f.size());
    std::vector<double> out(f.size());
    for (long i = 0; i < n; ++i) {
        auto at = [&](long j) { return j < 0 || j >= n ? 0.0 : f[static_cast<std::size_t>(j)]; };
        double s = -sigma2 / (2.0 * h * h) * (at(i + 1) - 2.0 * at(i) + at(i - 1));
        for (std::size_t j = 1; j <= w.size(); ++j) {
            long d = static_cast<long>(j);
            s -= w[j - 1] * (at(i + d) - at(i)) + w[j - 1] * (at(i - d) - at(i));
        }
        s += remainder * at(i);
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

// n_i(xi) by direct double loop over all pairs of a periodic grid.
inline double n_value(const std::vector<double>& u, const std::vector<double>& kernel,
                      const std::function<double(double)>& A, std::size_t i, double xi) {
    const std::size_t n = u.size();
    double s = 0.0;
    for (std::size_t d = 1; d <= kernel.size(); ++d) {
        double b = u[(i + d) % n];
        double a = u[i];
        double lo = std::min(a, b), hi = std::max(a, b);
        double c = (xi > lo && xi < hi) ? 1.0 : (xi == a || xi == b) ? 0.5 : 0.0;
        if (a == b) c = (xi == a) ? 0.5 : 0.0;
        s += kernel[d - 1] * std::fabs(A(b) - A(xi)) * c;
    }
    return s;
}

}  // namespace oracle
