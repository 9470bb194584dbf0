#include "fcl/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fcl/error.hpp"

namespace fcl {

namespace {

double pairwise_rec(const double* p, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += p[i];
        return s;
    }
    std::size_t m = n / 2;
    return pairwise_rec(p, m) + pairwise_rec(p + m, n - m);
}

}  // namespace

double pairwise_sum(std::span<const double> v) {
    return pairwise_rec(v.data(), v.size());
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
    double err = 0.0;
    double v;
    if (std::isfinite(a) && std::isfinite(b)) {
        // Boost 1.74 tests the unscaled local error against the scaled estimate, so short
        // intervals never converge. Mapping onto [-1, 1] keeps both on the same scale.
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        auto g = [&](double s) { return half * f(mid + half * s); };
        v = gk::integrate(g, -1.0, 1.0, 20, rel_tol, &err);
    } else {
        v = gk::integrate(f, a, b, 20, rel_tol, &err);
    }
    if (!std::isfinite(v)) throw InvariantViolation("quadrature produced a non-finite value");
    return v;
}

double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::vector<double> breaks, double rel_tol) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::vector<double> pts{a};
    std::sort(breaks.begin(), breaks.end());
    for (double x : breaks)
        if (x > a && x < b && x != pts.back()) pts.push_back(x);
    pts.push_back(b);
    std::vector<double> parts;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        parts.push_back(integrate(f, pts[k], pts[k + 1], rel_tol));
    return sign * pairwise_sum(parts);
}

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
    if (c_.empty()) c_.push_back(0.0);
}

double Polynomial::operator()(double u) const {
    double s = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) s = s * u + c_[k];
    return s;
}

Polynomial Polynomial::derivative() const {
    std::vector<double> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<double>(k));
    return Polynomial(d);
}

Polynomial Polynomial::antiderivative() const {
    std::vector<double> d{0.0};
    for (std::size_t k = 0; k < c_.size(); ++k) d.push_back(c_[k] / static_cast<double>(k + 1));
    return Polynomial(d);
}

std::vector<double> Polynomial::roots_in(double a, double b) const {
    std::vector<double> out;
    if (!(a < b) || degree() < 1) return out;
    // Monotone pieces are delimited by the critical points.
    std::vector<double> pts{a};
    for (double c : derivative().roots_in(a, b)) pts.push_back(c);
    pts.push_back(b);
    const Polynomial& p = *this;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        double lo = pts[k], hi = pts[k + 1];
        double flo = p(lo), fhi = p(hi);
        if (flo == 0.0) {
            if (lo > a && (out.empty() || out.back() != lo)) out.push_back(lo);
            continue;
        }
        if (fhi == 0.0 || (flo < 0) == (fhi < 0)) continue;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            double fm = p(mid);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((fm < 0) == (flo < 0)) lo = mid;
            else hi = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    // A critical point that is itself a root ends a piece with fhi == 0.
    if (!pts.empty()) {
        for (std::size_t k = 1; k + 1 < pts.size(); ++k)
            if (p(pts[k]) == 0.0 && std::find(out.begin(), out.end(), pts[k]) == out.end())
                out.push_back(pts[k]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

TabulatedAntiderivative::TabulatedAntiderivative(std::function<double(double)> g, double lo,
                                                 double hi, std::size_t nodes,
                                                 std::vector<double> breaks)
    : g_(std::move(g)), lo_(lo), hi_(hi) {
    if (!(hi > lo) || nodes < 2) throw DomainError("tabulation needs lo < hi and >= 2 nodes");
    step_ = (hi - lo) / static_cast<double>(nodes - 1);
    for (std::size_t k = 0; k < nodes; ++k) x_.push_back(lo + step_ * static_cast<double>(k));
    x_.back() = hi;
    for (double b : breaks)
        if (b > lo && b < hi) x_.push_back(b);
    if (0.0 > lo && 0.0 < hi) x_.push_back(0.0);
    std::sort(x_.begin(), x_.end());
    x_.erase(std::unique(x_.begin(), x_.end()), x_.end());

    // Values: integrate from 0 to lo, then cumulate cell by cell.
    val_.resize(x_.size());
    val_[0] = integrate_piecewise(g_, 0.0, x_[0], breaks);
    for (std::size_t k = 1; k < x_.size(); ++k)
        val_[k] = val_[k - 1] + integrate_piecewise(g_, x_[k - 1], x_[k], breaks);
    // One-sided slopes so that kinks at nodes are honoured: der_[2k] right of node k,
    // der_[2k+1] left of node k+1.
    der_.resize(2 * (x_.size() - 1));
    for (std::size_t k = 0; k + 1 < x_.size(); ++k) {
        der_[2 * k] = g_(std::nextafter(x_[k], x_[k + 1]));
        der_[2 * k + 1] = g_(std::nextafter(x_[k + 1], x_[k]));
    }
}

double TabulatedAntiderivative::operator()(double u) const {
    if (x_.empty()) return 0.0;
    if (u < lo_ || u > hi_) return integrate(g_, 0.0, u);
    auto it = std::upper_bound(x_.begin(), x_.end(), u);
    std::size_t k = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (k + 1 >= x_.size()) return val_.back();
    double x0 = x_[k], x1 = x_[k + 1], w = x1 - x0;
    double s = (u - x0) / w;
    double s2 = s * s, s3 = s2 * s;
    double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    return h00 * val_[k] + h10 * w * der_[2 * k] + h01 * val_[k + 1] + h11 * w * der_[2 * k + 1];
}

}  // namespace fcl
