#include "fcl/kinetic.hpp"

#include <algorithm>
#include <cmath>

#include "fcl/error.hpp"
#include "fcl/numerics.hpp"

namespace fcl {

int chi(double xi, double u) {
    if (0.0 < xi && xi < u) return 1;
    if (u < xi && xi < 0.0) return -1;
    return 0;
}

int sgn(double x) {
    return (x > 0.0) - (x < 0.0);
}

double char_conv(double xi, double a, double b) {
    if (xi == a || xi == b) return 0.5;
    return (std::min(a, b) < xi && xi < std::max(a, b)) ? 1.0 : 0.0;
}

double truncate(double u, double R) {
    if (!(R > 0.0)) throw DomainError("truncation level R must be > 0");
    return std::clamp(u, -R, R);
}

double chi_l1_distance(double u, double v) {
    double up = std::max(u, 0.0), um = std::max(-u, 0.0);
    double vp = std::max(v, 0.0), vm = std::max(-v, 0.0);
    return std::fabs(up - vp) + std::fabs(um - vm);
}

double F_functional(const Nonlinearity& A, double a, double b, double c, double d) {
    double lo = std::max(std::min(a, b), std::min(c, d));
    double hi = std::min(std::max(a, b), std::max(c, d));
    if (!(lo < hi)) return 0.0;
    return sgn(a - b) * sgn(c - d) * (A(hi) - A(lo));
}

double F_functional_quadrature(const Nonlinearity& A, double a, double b, double c, double d) {
    double lo = std::min({a, b, c, d, 0.0}), hi = std::max({a, b, c, d, 0.0});
    std::vector<double> breaks{a, b, c, d, 0.0};
    for (double k : A.kinks()) breaks.push_back(k);
    auto f = [&](double xi) {
        return A.derivative(xi) * (chi(xi, a) - chi(xi, b)) * (chi(xi, c) - chi(xi, d));
    };
    return integrate_piecewise(f, lo, hi, breaks);
}

double G_functional(const Nonlinearity& A, double a, double b, double c, double d) {
    return std::fabs(A(b) - A(c)) * char_conv(c, a, b) +
           std::fabs(A(d) - A(a)) * char_conv(a, c, d);
}

bool truncation_inequality_check(const Nonlinearity& A, double a, double b, double xi, double R) {
    double ta = truncate(a, R), tb = truncate(b, R), tx = truncate(xi, R);
    int inside = (-R < xi && xi < R) ? 1 : 0;
    bool first = inside * (chi(xi, a) - chi(xi, b)) == chi(xi, ta) - chi(xi, tb);
    double lhs = std::fabs(A(b) - A(tx)) * char_conv(tx, a, b);
    double rhs = std::fabs(A(tb) - A(tx)) * char_conv(tx, ta, tb);
    return first && lhs >= rhs;
}

double taylor_identity_residual(const Entropy& S, const Nonlinearity& A, double a, double b) {
    if (a == b) return 0.0;
    std::vector<double> breaks = A.kinks();
    breaks.push_back(0.0);
    double beta = integrate_piecewise([&](double x) { return S.d1(x) * A.derivative(x); }, a, b,
                                      breaks);
    double Ab = A(b);
    double lo = std::min(a, b), hi = std::max(a, b);
    double dissip = integrate_piecewise(
        [&](double x) { return S.d2(x) * std::fabs(Ab - A(x)); }, lo, hi, breaks);
    return std::fabs(S.d1(a) * (Ab - A(a)) - (beta - dissip));
}

}  // namespace fcl
