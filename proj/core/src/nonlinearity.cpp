#include "fcl/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fcl/error.hpp"

namespace fcl {

Nonlinearity Nonlinearity::identity() {
    Nonlinearity a;
    a.kind_ = Kind::Identity;
    return a;
}

Nonlinearity Nonlinearity::zero() {
    return Nonlinearity{};
}

Nonlinearity Nonlinearity::power(double m) {
    if (!(m >= 1.0) || !std::isfinite(m)) throw ConfigError("power exponent m >= 1 required");
    Nonlinearity a;
    a.kind_ = Kind::Power;
    a.m_ = m;
    return a;
}

Nonlinearity Nonlinearity::piecewise_linear(std::vector<double> breaks, std::vector<double> slopes) {
    if (slopes.size() != breaks.size() + 1)
        throw ConfigError("piecewise diffusion needs one more slope than breakpoints");
    for (std::size_t k = 0; k < breaks.size(); ++k) {
        if (!std::isfinite(breaks[k])) throw ConfigError("breakpoints must be finite");
        if (k > 0 && !(breaks[k] > breaks[k - 1]))
            throw ConfigError("breakpoints must increase strictly");
    }
    for (double s : slopes)
        if (!(s >= 0.0) || !std::isfinite(s)) throw ConfigError("slopes must be finite and >= 0");
    Nonlinearity a;
    a.kind_ = Kind::PiecewiseLinear;
    a.breaks_ = std::move(breaks);
    a.slopes_ = std::move(slopes);
    const auto& b = a.breaks_;
    const auto& s = a.slopes_;
    std::size_t z = static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), 0.0) - b.begin());
    a.zero_segment_ = z;
    a.anchor_.assign(s.size(), 0.0);
    // Segment k covers [b_{k-1}, b_k). Right of zero anchor at the left break, left of zero at
    // the right break, so that neighbouring formulas agree exactly at every break.
    for (std::size_t k = z + 1; k < s.size(); ++k) {
        double prev = (k - 1 == z) ? s[z] * b[k - 1]
                                   : a.anchor_[k - 1] + s[k - 1] * (b[k - 1] - b[k - 2]);
        a.anchor_[k] = prev;
    }
    for (std::size_t k = z; k-- > 0;) {
        double next = (k + 1 == z) ? s[z] * b[k] : a.anchor_[k + 1] + s[k + 1] * (b[k] - b[k + 1]);
        a.anchor_[k] = next;
    }
    return a;
}

double Nonlinearity::operator()(double u) const {
    switch (kind_) {
    case Kind::Zero:
        return 0.0;
    case Kind::Identity:
        return u;
    case Kind::Power: {
        double r = std::fabs(u);
        double p;
        if (m_ == std::floor(m_) && m_ <= 32.0) {
            p = r;
            for (int k = 1; k < static_cast<int>(m_); ++k) p *= r;
        } else {
            p = std::pow(r, m_);
        }
        return u < 0.0 ? -p : p;
    }
    case Kind::PiecewiseLinear: {
        std::size_t k = static_cast<std::size_t>(
            std::upper_bound(breaks_.begin(), breaks_.end(), u) - breaks_.begin());
        if (k == zero_segment_) return slopes_[k] * u;
        if (k > zero_segment_) return anchor_[k] + slopes_[k] * (u - breaks_[k - 1]);
        return anchor_[k] + slopes_[k] * (u - breaks_[k]);
    }
    }
    return 0.0;
}

double Nonlinearity::derivative(double u) const {
    switch (kind_) {
    case Kind::Zero:
        return 0.0;
    case Kind::Identity:
        return 1.0;
    case Kind::Power:
        return m_ == 1.0 ? 1.0 : m_ * std::pow(std::fabs(u), m_ - 1.0);
    case Kind::PiecewiseLinear: {
        std::size_t k = static_cast<std::size_t>(
            std::upper_bound(breaks_.begin(), breaks_.end(), u) - breaks_.begin());
        return slopes_[k];
    }
    }
    return 0.0;
}

double Nonlinearity::lipschitz(double lo, double hi) const {
    switch (kind_) {
    case Kind::Zero:
        return 0.0;
    case Kind::Identity:
        return 1.0;
    case Kind::Power:
        return m_ * std::pow(std::max(std::fabs(lo), std::fabs(hi)), m_ - 1.0);
    case Kind::PiecewiseLinear: {
        double l = 0.0;
        for (std::size_t k = 0; k < slopes_.size(); ++k) {
            double a = k == 0 ? -INFINITY : breaks_[k - 1];
            double b = k == breaks_.size() ? INFINITY : breaks_[k];
            if (b >= lo && a <= hi) l = std::max(l, slopes_[k]);
        }
        return l;
    }
    }
    return 0.0;
}

std::vector<double> Nonlinearity::kinks() const {
    if (kind_ == Kind::PiecewiseLinear) return breaks_;
    if (kind_ == Kind::Power && m_ < 2.0 && m_ != 1.0) return {0.0};
    return {};
}

std::string Nonlinearity::name() const {
    std::ostringstream s;
    switch (kind_) {
    case Kind::Zero:
        return "zero";
    case Kind::Identity:
        return "identity";
    case Kind::Power:
        s << "power(" << m_ << ")";
        return s.str();
    case Kind::PiecewiseLinear:
        return "piecewise";
    }
    return "?";
}

Flux::Flux(Polynomial p, std::string name)
    : p_(std::move(p)), dp_(p_.derivative()), name_(std::move(name)) {}

Flux Flux::burgers() {
    return Flux(Polynomial({0.0, 0.0, 0.5}), "burgers");
}

Flux Flux::linear(double speed) {
    if (!std::isfinite(speed)) throw ConfigError("flux speed must be finite");
    return Flux(Polynomial({0.0, speed}), "linear");
}

Flux Flux::polynomial(std::vector<double> coeffs) {
    for (double c : coeffs)
        if (!std::isfinite(c)) throw ConfigError("flux coefficients must be finite");
    return Flux(Polynomial(std::move(coeffs)), "poly");
}

Flux Flux::zero() {
    return Flux(Polynomial({0.0}), "zero");
}

double Flux::lipschitz(double lo, double hi) const {
    double l = std::max(std::fabs(dp_(lo)), std::fabs(dp_(hi)));
    for (double c : dp_.derivative().roots_in(lo, hi)) l = std::max(l, std::fabs(dp_(c)));
    return l;
}

std::vector<double> Flux::turning_points(double lo, double hi) const {
    return dp_.roots_in(lo, hi);
}

Entropy Entropy::polynomial(std::vector<double> coeffs) {
    Entropy e;
    e.kind_ = Kind::Polynomial;
    e.p_ = Polynomial(std::move(coeffs));
    e.dp_ = e.p_.derivative();
    e.ddp_ = e.dp_.derivative();
    return e;
}

Entropy Entropy::quadratic() {
    return polynomial({0.0, 0.0, 1.0});
}

Entropy Entropy::linear(double slope) {
    return polynomial({0.0, slope});
}

Entropy Entropy::smooth_kruzhkov(double k, double delta) {
    if (!(delta > 0.0)) throw DomainError("smoothing width delta must be > 0");
    Entropy e;
    e.kind_ = Kind::SmoothKruzhkov;
    e.k_ = k;
    e.delta_ = delta;
    return e;
}

double Entropy::operator()(double u) const {
    if (kind_ == Kind::Polynomial) return p_(u);
    return std::hypot(u - k_, delta_) - delta_;
}

double Entropy::d1(double u) const {
    if (kind_ == Kind::Polynomial) return dp_(u);
    return (u - k_) / std::hypot(u - k_, delta_);
}

double Entropy::d2(double u) const {
    if (kind_ == Kind::Polynomial) return ddp_(u);
    double r = std::hypot(u - k_, delta_);
    return delta_ * delta_ / (r * r * r);
}

std::string Entropy::name() const {
    std::ostringstream s;
    if (kind_ == Kind::SmoothKruzhkov) {
        s << "kruzhkov(k=" << k_ << ",delta=" << delta_ << ")";
        return s.str();
    }
    s << "poly(";
    for (std::size_t i = 0; i < p_.coeffs().size(); ++i) s << (i ? "," : "") << p_.coeffs()[i];
    s << ")";
    return s.str();
}

EntropyTriple::EntropyTriple(Entropy s, Flux f, Nonlinearity a, double lo, double hi,
                             std::size_t nodes)
    : s_(std::move(s)), f_(std::move(f)), a_(std::move(a)) {
    if (!(hi > lo)) {
        double pad = std::max(1.0, std::fabs(lo)) * 1e-3;
        lo -= pad;
        hi += pad;
    }
    for (std::size_t k = 0; k <= 1024; ++k) {
        double u = lo + (hi - lo) * static_cast<double>(k) / 1024.0;
        if (s_.d2(u) < 0.0) throw DomainError("entropy is not convex on the working interval");
    }
    std::vector<double> breaks = a_.kinks();
    for (double t : f_.turning_points(lo, hi)) breaks.push_back(t);
    // Copies, so the tables stay valid when the triple is copied.
    Entropy S = s_;
    Flux F = f_;
    Nonlinearity A = a_;
    eta_ = TabulatedAntiderivative([S, F](double u) { return S.d1(u) * F.derivative(u); }, lo,
                                   hi, nodes, breaks);
    beta_ = TabulatedAntiderivative([S, A](double u) { return S.d1(u) * A.derivative(u); }, lo,
                                    hi, nodes, breaks);
    qp_ = TabulatedAntiderivative(
        [S, F](double u) { return S.d1(u) * std::max(F.derivative(u), 0.0); }, lo, hi, nodes,
        breaks);
    qm_ = TabulatedAntiderivative(
        [S, F](double u) { return S.d1(u) * std::min(F.derivative(u), 0.0); }, lo, hi, nodes,
        breaks);
}

}  // namespace fcl
