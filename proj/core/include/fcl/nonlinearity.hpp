#pragma once

#include <string>
#include <vector>

#include "fcl/numerics.hpp"

namespace fcl {

// Nondecreasing diffusion nonlinearity A with A(0) = 0.
class Nonlinearity {
public:
    enum class Kind { Identity, Power, PiecewiseLinear, Zero };

    static Nonlinearity identity();
    static Nonlinearity zero();
    // |u|^{m-1} u, m >= 1
    static Nonlinearity power(double m);
    // breaks b_1 < ... < b_K and K+1 slopes >= 0 (slope k applies on (b_k, b_{k+1}))
    static Nonlinearity piecewise_linear(std::vector<double> breaks, std::vector<double> slopes);

    double operator()(double u) const;
    double derivative(double u) const;  // right derivative at kinks
    double lipschitz(double lo, double hi) const;
    std::vector<double> kinks() const;

    Kind kind() const { return kind_; }
    double exponent() const { return m_; }
    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<double>& slopes() const { return slopes_; }
    std::string name() const;

    bool operator==(const Nonlinearity& o) const {
        return kind_ == o.kind_ && m_ == o.m_ && breaks_ == o.breaks_ && slopes_ == o.slopes_;
    }

private:
    Kind kind_ = Kind::Zero;
    double m_ = 1.0;
    std::vector<double> breaks_, slopes_;
    std::vector<double> anchor_;  // A at the anchoring break of each segment
    std::size_t zero_segment_ = 0;
};

// Polynomial flux F with exact derivative and Lipschitz bounds.
class Flux {
public:
    static Flux burgers();
    static Flux linear(double speed);
    static Flux polynomial(std::vector<double> coeffs);
    static Flux zero();

    double operator()(double u) const { return p_(u); }
    double derivative(double u) const { return dp_(u); }
    // sup |F'| over [lo, hi], from the endpoints and the critical points of F'.
    double lipschitz(double lo, double hi) const;
    // Roots of F' in (lo, hi): F is monotone between consecutive ones.
    std::vector<double> turning_points(double lo, double hi) const;

    const Polynomial& poly() const { return p_; }
    std::string name() const { return name_; }
    bool operator==(const Flux& o) const { return p_ == o.p_; }

private:
    explicit Flux(Polynomial p, std::string name);
    Polynomial p_, dp_;
    std::string name_;
};

// C^2 convex entropy S.
class Entropy {
public:
    enum class Kind { Polynomial, SmoothKruzhkov };

    static Entropy polynomial(std::vector<double> coeffs);
    static Entropy quadratic();            // u^2
    static Entropy linear(double slope);   // slope * u
    // sqrt((u-k)^2 + delta^2) - delta
    static Entropy smooth_kruzhkov(double k, double delta);

    double operator()(double u) const;
    double d1(double u) const;
    double d2(double u) const;
    Kind kind() const { return kind_; }
    std::string name() const;

private:
    Kind kind_ = Kind::Polynomial;
    Polynomial p_, dp_, ddp_;
    double k_ = 0.0, delta_ = 1.0;
};

// (S, eta, beta) with eta' = S'F', beta' = S'A', both zero at u = 0, plus the Engquist-Osher
// entropy fluxes q+' = S' (F')^+, q-' = S' (F')^-. Tabulated on [lo, hi].
class EntropyTriple {
public:
    EntropyTriple(Entropy s, Flux f, Nonlinearity a, double lo, double hi,
                  std::size_t nodes = 4097);

    const Entropy& S() const { return s_; }
    double eta(double u) const { return eta_(u); }
    double beta(double u) const { return beta_(u); }
    double q_plus(double u) const { return qp_(u); }
    double q_minus(double u) const { return qm_(u); }

private:
    Entropy s_;
    Flux f_;
    Nonlinearity a_;
    TabulatedAntiderivative eta_, beta_, qp_, qm_;
};

}  // namespace fcl
