#include "fcl/levy_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fcl/error.hpp"
#include "fcl/numerics.hpp"

namespace fcl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw ConfigError("alpha in (0,2) required");
}

// a^{-alpha} - b^{-alpha} without cancellation for b close to a.
double power_difference(double a, double b, double alpha) {
    if (b == kInf) return std::pow(a, -alpha);
    return -std::pow(a, -alpha) * std::expm1(-alpha * std::log1p((b - a) / a));
}

// Upper incomplete gamma for s > -2 (s may be zero or negative).
double upper_gamma(double s, double x) {
    if (s > 0.0) return boost::math::tgamma(s, x);
    if (s == 0.0) return boost::math::expint(1, x);
    return (upper_gamma(s + 1.0, x) - std::pow(x, s) * std::exp(-x)) / s;
}

double tabulated_density(const Tabulated& t, double z) {
    if (z <= t.z.front()) return t.density.front();
    if (z > t.z.back()) return 0.0;
    auto it = std::lower_bound(t.z.begin(), t.z.end(), z);
    std::size_t k = static_cast<std::size_t>(it - t.z.begin());
    if (t.z[k] == z) return t.density[k];
    double s = (z - t.z[k - 1]) / (t.z[k] - t.z[k - 1]);
    return t.density[k - 1] + s * (t.density[k] - t.density[k - 1]);
}

}  // namespace

double fractional_constant(double alpha) {
    return alpha * std::pow(2.0, alpha - 1.0) * std::tgamma(0.5 * (1.0 + alpha)) /
           (std::sqrt(std::numbers::pi) * std::tgamma(1.0 - 0.5 * alpha));
}

LevyMeasure LevyMeasure::fractional_laplacian(double alpha) {
    check_alpha(alpha);
    return LevyMeasure(FractionalLaplacian{alpha});
}

LevyMeasure LevyMeasure::tempered_stable(double alpha, double lambda) {
    check_alpha(alpha);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda > 0 required");
    return LevyMeasure(TemperedStable{alpha, lambda});
}

LevyMeasure LevyMeasure::bounded(std::function<double(double)> profile, double support) {
    if (!(support > 0.0) || !std::isfinite(support)) throw ConfigError("support > 0 required");
    BoundedKernel k{std::move(profile), support, 0.0};
    k.total_mass = 2.0 * integrate(k.profile, 0.0, support);
    if (!(k.total_mass >= 0.0)) throw ConfigError("bounded kernel must be nonnegative");
    return LevyMeasure(std::move(k));
}

LevyMeasure LevyMeasure::uniform(double mass, double radius) {
    if (!(mass > 0.0) || !(radius > 0.0)) throw ConfigError("mass > 0 and radius > 0 required");
    double level = mass / (2.0 * radius);
    BoundedKernel k{[level, radius](double z) { return z <= radius ? level : 0.0; }, radius, mass};
    return LevyMeasure(std::move(k));
}

LevyMeasure LevyMeasure::tabulated(std::vector<double> z, std::vector<double> density) {
    if (z.empty() || z.size() != density.size())
        throw ConfigError("tabulated measure needs matching nonempty z and density columns");
    for (std::size_t k = 0; k < z.size(); ++k) {
        if (!(z[k] > 0.0) || !std::isfinite(z[k])) throw ConfigError("tabulated z must be > 0");
        if (k > 0 && !(z[k] > z[k - 1])) throw ConfigError("tabulated z must increase");
        if (!(density[k] >= 0.0) || !std::isfinite(density[k]))
            throw ConfigError("tabulated density must be finite and >= 0");
    }
    return LevyMeasure(Tabulated{std::move(z), std::move(density)});
}

LevyMeasure LevyMeasure::from_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open measure table " + path.string());
    std::vector<double> z, d;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double a, b;
        if (!(ss >> a >> b)) {
            if (first) {
                first = false;
                continue;
            }
            throw ConfigError("malformed row in " + path.string() + ": " + line);
        }
        first = false;
        z.push_back(a);
        d.push_back(b);
    }
    return tabulated(std::move(z), std::move(d));
}

LevyMeasure& LevyMeasure::add_atom(double position, double weight) {
    if (!(position > 0.0) || !(weight >= 0.0) || !std::isfinite(position) || !std::isfinite(weight))
        throw ConfigError("atoms need position > 0 and weight >= 0");
    atoms_.push_back({position, weight});
    return *this;
}

double LevyMeasure::normalization() const {
    return std::visit(overloaded{
                          [](const FractionalLaplacian& k) { return fractional_constant(k.alpha); },
                          [](const TemperedStable& k) { return fractional_constant(k.alpha); },
                          [](const auto&) { return 1.0; },
                      },
                      kind_);
}

std::string LevyMeasure::name() const {
    return std::visit(overloaded{
                          [](const FractionalLaplacian&) { return std::string("fractional"); },
                          [](const TemperedStable&) { return std::string("tempered"); },
                          [](const BoundedKernel&) { return std::string("bounded"); },
                          [](const Tabulated&) { return std::string("tabulated"); },
                      },
                      kind_);
}

double LevyMeasure::density(double z) const {
    if (z == 0.0 || std::isnan(z)) throw DomainError("density undefined at z = 0");
    double a = std::fabs(z);
    return std::visit(
        overloaded{
            [a](const FractionalLaplacian& k) {
                return fractional_constant(k.alpha) * std::pow(a, -1.0 - k.alpha);
            },
            [a](const TemperedStable& k) {
                return fractional_constant(k.alpha) * std::pow(a, -1.0 - k.alpha) *
                       std::exp(-k.lambda * a);
            },
            [a](const BoundedKernel& k) { return a > k.support ? 0.0 : k.profile(a); },
            [a](const Tabulated& k) { return tabulated_density(k, a); },
        },
        kind_);
}

double LevyMeasure::density_mass(double a, double b) const {
    if (!(b > a)) return 0.0;
    return std::visit(
        overloaded{
            [&](const FractionalLaplacian& k) {
                return fractional_constant(k.alpha) / k.alpha * power_difference(a, b, k.alpha);
            },
            [&](const TemperedStable& k) {
                double c = fractional_constant(k.alpha);
                if (b == kInf)
                    return c * std::pow(k.lambda, k.alpha) * upper_gamma(-k.alpha, k.lambda * a);
                return integrate(
                    [&](double z) {
                        return c * std::pow(z, -1.0 - k.alpha) * std::exp(-k.lambda * z);
                    },
                    a, b);
            },
            [&](const BoundedKernel& k) {
                double hi = std::min(b, k.support);
                if (!(hi > a)) return 0.0;
                return integrate(k.profile, a, hi);
            },
            [&](const Tabulated& k) {
                double hi = std::min(b, k.z.back());
                if (!(hi > a)) return 0.0;
                return integrate_piecewise([&](double z) { return tabulated_density(k, z); }, a,
                                           hi, k.z);
            },
        },
        kind_);
}

double LevyMeasure::mass_between(double a, double b) const {
    if (!(a > 0.0) || !(b >= a)) throw DomainError("mass_between needs 0 < a <= b");
    double m = density_mass(a, b);
    for (const Atom& at : atoms_)
        if (at.position > a && at.position <= b) m += at.weight;
    return m;
}

double LevyMeasure::tail_mass(double r) const {
    if (!(r > 0.0) || std::isnan(r)) throw DomainError("tail_mass needs r > 0");
    double m = 2.0 * mass_between(r, kInf);
    if (!std::isfinite(m)) throw InvariantViolation("divergent tail mass");
    return m;
}

double LevyMeasure::second_moment(double r) const {
    if (!(r > 0.0) || std::isnan(r)) throw DomainError("second_moment needs r > 0");
    double s = std::visit(
        overloaded{
            [r](const FractionalLaplacian& k) {
                return 2.0 * fractional_constant(k.alpha) * std::pow(r, 2.0 - k.alpha) /
                       (2.0 - k.alpha);
            },
            [r](const TemperedStable& k) {
                return 2.0 * fractional_constant(k.alpha) * std::pow(k.lambda, k.alpha - 2.0) *
                       boost::math::tgamma_lower(2.0 - k.alpha, k.lambda * r);
            },
            [r](const BoundedKernel& k) {
                double hi = std::min(r, k.support);
                return 2.0 * integrate([&](double z) { return z * z * k.profile(z); }, 0.0, hi);
            },
            [r](const Tabulated& k) {
                double hi = std::min(r, k.z.back());
                return 2.0 * integrate_piecewise(
                                 [&](double z) { return z * z * tabulated_density(k, z); }, 0.0,
                                 hi, k.z);
            },
        },
        kind_);
    for (const Atom& at : atoms_)
        if (at.position <= r) s += 2.0 * at.position * at.position * at.weight;
    return s;
}

double WeightTable::weight_sum() const {
    return 2.0 * pairwise_sum(weights);
}

WeightTable discrete_weights(const LevyMeasure& m, double h, double r, double cutoff) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("grid spacing h must be > 0");
    if (!(r >= 0.5 * h)) throw ConfigError("split radius r must be >= h/2");
    if (!(cutoff >= r) || !std::isfinite(cutoff)) throw ConfigError("cutoff must be >= split radius");
    WeightTable t;
    t.h = h;
    t.split_radius = r;
    t.cutoff = cutoff;
    t.sigma2 = m.second_moment(r);
    t.tail_r = m.tail_mass(r);
    t.tail_remainder = m.tail_mass(cutoff);
    for (std::size_t j = 1;; ++j) {
        double lo = (static_cast<double>(j) - 0.5) * h;
        if (lo >= cutoff) break;
        double hi = (static_cast<double>(j) + 0.5) * h;
        double a = std::max(lo, r), b = std::min(hi, cutoff);
        t.weights.push_back(b > a ? m.mass_between(a, b) : 0.0);
    }
    while (!t.weights.empty() && t.weights.back() == 0.0) t.weights.pop_back();
    return t;
}

}  // namespace fcl
