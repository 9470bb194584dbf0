#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace fcl {

// c |z|^{-1-alpha}, c fixed so that int (1 - cos kz) mu(dz) = |k|^alpha.
struct FractionalLaplacian {
    double alpha;
};

// c |z|^{-1-alpha} exp(-lambda |z|) with the same c as the untempered kernel.
struct TemperedStable {
    double alpha;
    double lambda;
};

// Integrable density vanishing for |z| > support.
struct BoundedKernel {
    std::function<double(double)> profile;  // evaluated at |z|
    double support;
    double total_mass;  // filled by LevyMeasure
};

// Piecewise-linear density through (z_k, d_k), z_k > 0; constant d_0 on (0, z_0], zero past the
// last node.
struct Tabulated {
    std::vector<double> z;
    std::vector<double> density;
};

// Point masses `weight` at +position and -position.
struct Atom {
    double position;
    double weight;
};

double fractional_constant(double alpha);

class LevyMeasure {
public:
    using Kind = std::variant<FractionalLaplacian, TemperedStable, BoundedKernel, Tabulated>;

    static LevyMeasure fractional_laplacian(double alpha);
    static LevyMeasure tempered_stable(double alpha, double lambda);
    static LevyMeasure bounded(std::function<double(double)> profile, double support);
    // Uniform density mass / (2 radius) on [-radius, radius].
    static LevyMeasure uniform(double mass, double radius);
    static LevyMeasure tabulated(std::vector<double> z, std::vector<double> density);
    // Two columns z,density with z > 0; a non-numeric first line is taken as a header.
    static LevyMeasure from_csv(const std::filesystem::path& path);

    LevyMeasure& add_atom(double position, double weight);

    const Kind& kind() const { return kind_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    int dimension() const { return 1; }
    double normalization() const;
    std::string name() const;

    double density(double z) const;
    // Lambda_r = mu(|z| > r).
    double tail_mass(double r) const;
    // sigma^2_r = int_{|z| <= r} z^2 mu(dz).
    double second_moment(double r) const;
    // One-sided mass mu((a, b]), 0 < a <= b, b may be +inf.
    double mass_between(double a, double b) const;

private:
    explicit LevyMeasure(Kind k) : kind_(std::move(k)) {}
    double density_mass(double a, double b) const;
    Kind kind_;
    std::vector<Atom> atoms_;
};

struct WeightTable {
    double h = 0.0;
    double split_radius = 0.0;
    double cutoff = 0.0;
    std::vector<double> weights;  // weights[j-1] = w_j = w_{-j}
    double sigma2 = 0.0;          // small-jump second moment sigma^2_r
    double tail_remainder = 0.0;  // Lambda_cutoff, jumps not represented by weights
    double tail_r = 0.0;          // Lambda_r

    double weight_sum() const;  // sum over j != 0, both signs
};

// w_j = mu(((j-1/2)h, (j+1/2)h] clipped to (r, cutoff]); cells with empty clipped part are dropped.
WeightTable discrete_weights(const LevyMeasure& m, double h, double r, double cutoff);

}  // namespace fcl
