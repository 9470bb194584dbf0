#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fcl/error.hpp"
#include "fcl/scheme.hpp"

namespace fcl {

inline constexpr const char* kConfigSchema = "fcl-config/1";

struct MeasureConfig {
    std::string kind = "fractional";  // fractional | tempered | bounded | tabulated
    double alpha = 1.0;
    double lambda = 1.0;
    double mass = 1.0;     // bounded: total mass of the uniform kernel
    double radius = 1.0;   // bounded: support radius
    std::string table_path;
    std::vector<double> atom_positions, atom_weights;
    bool operator==(const MeasureConfig&) const = default;
};

struct ModelConfig {
    std::string flux = "burgers";  // burgers | linear | poly | zero
    double flux_speed = 1.0;
    std::vector<double> flux_coeffs;
    std::string diffusion = "identity";  // identity | power | piecewise | zero
    double diffusion_m = 2.0;
    std::vector<double> breakpoints, slopes;
    MeasureConfig measure;
    bool operator==(const ModelConfig&) const = default;
};

struct GridConfig {
    double x0 = -4.0;
    double length = 8.0;
    std::size_t cells = 512;
    std::string boundary = "periodic";
    bool operator==(const GridConfig&) const = default;
};

struct InitialConfig {
    std::string profile = "bump";
    double center = 0.0;
    double width = 2.0;
    double height = 1.0;
    double left = 1.0;
    double right = 0.0;
    bool operator==(const InitialConfig&) const = default;
    InitialProfile to_profile() const;
};

struct OperatorConfig {
    std::string strategy = "direct";
    double split_radius = 0.0;
    double cutoff = 0.0;
    long periodic_images = 64;
    bool operator==(const OperatorConfig&) const = default;
};

struct RunBlock {
    double T = 1.0;
    double safety = 0.9;
    std::size_t output_every = 1;
    std::string output_dir = "fcl_out";
    std::optional<double> dt;
    bool operator==(const RunBlock&) const = default;
};

struct DiagnosticsConfig {
    std::size_t xi_points = 128;
    std::vector<std::string> entropies{"quadratic", "kruzhkov"};
    std::size_t kruzhkov_levels = 8;
    double test_center = 0.0;
    double test_half_width = 2.0;
    std::size_t field_every = 0;  // 0: about 16 field intervals in the CSV output
    bool operator==(const DiagnosticsConfig&) const = default;
};

struct PairConfig {
    bool enabled = false;
    std::string mode = "contraction";  // contraction | comparison
    InitialConfig first, second;
    bool operator==(const PairConfig&) const = default;
};

struct RunConfig {
    std::string schema = kConfigSchema;
    ModelConfig model;
    GridConfig grid;
    InitialConfig initial;
    OperatorConfig op;
    RunBlock run;
    DiagnosticsConfig diagnostics;
    PairConfig pair;
    bool operator==(const RunConfig&) const = default;

    // Relative table paths resolve against base_dir.
    ModelSpec to_model(const std::filesystem::path& base_dir = {}) const;
    ModelSpec to_model(const InitialConfig& init, const std::filesystem::path& base_dir = {}) const;
    RunOptions run_options() const;
};

// Every problem found, each with its key path and a hint.
class ConfigErrors : public ConfigError {
public:
    explicit ConfigErrors(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<std::string> errors_;
};

// Strict TOML subset: [section] / [a.b] headers, key = value with strings, numbers, booleans,
// single-line arrays and inline tables. Unknown or duplicated keys are errors.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir = {});
std::string emit_config(const RunConfig& c);

// Shortest decimal that reads back to the same double.
std::string format_double(double v);

}  // namespace fcl
