#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fcl/config.hpp"
#include "fcl/contraction.hpp"
#include "fcl/convergence.hpp"
#include "fcl/diagnostics.hpp"
#include "fcl/scheme.hpp"

namespace fcl {

inline constexpr const char* kSnapshotSchema = "fcl-snapshot/1";
inline constexpr const char* kRunManifestSchema = "fcl-run/1";
inline constexpr const char* kFieldSchema = "fcl-field/1";
inline constexpr const char* kResidualsSchema = "fcl-residuals/1";
inline constexpr const char* kBoundsSchema = "fcl-bounds/1";
inline constexpr const char* kDiagnoseManifestSchema = "fcl-diagnose/1";
inline constexpr const char* kDistanceSchema = "fcl-distance/1";
inline constexpr const char* kOutputRootEnv = "FCL_OUTPUT_ROOT";

// Relative output directories are placed under $FCL_OUTPUT_ROOT when it is set.
std::filesystem::path resolve_output_dir(const std::filesystem::path& dir);

std::string sha256_hex(std::string_view bytes);
std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& bytes);
std::string json_text(const nlohmann::json& j);

std::string snapshot_name(std::size_t step);
// "# fcl-snapshot/1 step=<k> t=<t>" then x,u,A_u,g_A_u rows at round-trip precision.
std::string snapshot_csv(const SolverState& s, const Solver& solver);

struct Snapshot {
    std::size_t step = 0;
    double t = 0.0;
    std::vector<double> x, u, A_u, g_A_u;
};

// Throws ConfigError on a schema or column mismatch.
Snapshot parse_snapshot_csv(const std::string& text);

// Long format t,x,xi,value for every kept interval of the field.
std::string field_csv(const DissipationField& f, const GridFunction& grid, bool m_field);

nlohmann::json ledger_json(const InvariantLedger& l);
nlohmann::json bounds_json(const BoundsReport& b);
nlohmann::json residuals_json(const EntropyResidualReport& r);
std::string distance_csv(const PairedRunReport& r);

// Records name, sha256 and size of each file relative to dir.
nlohmann::json file_entries(const std::filesystem::path& dir, const std::vector<std::string>& names);

struct RunOutput {
    std::filesystem::path dir;
    nlohmann::json manifest;
    Trajectory trajectory;
    bool ok = true;  // every in-run invariant held
};

// Runs the config and writes snapshots plus manifest.json into out_dir.
RunOutput run_to_directory(const RunConfig& cfg, const std::filesystem::path& config_dir,
                           const std::filesystem::path& out_dir);

struct LoadedRun {
    RunConfig config;
    nlohmann::json manifest;
    Trajectory trajectory;
};

// Reads manifest.json and the snapshots it lists, checking every content hash.
LoadedRun load_run(const std::filesystem::path& run_dir);

struct DiagnoseOutput {
    nlohmann::json manifest;
    bool ok = true;  // n >= 0, supp n inside the u-range, residuals above the floor
};

// Writes n_field.csv, m_field.csv, residuals.json, bounds_report.json and diagnose_manifest.json.
DiagnoseOutput diagnose_directory(const std::filesystem::path& run_dir);

struct PairOutput {
    PairedRunReport report;
    nlohmann::json manifest;
};

// Writes pair_report.json and pair_distance.csv.
PairOutput pair_to_directory(const RunConfig& cfg, const std::filesystem::path& config_dir,
                             const std::filesystem::path& out_dir);

// Writes convergence.json.
ConvergenceReport convergence_to_directory(const RunConfig& cfg,
                                           const std::filesystem::path& config_dir,
                                           std::size_t levels,
                                           const std::filesystem::path& out_dir);

}  // namespace fcl
