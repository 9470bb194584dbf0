#include "fcl/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "fcl/error.hpp"

namespace fcl {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

double parse_double(std::string_view s, const std::string& what) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError(what + ": cannot parse number '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t a = 0;
    while (true) {
        std::size_t b = s.find(sep, a);
        out.push_back(s.substr(a, b == std::string_view::npos ? std::string_view::npos : b - a));
        if (b == std::string_view::npos) break;
        a = b + 1;
    }
    return out;
}

// The echoed config refers to measure tables by absolute path so the run directory is
// self-contained.
RunConfig absolutise(RunConfig cfg, const fs::path& config_dir) {
    auto& tp = cfg.model.measure.table_path;
    if (!tp.empty() && fs::path(tp).is_relative()) tp = fs::absolute(config_dir / tp).lexically_normal().string();
    return cfg;
}

EntropyResidualReport residual_report(const RunConfig& cfg, const Trajectory& tr,
                                      const Solver& solver, const XiGrid& xi, double umin,
                                      double umax) {
    std::vector<Entropy> family;
    for (const std::string& e : cfg.diagnostics.entropies) {
        if (e == "quadratic") {
            family.push_back(Entropy::quadratic());
        } else {
            auto k = kruzhkov_family(xi, cfg.diagnostics.kruzhkov_levels, umin, umax);
            family.insert(family.end(), k.begin(), k.end());
        }
    }
    TestFunction phi;
    phi.T = tr.snapshots.back().t > 0.0 ? tr.snapshots.back().t : 1.0;
    phi.center = cfg.diagnostics.test_center;
    phi.half_width = cfg.diagnostics.test_half_width;
    return entropy_residuals(tr, solver, family, phi);
}

}  // namespace

fs::path resolve_output_dir(const fs::path& dir) {
    const char* root = std::getenv(kOutputRootEnv);
    if (root && *root && dir.is_relative()) return fs::path(root) / dir;
    return dir;
}

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
        throw NumericError("sha256 failed", 0);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << bytes;
    if (!out) throw ConfigError("cannot write " + p.string());
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string snapshot_name(std::size_t step) { return "snapshot_" + std::to_string(step) + ".csv"; }

std::string snapshot_csv(const SolverState& s, const Solver& solver) {
    const GridFunction& u = s.u;
    const Nonlinearity& A = solver.model().diffusion;
    std::vector<double> a(u.size()), ga(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) a[i] = A(u[i]);
    solver.op().apply(a, ga);
    std::string out = std::string("# ") + kSnapshotSchema + " step=" + std::to_string(s.step) +
                      " t=" + num(s.t) + "\nx,u,A_u,g_A_u\n";
    for (std::size_t i = 0; i < u.size(); ++i)
        out += num(u.x(i)) + "," + num(u[i]) + "," + num(a[i]) + "," + num(ga[i]) + "\n";
    return out;
}

Snapshot parse_snapshot_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Snapshot s;
    if (!std::getline(in, line) || line.rfind(std::string("# ") + kSnapshotSchema + " ", 0) != 0)
        throw ConfigError(std::string("snapshot: expected schema ") + kSnapshotSchema);
    for (std::string_view tok : split(std::string_view(line).substr(2), ' ')) {
        if (tok.rfind("step=", 0) == 0) s.step = static_cast<std::size_t>(parse_double(tok.substr(5), "snapshot step"));
        if (tok.rfind("t=", 0) == 0) s.t = parse_double(tok.substr(2), "snapshot time");
    }
    if (!std::getline(in, line) || line != "x,u,A_u,g_A_u")
        throw ConfigError("snapshot: expected columns x,u,A_u,g_A_u");
    std::size_t row = 2;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        auto f = split(line, ',');
        if (f.size() != 4) throw ConfigError("snapshot: row " + std::to_string(row) + " needs 4 columns");
        s.x.push_back(parse_double(f[0], "snapshot x"));
        s.u.push_back(parse_double(f[1], "snapshot u"));
        s.A_u.push_back(parse_double(f[2], "snapshot A_u"));
        s.g_A_u.push_back(parse_double(f[3], "snapshot g_A_u"));
    }
    return s;
}

std::string field_csv(const DissipationField& f, const GridFunction& grid, bool m_field) {
    const auto& values = m_field ? f.m_values : f.n_values;
    std::string out = std::string("# ") + kFieldSchema + " quantity=" + (m_field ? "m" : "n") + "\nt,x,xi,value\n";
    const std::size_t m = f.xi.size();
    std::vector<std::string> xs(f.cells), xis(m);
    for (std::size_t i = 0; i < f.cells; ++i) xs[i] = num(grid.x(i));
    for (std::size_t k = 0; k < m; ++k) xis[k] = num(f.xi.xi[k]);
    for (std::size_t j = 0; j < values.size(); ++j) {
        const std::string t = num(f.times[f.field_interval[j]]);
        for (std::size_t i = 0; i < f.cells; ++i)
            for (std::size_t k = 0; k < m; ++k)
                out += t + "," + xs[i] + "," + xis[k] + "," + num(values[j][i * m + k]) + "\n";
    }
    return out;
}

nlohmann::json ledger_json(const InvariantLedger& l) {
    return {{"umin0", l.umin0},
            {"umax0", l.umax0},
            {"observed_min", l.observed_min},
            {"observed_max", l.observed_max},
            {"max_principle", l.max_principle},
            {"mass0", l.mass0},
            {"final_mass", l.final_mass},
            {"max_mass_drift", l.max_mass_drift},
            {"conservation", l.conservation},
            {"l1_0", l.l1_0},
            {"max_l1_excess", l.max_l1_excess},
            {"l1_stability", l.l1_stability},
            {"support_escape", l.support_escape},
            {"steps", l.steps},
            {"ok", l.ok()}};
}

nlohmann::json bounds_json(const BoundsReport& b) {
    return {{"schema", kBoundsSchema},
            {"h", b.h},
            {"dt", b.dt},
            {"xi", b.xi},
            {"slice", b.slice},
            {"nu", b.nu},
            {"slice_violation", b.slice_violation},
            {"quadratic", {{"total", b.quadratic_total}, {"bound", b.quadratic_bound}, {"violation", b.quadratic_violation}}},
            {"bilinear", {{"total", b.bilinear_total}, {"bound", b.bilinear_bound}, {"violation", b.bilinear_violation}}}};
}

nlohmann::json residuals_json(const EntropyResidualReport& r) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"entropy", e.entropy},
                           {"value", e.value},
                           {"terms",
                            {{"time", e.terms.time},
                             {"initial", e.terms.initial},
                             {"flux", e.terms.flux},
                             {"nonlocal", e.terms.nonlocal},
                             {"dissipation", e.terms.dissipation}}},
                           {"times", e.times},
                           {"partial", e.partial}});
    return {{"schema", kResidualsSchema}, {"worst", r.worst}, {"entries", entries}};
}

std::string distance_csv(const PairedRunReport& r) {
    std::string out = std::string("# ") + kDistanceSchema + " mode=" + r.mode + "\nt,l1_distance,l1_pos_part,l1_neg_part\n";
    for (std::size_t k = 0; k < r.times.size(); ++k)
        out += num(r.times[k]) + "," + num(r.l1_distance[k]) + "," + num(r.l1_pos_part[k]) + "," +
               num(r.l1_neg_part[k]) + "\n";
    return out;
}

nlohmann::json file_entries(const fs::path& dir, const std::vector<std::string>& names) {
    nlohmann::json files = nlohmann::json::array();
    for (const auto& n : names) {
        std::string bytes = read_file(dir / n);
        files.push_back({{"name", n}, {"sha256", sha256_hex(bytes)}, {"bytes", bytes.size()}});
    }
    return files;
}

RunOutput run_to_directory(const RunConfig& cfg_in, const fs::path& config_dir, const fs::path& out_dir) {
    const RunConfig cfg = absolutise(cfg_in, config_dir);
    ModelSpec model = cfg.to_model(config_dir);
    model.validate();
    Solver solver(model);
    RunOutput o;
    o.dir = out_dir;
    o.trajectory = run(solver, cfg.run_options());
    const Trajectory& tr = o.trajectory;
    fs::create_directories(out_dir);

    std::vector<std::string> names;
    nlohmann::json snaps = nlohmann::json::array();
    double max_ratio = 0.0;
    for (const SolverState& s : tr.snapshots) {
        std::string name = snapshot_name(s.step);
        write_file(out_dir / name, snapshot_csv(s, solver));
        names.push_back(name);
        snaps.push_back({{"file", name}, {"step", s.step}, {"t", s.t}});
        max_ratio = std::max(max_ratio, s.cfl_record);
    }
    o.ok = tr.ledger.ok();
    o.manifest = {{"schema", kRunManifestSchema},
                  {"config", emit_config(cfg)},
                  {"model",
                   {{"flux", model.flux.name()},
                    {"diffusion", model.diffusion.name()},
                    {"measure", model.measure.name()},
                    {"cells", model.domain.cells},
                    {"h", model.domain.h()},
                    {"boundary", to_string(model.domain.boundary)},
                    {"strategy", to_string(model.op.strategy)}}},
                  {"cfl",
                   {{"cfl_dt", tr.cfl_dt},
                    {"dt", tr.dt},
                    {"safety", cfg.run.safety},
                    {"manual_dt", cfg.run.dt.has_value()},
                    {"max_dt_over_cfl", max_ratio},
                    {"steps", tr.step_dt.size()}}},
                  {"ledger", ledger_json(tr.ledger)},
                  {"snapshots", snaps},
                  {"files", file_entries(out_dir, names)},
                  {"ok", o.ok}};
    write_file(out_dir / "manifest.json", json_text(o.manifest));
    return o;
}

LoadedRun load_run(const fs::path& run_dir) {
    LoadedRun r;
    try {
        r.manifest = nlohmann::json::parse(read_file(run_dir / "manifest.json"));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("manifest.json: " + std::string(e.what()));
    }
    if (r.manifest.value("schema", "") != kRunManifestSchema)
        throw ConfigError(std::string("manifest.json: expected schema ") + kRunManifestSchema);
    r.config = parse_config_text(r.manifest.at("config").get<std::string>(), run_dir);
    ModelSpec model = r.config.to_model(run_dir);
    std::map<std::string, std::string> hashes;
    for (const auto& f : r.manifest.at("files")) hashes[f.at("name")] = f.at("sha256");
    for (const auto& s : r.manifest.at("snapshots")) {
        std::string name = s.at("file");
        std::string bytes = read_file(run_dir / name);
        if (!hashes.count(name) || hashes[name] != sha256_hex(bytes))
            throw ConfigError(name + ": content hash does not match the manifest");
        Snapshot snap = parse_snapshot_csv(bytes);
        if (snap.u.size() != model.domain.cells)
            throw ConfigError(name + ": cell count does not match the config");
        SolverState st;
        st.u = GridFunction(snap.u, model.domain.h(), model.domain.x0, model.domain.boundary);
        st.t = snap.t;
        st.step = snap.step;
        r.trajectory.snapshots.push_back(std::move(st));
    }
    r.trajectory.dt = r.manifest.at("cfl").at("dt");
    r.trajectory.cfl_dt = r.manifest.at("cfl").at("cfl_dt");
    return r;
}

DiagnoseOutput diagnose_directory(const fs::path& run_dir) {
    LoadedRun run = load_run(run_dir);
    const RunConfig& cfg = run.config;
    const Trajectory& tr = run.trajectory;
    if (tr.snapshots.size() < 2) throw ConfigError("diagnose needs at least 2 snapshots");
    ModelSpec model = cfg.to_model(run_dir);
    Solver solver(model);
    const auto& u0 = tr.snapshots.front().u.values();
    auto [lo, hi] = std::minmax_element(u0.begin(), u0.end());
    XiGrid xi = XiGrid::for_range(*lo, *hi, cfg.diagnostics.xi_points);
    const std::size_t intervals = tr.snapshots.size() - 1;
    std::size_t every = cfg.diagnostics.field_every;
    if (every == 0) every = std::max<std::size_t>(1, (intervals + 15) / 16);
    DissipationField field = recover_m(tr, solver, xi, every);
    BoundsReport bounds = xi_slice_bounds(tr, solver, field);
    EntropyResidualReport res = residual_report(cfg, tr, solver, xi, *lo, *hi);

    const GridFunction& grid = tr.snapshots.front().u;
    write_file(run_dir / "n_field.csv", field_csv(field, grid, false));
    write_file(run_dir / "m_field.csv", field_csv(field, grid, true));
    write_file(run_dir / "residuals.json", json_text(residuals_json(res)));
    nlohmann::json bj = bounds_json(bounds);
    bj["min_n"] = field.min_n;
    bj["min_m"] = field.min_m;
    bj["n_support_ok"] = field.n_support_ok;
    write_file(run_dir / "bounds_report.json", json_text(bj));

    DiagnoseOutput o;
    o.ok = field.min_n >= 0.0 && field.n_support_ok && res.worst >= -1e-3;
    std::vector<std::string> names{"n_field.csv", "m_field.csv", "residuals.json", "bounds_report.json"};
    o.manifest = {{"schema", kDiagnoseManifestSchema},
                  {"run_manifest_sha256", sha256_hex(read_file(run_dir / "manifest.json"))},
                  {"xi_points", xi.size()},
                  {"field_every", every},
                  {"checks",
                   {{"n_nonnegative", field.min_n >= 0.0},
                    {"n_support", field.n_support_ok},
                    {"residual_floor", res.worst >= -1e-3}}},
                  {"files", file_entries(run_dir, names)},
                  {"ok", o.ok}};
    write_file(run_dir / "diagnose_manifest.json", json_text(o.manifest));
    return o;
}

PairOutput pair_to_directory(const RunConfig& cfg, const fs::path& config_dir, const fs::path& out_dir) {
    if (!cfg.pair.enabled) throw ConfigError("pair: the config has no [pair] block");
    ModelSpec model = cfg.to_model(cfg.pair.first, config_dir);
    model.validate();
    GridFunction u0 = cfg.pair.first.to_profile().sample(model.domain);
    GridFunction v0 = cfg.pair.second.to_profile().sample(model.domain);
    PairOutput o;
    o.report = cfg.pair.mode == "comparison"
                   ? comparison_check(model, u0, v0, cfg.run.T, cfg.run.output_every, cfg.run.safety)
                   : contraction_check(model, u0, v0, cfg.run.T, cfg.run.output_every, cfg.run.safety);
    nlohmann::json j = o.report.to_json();
    j["config"] = emit_config(absolutise(cfg, config_dir));
    write_file(out_dir / "pair_report.json", json_text(j));
    write_file(out_dir / "pair_distance.csv", distance_csv(o.report));
    o.manifest = {{"schema", "fcl-pair-manifest/1"},
                  {"files", file_entries(out_dir, {"pair_report.json", "pair_distance.csv"})},
                  {"ok", o.report.pass()}};
    write_file(out_dir / "pair_manifest.json", json_text(o.manifest));
    return o;
}

ConvergenceReport convergence_to_directory(const RunConfig& cfg, const fs::path& config_dir,
                                           std::size_t levels, const fs::path& out_dir) {
    ModelSpec model = cfg.to_model(config_dir);
    model.validate();
    ConvergenceReport r = self_convergence(model, cfg.run.T, levels, cfg.run.safety);
    nlohmann::json j = r.to_json();
    j["config"] = emit_config(absolutise(cfg, config_dir));
    write_file(out_dir / "convergence.json", json_text(j));
    return r;
}

}  // namespace fcl
