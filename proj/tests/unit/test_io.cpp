#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "fcl/io.hpp"

using namespace fcl;
namespace fs = std::filesystem;

namespace {

const std::string kSmall = R"(schema = "fcl-config/1"
[model]
flux = "burgers"
diffusion = "identity"
measure = { kind = "fractional", alpha = 1.0 }
[grid]
cells = 64
[run]
T = 0.2
output_every = 5
[diagnostics]
xi_points = 24
kruzhkov_levels = 2
[pair]
mode = "comparison"
first = { profile = "bump", height = 0.5 }
second = { profile = "bump", height = 1.0 }
)";

class IoTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("fcl_io_" + std::string(info->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write_config(const std::string& name, const std::string& text) {
        fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }

    // Runs the CLI, returns the exit status and fills out with stdout + stderr.
    int cli(const std::string& args, std::string* out = nullptr) {
        fs::path log = dir_ / "cli.log";
        std::string cmd = std::string(FCL_CLI) + " " + args + " > " + log.string() + " 2>&1";
        int rc = std::system(cmd.c_str());
        if (out) *out = read_file(log);
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(IoTest, SnapshotCsvRoundTrip) {
    RunConfig c = parse_config_text(kSmall);
    Solver solver(c.to_model());
    SolverState s{c.to_model().initial_data(), 0.125, 7, 0.0};
    std::string text = snapshot_csv(s, solver);
    EXPECT_EQ(text.rfind("# fcl-snapshot/1 step=7 t=0.125\nx,u,A_u,g_A_u\n", 0), 0u);
    Snapshot back = parse_snapshot_csv(text);
    EXPECT_EQ(back.step, 7u);
    EXPECT_EQ(back.t, 0.125);
    ASSERT_EQ(back.u.size(), 64u);
    for (std::size_t i = 0; i < 64; ++i) {
        EXPECT_EQ(back.u[i], s.u[i]);
        EXPECT_EQ(back.x[i], s.u.x(i));
    }
    EXPECT_THROW(parse_snapshot_csv("# other/1\nx,u\n"), ConfigError);
}

TEST_F(IoTest, RunDiagnoseManifestsAndDeterminism) {
    RunConfig c = parse_config_text(kSmall);
    fs::path out = dir_ / "run";
    RunOutput r = run_to_directory(c, dir_, out);
    EXPECT_TRUE(r.ok);
    nlohmann::json m = nlohmann::json::parse(read_file(out / "manifest.json"));
    EXPECT_EQ(m["schema"], kRunManifestSchema);
    EXPECT_EQ(m["snapshots"].size(), r.trajectory.snapshots.size());
    EXPECT_LE(m["cfl"]["max_dt_over_cfl"].get<double>(), 1.0);
    for (const auto& f : m["files"]) {
        std::string bytes = read_file(out / f["name"].get<std::string>());
        EXPECT_EQ(f["sha256"], sha256_hex(bytes));
        EXPECT_EQ(f["bytes"].get<std::size_t>(), bytes.size());
    }
    EXPECT_EQ(parse_config_text(m["config"].get<std::string>()), c);

    LoadedRun lr = load_run(out);
    EXPECT_EQ(lr.trajectory.snapshots.size(), r.trajectory.snapshots.size());
    EXPECT_EQ(lr.trajectory.snapshots.back().u.values(), r.trajectory.snapshots.back().u.values());

    diagnose_directory(out);
    std::string first = read_file(out / "diagnose_manifest.json");
    std::string residuals = read_file(out / "residuals.json");
    diagnose_directory(out);
    EXPECT_EQ(read_file(out / "diagnose_manifest.json"), first);
    EXPECT_EQ(read_file(out / "residuals.json"), residuals);

    nlohmann::json d = nlohmann::json::parse(first);
    EXPECT_EQ(d["schema"], kDiagnoseManifestSchema);
    EXPECT_TRUE(d["checks"]["n_nonnegative"].get<bool>());
    EXPECT_TRUE(d["checks"]["n_support"].get<bool>());
    EXPECT_EQ(nlohmann::json::parse(residuals)["schema"], kResidualsSchema);
    nlohmann::json b = nlohmann::json::parse(read_file(out / "bounds_report.json"));
    EXPECT_EQ(b["schema"], kBoundsSchema);
    EXPECT_EQ(b["xi"].size(), 24u);

    std::istringstream field(read_file(out / "n_field.csv"));
    std::string line;
    std::getline(field, line);
    EXPECT_EQ(line, "# fcl-field/1 quantity=n");
    std::getline(field, line);
    EXPECT_EQ(line, "t,x,xi,value");

    // tampering is caught by the hash check
    std::ofstream(out / snapshot_name(0), std::ios::app) << "0,0,0,0\n";
    EXPECT_THROW(load_run(out), ConfigError);
}

TEST_F(IoTest, PairOutputs) {
    RunConfig c = parse_config_text(kSmall);
    PairOutput p = pair_to_directory(c, dir_, dir_ / "pair");
    EXPECT_TRUE(p.report.pass());
    EXPECT_TRUE(fs::exists(dir_ / "pair" / "pair_manifest.json"));
    std::string csv = read_file(dir_ / "pair" / "pair_distance.csv");
    EXPECT_EQ(csv.rfind("# fcl-distance/1 mode=comparison\nt,l1_distance,l1_pos_part,l1_neg_part\n", 0), 0u);
}

TEST_F(IoTest, OutputRootEnvironment) {
    setenv(kOutputRootEnv, dir_.c_str(), 1);
    EXPECT_EQ(resolve_output_dir("a/b"), dir_ / "a/b");
    EXPECT_EQ(resolve_output_dir("/abs"), fs::path("/abs"));
    unsetenv(kOutputRootEnv);
    EXPECT_EQ(resolve_output_dir("a/b"), fs::path("a/b"));
}

TEST_F(IoTest, Sha256KnownVector) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(IoTest, CliRunDiagnosePair) {
    fs::path cfg = write_config("small.toml", kSmall);
    std::string log;
    ASSERT_EQ(cli("run " + cfg.string() + " -o " + (dir_ / "r").string(), &log), 0) << log;
    EXPECT_TRUE(fs::exists(dir_ / "r" / "manifest.json"));
    int rc = cli("diagnose " + (dir_ / "r").string(), &log);
    EXPECT_TRUE(rc == 0 || rc == 4) << log;
    EXPECT_TRUE(fs::exists(dir_ / "r" / "diagnose_manifest.json"));
    EXPECT_EQ(cli("pair " + cfg.string() + " -o " + (dir_ / "p").string(), &log), 0) << log;
}

TEST_F(IoTest, CliOutputRootIsHonoured) {
    fs::path cfg = write_config("small.toml", kSmall);
    std::string cmd = std::string(kOutputRootEnv) + "=" + (dir_ / "root").string() + " ";
    std::string full = cmd + FCL_CLI + " run " + cfg.string() + " > " + (dir_ / "log").string() + " 2>&1";
    ASSERT_EQ(std::system(full.c_str()), 0);
    EXPECT_TRUE(fs::exists(dir_ / "root" / "fcl_out" / "manifest.json"));
}

TEST_F(IoTest, CliExitCodes) {
    std::string log;
    fs::path bad = write_config("bad.toml", "schema = \"fcl-config/1\"\n[model]\nflux = \"burgers\"\n");
    EXPECT_EQ(cli("run " + bad.string(), &log), 2);
    EXPECT_NE(log.find("model.diffusion"), std::string::npos) << log;

    std::string t = kSmall;
    t.replace(t.find("output_every = 5"), 16, "output_every = 5\ndt = 1.0");
    fs::path big_dt = write_config("dt.toml", t);
    EXPECT_EQ(cli("run " + big_dt.string() + " -o " + (dir_ / "x").string(), &log), 2);
    EXPECT_NE(log.find("admissible dt"), std::string::npos) << log;

    EXPECT_EQ(cli("no-such-command", &log), 2);
    EXPECT_EQ(cli("verify-identities --scale 0.001", &log), 0) << log;
    EXPECT_NE(log.find("PASS"), std::string::npos);
}

TEST_F(IoTest, CliConvergence) {
    std::string t = kSmall;
    t.replace(t.find("T = 0.2"), 7, "T = 0.5");
    fs::path cfg = write_config("conv.toml", t);
    std::string log;
    ASSERT_EQ(cli("convergence " + cfg.string() + " --levels 4 -o " + (dir_ / "c").string(), &log), 0) << log;
    nlohmann::json j = nlohmann::json::parse(read_file(dir_ / "c" / "convergence.json"));
    EXPECT_EQ(j["schema"], "fcl-convergence/1");
    EXPECT_EQ(j["observed_orders"].size(), 2u);
    EXPECT_EQ(j["cells"].size(), 4u);
    EXPECT_GE(j["min_order"].get<double>(), 0.5);
}
