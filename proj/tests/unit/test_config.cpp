#include <fstream>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "fcl/config.hpp"

using namespace fcl;

namespace {

const std::string kMinimal = R"(schema = "fcl-config/1"
[model]
flux = "burgers"
diffusion = "identity"
measure = { kind = "fractional", alpha = 1.0 }
[grid]
cells = 64
[run]
T = 0.5
)";

std::vector<std::string> errors_of(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ConfigErrors& e) {
        return e.errors();
    }
    return {};
}

bool any_contains(const std::vector<std::string>& v, const std::string& needle) {
    for (const auto& s : v)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST(Config, MinimalGetsDefaults) {
    RunConfig c = parse_config_text(kMinimal);
    EXPECT_EQ(c.grid.cells, 64u);
    EXPECT_EQ(c.run.T, 0.5);
    EXPECT_EQ(c.run.safety, 0.9);
    EXPECT_EQ(c.grid.boundary, "periodic");
    EXPECT_EQ(c.op.strategy, "direct");
    EXPECT_FALSE(c.pair.enabled);
    EXPECT_FALSE(c.run.dt.has_value());
    ModelSpec s = c.to_model();
    EXPECT_EQ(s.domain.cells, 64u);
    EXPECT_EQ(c.run_options().T, 0.5);
}

TEST(Config, AlphaOutOfRangeNamesKeyAndCondition) {
    std::string t = kMinimal;
    t.replace(t.find("alpha = 1.0"), 11, "alpha = 2.5");
    auto e = errors_of(t);
    ASSERT_FALSE(e.empty());
    EXPECT_TRUE(any_contains(e, "model.measure.alpha"));
    EXPECT_TRUE(any_contains(e, "alpha in (0,2)"));
}

TEST(Config, DuplicateKeyReportsLine) {
    auto e = errors_of(kMinimal + "T = 1.0\n");
    ASSERT_FALSE(e.empty());
    EXPECT_TRUE(any_contains(e, "run.T"));
    EXPECT_TRUE(any_contains(e, "line 10"));
}

TEST(Config, UnknownKeyAndTypeMismatch) {
    auto e = errors_of(kMinimal + "tee = 1.0\n");
    EXPECT_TRUE(any_contains(e, "run.tee"));
    std::string t = kMinimal;
    t.replace(t.find("cells = 64"), 10, "cells = \"many\"");
    EXPECT_TRUE(any_contains(errors_of(t), "grid.cells"));
}

TEST(Config, AllErrorsCollectedAtOnce) {
    std::string t = kMinimal;
    t.replace(t.find("alpha = 1.0"), 11, "alpha = -1.0");
    t.replace(t.find("cells = 64"), 10, "cells = 1");
    t += "safety = 3.0\n";
    auto e = errors_of(t);
    EXPECT_GE(e.size(), 3u);
    EXPECT_TRUE(any_contains(e, "model.measure.alpha"));
    EXPECT_TRUE(any_contains(e, "grid.cells"));
    EXPECT_TRUE(any_contains(e, "run.safety"));
}

TEST(Config, MissingRequiredAndBadSchema) {
    auto e = errors_of("schema = \"fcl-config/9\"\n[run]\nT = 1.0\n");
    EXPECT_TRUE(any_contains(e, "schema"));
    EXPECT_TRUE(any_contains(e, "model.flux"));
    EXPECT_TRUE(any_contains(e, "grid.cells"));
}

TEST(Config, TabulatedTableMustExist) {
    std::string t = kMinimal;
    t.replace(t.find("kind = \"fractional\", alpha = 1.0"), 32,
              "kind = \"tabulated\", table_path = \"no_such_table.csv\"");
    auto e = errors_of(t);
    EXPECT_TRUE(any_contains(e, "model.measure.table_path"));
    EXPECT_TRUE(any_contains(e, "no_such_table.csv"));
}

TEST(Config, FftNeedsPeriodic) {
    std::string t = kMinimal;
    t.replace(t.find("cells = 64"), 10, "cells = 64\nboundary = \"zero\"");
    t += "[operator]\nstrategy = \"fft\"\n";
    EXPECT_TRUE(any_contains(errors_of(t), "fft requires"));
}

TEST(Config, SampleConfigParses) {
    RunConfig c = parse_config(std::filesystem::path(FCL_CONFIG_DIR) / "burgers_alpha1.toml");
    EXPECT_TRUE(c.pair.enabled);
    EXPECT_EQ(c.pair.mode, "comparison");
    EXPECT_NO_THROW(c.to_model().validate());
}

TEST(Config, FormatDoubleRoundTrips) {
    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int k = 0; k < 10000; ++k) {
        double v = u(g);
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(1.0), "1.0");
    EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Config, RandomConfigsRoundTrip) {
    std::mt19937_64 g(2024);
    auto pick = [&](std::vector<std::string> v) {
        return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(g)];
    };
    std::uniform_real_distribution<double> u(0.01, 3.0);
    auto rnd_initial = [&]() {
        InitialConfig i;
        i.profile = pick({"box", "bump", "riemann", "gaussian"});
        i.center = u(g) - 1.5;
        i.width = u(g);
        i.height = u(g);
        i.left = u(g);
        i.right = u(g) - 3.0;
        return i;
    };
    for (int trial = 0; trial < 100; ++trial) {
        RunConfig c;
        c.model.flux = pick({"burgers", "linear", "poly", "zero"});
        c.model.flux_speed = u(g) - 1.5;
        c.model.flux_coeffs = {u(g), u(g), u(g)};
        c.model.diffusion = pick({"identity", "power", "piecewise", "zero"});
        c.model.diffusion_m = 1.0 + u(g);
        c.model.breakpoints = {0.25};
        c.model.slopes = {u(g), u(g)};
        c.model.measure.kind = pick({"fractional", "tempered", "bounded"});
        c.model.measure.alpha = 0.05 + 0.6 * u(g);
        c.model.measure.lambda = u(g);
        c.model.measure.mass = u(g);
        c.model.measure.radius = u(g);
        if (trial % 3 == 0) {
            c.model.measure.atom_positions = {u(g), u(g)};
            c.model.measure.atom_weights = {u(g), u(g)};
        }
        c.grid.x0 = -u(g);
        c.grid.length = 1.0 + u(g);
        c.grid.cells = 16 + static_cast<std::size_t>(100 * u(g));
        c.grid.boundary = pick({"periodic", "zero"});
        c.initial = rnd_initial();
        c.op.strategy = c.grid.boundary == "periodic" ? pick({"direct", "fft"}) : "direct";
        c.op.cutoff = trial % 2 ? 0.0 : u(g);
        c.op.periodic_images = 1 + trial % 9;
        c.run.T = u(g);
        c.run.safety = 0.3 * u(g);
        c.run.output_every = 1 + trial % 7;
        c.run.output_dir = "out/t" + std::to_string(trial);
        if (trial % 4 == 0) c.run.dt = 1e-3 * u(g);
        c.diagnostics.xi_points = 8 + trial;
        c.diagnostics.entropies = trial % 2 ? std::vector<std::string>{"quadratic"}
                                            : std::vector<std::string>{"quadratic", "kruzhkov"};
        c.diagnostics.kruzhkov_levels = 1 + trial % 5;
        c.diagnostics.test_center = u(g) - 1.5;
        c.diagnostics.test_half_width = u(g);
        c.diagnostics.field_every = trial % 3;
        if (trial % 2 == 0) {
            c.pair.enabled = true;
            c.pair.mode = pick({"contraction", "comparison"});
            c.pair.first = rnd_initial();
            c.pair.second = rnd_initial();
        }
        std::string text = emit_config(c);
        RunConfig back = parse_config_text(text);
        ASSERT_EQ(back, c) << text;
        ASSERT_EQ(emit_config(back), text);
    }
}
