#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mgsim/config.hpp"
#include "mgsim/presets.hpp"
#include "mgsim/snapshot.hpp"

using namespace mgsim;
namespace fs = std::filesystem;

namespace {

std::string message_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST(Config, EmptyTextGivesDefaults) {
  const ScenarioConfig c = parse_config("");
  EXPECT_EQ(c, ScenarioConfig{});
  EXPECT_EQ(c.n_modes_x, 32);
  EXPECT_EQ(c.stepper.scheme, Scheme::IntegratingFactorRK2);
}

TEST(Config, MinimalScenario) {
  const ScenarioConfig c = parse_config(R"(
name = "demo"
[grid]
n_modes_x = 8
n_modes_y = 12
[params]
mu = 0.5
alpha = -0.2
beta = 0.25
[initial]
modes = [{n = 1, m = 1, re = 0.0, im = -0.1}, {n = 0, m = 2, re = 0.05}]
[stepper]
dt = 0.002
t_end = 0.1
scheme = "etd-rk2"
)");
  EXPECT_EQ(c.name, "demo");
  EXPECT_EQ(c.grid(), Grid(8, 12));
  EXPECT_DOUBLE_EQ(c.model_params().beta, 0.25);
  EXPECT_EQ(c.stepper.scheme, Scheme::ExponentialRK2);
  const SpectralField u = c.initial_field();
  EXPECT_EQ(u(1, 1), cplx(0.0, -0.1));
  EXPECT_EQ(u(-1, 1), cplx(0.0, 0.1));
  EXPECT_EQ(u(0, 2), cplx(0.05));
}

TEST(Config, ConstraintMessagesNameTheClause) {
  EXPECT_NE(message_of("[params]\nmu = -1.0\n").find("mu > 0"), std::string::npos);
  EXPECT_NE(message_of("[params]\nalpha = 0.5\n[modes]\ntheorem1 = true\n").find("alpha <= 0"),
            std::string::npos);
  EXPECT_NE(message_of("[stepper]\ndt = 0.0\n").find("dt > 0"), std::string::npos);
  EXPECT_NE(message_of("[grid]\noversample = 1\n").find("grid.oversample >= 2"), std::string::npos);
  EXPECT_NE(message_of("[initial]\npreset = \"manufactured\"\n").find("requires params.forcing"),
            std::string::npos);
  EXPECT_NE(message_of("[initial]\npreset = \"nope\"\n").find("unknown preset 'nope'"),
            std::string::npos);
  EXPECT_NE(message_of("[initial]\npreset = \"zero\"\nsnapshot = \"a.mgsp\"\n").find("exactly one"),
            std::string::npos);
  EXPECT_NE(message_of("[params]\nforcing = \"manufactured\"\n[forcing]\nn0 = 99\n")
                .find("inside the truncation"),
            std::string::npos);
}

TEST(Config, UnknownKeysAndTypes) {
  EXPECT_NE(message_of("[grid]\nnx = 4\n").find("unknown key 'grid.nx'"), std::string::npos);
  EXPECT_NE(message_of("speed = 1\n").find("unknown key 'speed'"), std::string::npos);
  EXPECT_NE(message_of("[grid]\nn_modes_x = 1.5\n").find("grid.n_modes_x: expected an integer"),
            std::string::npos);
  EXPECT_NE(message_of("[params]\nnonlinear = 1\n").find("params.nonlinear"), std::string::npos);
  EXPECT_NE(message_of("[stepper]\nscheme = \"euler\"\n").find("stepper.scheme"), std::string::npos);
  EXPECT_NE(message_of("[grid\n").find("malformed TOML at line 1"), std::string::npos);
}

TEST(Config, RoundTrip) {
  ScenarioConfig c;
  c.name = "round";
  c.n_modes_x = 6;
  c.n_modes_y = 10;
  c.oversample = 3;
  c.mu = 0.3;
  c.alpha = 0.1;
  c.beta = -1.0 / 3.0;
  c.nonlinear = false;
  c.forcing = true;
  c.manufactured = ManufacturedCase{0.2, 1.0 / 7.0, 2, 3};
  c.initial.kind = InitialCondition::Kind::Modes;
  c.initial.modes = {{1, 2, 0.1, -0.2}, {-3, 1, 1e-17, 0.0}};
  c.stepper.dt = 1.0 / 3000.0;
  c.stepper.t_end = 0.7;
  c.stepper.adapt = true;
  c.stepper.log_every = 7;
  c.stepper.scheme = Scheme::ExponentialRK2;
  c.output.csv = "out/run.csv";
  c.output.snapshot_every = 5;
  c.modes.mms = true;
  EXPECT_EQ(parse_config(serialize_config(c)), c);

  // inactive sections are not serialized
  c.forcing = false;
  c.manufactured = ManufacturedCase{};
  c.initial.kind = InitialCondition::Kind::Snapshot;
  c.initial.modes.clear();
  c.initial.snapshot = "snap.mgsp";
  EXPECT_EQ(parse_config(serialize_config(c)), c);

  for (const auto& name : preset_names()) {
    const ScenarioConfig p = preset_scenario(name);
    EXPECT_NO_THROW(p.validate()) << name;
    EXPECT_EQ(parse_config(serialize_config(p)), p) << name;
  }
  EXPECT_THROW(preset_scenario("nope"), ConfigError);
}

TEST(Config, ShippedScenarioFilesMatchPresets) {
  for (const auto& name : preset_names()) {
    const fs::path path = fs::path(MGSIM_SOURCE_DIR) / "scenarios" / (name + ".toml");
    ASSERT_TRUE(fs::exists(path)) << path;
    EXPECT_EQ(load_config(path), preset_scenario(name)) << name;
  }
  EXPECT_THROW(load_config("/nonexistent/x.toml"), ConfigError);
}

TEST(Config, ReferenceDocIsCurrent) {
  const std::string ref = config_reference();
  for (const char* key : {"n_modes_x", "oversample", "mu", "alpha", "beta", "nonlinear", "amplitude",
                          "preset", "snapshot", "cfl_safety", "log_every", "scheme", "snapshot_every",
                          "theorem1", "oracle_compare"}) {
    EXPECT_NE(ref.find(key), std::string::npos) << key;
  }
  EXPECT_EQ(read_file(fs::path(MGSIM_SOURCE_DIR) / "docs" / "CONFIG.md"), ref);
}

TEST(Config, SnapshotInitialCondition) {
  const fs::path dir = fs::temp_directory_path() / "mgsim_config_test";
  fs::create_directories(dir);
  const Grid g(4, 4);
  SpectralField s(g);
  s(2, 3) = cplx(0.5, -0.25);
  s(-2, 3) = cplx(0.5, 0.25);
  write_snapshot(dir / "s.mgsp", s);
  ScenarioConfig c;
  c.n_modes_x = 2;
  c.n_modes_y = 6;
  c.initial.kind = InitialCondition::Kind::Snapshot;
  c.initial.snapshot = (dir / "s.mgsp").string();
  const SpectralField u = c.initial_field();
  EXPECT_EQ(u.grid(), Grid(2, 6));
  EXPECT_EQ(u(2, 3), cplx(0.5, -0.25));
  EXPECT_EQ(u(1, 6), cplx(0.0));
  fs::remove_all(dir);
}
