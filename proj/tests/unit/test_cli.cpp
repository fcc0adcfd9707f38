#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mgsim/cli.hpp"
#include "mgsim/config.hpp"
#include "mgsim/io.hpp"
#include "mgsim/snapshot.hpp"

using namespace mgsim;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mgsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"bogus"}).code, kExitUsage);
  EXPECT_EQ(cli({"run"}).code, kExitUsage);
  const Result missing = cli({"run", "--config", path("missing.toml")});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("missing.toml"), std::string::npos);
  const Result unknown = cli({"run", "--scenario", "nope"});
  EXPECT_EQ(unknown.code, kExitUsage);
  EXPECT_NE(unknown.err.find("nope"), std::string::npos);
}

TEST_F(CliTest, InvalidConfigNamesClause) {
  std::ofstream(path("bad.toml")) << "[params]\nmu = -1.0\n";
  const Result r = cli({"run", "--config", path("bad.toml")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("mu > 0"), std::string::npos);
}

TEST_F(CliTest, RunZeroScenarioWritesCsvAndReport) {
  const Result r = cli({"run", "--scenario", "zero", "--csv", path("z.csv"), "--report", path("z")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(path("z.csv"));
  const auto records = read_diagnostics_csv(in);
  EXPECT_EQ(records.size(), 11u);
  EXPECT_TRUE(fs::exists(path("z.txt")));
  EXPECT_TRUE(fs::exists(path("z.json")));
}

TEST_F(CliTest, OutputDirectoryMustExist) {
  const Result r = cli({"run", "--scenario", "zero", "--csv", path("no/such/dir/z.csv")});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST_F(CliTest, BlowUpExitsWithLastValidTime) {
  ScenarioConfig c = preset_scenario("blowup_stress");
  c.n_modes_x = 16;
  c.n_modes_y = 16;
  c.output.csv = path("b.csv");
  c.output.report.clear();
  std::ofstream(path("b.toml")) << serialize_config(c);
  const Result r = cli({"run", "--config", path("b.toml")});
  EXPECT_EQ(r.code, kExitBlowUp);
  EXPECT_NE(r.err.find("last valid time t = "), std::string::npos);
  std::ifstream in(path("b.csv"));
  EXPECT_FALSE(read_diagnostics_csv(in).empty());
}

TEST_F(CliTest, SpectrumDump) {
  const Grid g(3, 2);
  SpectralField u(g);
  u(2, 1) = cplx(0.25, 0.0);
  u(-2, 1) = cplx(0.25, 0.0);
  write_snapshot(fs::path(path("s.mgsp")), u);
  const Result r = cli({"spectrum", "--snapshot", path("s.mgsp")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,m,re,im,abs");
  EXPECT_NE(r.out.find("\n2,1,0.25,0,0.25\n"), std::string::npos);
  EXPECT_EQ(cli({"spectrum", "--snapshot", path("absent.mgsp")}).code, kExitUsage);
}

TEST_F(CliTest, ConfigReference) {
  const Result r = cli({"config-reference"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, config_reference());
}

TEST_F(CliTest, VerifySmallBattery) {
  ScenarioConfig c = preset_scenario("zero");
  c.output.csv.clear();
  std::ofstream(path("z.toml")) << serialize_config(c);
  const Result r = cli({"verify", "--config", path("z.toml"), "--trials", "20", "--report", path("v")});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("jensen"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("v.json")));
}
