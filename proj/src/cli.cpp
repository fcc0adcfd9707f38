#include "mgsim/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mgsim/config.hpp"
#include "mgsim/io.hpp"
#include "mgsim/mms.hpp"
#include "mgsim/oracle_compare.hpp"
#include "mgsim/presets.hpp"
#include "mgsim/simulation.hpp"
#include "mgsim/snapshot.hpp"
#include "mgsim/verification.hpp"

namespace mgsim {

namespace {

namespace fs = std::filesystem;

// Bad input detected after parsing (paths, mean-zero data); exits 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Source {
  std::string config;
  std::string scenario;
};

void add_source(CLI::App* app, Source& src) {
  auto* c = app->add_option("--config", src.config, "scenario TOML file");
  auto* s = app->add_option("--scenario", src.scenario, "shipped scenario name");
  c->excludes(s);
}

ScenarioConfig resolve(const Source& src, const std::string& fallback = "") {
  if (!src.config.empty()) return load_config(src.config);
  if (!src.scenario.empty()) return preset_scenario(src.scenario);
  if (!fallback.empty()) return preset_scenario(fallback);
  throw UsageError("one of --config or --scenario is required");
}

void check_writable(const std::string& path, const std::string& what) {
  if (path.empty()) return;
  const fs::path parent = fs::absolute(fs::path(path)).parent_path();
  if (!fs::is_directory(parent)) {
    throw UsageError(what + ": directory '" + parent.string() + "' does not exist");
  }
}

SpectralField initial_or_usage(const ScenarioConfig& c) {
  try {
    return c.initial_field();
  } catch (const SnapshotError& e) {
    throw UsageError(std::string("initial.snapshot: ") + e.what());
  }
}

void write_snapshots(const TrajectoryLog& log, const ScenarioConfig& c) {
  if (log.snapshots.empty()) return;
  fs::create_directories(c.output.snapshot_dir);
  for (const auto& s : log.snapshots) {
    const fs::path p = fs::path(c.output.snapshot_dir) / ("snap_" + std::to_string(s.step) + ".mgsp");
    write_snapshot(p, s.u);
  }
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    if (!r.passed()) return false;
  }
  return true;
}

void emit(const std::vector<VerificationReport>& reports, const std::string& stem,
          std::ostream& out) {
  for (const auto& r : reports) out << r.to_text() << '\n';
  if (!stem.empty() && !reports.empty()) write_report(reports, stem);
}

// Trajectory for c; blow-up is rethrown after the partial CSV is written.
TrajectoryLog simulate(const ScenarioConfig& c, const SpectralField& u0, const ModelParams& p) {
  RunOptions opt;
  opt.theorem_mode = c.modes.theorem_mode();
  opt.snapshot_every = c.output.snapshot_every;
  try {
    TrajectoryLog log = run_simulation(u0, p, c.stepper, {}, opt);
    if (!c.output.csv.empty()) write_diagnostics_csv(log, c.output.csv);
    write_snapshots(log, c);
    return log;
  } catch (const SimulationBlowUp& e) {
    if (!c.output.csv.empty() && !e.partial_log().records.empty()) {
      write_diagnostics_csv(e.partial_log(), c.output.csv);
    }
    throw;
  }
}

std::vector<VerificationReport> theorem_reports(const ScenarioConfig& c, const TrajectoryLog& log) {
  std::vector<VerificationReport> reports;
  if (c.modes.theorem1) reports.push_back(check_theorem1(log, Theorem1Tolerance{}));
  if (c.modes.theorem2) reports.push_back(check_theorem2(log, Theorem2Tolerance{}));
  return reports;
}

VerificationReport mms_report(const ScenarioConfig& c, std::ostream& out, const std::string& csv) {
  ModelParams p = c.model_params();
  p.forcing = nullptr;
  const ConvergenceTable table = convergence_study(c.manufactured, p, StudyPlan{});
  out << table.to_text();
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw UsageError("cannot open '" + csv + "' for writing");
    table.write_csv(f);
  }
  return check_convergence(table);
}

int cmd_run(const Source& src, const std::string& csv, const std::string& report,
            std::optional<double> t_end, std::ostream& out) {
  ScenarioConfig c = resolve(src);
  if (!csv.empty()) c.output.csv = csv;
  if (!report.empty()) c.output.report = report;
  if (t_end) c.stepper.t_end = *t_end;
  c.validate();
  check_writable(c.output.csv, "output.csv");
  check_writable(c.output.report, "output.report");
  const SpectralField u0 = initial_or_usage(c);
  const ModelParams p = c.model_params();
  const TrajectoryLog log = simulate(c, u0, p);
  const auto& last = log.records.back();
  out << "run " << c.name << ": " << log.records.size() << " records, t = " << last.t
      << ", l2 = " << last.l2 << ", linf = " << last.linf << '\n';
  std::vector<VerificationReport> reports = theorem_reports(c, log);
  if (c.modes.mms) reports.push_back(mms_report(c, out, ""));
  if (c.modes.oracle_compare) reports.push_back(compare_with_fd(u0, p).report);
  emit(reports, c.output.report, out);
  return all_passed(reports) ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(const Source& src, int trials, std::uint64_t seed, bool twin,
               const std::string& report, std::ostream& out) {
  ScenarioConfig c = resolve(src);
  if (!report.empty()) c.output.report = report;
  if (!c.modes.theorem_mode()) c.modes.theorem1 = true;
  c.output.csv.clear();
  c.output.snapshot_every = 0;
  c.validate();
  check_writable(c.output.report, "output.report");
  const SpectralField u0 = initial_or_usage(c);
  const ModelParams p = c.model_params();
  std::vector<VerificationReport> reports;
  reports.push_back(check_inequality_battery(trials, seed));
  const TrajectoryLog log = simulate(c, u0, p);
  for (auto& r : theorem_reports(c, log)) reports.push_back(std::move(r));
  if (twin) {
    const SpectralField du = single_mode(u0.grid(), 1, 1, 1e-8);
    reports.push_back(twin_run_stability(u0, du, p, c.stepper).report);
  }
  emit(reports, c.output.report, out);
  return all_passed(reports) ? kExitOk : kExitVerificationFailed;
}

int cmd_mms(const Source& src, const std::string& csv, const std::string& report,
            std::ostream& out) {
  ScenarioConfig c;
  if (!src.config.empty() || !src.scenario.empty()) {
    c = resolve(src);
  } else {
    c.alpha = -0.1;
    c.beta = 0.5;
  }
  check_writable(csv, "--csv");
  check_writable(report, "--report");
  std::vector<VerificationReport> reports{mms_report(c, out, csv)};
  emit(reports, report, out);
  return all_passed(reports) ? kExitOk : kExitVerificationFailed;
}

int cmd_oracle(const Source& src, double t_end, const std::vector<int>& sizes,
               const std::string& report, std::ostream& out) {
  const ScenarioConfig c = resolve(src, "small_data");
  if (c.forcing) throw UsageError("oracle: the finite-difference solver takes no forcing");
  check_writable(report, "--report");
  OracleStudy study;
  study.t_end = t_end;
  if (!sizes.empty()) study.sizes = sizes;
  const OracleComparison cmp = compare_with_fd(initial_or_usage(c), c.model_params(), study);
  std::vector<VerificationReport> reports{cmp.report};
  emit(reports, report, out);
  return all_passed(reports) ? kExitOk : kExitVerificationFailed;
}

int cmd_spectrum(const std::string& snapshot, const std::string& csv, std::ostream& out) {
  SpectralField u = [&] {
    try {
      return read_snapshot(fs::path(snapshot));
    } catch (const SnapshotError& e) {
      throw UsageError(e.what());
    }
  }();
  if (csv.empty()) {
    write_spectrum_csv(u, out);
    return kExitOk;
  }
  std::ofstream f(csv);
  if (!f) throw UsageError("cannot open '" + csv + "' for writing");
  write_spectrum_csv(u, f);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Channel flow spectral solver and estimate checker", "mgsim");
  app.require_subcommand(1);

  Source run_src, verify_src, mms_src, oracle_src;
  std::string run_csv, run_report, verify_report, mms_csv, mms_report_path, oracle_report;
  std::string snapshot, spectrum_csv;
  std::optional<double> run_t_end;
  int trials = 500;
  std::uint64_t seed = 12345;
  bool twin = false;
  double oracle_t_end = 0.1;
  std::vector<int> sizes;

  auto* run = app.add_subcommand("run", "simulate, write diagnostics and reports");
  add_source(run, run_src);
  run->add_option("--csv", run_csv, "diagnostics CSV (overrides output.csv)");
  run->add_option("--report", run_report, "report stem (overrides output.report)");
  run->add_option("--t-end", run_t_end, "final time (overrides stepper.t_end)");

  auto* verify = app.add_subcommand("verify", "inequality battery and theorem checks");
  add_source(verify, verify_src);
  verify->add_option("--trials", trials, "random fields in the battery")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "battery seed");
  verify->add_flag("--twin", twin, "also run the twin-run stability check");
  verify->add_option("--report", verify_report, "report stem");

  auto* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
  add_source(mms, mms_src);
  mms->add_option("--csv", mms_csv, "convergence table CSV");
  mms->add_option("--report", mms_report_path, "report stem");

  auto* oracle = app.add_subcommand("oracle", "compare with the finite-difference solver");
  add_source(oracle, oracle_src);
  oracle->add_option("--t-end", oracle_t_end, "comparison time")->check(CLI::PositiveNumber);
  oracle->add_option("--sizes", sizes, "FD grid sizes")->delimiter(',');
  oracle->add_option("--report", oracle_report, "report stem");

  auto* spectrum = app.add_subcommand("spectrum", "dump snapshot coefficients as CSV");
  spectrum->add_option("--snapshot", snapshot, "MGSP snapshot")->required();
  spectrum->add_option("--out", spectrum_csv, "output CSV (default: standard output)");

  auto* reference = app.add_subcommand("config-reference", "print the configuration reference");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_src, run_csv, run_report, run_t_end, out);
    if (*verify) return cmd_verify(verify_src, trials, seed, twin, verify_report, out);
    if (*mms) return cmd_mms(mms_src, mms_csv, mms_report_path, out);
    if (*oracle) return cmd_oracle(oracle_src, oracle_t_end, sizes, oracle_report, out);
    if (*spectrum) return cmd_spectrum(snapshot, spectrum_csv, out);
    if (*reference) {
      out << config_reference();
      return kExitOk;
    }
  } catch (const BlowUpError& e) {
    err << e.what() << "; last valid time t = " << e.last_valid_time() << '\n';
    return kExitBlowUp;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace mgsim
