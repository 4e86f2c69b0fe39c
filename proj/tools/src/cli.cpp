#include "gpsim/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "gpsim/constellation.hpp"
#include "gpsim/error.hpp"
#include "report_json.hpp"

namespace gpsim::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string scenario;
  std::string format = "csv";
  std::string out_dir;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  bool seed_given = false;
  unsigned threads = 0;

  // plan-transfer
  double r1 = 6578e3;
  double r2 = 26560e3;

  // coverage
  int planes = 6;
  int sats_per_plane = 4;
  double inclination_deg = 55.0;
  double sma = 26560e3;
  double mask_deg = 5.0;
  double grid_deg = 10.0;
  double duration = 0.0;  // 0 -> one period
  double step = 60.0;

  // monte-carlo
  int runs = 100;
};

bool json_format(const Options& o) { return o.format == "json"; }

Scenario load(const Options& o) {
  Scenario s = o.scenario.empty() ? Scenario{} : load_scenario(o.scenario);
  if (o.seed_given) s.seed = o.seed;
  return s;
}

fs::path output_dir(const Options& o) {
  if (!o.out_dir.empty()) return o.out_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return ".";
}

void write_file(const fs::path& path, const std::string& text) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw DataError("write failed for '" + path.string() + "'");
}

void print(std::ostream& out, const Options& o, const Json& j) {
  if (json_format(o)) {
    out << j.dump(2) << '\n';
  } else {
    out << flat_csv(j);
  }
}

// Writes telemetry next to the report and prints the report.
void emit_run(std::ostream& out, const Options& o, const MissionResult& res,
              const std::string& stem) {
  const fs::path dir = output_dir(o);
  const TelemetryFormat fmt = json_format(o) ? TelemetryFormat::Json : TelemetryFormat::Csv;
  const fs::path tel = dir / (stem + "telemetry." + (json_format(o) ? "json" : "csv"));
  write_file(tel, telemetry_to_string(res.telemetry, fmt));
  write_file(dir / (stem + "report.json"), report_to_json(res.report));
  Json j = to_json(res.report);
  j["telemetry_file"] = tel.string();
  j["telemetry_rows"] = res.telemetry.size();
  print(out, o, j);
}

int cmd_plan_transfer(std::ostream& out, const Options& o) {
  print(out, o, to_json(hohmann_plan(o.r1, o.r2)));
  return 0;
}

int cmd_coverage(std::ostream& out, const Options& o) {
  ConstellationSpec spec;
  spec.num_planes = o.planes;
  spec.sats_per_plane = o.sats_per_plane;
  spec.inclination = deg2rad(o.inclination_deg);
  spec.semi_major_axis = o.sma;
  const CoverageGrid grid{deg2rad(o.grid_deg), deg2rad(o.grid_deg), deg2rad(o.mask_deg)};
  const double duration = o.duration > 0.0 ? o.duration : orbital_period(o.sma);
  const CoverageMap map = coverage_sweep(spec, grid, duration, o.step, {}, o.threads);

  if (json_format(o)) {
    Json cells = Json::array();
    for (const auto& c : map.cells) {
      cells.push_back({{"lat_deg", rad2deg(c.latitude)},
                       {"lon_deg", rad2deg(c.longitude)},
                       {"min_visible", c.min_visible}});
    }
    const Json j{{"global_min", map.global_min},
                 {"worst_lat_deg", rad2deg(map.worst_latitude)},
                 {"worst_lon_deg", rad2deg(map.worst_longitude)},
                 {"worst_epoch_s", map.worst_epoch},
                 {"epochs_sampled", map.epochs_sampled},
                 {"cells", cells}};
    out << j.dump(1) << '\n';
  } else {
    out << "lat_deg,lon_deg,min_visible\n";
    char buf[96];
    for (const auto& c : map.cells) {
      std::snprintf(buf, sizeof buf, "%.6g,%.6g,%d\n", rad2deg(c.latitude), rad2deg(c.longitude),
                    c.min_visible);
      out << buf;
    }
  }
  return 0;
}

int cmd_monte_carlo(std::ostream& out, const Options& o) {
  const Scenario s = load(o);
  const MonteCarloSummary summary = monte_carlo(s, o.runs, o.threads);
  Json j = to_json(summary);
  j["seed"] = s.seed;
  print(out, o, j);
  return 0;
}

void usage_error(std::ostream& err, const std::string& msg) {
  err << "error: kind=usage message=" << msg << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"GPS satellite mission simulator", "gpsim"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    o.seed_opt = sub->add_option("--seed", o.seed, "Overrides the scenario seed");
  };
  auto add_scenario = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--scenario", o.scenario, "Scenario file (JSON)")
                    ->check(CLI::ExistingFile);
    if (required) opt->required();
  };
  std::vector<CLI::Option*> seed_opts;

  auto* plan = app.add_subcommand("plan-transfer", "Hohmann transfer between circular radii");
  plan->add_option("--r1", o.r1, "Departure radius, m")->capture_default_str();
  plan->add_option("--r2", o.r2, "Arrival radius, m")->capture_default_str();
  add_common(plan);
  seed_opts.push_back(o.seed_opt);

  auto* adcs = app.add_subcommand("simulate-adcs", "Closed-loop ADCS on the nominal orbit");
  add_scenario(adcs, true);
  adcs->add_option("--out", o.out_dir, std::string("Output directory (default $") + kOutputDirEnv + " or .)");
  add_common(adcs);
  seed_opts.push_back(o.seed_opt);

  auto* sk = app.add_subcommand("stationkeep", "Slot monitoring and lifetime fuel schedule");
  add_scenario(sk, true);
  sk->add_option("--out", o.out_dir, "Output directory");
  add_common(sk);
  seed_opts.push_back(o.seed_opt);

  auto* cov = app.add_subcommand("coverage", "Constellation coverage map");
  cov->add_option("--planes", o.planes)->check(CLI::PositiveNumber)->capture_default_str();
  cov->add_option("--sats-per-plane", o.sats_per_plane)->check(CLI::PositiveNumber)->capture_default_str();
  cov->add_option("--mask", o.mask_deg, "Elevation mask, deg")->capture_default_str();
  cov->add_option("--grid", o.grid_deg, "Grid spacing, deg")->check(CLI::PositiveNumber)->capture_default_str();
  cov->add_option("--inclination", o.inclination_deg, "deg")->capture_default_str();
  cov->add_option("--sma", o.sma, "Semi-major axis, m")->capture_default_str();
  cov->add_option("--duration", o.duration, "Seconds (default one period)");
  cov->add_option("--step", o.step, "Sampling step, s")->capture_default_str();
  cov->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  add_common(cov);
  seed_opts.push_back(o.seed_opt);

  auto* mission = app.add_subcommand("mission", "End-to-end mission run");
  add_scenario(mission, true);
  mission->add_option("--out", o.out_dir, "Output directory");
  add_common(mission);
  seed_opts.push_back(o.seed_opt);

  auto* mc = app.add_subcommand("monte-carlo", "Seeded Monte Carlo sweep of the mission");
  add_scenario(mc, true);
  mc->add_option("-n,--runs", o.runs, "Number of runs")->check(CLI::PositiveNumber)->capture_default_str();
  mc->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  add_common(mc);
  seed_opts.push_back(o.seed_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    usage_error(err, e.what());
    return 2;
  }

  // only the chosen subcommand's --seed can have been given
  o.seed_given = false;
  for (auto* opt : seed_opts) o.seed_given = o.seed_given || opt->count() > 0;

  try {
    if (plan->parsed()) return cmd_plan_transfer(out, o);
    if (cov->parsed()) return cmd_coverage(out, o);
    if (mc->parsed()) return cmd_monte_carlo(out, o);
    if (adcs->parsed()) {
      emit_run(out, o, run_adcs(load(o)), "adcs_");
      return 0;
    }
    if (sk->parsed()) {
      emit_run(out, o, run_stationkeeping(load(o)), "stationkeeping_");
      return 0;
    }
    if (mission->parsed()) {
      emit_run(out, o, run_mission(load(o)), "");
      return 0;
    }
  } catch (const ScenarioError& e) {
    err << "error: kind=" << e.kind() << " field=" << (e.field().empty() ? "-" : e.field())
        << " message=" << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: kind=" << e.kind() << " message=" << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: kind=internal message=" << e.what() << '\n';
    return 1;
  }
  usage_error(err, "no subcommand");
  return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"gpsim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gpsim::cli
