// Command-line front end: run one scenario, sweep a grid, validate config files, or
// re-plot an existing telemetry CSV.
//
// Exit codes: 0 success, 1 configuration error, 2 failed run.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "fcsim/fcsim.hpp"

namespace fs = std::filesystem;

namespace {

fs::path output_root(const std::string& cli_out) {
  if (!cli_out.empty()) return cli_out;
  if (const char* env = std::getenv("FCSIM_OUT_ROOT")) return env;
  return "out";
}

void print_summary(const fcsim::RunSummary& s, bool completed, double end_time) {
  std::printf("%-24s  J_phi=%-9.5f J_theta=%-9.5f J_traj=%-8.3f  n=%ld  %s (t_end=%.1f s)\n",
              s.name.c_str(), s.j_phi, s.j_theta, s.j_traj, s.samples,
              s.failed ? ("FAILED: " + s.failure_reason).c_str()
                       : (completed ? "completed" : "ok"),
              end_time);
}

std::string summary_csv(const std::vector<fcsim::RunSummary>& rows) {
  std::string out =
      "name,j_phi,j_theta,j_traj,j_phi_rel,j_theta_rel,j_traj_rel,samples,failed,"
      "failure_reason,baseline\n";
  char buf[256];
  for (const auto& s : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%ld,%d,%s,%s\n",
                  s.name.c_str(), s.j_phi, s.j_theta, s.j_traj, s.j_phi_rel, s.j_theta_rel,
                  s.j_traj_rel, s.samples, s.failed ? 1 : 0, s.failure_reason.c_str(),
                  s.baseline.c_str());
    out += buf;
  }
  return out;
}

void emit_run_artifacts(const fs::path& dir, const fcsim::ScenarioConfig& cfg,
                        const fcsim::RunResult& res) {
  fs::create_directories(dir);
  fcsim::write_csv((dir / "telemetry.csv").string(), res.telemetry);
  if (!res.telemetry.empty()) {
    fcsim::write_text((dir / "ground_trace.svg").string(),
                      fcsim::svg_ground_trace(res.telemetry, &cfg.mission));
    fcsim::write_text((dir / "response.svg").string(),
                      fcsim::svg_attitude_response(res.telemetry));
    fcsim::write_text((dir / "gains.svg").string(),
                      fcsim::svg_gain_evolution(res.telemetry,
                                               cfg.alpha_d * cfg.attitude_gains.k_theta,
                                               cfg.alpha_d * cfg.attitude_gains.k_phi));
  }
  fcsim::write_text((dir / "summary.csv").string(), summary_csv({res.summary}));
}

int cmd_run(const std::string& file, const std::string& out,
            const std::optional<std::uint64_t>& seed) {
  fcsim::ScenarioConfig cfg = fcsim::load_scenario(file);
  if (seed) cfg.seed = *seed;
  const fcsim::RunResult res = fcsim::run_scenario(cfg);
  const fs::path dir = output_root(out) / cfg.name;
  emit_run_artifacts(dir, cfg, res);
  print_summary(res.summary, res.completed, res.end_time);
  std::printf("artifacts: %s\n", dir.string().c_str());
  return res.summary.failed ? 2 : 0;
}

int cmd_sweep(const std::string& file, const std::string& out,
              const std::optional<std::uint64_t>& seed) {
  fcsim::SweepConfig sc = fcsim::load_sweep(file);
  if (seed) sc.base.seed = *seed;
  const fcsim::SweepResult res = fcsim::sweep(sc);
  const fs::path dir = output_root(out) / sc.name;
  fs::create_directories(dir);
  for (std::size_t i = 0; i < res.runs.size(); ++i) {
    fcsim::ScenarioConfig row_cfg = sc.base;
    row_cfg.name = res.summaries[i].name;
    emit_run_artifacts(dir / res.summaries[i].name, row_cfg, res.runs[i]);
    print_summary(res.summaries[i], res.runs[i].completed, res.runs[i].end_time);
  }
  fcsim::write_text((dir / "summary.csv").string(), summary_csv(res.summaries));
  fcsim::write_text((dir / "metrics.svg").string(), fcsim::svg_metric_bars(res.summaries));
  std::printf("artifacts: %s\n", dir.string().c_str());
  return 0;
}

int cmd_validate(const std::string& file) {
  const fcsim::Json j = fcsim::load_json(file);
  const std::string name = fs::path(file).filename().string();
  if (j.contains("base")) {
    fcsim::sweep_from_json(j, name, fs::path(file).parent_path());
    std::printf("%s: valid sweep config\n", name.c_str());
  } else if (j.contains("mass_kg")) {
    fcsim::airframe_from_json(j, name);
    std::printf("%s: valid airframe config\n", name.c_str());
  } else {
    fcsim::scenario_from_json(j, name, fs::path(file).parent_path());
    std::printf("%s: valid scenario config\n", name.c_str());
  }
  return 0;
}

int cmd_plot(const std::string& file, const std::string& out) {
  const auto recs = fcsim::read_csv(file);
  const fs::path dir = output_root(out);
  fs::create_directories(dir);
  fcsim::write_text((dir / "ground_trace.svg").string(),
                    fcsim::svg_ground_trace(recs, nullptr));
  fcsim::write_text((dir / "response.svg").string(), fcsim::svg_attitude_response(recs));
  // Reference gain lines are unknown from a bare CSV; draw the gain traces alone.
  fcsim::write_text((dir / "gains.svg").string(),
                    fcsim::svg_gain_evolution(recs, 0.0, 0.0));
  std::printf("plots: %s\n", dir.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed-wing flight-control simulation with adaptive augmentation"};
  app.require_subcommand(1);

  std::string file, out;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "run one scenario and write telemetry/plots");
  run->add_option("scenario", file, "scenario JSON")->required();
  run->add_option("--out", out, "output root (default $FCSIM_OUT_ROOT or ./out)");
  run->add_option("--seed", seed, "override the scenario RNG seed");

  auto* sw = app.add_subcommand("sweep", "run a scenario grid and write a summary table");
  sw->add_option("sweep", file, "sweep JSON")->required();
  sw->add_option("--out", out, "output root (default $FCSIM_OUT_ROOT or ./out)");
  sw->add_option("--seed", seed, "override the base scenario RNG seed");

  auto* val = app.add_subcommand("validate", "validate a scenario/airframe/sweep JSON");
  val->add_option("config", file, "config JSON")->required();

  auto* plot = app.add_subcommand("plot", "regenerate SVG plots from a telemetry CSV");
  plot->add_option("telemetry", file, "telemetry CSV")->required();
  plot->add_option("--out", out, "output root (default $FCSIM_OUT_ROOT or ./out)");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(file, out, seed);
    if (sw->parsed()) return cmd_sweep(file, out, seed);
    if (val->parsed()) return cmd_validate(file);
    if (plot->parsed()) return cmd_plot(file, out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  } catch (const fcsim::SimError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == fcsim::ErrorKind::Config ? 1 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
