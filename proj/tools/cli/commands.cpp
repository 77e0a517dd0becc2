#include "cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "cli/checks.hpp"
#include "irfit/dam/problem.hpp"
#include "irfit/errors.hpp"
#include "irfit/ir/driver.hpp"
#include "irfit/ir/trace_csv.hpp"
#include "json.hpp"

namespace irfit::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string fixed(double v, int digits = 17) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

dam::DamSimulator make_simulator(const RunConfig& config) {
  dam::DamSettings settings;
  settings.frames = dam::load_frames(config.frames);
  settings.packing = config.packing;
  settings.spg = config.spg;
  return dam::DamSimulator(std::move(settings));
}

/// Writes snapshot_<k>.txt / .pgm for the aligned iterates of (x, y) and
/// returns their description.
ordered_json write_snapshots(dam::DamProblem& problem, double x, long y, const fs::path& dir, std::ostream& out) {
  const auto& eval = problem.details(x, y);
  const auto frames = problem.simulator().snapshots(dam::DamProblem::quantize(x), y, eval.alignment.indices);
  const auto& experiment = problem.simulator().settings().frames;
  ordered_json list = ordered_json::array();
  for (int k = 0; k < dam::kFrameCount; ++k) {
    const std::string stem = "snapshot_" + std::to_string(k + 1);
    write_file(dir / (stem + ".txt"), dam::render_ascii(frames[k]));
    write_file(dir / (stem + ".pgm"), dam::render_pgm(frames[k]));
    const int score = dam::fitness(frames[k], experiment.frames[k]);
    out << "frame " << k + 1 << "  t=" << experiment.times[k] << "  iterate " << eval.alignment.indices[k]
        << "  fitness " << score << "/" << dam::kCells << '\n'
        << dam::render_ascii(frames[k]);
    list.push_back({{"frame", k + 1},
                    {"t", experiment.times[k]},
                    {"iterate", eval.alignment.indices[k]},
                    {"fitness", score},
                    {"ascii", stem + ".txt"},
                    {"pgm", stem + ".pgm"}});
  }
  return list;
}

}  // namespace

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  validate(config);
  dam::DamProblem problem(make_simulator(config), config.ir.r, config.cache);
  const fs::path dir(config.out);
  fs::create_directories(dir);

  out << "  k  x_k                   y_k     f(x_k, y_k)   matched  branch\n";
  auto print = [&](const ir::IRRecord<double>& r) {
    char line[160];
    std::snprintf(line, sizeof line, "%3ld  %-20s %6lld     1-%lld/%lld    %5.3f    %s\n", r.k, fixed(r.x).c_str(),
                  static_cast<long long>(r.y.id), static_cast<long long>(r.matched.value_or(0)),
                  static_cast<long long>(problem.total_cells()),
                  static_cast<double>(r.matched.value_or(0)) / static_cast<double>(problem.total_cells()),
                  ir::to_string(r.branch));
    out << line << std::flush;
  };
  moa::Moa<moa::Interval>::Observer moa_log;
  if (config.verbose) moa_log = [&](long j, const moa::MoaStep<double>& s) { err << moa::format_step(j, s) << '\n'; };

  ir::Driver<dam::DamProblem> driver(problem, config.ir, config.moa, print, moa_log);
  const std::optional<long> cap = config.max_outer > 0 ? std::optional<long>(config.max_outer) : std::nullopt;
  const auto run = driver.run(config.x0, problem.token(config.y0), cap);

  {
    std::ofstream csv(dir / "trace.csv", std::ios::binary);
    ir::write_trace_csv(csv, ir::to_csv_rows(run.trace, problem));
  }
  write_file(dir / "config.txt", emit_config(config));

  const auto& last = run.final_state;
  const auto& eval = problem.details(last.x, last.y.id);
  bool certified = false;
  for (const auto& r : run.trace) certified = certified || r.certified;

  ordered_json summary;
  summary["status"] = ir::to_string(run.status);
  summary["iterations"] = run.iterations;
  summary["x"] = last.x;
  summary["y"] = last.y.id;
  summary["f"] = last.f;
  summary["f_exact"] = "1-" + std::to_string(eval.matched) + "/" + std::to_string(problem.total_cells());
  summary["matched"] = eval.matched;
  summary["total_cells"] = problem.total_cells();
  summary["theta"] = last.theta;
  summary["certified"] = certified;
  summary["c"] = eval.alignment.c;
  summary["spg_runs"] = problem.evaluation_count();
  out << "\nfinal x = " << fixed(last.x) << "  y = " << last.y.id << "  f = 1-" << eval.matched << "/"
      << problem.total_cells() << "  (" << fixed(static_cast<double>(eval.matched) / problem.total_cells(), 4)
      << " matched)  c = " << fixed(eval.alignment.c, 6) << "\n";
  summary["snapshots"] = write_snapshots(problem, last.x, last.y.id, dir, out);
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  out << "status " << ir::to_string(run.status) << ", " << problem.evaluation_count() << " SPG runs, output in "
      << dir.string() << '\n';
  return run.status == ir::RunStatus::Converged ? kSuccess : kBudgetExhausted;
}

int cmd_gradcheck(const RunConfig& config, std::ostream& out, std::ostream&) {
  validate(config);
  GradcheckOptions options{config.gradcheck_configs, config.gradcheck_particles, config.seed, config.fd_step,
                           config.broken_gradient};
  const auto report = gradient_check(options);
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const auto& s = report.samples[i];
    char line[128];
    std::snprintf(line, sizeof line, "config %2zu  x=%.6f  overlapping pairs %3d  max rel error %.3e\n", i + 1,
                  s.weight, s.overlapping_pairs, s.max_error);
    out << line;
  }
  const bool pass = report.max_error <= config.gradcheck_tol;
  out << "max relative error " << fixed(report.max_error, 6) << (pass ? " <= " : " > ") << config.gradcheck_tol
      << (pass ? "  PASS\n" : "  FAIL\n");
  return pass ? kSuccess : kFailure;
}

int cmd_frames(const RunConfig& config, std::ostream& out, std::ostream&) {
  validate(config);
  dam::DamProblem problem(make_simulator(config), config.ir.r, config.cache);
  const fs::path dir(config.out);
  fs::create_directories(dir);
  const auto& eval = problem.details(config.frames_x, config.frames_y);
  out << "x = " << fixed(config.frames_x) << "  y = " << config.frames_y << "  iterates " << eval.ybar << " ("
      << spg::to_string(eval.status) << ")  c = " << fixed(eval.alignment.c, 6) << '\n';
  ordered_json report;
  report["x"] = config.frames_x;
  report["y"] = config.frames_y;
  report["ybar"] = eval.ybar;
  report["c"] = eval.alignment.c;
  report["snapshots"] = write_snapshots(problem, config.frames_x, config.frames_y, dir, out);
  report["total"] = eval.matched;
  report["f"] = eval.f;
  write_file(dir / "frames.json", report.dump(2) + "\n");
  out << "total fitness " << eval.matched << "/" << problem.total_cells() << '\n';
  return kSuccess;
}

int cmd_spg_demo(const RunConfig& config, std::ostream& out, std::ostream&) {
  validate(config);
  const auto suite = quadratic_suite(config.demo_problems, config.demo_dim, config.seed);
  bool all_close = true, any_capped = false;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto res = solve_quadratic(suite[i], config.spg);
    const bool close = res.error <= config.demo_tol;
    all_close = all_close && close;
    any_capped = any_capped || res.status != spg::SpgStatus::Converged;
    char line[160];
    std::snprintf(line, sizeof line, "problem %2zu  n=%zu  %-16s iterations %4ld  pg %.2e  error %.2e  %s\n", i + 1,
                  suite[i].target.size(), spg::to_string(res.status), res.iterations, res.pg_norm, res.error,
                  close ? "ok" : "off");
    out << line;
  }
  if (all_close) {
    out << "all " << suite.size() << " problems within " << config.demo_tol << " of the projected minimizer\n";
    return kSuccess;
  }
  return any_capped ? kBudgetExhausted : kFailure;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inexact restoration fit of a granular dam-break model"};
  app.require_subcommand(1);

  std::string config_path;
  std::map<std::string, std::string> overrides;
  std::map<std::string, CLI::Option*> options;
  const std::map<std::string, std::string> aliases{{"gradcheck_particles", ",--particles,--np"},
                                                   {"broken_gradient", ""}};
  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  for (const auto& key : config_keys()) {
    std::string flag = "--" + key;
    for (auto& ch : flag) ch = ch == '_' ? '-' : ch;
    if (auto a = aliases.find(key); a != aliases.end()) flag += a->second;
    const std::string help = "overrides '" + key + "' (default " + get_value(default_config(), key) + ")";
    if (key == "broken_gradient" || key == "verbose" || key == "cache") {
      options[key] = app.add_flag(flag + "{true}", overrides[key], help);
    } else {
      options[key] = app.add_option(flag, overrides[key], help);
    }
  }

  auto* run = app.add_subcommand("run", "fit the model and write trace.csv, summary.json and snapshots");
  auto* grad = app.add_subcommand("gradcheck", "finite-difference check of the energy gradient");
  auto* frames = app.add_subcommand("frames", "aligned snapshots of one SPG trajectory");
  auto* demo = app.add_subcommand("spg-demo", "SPG on box-constrained quadratics");
  std::string frames_x, frames_y;
  frames->add_option("x", frames_x, "energy weight");
  frames->add_option("y", frames_y, "SPG iteration budget");
  for (auto* sub : {run, grad, frames, demo}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kParseError;
  }

  RunConfig config = default_config();
  try {
    if (!config_path.empty()) load_config(config_path, config);
    for (const auto& key : config_keys()) {
      if (options[key]->count() > 0) set_value(config, key, overrides[key]);
    }
    if (!frames_x.empty()) set_value(config, "frames_x", frames_x);
    if (!frames_y.empty()) set_value(config, "frames_y", frames_y);
    validate(config);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return kParseError;
  }

  try {
    if (run->parsed()) return cmd_run(config, out, err);
    if (grad->parsed()) return cmd_gradcheck(config, out, err);
    if (frames->parsed()) return cmd_frames(config, out, err);
    return cmd_spg_demo(config, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const AssumptionViolation& e) {
    err << "error: " << e.what() << '\n';
    return kAssumptionViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace irfit::cli
