#pragma once
// Command-line front end.  Subcommands: cylinder (base curves of flat
// cylindrical hypersurfaces), trace (rotational orbit/profile integration),
// classify (structured classification reports), mesh (surface-of-revolution
// OBJ export) and portrait (phase-plane JSON export).  Exit codes: 0 success,
// 1 numeric failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hlk/classify.hpp"
#include "hlk/cylindrical.hpp"
#include "hlk/io.hpp"
#include "hlk/model.hpp"
#include "hlk/orbits.hpp"

namespace hlk::cli {

namespace detail {

inline std::pair<double, double> parse_span(const std::string& text) {
  const auto pos = text.find(':');
  if (pos == std::string::npos)
    throw std::invalid_argument("span must look like lo:hi, e.g. -5:5");
  const double lo = io::parse_double(text.substr(0, pos));
  const double hi = io::parse_double(text.substr(pos + 1));
  if (!(lo <= hi)) throw std::invalid_argument("span must satisfy lo <= hi");
  return {lo, hi};
}

inline std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(',', start);
    const std::string item =
        text.substr(start, pos == std::string::npos ? pos : pos - start);
    if (!item.empty()) out.push_back(io::parse_double(item));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

inline cyl::CylCase parse_case(const ModelParams& p, const std::string& name) {
  if (name == "auto") return cyl::case_auto(p);
  if (name == "greater") return cyl::CylCase::LambdaGreater;
  if (name == "equal") return cyl::CylCase::LambdaEqual;
  if (name == "less0") return cyl::CylCase::LambdaLess0;
  if (name == "lesspi") return cyl::CylCase::LambdaLessPi;
  throw std::invalid_argument("unknown case '" + name +
                              "' (auto|greater|equal|less0|lesspi)");
}

inline orb::OrbitSeed parse_trace_seed(const ModelParams& p,
                                       const std::string& text) {
  if (text == "axis-up") return orb::OrbitSeed::axis_up(p);
  if (text == "axis-down") return orb::OrbitSeed::axis_down(p);
  const std::string prefix = "interior:";
  if (text.rfind(prefix, 0) == 0) {
    const auto vals = parse_list(text.substr(prefix.size()));
    if (vals.size() != 3)
      throw std::invalid_argument(
          "interior seed must look like interior:x0,y0,eps");
    return orb::OrbitSeed::interior(p, vals[0], vals[1],
                                    static_cast<int>(vals[2]));
  }
  throw std::invalid_argument("unknown seed '" + text +
                              "' (axis-up|axis-down|interior:x0,y0,eps)");
}

inline std::string derive_events_path(const std::string& out) {
  const std::string suffix = ".csv";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out.substr(0, out.size() - suffix.size()) + ".events.json";
  return out + ".events.json";
}

inline int env_jobs_override(int jobs) {
  if (const char* env = std::getenv("HLK_JOBS")) {
    try {
      const int j = std::stoi(env);
      if (j > 0) return j;
    } catch (...) {
    }
  }
  return jobs;
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << body;
}

}  // namespace detail

// All options of one invocation; defaults match the library defaults and are
// printed by --help.
struct RunConfig {
  ModelParams params;
  // cylinder
  std::string cyl_case = "auto";
  std::string span = "-5:5";
  double tol = 1e-10;
  double step = 1e-3;
  bool verify = false;
  double verify_tol = 1e-8;
  // trace / classify
  std::string seed = "axis-up";
  std::string prescribed = "linear";
  std::string direction = "forward";
  orb::OrbitOptions orbit;
  // classify grid
  bool grid = false;
  std::string ns = "2,3,4,5";
  std::string lambdas = "0.5,1,2";
  int jobs = 0;
  // portrait
  int eps = 1;
  // mesh
  std::string in_path;
  int segments = 128;
  // output
  std::string out;
  std::string out_events;
};

inline int cmd_cylinder(const RunConfig& cfg) {
  validate(cfg.params);
  const cyl::CylCase c = detail::parse_case(cfg.params, cfg.cyl_case);
  cyl::check_case(cfg.params, c);
  const auto [lo, hi] = detail::parse_span(cfg.span);
  const double theta0 = cyl::base_curve_closed_form(cfg.params, c, 0.0).theta;
  cyl::IntegrateOptions iopts;
  iopts.step = cfg.step;
  const auto samples =
      cyl::integrate_base_curve(cfg.params, theta0, lo, hi, cfg.tol, iopts);
  std::ostringstream body;
  io::write_curve_csv(body, samples);
  detail::write_text_file(cfg.out, body.str());
  if (cfg.verify) {
    const auto rep =
        cyl::verify_closed_forms(cfg.params, c, lo, hi, cfg.verify_tol);
    std::cout << io::verification_json(rep).dump(2) << '\n';
  }
  return 0;
}

inline int cmd_trace(const RunConfig& cfg) {
  validate(cfg.params);
  orb::OrbitSeed seed = detail::parse_trace_seed(cfg.params, cfg.seed);
  const PrescribedFunction f =
      cfg.prescribed == "cosine" ? PrescribedFunction::cosine_comparison()
                                 : PrescribedFunction::linear(cfg.params.lambda);
  if (cfg.prescribed != "cosine" && cfg.prescribed != "linear")
    throw std::invalid_argument("unknown prescribed kind '" + cfg.prescribed +
                                "' (linear|cosine)");
  orb::OrbitOptions opts = cfg.orbit;
  if (cfg.direction == "backward")
    opts.direction = -1;
  else if (cfg.direction == "forward")
    opts.direction = +1;
  else
    throw std::invalid_argument("direction must be forward or backward");

  const orb::OrbitTrace tr = orb::integrate_orbit(seed, f, opts);
  std::ostringstream body;
  io::write_trace_csv(body, tr);
  detail::write_text_file(cfg.out, body.str());
  const std::string events_path = cfg.out_events.empty()
                                      ? detail::derive_events_path(cfg.out)
                                      : cfg.out_events;
  detail::write_text_file(events_path, io::events_json(tr).dump(2) + "\n");
  if (seed.kind == orb::SeedKind::Interior &&
      tr.termination == orb::EventKind::ConvergedToE0 && tr.samples.size() > 1 &&
      tr.samples[0].x == tr.samples[1].x)
    std::cout << "seed at the equilibrium: the trace is the exact CMC round "
                 "cylinder\n";
  return tr.termination == orb::EventKind::StepFailure ? 1 : 0;
}

inline int cmd_classify(const RunConfig& cfg) {
  if (cfg.grid) {
    std::vector<ModelParams> grid_params;
    for (const double n : detail::parse_list(cfg.ns))
      for (const double lambda : detail::parse_list(cfg.lambdas))
        grid_params.push_back(
            ModelParams{static_cast<int>(n), lambda, cfg.params.v_last});
    const int delta = cfg.seed == "axis-down" ? -1 : +1;
    const auto reports = cls::classification_table(
        grid_params, delta, cfg.orbit, detail::env_jobs_override(cfg.jobs));
    io::json arr = io::json::array();
    for (const auto& rep : reports) arr.push_back(io::report_json(rep));
    std::cout << arr.dump(2) << '\n';
    return 0;
  }
  validate(cfg.params);
  cls::ClassificationReport rep;
  if (cfg.seed == "axis-up")
    rep = cls::classify_axis_surface(cfg.params, +1, cfg.orbit);
  else if (cfg.seed == "axis-down")
    rep = cls::classify_axis_surface(cfg.params, -1, cfg.orbit);
  else {
    const std::string prefix = "offaxis:";
    if (cfg.seed.rfind(prefix, 0) != 0)
      throw std::invalid_argument(
          "unknown seed '" + cfg.seed +
          "' (axis-up|axis-down|offaxis:x_hat) -- or use --grid");
    const double x_hat = io::parse_double(cfg.seed.substr(prefix.size()));
    rep = cls::classify_offaxis_surface(cfg.params, x_hat, cfg.orbit);
  }
  std::cout << io::report_json(rep).dump(2) << '\n';
  return rep.failed() ? 1 : 0;
}

inline int cmd_mesh(const RunConfig& cfg) {
  if (cfg.params.n != 2)
    throw std::invalid_argument(
        "mesh: only n = 2 produces a surface in R^3; higher-dimensional "
        "hypersurfaces are not meshable");
  const io::CsvTable table = io::read_csv_file(cfg.in_path);
  const int cx = table.column("x");
  const int cz = table.column("z");
  if (cx < 0 || cz < 0)
    throw std::invalid_argument("mesh: input CSV needs x and z columns");
  std::vector<double> xs, zs;
  xs.reserve(table.rows.size());
  zs.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    xs.push_back(row[static_cast<std::size_t>(cx)]);
    zs.push_back(row[static_cast<std::size_t>(cz)]);
  }
  std::ostringstream body;
  io::write_revolution_obj(body, xs, zs, cfg.segments);
  detail::write_text_file(cfg.out, body.str());
  return 0;
}

inline int cmd_portrait(const RunConfig& cfg) {
  const io::json j = io::portrait_json(cfg.params, cfg.eps);
  if (cfg.out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    detail::write_text_file(cfg.out, j.dump(2) + "\n");
  }
  return 0;
}

inline int run_cli(const std::vector<std::string>& args) {
  CLI::App app{
      "hlk -- invariant hypersurfaces with linear prescribed mean curvature: "
      "closed-form cylindrical base curves, rotational phase-plane orbits, "
      "and classification reports"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_params = [&](CLI::App* sub, bool need_lambda = true) {
    sub->add_option("--n", cfg.params.n, "hypersurface dimension (>= 2)")
        ->capture_default_str();
    auto* lam = sub->add_option("--lambda", cfg.params.lambda,
                                "prescribed constant lambda (> 0)");
    if (need_lambda) lam->required();
  };
  const auto add_orbit_opts = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.orbit.tol, "adaptive step error tolerance")
        ->capture_default_str();
    sub->add_option("--s-max", cfg.orbit.s_max, "arc-length budget")
        ->capture_default_str();
    sub->add_option("--x-max", cfg.orbit.x_max,
                    "escape radius (0 = 1e3 (n-1)/(lambda n))")
        ->capture_default_str();
    sub->add_option("--e0-radius", cfg.orbit.e0_radius,
                    "equilibrium ball / asymptote tolerance")
        ->capture_default_str();
    sub->add_option("--winding-cap", cfg.orbit.winding_cap,
                    "cap on full turns around the equilibrium")
        ->capture_default_str();
    sub->add_option("--sample-step", cfg.orbit.sample_step,
                    "dense output sample spacing")
        ->capture_default_str();
    sub->add_option("--axis-s0", cfg.orbit.axis_s0,
                    "series start offset for axis seeds")
        ->capture_default_str();
  };

  CLI::App* cyl_cmd = app.add_subcommand(
      "cylinder", "integrate a cylindrical base curve and export CSV");
  add_params(cyl_cmd);
  cyl_cmd->add_option("--v", cfg.params.v_last,
                      "density vector component v_{n+1}")
      ->capture_default_str();
  cyl_cmd->add_option("--case", cfg.cyl_case,
                      "parameter regime: auto|greater|equal|less0|lesspi")
      ->capture_default_str();
  cyl_cmd->add_option("--s-span", cfg.span, "arc-length span lo:hi")
      ->capture_default_str();
  cyl_cmd->add_option("--tol", cfg.tol, "adaptive step error tolerance")
      ->capture_default_str();
  cyl_cmd->add_option("--step", cfg.step, "CSV sample spacing")
      ->capture_default_str();
  cyl_cmd->add_option("--out", cfg.out, "output CSV path")
      ->default_str("curve.csv");
  cyl_cmd->add_flag("--verify", cfg.verify,
                    "append the closed-form verification report (JSON on "
                    "stdout)");
  cyl_cmd->add_option("--verify-tol", cfg.verify_tol,
                      "pass threshold of --verify")
      ->capture_default_str();

  CLI::App* trace_cmd = app.add_subcommand(
      "trace", "integrate a rotational orbit; export trace CSV + event JSON");
  add_params(trace_cmd);
  trace_cmd->add_option("--seed", cfg.seed,
                        "axis-up|axis-down|interior:x0,y0,eps")
      ->capture_default_str();
  trace_cmd->add_option("--prescribed", cfg.prescribed,
                        "prescribed function kind: linear|cosine")
      ->capture_default_str();
  trace_cmd->add_option("--direction", cfg.direction,
                        "integration direction for interior seeds: "
                        "forward|backward")
      ->capture_default_str();
  add_orbit_opts(trace_cmd);
  trace_cmd->add_option("--out", cfg.out, "output CSV path")
      ->default_str("trace.csv");
  trace_cmd->add_option("--out-events", cfg.out_events,
                        "event log JSON path (default: derived from --out)");

  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "print a classification report as JSON");
  add_params(classify_cmd, false);
  classify_cmd->add_option("--seed", cfg.seed,
                           "axis-up|axis-down|offaxis:x_hat")
      ->capture_default_str();
  add_orbit_opts(classify_cmd);
  classify_cmd->add_flag("--grid", cfg.grid,
                         "classify the whole --ns x --lambdas grid");
  classify_cmd->add_option("--ns", cfg.ns, "grid dimensions, comma-separated")
      ->capture_default_str();
  classify_cmd->add_option("--lambdas", cfg.lambdas,
                           "grid lambdas, comma-separated")
      ->capture_default_str();
  classify_cmd
      ->add_option("--jobs", cfg.jobs,
                   "worker pool size for --grid (0 = logical processors; "
                   "HLK_JOBS overrides)")
      ->capture_default_str();

  CLI::App* mesh_cmd = app.add_subcommand(
      "mesh", "revolve a profile CSV into a triangulated OBJ (n = 2 only)");
  mesh_cmd->add_option("--n", cfg.params.n, "hypersurface dimension")
      ->capture_default_str();
  mesh_cmd->add_option("--in", cfg.in_path, "input profile CSV")->required();
  mesh_cmd->add_option("--out", cfg.out, "output OBJ path")
      ->default_str("surface.obj");
  mesh_cmd->add_option("--segments", cfg.segments, "sectors per ring")
      ->capture_default_str();

  CLI::App* portrait_cmd = app.add_subcommand(
      "portrait", "export the phase-plane portrait as JSON");
  add_params(portrait_cmd);
  portrait_cmd->add_option("--eps", cfg.eps, "phase plane copy: +1 or -1")
      ->capture_default_str();
  portrait_cmd->add_option("--out", cfg.out,
                           "output path (default: stdout)");

  std::vector<const char*> argv;
  argv.push_back("hlk");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cfg.out.empty()) {
      if (cyl_cmd->parsed()) cfg.out = "curve.csv";
      if (trace_cmd->parsed()) cfg.out = "trace.csv";
      if (mesh_cmd->parsed()) cfg.out = "surface.obj";
    }
    if (cyl_cmd->parsed()) return cmd_cylinder(cfg);
    if (trace_cmd->parsed()) return cmd_trace(cfg);
    if (classify_cmd->parsed()) return cmd_classify(cfg);
    if (mesh_cmd->parsed()) return cmd_mesh(cfg);
    if (portrait_cmd->parsed()) return cmd_portrait(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace hlk::cli
