#include "rdstab/runner.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include "rdstab/csv.hpp"
#include "rdstab/errors.hpp"
#include "rdstab/lyapunov.hpp"
#include "rdstab/report.hpp"
#include "rdstab/sim.hpp"
#include "rdstab/svg.hpp"

namespace rdstab {

namespace {

using nlohmann::json;

constexpr int kHypothesisGrid = 4096;
constexpr int kRectSamples = 256;

// Snapshot distance < 1e-2 for 10 consecutive snapshots declares convergence.
json convergence_info(const Trajectory& traj) {
  int streak = 0;
  for (size_t k = 0; k < traj.diagnostics.size(); ++k) {
    streak = traj.diagnostics[k].dist_sup < 1e-2 ? streak + 1 : 0;
    if (streak >= 10) {
      return json{{"reached", true}, {"t", traj.times[k]}};
    }
  }
  return json{{"reached", false}, {"t", nullptr}};
}

InitialData initial_data_from(const RunConfig& cfg) {
  const auto [u0_def, v0_def] = default_init(cfg);
  const double u0 = cfg.u0.value_or(u0_def);
  const double v0 = cfg.v0.value_or(v0_def);
  if (cfg.init == "constant") return ConstantInit{u0, v0};
  return SinePerturbedInit{u0, v0, cfg.amp, cfg.wavelen};
}

json init_manifest(const RunConfig& cfg) {
  const auto [u0_def, v0_def] = default_init(cfg);
  json j;
  j["kind"] = cfg.init;
  j["u0"] = cfg.u0.value_or(u0_def);
  j["v0"] = cfg.v0.value_or(v0_def);
  if (cfg.init == "sine") {
    j["amp"] = cfg.amp;
    j["wavelen"] = cfg.wavelen;
  }
  return j;
}

std::string preset_name(const RunConfig& cfg) {
  return cfg.preset == PresetKind::LengyelEpstein ? "lengyel_epstein"
                                                  : "fitzhugh_nagumo";
}

// Sweep rows may carry error text; commas would break the CSV shape.
std::string sanitize_cell(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

void apply_axis(RunConfig& cfg, const std::string& axis, double value) {
  if (axis == "a") cfg.a = value;
  else if (axis == "mu") cfg.mu = value;
  else if (axis == "lambda") cfg.lambda = value;
  else if (axis == "sigma") cfg.sigma = value;
  else if (axis == "d1") cfg.d1 = value;
  else if (axis == "d2") cfg.d2 = value;
  else if (axis == "beta") cfg.beta = value;
  else if (axis == "eps") cfg.eps = value;
  else if (axis == "gamma") cfg.gamma = value;
  else if (axis == "stim") cfg.stim = value;
  else throw LoadError("unknown sweep axis '" + axis + "'");
}

}  // namespace

int cmd_analyze(const RunConfig& cfg, bool json_output, std::ostream& out) {
  const ModelSpec spec = build_spec(cfg);
  const EquilibriumReport eq = find_equilibrium(spec);
  const HypothesisReport hyp = check_hypotheses(spec, eq.alpha, kHypothesisGrid);
  const GlobalVerdict global = verdict_global(spec, eq, hyp);
  const bool rect_ok = check_invariant_rectangle(spec, kRectSamples);

  int exit_code = 0;
  json turing = nullptr;
  json turing_error = nullptr;
  try {
    SpectrumConfig scfg{Interval{cfg.L}, cfg.modes};
    turing = to_json(classify_pde_stability(spec, eq, scfg));
  } catch (const PreconditionError& e) {
    turing_error = e.what();
    exit_code = 2;
  } catch (const TruncationError& e) {
    turing_error = e.what();
    exit_code = 3;
  }

  json bounds = nullptr;
  json bounds_error = nullptr;
  try {
    const auto [u0_def, v0_def] = default_init(cfg);
    const double u0 = cfg.u0.value_or(u0_def);
    const double v0 = cfg.v0.value_or(v0_def);
    const Decomposition dec = build_decomposition(cfg, u0);
    bounds = to_json(compute_bounds(spec, dec, {u0, u0}, {v0, v0}));
  } catch (const std::exception& e) {
    // Bounds do not apply to every model (phi'(0) may vanish); the analysis
    // document is still complete without them.
    bounds_error = e.what();
  }

  json doc;
  doc["tool"] = "rdstab";
  doc["version"] = kToolVersion;
  doc["preset"] = preset_name(cfg);
  doc["config_hash"] = config_hash(cfg);
  doc["spectrum"] = {{"geometry", "interval"},
                     {"length", cfg.L},
                     {"max_modes", cfg.modes}};
  doc["equilibrium"] = to_json(eq);
  doc["hypotheses"] = to_json(hyp);
  doc["turing"] = turing;
  doc["turing_error"] = turing_error;
  doc["bounds"] = bounds;
  doc["bounds_error"] = bounds_error;
  doc["invariant_rectangle"] = rect_ok;
  doc["global_verdict"] = to_string(global);

  if (json_output) {
    out << doc.dump(2) << '\n';
  } else {
    out << "preset:            " << preset_name(cfg) << '\n'
        << "alpha:             " << format_csv_value(eq.alpha) << '\n'
        << "(u*, v*):          (" << format_csv_value(eq.u_star) << ", "
        << format_csv_value(eq.v_star) << ")\n"
        << "delta:             " << format_csv_value(spec.delta) << '\n'
        << "ode_stable:        " << (eq.ode_stable ? "yes" : "no") << '\n'
        << "invariant rect:    " << (rect_ok ? "yes" : "no") << '\n'
        << "global verdict:    " << to_string(global) << '\n';
    if (!turing.is_null()) {
      out << "turing verdict:    " << turing["verdict"].get<std::string>()
          << '\n';
      if (!turing["d_crit"].is_null()) {
        out << "d_crit:            "
            << format_csv_value(turing["d_crit"].get<double>()) << '\n'
            << "d2/sigma:          "
            << format_csv_value(turing["ratio"].get<double>()) << '\n';
      }
    } else {
      out << "turing verdict:    unavailable ("
          << turing_error.get<std::string>() << ")\n";
    }
  }
  return exit_code;
}

int cmd_bounds(const RunConfig& cfg, std::pair<double, double> u0_range,
               std::pair<double, double> v0_range, bool json_output,
               std::ostream& out) {
  const ModelSpec spec = build_spec(cfg);
  const Decomposition dec = build_decomposition(cfg, u0_range.second);
  const BoundsReport rep = compute_bounds(spec, dec, u0_range, v0_range);
  if (json_output) {
    out << to_json(rep).dump(2) << '\n';
  } else {
    out << "rectangle:  (0, " << format_csv_value(rep.delta) << ") x (0, "
        << format_csv_value(rep.g_delta) << ")\n"
        << "u bounds:   [" << format_csv_value(rep.u1) << ", "
        << format_csv_value(rep.u2) << "]\n"
        << "v bounds:   [" << format_csv_value(rep.v1) << ", "
        << format_csv_value(rep.v2) << "]\n"
        << "C1:         " << format_csv_value(rep.C1) << '\n'
        << "C2:         " << format_csv_value(rep.C2) << '\n'
        << "C2_box:     " << format_csv_value(rep.C2_box) << '\n'
        << "valid:      " << (rep.valid ? "yes" : "no") << '\n';
  }
  return 0;
}

int cmd_simulate(const RunConfig& cfg, bool svg_output, std::ostream& out) {
  if (cfg.out_dir.empty()) {
    throw LoadError("simulate needs an output directory (out_dir or --out)");
  }
  if (!(cfg.t_end > 0.0)) throw DomainError("t_end must be positive");
  const ModelSpec spec = build_spec(cfg);
  const EquilibriumReport eq = find_equilibrium(spec);

  std::filesystem::create_directories(cfg.out_dir);
  const auto path_in_out = [&cfg](const char* name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
  };

  Trajectory traj;
  Grid1D grid;
  const bool pde = cfg.mode == "pde";
  if (pde) {
    grid = make_grid(cfg.L, cfg.n);
    traj = integrate_pde_1d(spec, grid, initial_data_from(cfg), cfg.t_end,
                            cfg.dt_out);
    fill_lyapunov(traj, spec, eq, &grid);
  } else {
    const auto [u0_def, v0_def] = default_init(cfg);
    traj = integrate_ode(spec, cfg.u0.value_or(u0_def),
                         cfg.v0.value_or(v0_def), cfg.t_end, cfg.dt_out);
    fill_lyapunov(traj, spec, eq, nullptr);
  }

  // trajectory.csv
  {
    std::vector<std::string> header{"t"};
    if (pde) {
      for (int j = 0; j < grid.n; ++j) header.push_back("u_" + std::to_string(j));
      for (int j = 0; j < grid.n; ++j) header.push_back("v_" + std::to_string(j));
    } else {
      header.push_back("u");
      header.push_back("v");
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(traj.times.size());
    for (size_t k = 0; k < traj.times.size(); ++k) {
      std::vector<double> row{traj.times[k]};
      row.insert(row.end(), traj.u_fields[k].begin(), traj.u_fields[k].end());
      row.insert(row.end(), traj.v_fields[k].begin(), traj.v_fields[k].end());
      rows.push_back(std::move(row));
    }
    write_csv(path_in_out("trajectory.csv"), header, rows);
  }

  // diagnostics.csv
  {
    std::vector<std::vector<double>> rows;
    rows.reserve(traj.times.size());
    for (size_t k = 0; k < traj.times.size(); ++k) {
      rows.push_back({traj.times[k], traj.diagnostics[k].dist_sup,
                      traj.diagnostics[k].in_rect ? 1.0 : 0.0,
                      traj.diagnostics[k].lyapunov_v});
    }
    write_csv(path_in_out("diagnostics.csv"),
              {"t", "dist_sup", "in_rect", "V"}, rows);
  }

  if (svg_output) {
    if (pde) {
      write_svg_plot(path_in_out("plot.svg"), "final profiles", "x",
                     grid.nodes,
                     {{"u", "#1f77b4", traj.u_fields.back()},
                      {"v", "#d62728", traj.v_fields.back()}});
    } else {
      std::vector<double> us, vs;
      for (size_t k = 0; k < traj.times.size(); ++k) {
        us.push_back(traj.u_fields[k][0]);
        vs.push_back(traj.v_fields[k][0]);
      }
      write_svg_plot(path_in_out("plot.svg"), "trajectory", "t", traj.times,
                     {{"u", "#1f77b4", us}, {"v", "#d62728", vs}});
    }
  }

  // run.json manifest
  {
    json verdicts;
    verdicts["ode_stable"] = eq.ode_stable;
    try {
      SpectrumConfig scfg{Interval{cfg.L}, cfg.modes};
      verdicts["turing"] =
          to_string(classify_pde_stability(spec, eq, scfg).verdict);
    } catch (const std::exception&) {
      verdicts["turing"] = nullptr;
    }
    const HypothesisReport hyp =
        check_hypotheses(spec, eq.alpha, kHypothesisGrid);
    verdicts["global"] = to_string(verdict_global(spec, eq, hyp));

    json manifest;
    manifest["tool"] = "rdstab";
    manifest["version"] = kToolVersion;
    manifest["command"] = "simulate";
    manifest["config_file"] = cfg.source_path;
    manifest["config_hash"] = config_hash(cfg);
    manifest["preset"] = preset_name(cfg);
    manifest["mode"] = cfg.mode;
    manifest["L"] = cfg.L;
    manifest["n"] = pde ? json(cfg.n) : json(nullptr);
    manifest["t_end"] = cfg.t_end;
    manifest["dt_out"] = cfg.dt_out;
    manifest["dt"] = pde ? json(traj.dt) : json(nullptr);
    manifest["init"] = init_manifest(cfg);
    manifest["equilibrium"] = {{"u_star", eq.u_star}, {"v_star", eq.v_star}};
    manifest["verdicts"] = verdicts;
    manifest["convergence"] = convergence_info(traj);
    manifest["negativity_warning"] = traj.negativity_warning;
    manifest["final_dist_sup"] = traj.diagnostics.back().dist_sup;
    json outputs = json::array({"trajectory.csv", "diagnostics.csv"});
    if (svg_output) outputs.push_back("plot.svg");
    manifest["outputs"] = outputs;

    std::ofstream mf(path_in_out("run.json"), std::ios::binary);
    if (!mf) throw LoadError("cannot write run.json");
    mf << manifest.dump(2) << '\n';
  }

  out << "wrote " << cfg.out_dir << " (final dist_sup = "
      << format_csv_value(traj.diagnostics.back().dist_sup) << ")\n";
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& axis,
              const std::vector<double>& values, std::ostream& out) {
  if (values.empty()) throw LoadError("sweep needs a non-empty values list");
  if (cfg.out_dir.empty()) {
    throw LoadError("sweep needs an output directory (out_dir or --out)");
  }

  struct Row {
    double value = 0.0;
    std::string status = "ok";
    std::optional<double> alpha;
    std::optional<bool> con6;
    SweepSummary summary;
    bool simulated = false;
  };
  std::vector<Row> rows(values.size());

  // Per-row static analysis first; rows that fail here skip the simulation.
  std::vector<ModelSpec> specs;
  std::vector<size_t> spec_rows;
  for (size_t i = 0; i < values.size(); ++i) {
    rows[i].value = values[i];
    try {
      RunConfig row_cfg = cfg;
      apply_axis(row_cfg, axis, values[i]);
      ModelSpec spec = build_spec(row_cfg);
      const EquilibriumReport eq = find_equilibrium(spec);
      rows[i].alpha = eq.alpha;
      rows[i].con6 =
          check_hypotheses(spec, eq.alpha, kHypothesisGrid).con6.holds;
      specs.push_back(std::move(spec));
      spec_rows.push_back(i);
    } catch (const std::exception& e) {
      rows[i].status = e.what();
    }
  }

  if (!specs.empty()) {
    Scenario scenario;
    scenario.grid = make_grid(cfg.L, cfg.n);
    scenario.init = initial_data_from(cfg);
    scenario.t_end = cfg.t_end;
    scenario.dt_out = cfg.dt_out;
    scenario.max_modes = cfg.modes;
    const auto summaries = sweep(specs, scenario, sweep_thread_cap());
    for (size_t s = 0; s < summaries.size(); ++s) {
      Row& row = rows[spec_rows[s]];
      row.summary = summaries[s];
      row.simulated = true;
      if (summaries[s].status != "ok") row.status = summaries[s].status;
    }
  }

  std::filesystem::create_directories(cfg.out_dir);
  const std::string csv_path =
      (std::filesystem::path(cfg.out_dir) / "sweep.csv").string();
  std::ofstream sw(csv_path, std::ios::binary);
  if (!sw) throw LoadError("cannot open '" + csv_path + "' for writing");
  sw << axis << ",status,alpha,con6,d_crit,verdict,final_dist,growth_factor\n";
  for (const auto& row : rows) {
    sw << format_csv_value(row.value) << ',' << sanitize_cell(row.status)
       << ',';
    if (row.alpha) sw << format_csv_value(*row.alpha);
    sw << ',';
    if (row.con6) sw << (*row.con6 ? 1 : 0);
    sw << ',';
    const bool ok = row.simulated && row.summary.status == "ok";
    if (ok && row.summary.d_crit) sw << format_csv_value(*row.summary.d_crit);
    sw << ',';
    if (ok && row.summary.verdict) sw << to_string(*row.summary.verdict);
    sw << ',';
    if (ok) sw << format_csv_value(row.summary.final_dist);
    sw << ',';
    if (ok) sw << format_csv_value(row.summary.growth_factor);
    sw << '\n';
  }
  if (!sw) throw LoadError("write failed for '" + csv_path + "'");
  sw.close();

  out << "wrote " << csv_path << '\n';
  return 0;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const LoadError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NonFiniteError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const SublinearityError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const RootError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const MultiRootError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const BlowupError& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const StepError& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int sweep_thread_cap() {
  if (const char* env = std::getenv("RDSTAB_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace rdstab
