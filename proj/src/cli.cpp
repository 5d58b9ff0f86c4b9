#include "fixsettle/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "fixsettle/errors.hpp"
#include "fixsettle/grid.hpp"
#include "fixsettle/oracle.hpp"
#include "fixsettle/perturbation.hpp"
#include "fixsettle/report_io.hpp"
#include "fixsettle/settling.hpp"

namespace fixsettle::cli {

using nlohmann::json;

namespace {

// Wraps nlohmann type errors so they surface as configuration errors naming the field.
template <class T>
T field(const json& obj, const char* section, const char* key) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigurationError(std::string(section) + "." + key + ": " + e.what());
  }
}

template <class T>
T field_or(const json& obj, const char* section, const char* key, T fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  return field<T>(obj, section, key);
}

std::optional<double> optional_number(const json& obj, const char* section, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return field<double>(obj, section, key);
}

LyapunovSpec parse_lyapunov(const json& j, const char* section) {
  LyapunovSpec spec;
  if (j.is_string()) {
    spec.type = j.get<std::string>();
  } else {
    spec.type = field_or<std::string>(j, section, "type", "abs");
    spec.coefficients = field_or<std::vector<double>>(j, section, "coefficients", {});
    spec.p = field_or<Matrix>(j, section, "P", {});
    if (j.contains("lipschitz")) {
      const auto& lv = j.at("lipschitz");
      if (lv.is_string() && lv.get<std::string>() == "estimate") {
        spec.estimate_lipschitz = true;
      } else if (lv.is_number()) {
        spec.lipschitz = lv.get<double>();
        if (!(*spec.lipschitz > 0.0)) {
          throw ConfigurationError(std::string(section) +
                                   ".lipschitz: L_V must be positive (Lipschitz constant of V)");
        }
      } else if (!lv.is_null()) {
        throw ConfigurationError(std::string(section) +
                                 ".lipschitz must be a positive number or \"estimate\"");
      }
    }
  }
  if (spec.type != "abs" && spec.type != "square" && spec.type != "polynomial" &&
      spec.type != "quadratic_form") {
    throw ConfigurationError(std::string(section) + ".type '" + spec.type +
                             "' is not one of abs, square, polynomial, quadratic_form");
  }
  return spec;
}

GridSpec parse_grid(const json& j) {
  GridSpec g;
  g.kind = field_or<std::string>(j, "analysis.grid", "kind", "log");
  if (g.kind == "points") {
    g.explicit_points = field<std::vector<State>>(j, "analysis.grid", "points");
  } else if (g.kind == "log" || g.kind == "linear") {
    g.min = field<double>(j, "analysis.grid", "min");
    g.max = field<double>(j, "analysis.grid", "max");
    g.points = field<std::size_t>(j, "analysis.grid", "points");
    g.symmetric = field_or<bool>(j, "analysis.grid", "symmetric", false);
  } else {
    throw ConfigurationError("analysis.grid.kind '" + g.kind +
                             "' is not one of log, linear, points");
  }
  return g;
}

std::optional<double> lipschitz_of(const LyapunovSpec& spec, const LyapunovCandidate& v,
                                   const std::optional<GridSpec>& grid, std::string& source) {
  if (spec.lipschitz) {
    source = "user";
    return spec.lipschitz;
  }
  if (spec.estimate_lipschitz) {
    if (!grid) {
      throw ConfigurationError("lyapunov.lipschitz = \"estimate\" needs analysis.grid");
    }
    source = "estimated";
    const double est = estimate_lipschitz(std::function<double(const State&)>([&v](const State& x) { return v(x); }), build_grid(*grid));
    if (!(est > 0.0)) throw ConfigurationError("estimated L_V is zero on the analysis grid");
    return est;
  }
  if (v.lipschitz()) {
    source = "builtin";
    return v.lipschitz();
  }
  return std::nullopt;
}

FixedTimeGains resolve_gains(const ScenarioConfig& cfg) {
  if (cfg.gains) return *cfg.gains;
  if (cfg.gains_mapped) {
    const SystemMap sys = build_system(cfg.system);
    (void)sys;
    return mapped_gains(*cfg.system.example);
  }
  throw ConfigurationError("this command needs a 'gains' section");
}

const State& require_x0(const ScenarioConfig& cfg) {
  if (!cfg.analysis.x0) throw ConfigurationError("this command needs analysis.x0");
  return *cfg.analysis.x0;
}

PerturbationSpec build_perturbation(const PerturbationConfig& pc, std::size_t dimension) {
  if (pc.generator == "uniform_ball") return uniform_ball_perturbation(dimension, pc.delta0, pc.seed);
  if (pc.generator == "radial") return radial_perturbation(dimension, pc.delta0);
  if (pc.generator == "zero") return zero_perturbation(dimension);
  if (pc.generator == "constant") {
    if (pc.value.size() != dimension) {
      throw ConfigurationError("perturbation.value must have the system dimension");
    }
    return constant_perturbation(pc.value, pc.delta0);
  }
  throw ConfigurationError("perturbation.generator '" + pc.generator +
                           "' is not one of uniform_ball, constant, radial, zero");
}

std::filesystem::path prepare_out(const ScenarioConfig& cfg) {
  std::filesystem::path dir(cfg.output.dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& content, std::ostream& out) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigurationError("cannot write " + path.string());
  f << content;
  out << "wrote " << path.string() << "\n";
}

const std::vector<double>& epsilon_list(const ScenarioConfig& cfg) {
  return cfg.analysis.epsilon_list.empty() ? default_epsilon_list() : cfg.analysis.epsilon_list;
}

// ---------------------------------------------------------------------------

void cmd_simulate(const ScenarioConfig& cfg, std::ostream& out) {
  const SystemMap sys = build_system(cfg.system);
  const LyapunovCandidate v = build_lyapunov(cfg.lyapunov, sys.dimension);
  const State& x0 = require_x0(cfg);
  Trajectory traj;
  if (cfg.perturbation) {
    traj = simulate_perturbed(sys, build_perturbation(*cfg.perturbation, sys.dimension), x0,
                              cfg.analysis.k_max);
  } else {
    traj = simulate(sys, x0, cfg.analysis.k_max, cfg.analysis.stop_epsilon);
  }
  const auto dir = prepare_out(cfg);
  if (cfg.output.format == "json") {
    json j;
    j["k_max"] = cfg.analysis.k_max;
    j["truncated"] = traj.truncated;
    j["stop_index"] = traj.stop_index ? json(*traj.stop_index) : json(nullptr);
    j["states"] = traj.states;
    std::vector<double> values;
    for (const auto& s : traj.states) values.push_back(v(s));
    j["V"] = values;
    write_file(dir / "trajectory.json", dump_json(j), out);
  } else {
    std::ostringstream csv;
    write_trajectory_csv(csv, traj, v);
    write_file(dir / "trajectory.csv", csv.str(), out);
  }
}

void cmd_check(const ScenarioConfig& cfg, std::ostream& out) {
  const SystemMap sys = build_system(cfg.system);
  const LyapunovCandidate v = build_lyapunov(cfg.lyapunov, sys.dimension);
  const auto& a = cfg.analysis;
  ConditionReport report;
  if (a.condition == "basic") {
    if (!a.grid) throw ConfigurationError("basic check needs analysis.grid");
    report = check_basic_lyapunov(sys, v, build_grid(*a.grid), a.tolerance);
  } else if (a.condition == "perturbed") {
    if (!cfg.perturbation) throw ConfigurationError("perturbed check needs a perturbation section");
    std::string source;
    const auto lv = lipschitz_of(cfg.lyapunov, v, a.grid, source);
    if (!lv) throw ConfigurationError("perturbed check needs lyapunov.lipschitz (L_V)");
    const auto traj = simulate_perturbed(
        sys, build_perturbation(*cfg.perturbation, sys.dimension), require_x0(cfg), a.k_max);
    report = scan_perturbed_trajectory(sys, v.with_lipschitz(*lv), resolve_gains(cfg), traj,
                                       a.tolerance);
  } else {
    const FixedTimeGains gains = resolve_gains(cfg);
    const bool mixed = cfg.lyapunov_rhs.has_value();
    const LyapunovCandidate rhs =
        mixed ? build_lyapunov(*cfg.lyapunov_rhs, sys.dimension) : v;
    if (a.mode == "trajectory") {
      const auto traj = simulate(sys, require_x0(cfg), a.k_max);
      report = mixed ? scan_trajectory(sys, v, rhs, gains, traj, a.tolerance)
                     : scan_trajectory(sys, v, gains, traj, a.tolerance);
    } else {
      if (!a.grid) throw ConfigurationError("grid-mode check needs analysis.grid");
      const auto grid = build_grid(*a.grid);
      report = mixed ? scan_conditions(sys, v, rhs, gains, grid, a.tolerance)
                     : scan_conditions(sys, v, gains, grid, a.tolerance);
    }
  }
  write_file(prepare_out(cfg) / "check.json", dump_json(json(report)), out);
}

void cmd_bound(const ScenarioConfig& cfg, std::ostream& out) {
  BoundReport r;
  if (cfg.system.type == "example") r.example_K_star = example_bound(*cfg.system.example);
  if (cfg.gains || cfg.gains_mapped) {
    const FixedTimeGains g = resolve_gains(cfg);
    r.K1_bound = phase1_bound(g.beta, g.r2);
    r.K2_gap = phase2_bound(g.alpha, g.r1);
    r.K_star = settling_bound(g);
    if (cfg.attractiveness) {
      AttractivenessConfig ac;
      ac.m1 = cfg.attractiveness->m1;
      ac.m2 = cfg.attractiveness->m2;
      ac.gains = g;
      ac.delta0 = cfg.perturbation ? cfg.perturbation->delta0 : 0.0;
      ac.lv = cfg.lyapunov.lipschitz.value_or(1.0);
      if (cfg.attractiveness->branch == "auto") {
        if (cfg.analysis.x0) {
          const SystemMap sys = build_system(cfg.system);
          ac.branch = branch_for(build_lyapunov(cfg.lyapunov, sys.dimension)(*cfg.analysis.x0));
        }
      } else {
        ac.branch = branch_from_string(cfg.attractiveness->branch);
      }
      r.perturbed_K_star = perturbed_settling_bound(ac);
      if (cfg.perturbation) r.B = attractive_level(ac);
    }
  }
  if (!r.example_K_star && !r.K_star) {
    throw ConfigurationError("bound needs gains or an example system");
  }
  write_file(prepare_out(cfg) / "bound.json", dump_json(json(r)), out);
}

void cmd_attract(const ScenarioConfig& cfg, std::ostream& out) {
  const SystemMap sys = build_system(cfg.system);
  const LyapunovCandidate v = build_lyapunov(cfg.lyapunov, sys.dimension);
  const State& x0 = require_x0(cfg);
  const AttractivenessSection section = cfg.attractiveness.value_or(AttractivenessSection{});

  AttractivenessConfig ac;
  ac.m1 = section.m1;
  ac.m2 = section.m2;
  ac.gains = resolve_gains(cfg);
  ac.delta0 = cfg.perturbation ? cfg.perturbation->delta0 : 0.0;
  const auto lv = lipschitz_of(cfg.lyapunov, v, cfg.analysis.grid, ac.lv_source);
  if (!lv) throw ConfigurationError("attract needs lyapunov.lipschitz (L_V) or a Lipschitz V");
  ac.lv = *lv;
  ac.branch = section.branch == "auto" ? branch_for(v(x0)) : branch_from_string(section.branch);
  ac.validate();

  Trajectory traj;
  if (cfg.perturbation && cfg.perturbation->delta0 > 0.0) {
    traj = simulate_perturbed(sys, build_perturbation(*cfg.perturbation, sys.dimension), x0,
                              cfg.analysis.k_max);
  } else {
    traj = simulate(sys, x0, cfg.analysis.k_max);
  }
  const auto report = analyze_attractiveness(ac, &traj, &v, section.b_target);
  json j = report;
  if (!section.m_values.empty()) j["tradeoff"] = remark1_tradeoff_table(ac, section.m_values);
  write_file(prepare_out(cfg) / "attract.json", dump_json(j), out);
}

void cmd_sweep(const ScenarioConfig& cfg, std::ostream& out) {
  const SystemMap sys = build_system(cfg.system);
  if (!cfg.analysis.grid) throw ConfigurationError("sweep needs analysis.grid (initial conditions)");
  const auto grid = build_grid(*cfg.analysis.grid);
  long long bound = 0;
  if (cfg.gains || cfg.gains_mapped) {
    bound = settling_bound(resolve_gains(cfg));
  } else if (cfg.system.type == "example") {
    bound = example_bound(*cfg.system.example);
  } else {
    throw ConfigurationError("sweep needs gains or an example system for the bound");
  }
  SweepOptions opt;
  opt.case_id = cfg.name;
  const auto& g = *cfg.analysis.grid;
  std::ostringstream desc;
  if (g.kind == "points") {
    desc << "explicit " << g.explicit_points.size() << " points";
  } else {
    desc << g.kind << " " << g.points << " points over [" << format_double(g.min) << ", "
         << format_double(g.max) << "]" << (g.symmetric ? " symmetric" : "");
  }
  opt.grid_description = desc.str();
  opt.epsilon = cfg.analysis.epsilon;
  opt.k_max = cfg.analysis.k_max;
  opt.epsilon_list = epsilon_list(cfg);
  opt.reference_x0 = cfg.analysis.x0;
  const auto result = sweep_settling(sys, grid, bound, opt);
  write_file(prepare_out(cfg) / "sweep.json", dump_json(json(result)), out);
}

void cmd_table1(const ScenarioConfig& cfg, std::ostream& out) {
  const auto table = table1_reproduce(epsilon_list(cfg), cfg.analysis.k_max);
  const auto dir = prepare_out(cfg);
  std::ostringstream csv;
  write_table1_csv(csv, table);
  write_file(dir / "table1.csv", csv.str(), out);
  write_file(dir / "table1.json", dump_json(json(table)), out);
  for (const auto& row : table.rows) {
    if (row.discrepancy) out << "case " << row.case_id << ": " << row.note << "\n";
  }
}

}  // namespace

// ---------------------------------------------------------------------------

SystemMap build_system(const SystemSpec& spec) {
  if (spec.type == "example") return example_system(*spec.example);
  if (spec.type == "affine") return affine_map(spec.a, spec.offset);
  if (spec.type == "linear") return linear_map(spec.a);
  throw ConfigurationError("system.type '" + spec.type + "' is not one of example, affine, linear");
}

LyapunovCandidate build_lyapunov(const LyapunovSpec& spec, std::size_t dimension) {
  LyapunovCandidate v = [&] {
    if (spec.type == "abs") return norm_candidate(dimension);
    if (spec.type == "square") return square_candidate(dimension);
    if (spec.type == "polynomial") return polynomial_candidate(dimension, spec.coefficients);
    if (spec.p.size() != dimension) {
      throw ConfigurationError("lyapunov.P must be a square matrix of the system dimension");
    }
    return quadratic_form_candidate(spec.p);
  }();
  if (spec.lipschitz) v = v.with_lipschitz(*spec.lipschitz);
  return v;
}

std::vector<State> build_grid(const GridSpec& spec) {
  if (spec.kind == "points") {
    if (spec.explicit_points.empty()) throw EmptyDomainError("analysis.grid.points is empty");
    return spec.explicit_points;
  }
  if (spec.kind == "linear") return linear_grid(spec.min, spec.max, spec.points);
  return log_grid(spec.min, spec.max, spec.points, spec.symmetric);
}

ScenarioConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigurationError("config must be a JSON object");
  const int schema = field_or<int>(j, "config", "schema", -1);
  if (schema != kSchemaVersion) {
    throw ConfigurationError("config.schema must be " + std::to_string(kSchemaVersion));
  }
  ScenarioConfig cfg;
  cfg.name = field_or<std::string>(j, "config", "name", "scenario");

  if (j.contains("system")) {
    const json& s = j.at("system");
    cfg.system.type = field_or<std::string>(s, "system", "type", "example");
    if (cfg.system.type == "example") {
      if (s.contains("case")) {
        const int id = field<int>(s, "system", "case");
        if (id < 1 || id > 4) throw ConfigurationError("system.case must be 1, 2, 3 or 4");
        cfg.system.table_case = id;
        cfg.system.example = table1_cases()[static_cast<std::size_t>(id - 1)].params;
      } else {
        cfg.system.example = field<ExampleParams>(s, "system", "params");
      }
      try {
        cfg.system.example->validate();
      } catch (const ParameterDomainError& e) {
        throw ParameterDomainError(std::string("system.params: ") + e.what());
      }
    } else if (cfg.system.type == "affine" || cfg.system.type == "linear") {
      cfg.system.a = field<Matrix>(s, "system", "A");
      cfg.system.offset = cfg.system.type == "affine"
                              ? field<State>(s, "system", "b")
                              : State(cfg.system.a.size(), 0.0);
      (void)build_system(cfg.system);
    } else {
      throw ConfigurationError("system.type '" + cfg.system.type +
                               "' is not one of example, affine, linear");
    }
  }
  const std::size_t dim = build_system(cfg.system).dimension;

  if (j.contains("lyapunov")) cfg.lyapunov = parse_lyapunov(j.at("lyapunov"), "lyapunov");
  (void)build_lyapunov(cfg.lyapunov, dim);
  if (j.contains("lyapunov_rhs") && !j.at("lyapunov_rhs").is_null()) {
    cfg.lyapunov_rhs = parse_lyapunov(j.at("lyapunov_rhs"), "lyapunov_rhs");
    (void)build_lyapunov(*cfg.lyapunov_rhs, dim);
  }

  if (j.contains("gains") && !j.at("gains").is_null()) {
    const json& g = j.at("gains");
    if (g.is_string()) {
      if (g.get<std::string>() != "mapped" || cfg.system.type != "example") {
        throw ConfigurationError("gains = \"mapped\" is only valid for the example system");
      }
      cfg.gains_mapped = true;
    } else {
      const auto gains = field<FixedTimeGains>(j, "config", "gains");
      try {
        gains.validate();
      } catch (const ParameterDomainError& e) {
        throw ParameterDomainError(std::string("gains: ") + e.what());
      }
      cfg.gains = gains;
    }
  }

  if (j.contains("perturbation") && !j.at("perturbation").is_null()) {
    const json& p = j.at("perturbation");
    PerturbationConfig pc;
    pc.delta0 = field<double>(p, "perturbation", "delta0");
    if (!(pc.delta0 >= 0.0) || !std::isfinite(pc.delta0)) {
      throw ParameterDomainError(
          "perturbation.delta0 must be finite and >= 0 (bounded-perturbation assumption)");
    }
    pc.generator = field_or<std::string>(p, "perturbation", "generator", "uniform_ball");
    pc.value = field_or<State>(p, "perturbation", "value", {});
    pc.seed = field_or<std::uint64_t>(p, "perturbation", "seed", 0);
    (void)build_perturbation(pc, dim);
    cfg.perturbation = pc;
  }

  if (j.contains("attractiveness") && !j.at("attractiveness").is_null()) {
    const json& a = j.at("attractiveness");
    AttractivenessSection s;
    s.m1 = field_or<double>(a, "attractiveness", "m1", 2.0);
    s.m2 = field_or<double>(a, "attractiveness", "m2", 2.0);
    s.branch = field_or<std::string>(a, "attractiveness", "branch", "auto");
    s.b_target = optional_number(a, "attractiveness", "B_target");
    s.m_values = field_or<std::vector<double>>(a, "attractiveness", "m_values", {});
    if (!(s.m1 > 1.0) || !(s.m2 > 1.0)) {
      throw ParameterDomainError("attractiveness.m1 and m2 must exceed 1 (attractive-set "
                                 "construction requires m1 > 1 and m2 > 1)");
    }
    for (double m : s.m_values) {
      if (!(m > 1.0)) throw ParameterDomainError("attractiveness.m_values entries must exceed 1");
    }
    if (s.branch != "auto") (void)branch_from_string(s.branch);
    if (s.b_target && !(*s.b_target > 0.0)) {
      throw ParameterDomainError("attractiveness.B_target must be positive");
    }
    cfg.attractiveness = s;
  }

  if (j.contains("analysis")) {
    const json& a = j.at("analysis");
    auto& an = cfg.analysis;
    if (a.contains("x0")) {
      const json& x0 = a.at("x0");
      an.x0 = x0.is_number() ? State{x0.get<double>()} : field<State>(a, "analysis", "x0");
      if (an.x0->size() != dim) throw ConfigurationError("analysis.x0 must have the system dimension");
    }
    an.k_max = field_or<std::size_t>(a, "analysis", "k_max", an.k_max);
    if (an.k_max < 1) throw ConfigurationError("analysis.k_max must be >= 1");
    an.stop_epsilon = optional_number(a, "analysis", "stop_epsilon");
    an.epsilon = field_or<double>(a, "analysis", "epsilon", an.epsilon);
    an.epsilon_list = field_or<std::vector<double>>(a, "analysis", "epsilon_list", {});
    if (a.contains("grid") && !a.at("grid").is_null()) an.grid = parse_grid(a.at("grid"));
    an.mode = field_or<std::string>(a, "analysis", "mode", an.mode);
    if (an.mode != "grid" && an.mode != "trajectory") {
      throw ConfigurationError("analysis.mode must be grid or trajectory");
    }
    an.condition = field_or<std::string>(a, "analysis", "condition", an.condition);
    if (an.condition != "auto" && an.condition != "basic" && an.condition != "decrement" &&
        an.condition != "mixed" && an.condition != "perturbed") {
      throw ConfigurationError(
          "analysis.condition must be auto, basic, decrement, mixed or perturbed");
    }
    an.tolerance = field_or<double>(a, "analysis", "tolerance", an.tolerance);
    if (!(an.tolerance >= 0.0)) throw ConfigurationError("analysis.tolerance must be >= 0");
  }

  if (j.contains("output")) {
    const json& o = j.at("output");
    cfg.output.dir = field_or<std::string>(o, "output", "dir", cfg.output.dir);
    cfg.output.format = field_or<std::string>(o, "output", "format", "");
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigurationError("config file " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed-time stability analysis for discrete-time maps"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::string out_dir;
  std::optional<std::int64_t> seed;
  std::string format;
  app.add_option("--config", config_path, "Scenario JSON (schema 1)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Perturbation seed override");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  const std::vector<std::pair<std::string, std::string>> commands{
      {"simulate", "Simulate an orbit and write it as CSV"},
      {"check", "Check Lyapunov / decrement conditions and write a JSON report"},
      {"bound", "Evaluate closed-form settling bounds"},
      {"attract", "Attractive level and perturbed settling bound"},
      {"sweep", "Settling sweep over a grid of initial conditions"},
      {"table1", "Recompute the four example cases"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    ScenarioConfig cfg;
    if (!config_path.empty()) {
      cfg = load_config(config_path);
    } else if (command != "table1") {
      throw ConfigurationError("--config is required for '" + command + "'");
    } else {
      cfg.analysis.k_max = 200;
    }
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    if (!format.empty()) cfg.output.format = format;
    if (seed && cfg.perturbation) cfg.perturbation->seed = static_cast<std::uint64_t>(*seed);

    if (command == "simulate") cmd_simulate(cfg, out);
    else if (command == "check") cmd_check(cfg, out);
    else if (command == "bound") cmd_bound(cfg, out);
    else if (command == "attract") cmd_attract(cfg, out);
    else if (command == "sweep") cmd_sweep(cfg, out);
    else cmd_table1(cfg, out);
    return kExitOk;
  } catch (const SimulationDivergedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDiverged;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace fixsettle::cli
