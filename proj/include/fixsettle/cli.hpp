#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fixsettle/lyapunov.hpp"
#include "fixsettle/systems.hpp"
#include "json.hpp"

namespace fixsettle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDiverged = 3;

inline constexpr int kSchemaVersion = 1;

struct SystemSpec {
  std::string type = "example";  // example | affine | linear
  std::optional<ExampleParams> example;
  std::optional<int> table_case;
  Matrix a;
  State offset;
};

struct LyapunovSpec {
  std::string type = "abs";  // abs | square | polynomial | quadratic_form
  std::vector<double> coefficients;
  Matrix p;
  std::optional<double> lipschitz;
  bool estimate_lipschitz = false;
};

struct PerturbationConfig {
  double delta0 = 0.0;
  std::string generator = "uniform_ball";  // uniform_ball | constant | radial | zero
  State value;
  std::uint64_t seed = 0;
};

struct AttractivenessSection {
  double m1 = 2.0;
  double m2 = 2.0;
  std::string branch = "auto";  // auto | V0_GT_1 | V0_LE_1
  std::optional<double> b_target;
  std::vector<double> m_values;
};

struct GridSpec {
  std::string kind = "log";  // log | linear | points
  double min = 1e-3;
  double max = 1e4;
  std::size_t points = 100;
  bool symmetric = false;
  std::vector<State> explicit_points;
};

struct AnalysisSpec {
  std::optional<State> x0;
  std::size_t k_max = 40;
  std::optional<double> stop_epsilon;
  double epsilon = 1.0;
  std::vector<double> epsilon_list;
  std::optional<GridSpec> grid;
  std::string mode = "grid";       // grid | trajectory
  std::string condition = "auto";  // auto | basic | decrement | mixed | perturbed
  double tolerance = kDefaultTolerance;
};

struct OutputSpec {
  std::string dir = ".";
  std::string format;  // empty: command default
};

/// Declarative scenario loaded from a `schema: 1` JSON document.
struct ScenarioConfig {
  std::string name = "scenario";
  SystemSpec system;
  LyapunovSpec lyapunov;
  std::optional<LyapunovSpec> lyapunov_rhs;
  std::optional<FixedTimeGains> gains;
  bool gains_mapped = false;
  std::optional<PerturbationConfig> perturbation;
  std::optional<AttractivenessSection> attractiveness;
  AnalysisSpec analysis;
  OutputSpec output;
};

/// Parses and validates a scenario. Every violated domain condition raises
/// ConfigurationError or ParameterDomainError with the offending field named.
[[nodiscard]] ScenarioConfig parse_config(const nlohmann::json& j);
[[nodiscard]] ScenarioConfig load_config(const std::string& path);

[[nodiscard]] SystemMap build_system(const SystemSpec& spec);
[[nodiscard]] LyapunovCandidate build_lyapunov(const LyapunovSpec& spec, std::size_t dimension);
[[nodiscard]] std::vector<State> build_grid(const GridSpec& spec);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fixsettle::cli
