#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fixsettle {

using State = std::vector<double>;
using Matrix = std::vector<std::vector<double>>;

/// Any state component beyond this magnitude counts as divergence.
inline constexpr double kDivergenceGuard = 1e300;

[[nodiscard]] double euclidean_norm(const State& x);
[[nodiscard]] bool is_origin(const State& x);
[[nodiscard]] State zero_state(std::size_t dimension);

/// Autonomous discrete-time map y(k+1) = F(y(k)).
struct SystemMap {
  std::string name;
  std::size_t dimension = 1;
  std::function<State(const State&)> step;
  std::map<std::string, double> params;

  /// Applies `step`, enforcing the input and output dimension.
  [[nodiscard]] State operator()(const State& x) const;
};

using PerturbationGenerator = std::function<State(std::size_t k, const State& x)>;

/// Additive disturbance g(k, y) whose Euclidean norm must stay strictly
/// below `delta0`. With delta0 == 0 only the zero vector is admissible.
struct PerturbationSpec {
  double delta0 = 0.0;
  PerturbationGenerator generator;
  std::uint64_t seed = 0;
  std::string kind;

  /// Evaluates the generator and checks the norm bound.
  [[nodiscard]] State sample(std::size_t k, const State& x) const;
};

[[nodiscard]] PerturbationSpec zero_perturbation(std::size_t dimension);
/// Returns `value` at every step regardless of state.
[[nodiscard]] PerturbationSpec constant_perturbation(State value, double delta0);
/// Uniform in the open ball of radius delta0; sample k depends only on (seed, k).
[[nodiscard]] PerturbationSpec uniform_ball_perturbation(std::size_t dimension, double delta0,
                                                         std::uint64_t seed);
/// Points away from the origin with norm just below delta0 (along e_1 at the origin).
[[nodiscard]] PerturbationSpec radial_perturbation(std::size_t dimension, double delta0);

struct Trajectory {
  std::vector<State> states;
  State initial_state;
  bool truncated = false;
  /// Index at which the early-stop criterion fired, if it did.
  std::optional<std::size_t> stop_index;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

  [[nodiscard]] std::size_t size() const noexcept { return states.size(); }
  [[nodiscard]] bool empty() const noexcept { return states.empty(); }
};

/// Iterates `system` from x0 for up to k_max steps. With a stop_epsilon the
/// run ends at the first k with ||y(k)|| <= stop_epsilon.
[[nodiscard]] Trajectory simulate(const SystemMap& system, const State& x0, std::size_t k_max,
                                  std::optional<double> stop_epsilon = std::nullopt);

/// Iterates y(k+1) = F(y(k)) + g(k, y(k)).
[[nodiscard]] Trajectory simulate_perturbed(const SystemMap& system, const PerturbationSpec& pert,
                                            const State& x0, std::size_t k_max);

// ---------------------------------------------------------------------------
// Power-law example map
//   x(k+1) = x(k) - sign(x(k)) * max{a |x|^r1, b |x|^r2}
// ---------------------------------------------------------------------------

/// Parameters (alpha', beta', r1', r2') of the scalar example map.
struct ExampleParams {
  double alpha = 0.0;
  double beta = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;

  /// Throws ParameterDomainError unless alpha, beta in (0,1), r1 in (0,0.5), r2 > 1.
  void validate() const;

  friend bool operator==(const ExampleParams&, const ExampleParams&) = default;
};

[[nodiscard]] double example_step(double x, const ExampleParams& p);
[[nodiscard]] double example_step(double x, double aprime, double bprime, double r1prime,
                                  double r2prime);

/// Which term of the max{.} the example map selects at |x|.
enum class ExampleBranch { Alpha, Beta };
[[nodiscard]] ExampleBranch example_branch(double x, const ExampleParams& p);
/// |x|* where a|x|^r1 = b|x|^r2.
[[nodiscard]] double example_crossover(const ExampleParams& p);

[[nodiscard]] SystemMap example_system(const ExampleParams& p);

struct Table1Case {
  int id;
  ExampleParams params;
  long long printed_K_star;
};

/// The four parameter sets of the published comparison table, x(0) = 1500.
[[nodiscard]] const std::array<Table1Case, 4>& table1_cases();
inline constexpr double kTable1InitialState = 1500.0;

// Generic maps used by tests and configuration files.
[[nodiscard]] SystemMap linear_map(Matrix a);
[[nodiscard]] SystemMap scalar_linear_map(double gain);
[[nodiscard]] SystemMap affine_map(Matrix a, State offset);
[[nodiscard]] SystemMap identity_map(std::size_t dimension);

}  // namespace fixsettle
