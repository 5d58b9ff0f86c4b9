#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixsettle/lyapunov.hpp"
#include "fixsettle/perturbation.hpp"
#include "fixsettle/settling.hpp"
#include "fixsettle/systems.hpp"

namespace fixsettle {

/// Thresholds straddling the period-2 tail amplitude of the example orbits.
[[nodiscard]] const std::vector<double>& default_epsilon_list();

struct EpsilonRow {
  double epsilon = 0.0;
  std::optional<std::size_t> entry_and_stay;
  std::optional<std::size_t> first_entry;

  friend bool operator==(const EpsilonRow&, const EpsilonRow&) = default;
};

[[nodiscard]] std::vector<EpsilonRow> settling_vs_epsilon(const Trajectory& traj,
                                                          const std::vector<double>& epsilons);

struct SweepOptions {
  std::string case_id = "sweep";
  std::string grid_description;
  double epsilon = 1.0;
  std::size_t k_max = 500;
  std::vector<double> epsilon_list = default_epsilon_list();
  /// Initial state for the settling-vs-epsilon table; defaults to the first grid point.
  std::optional<State> reference_x0;
};

struct SweepResult {
  std::string case_id;
  std::string grid_description;
  std::size_t grid_size = 0;
  double epsilon = 0.0;
  std::size_t k_max = 0;
  /// Absent when some orbit never settled within k_max.
  std::optional<std::size_t> worst_settling;
  std::size_t unsettled = 0;
  long long bound = 0;
  bool all_within_bound = false;
  State reference_x0;
  std::vector<EpsilonRow> settling_vs_epsilon;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// Simulates every x0 in the grid and compares entry-and-stay settling at
/// options.epsilon with `bound`. Only the grid is covered, nothing between its
/// points. A diverging orbit raises SimulationDivergedError naming its x0.
[[nodiscard]] SweepResult sweep_settling(const SystemMap& system,
                                         const std::vector<State>& x0_grid, long long bound,
                                         const SweepOptions& options);

/// sweep_settling on the example map against its closed-form bound.
[[nodiscard]] SweepResult sweep_example(const ExampleParams& params,
                                        const std::vector<State>& x0_grid,
                                        const SweepOptions& options);

struct Table1Row {
  int case_id = 0;
  ExampleParams params;
  long long K_star_recomputed = 0;
  long long K_star_published = 0;
  bool discrepancy = false;
  std::string note;
  double x0 = kTable1InitialState;
  std::vector<EpsilonRow> settling;

  friend bool operator==(const Table1Row&, const Table1Row&) = default;
};

struct Table1Result {
  std::vector<Table1Row> rows;
  std::size_t k_max = 0;

  friend bool operator==(const Table1Result&, const Table1Result&) = default;
};

/// Recomputes the four published bounds and measures each orbit from x(0) = 1500.
[[nodiscard]] Table1Result table1_reproduce(const std::vector<double>& epsilon_list,
                                            std::size_t k_max = 200);

enum class LemmaOutcome { Pass, Fail, InvalidInput };

/// Classifies one V-sequence: InvalidInput if it breaks the hypotheses of the
/// q-sequence construction, Fail if some q_k leaves its window.
[[nodiscard]] LemmaOutcome classify_lemma1_input(const std::vector<double>& v_values,
                                                 double beta, double r2);

/// V_0 followed by V_{k+1} = (V_k - beta V_k^r2) * shrink_k while V > 1, where
/// shrink_k in (0, 1] comes from `shrink` (empty: all 1, the tight case).
[[nodiscard]] std::vector<double> lemma1_sequence(double v0, double beta, double r2,
                                                  const std::vector<double>& shrink = {});

struct Lemma1Summary {
  std::size_t trials = 0;
  std::size_t sequences = 0;
  std::size_t q_values = 0;
  std::size_t failures = 0;
  std::size_t invalid_inputs = 0;
  std::size_t phase1_overruns = 0;  // tight sequences longer than phase1_bound
  std::vector<std::string> failure_details;

  [[nodiscard]] bool passed() const noexcept { return failures == 0 && phase1_overruns == 0; }
};

/// Draws (V0, beta, r2) per trial from a generator seeded by (seed, trial),
/// checks the tight sequence and a randomly strengthened one.
[[nodiscard]] Lemma1Summary lemma1_randomized_trial(std::size_t n_trials, std::uint64_t seed);

struct ContainmentSetup {
  ExampleParams params;
  std::vector<double> delta0_values;
  std::vector<double> x0_values;
  std::vector<std::uint64_t> seeds;
  double m = 2.0;
  double margin = 0.05;
  long long slack = 2;
  std::size_t k_max = 200;
};

struct ContainmentRun {
  double delta0 = 0.0;
  double x0 = 0.0;
  std::uint64_t seed = 0;
  AttractBranch branch = AttractBranch::V0GreaterThanOne;
  double B = 0.0;
  long long K_star = 0;
  std::optional<std::size_t> entry;
  bool within = false;
  Trajectory orbit;  // kept only for failing runs
};

struct ContainmentResult {
  std::size_t runs = 0;
  std::vector<ContainmentRun> failures;
  std::optional<std::size_t> worst_entry;
  long long min_K_star = 0;

  [[nodiscard]] bool all_within() const noexcept { return failures.empty(); }
};

/// Perturbed example orbits with V = |x|, L_V = 1 and the mapped gains. Each
/// run's entry-and-stay index into {V <= B (1 + margin)} must not exceed
/// K* + slack.
[[nodiscard]] ContainmentResult perturbed_containment(const ContainmentSetup& setup);

}  // namespace fixsettle
