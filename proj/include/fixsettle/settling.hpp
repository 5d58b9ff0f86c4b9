#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fixsettle/lyapunov.hpp"
#include "fixsettle/systems.hpp"

namespace fixsettle {

/// Arguments closer than this below an integer are rounded up before flooring,
/// so exact rational cases such as 0.25^-2 = 16 do not floor to 15.
inline constexpr double kDefaultFloorGuard = 1e-9;

/// floor(x), except that x in [n - guard, n) maps to n.
[[nodiscard]] long long guarded_floor(double x, double guard = kDefaultFloorGuard);

/// floor(beta^-1 (beta^(1/(1-r2)) - 1)) + 1: steps needed to bring V from
/// above 1 down to at most 1.
[[nodiscard]] long long phase1_bound(double beta, double r2, double guard = kDefaultFloorGuard);

/// floor(alpha^(1/(r1-1))) + 1: steps needed to bring V from at most 1 to 0.
[[nodiscard]] long long phase2_bound(double alpha, double r1, double guard = kDefaultFloorGuard);

/// Fixed-time settling bound K* = phase1_bound + phase2_bound.
[[nodiscard]] long long settling_bound(const FixedTimeGains& gains,
                                       double guard = kDefaultFloorGuard);

/// K* of the power-law example, evaluated directly from (alpha', beta', r1', r2'):
///   floor(a'^(2/(2 r1' - 1))) + floor(b'^-2 (b'^(2/(1 - 2 r2')) - 1)) + 2.
[[nodiscard]] long long example_bound(const ExampleParams& p, double guard = kDefaultFloorGuard);

/// Smallest k such that every value from k on is <= level (entry-and-stay).
[[nodiscard]] std::optional<std::size_t> entry_and_stay(const std::vector<double>& values,
                                                        double level);
/// Smallest k with values[k] <= level.
[[nodiscard]] std::optional<std::size_t> first_entry(const std::vector<double>& values,
                                                     double level);

/// Entry-and-stay index of ||y(k)|| <= epsilon within the recorded orbit.
[[nodiscard]] std::optional<std::size_t> measure_settling(const Trajectory& traj, double epsilon);
[[nodiscard]] std::optional<std::size_t> measure_first_entry(const Trajectory& traj,
                                                             double epsilon);

struct SettlingReport {
  long long bound_K_star = 0;
  long long bound_K1 = 0;
  long long bound_K2_gap = 0;
  std::optional<std::size_t> empirical_settling;
  double epsilon_used = 0.0;
  /// True iff an empirical settling index exists and is <= bound_K_star.
  bool satisfied = false;

  friend bool operator==(const SettlingReport&, const SettlingReport&) = default;
};

[[nodiscard]] SettlingReport settling_report(const FixedTimeGains& gains,
                                             const Trajectory* traj = nullptr,
                                             double epsilon = 0.0);

/// Normalised phase-1 sequence q_k = V_k * beta^(-1/(r2-1)) with the window
/// (beta^(1/(1-r2)), beta^(2/(1-r2))) it must stay in. For r2 close to 1 the
/// stored q and window edges may be +inf; membership is decided in log space.
struct QSequence {
  std::vector<double> q;
  double beta = 0.0;
  double r2 = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// Indices whose q_k fell outside the open window.
  std::vector<std::size_t> out_of_bounds;

  [[nodiscard]] bool within_bounds() const noexcept { return out_of_bounds.empty(); }
};

/// Builds the q-sequence for V-values that satisfy V_k > 1 and
/// V_{k+1} <= V_k - beta V_k^r2. Throws LemmaPreconditionError naming the
/// first offending index otherwise.
[[nodiscard]] QSequence q_sequence(const std::vector<double>& v_values, double beta, double r2);

struct SClamp {
  std::size_t index = 0;  // position in `s` that was clamped
  double raw = 0.0;       // value the recursion produced
};

/// Phase-2 recursion s_k = s_{k-1} (1 - s_{k-1}^(r1-1)). Negative values are
/// clamped to 0 and logged in `clamps`; they never appear in `s`.
struct SSequence {
  std::vector<double> s;
  double r1 = 0.0;
  std::vector<SClamp> clamps;
};

/// Iterates from s0 in (0, 1] for at most max_steps steps, stopping once 0 is reached.
[[nodiscard]] SSequence s_sequence(double s0, double r1, std::size_t max_steps);

}  // namespace fixsettle
