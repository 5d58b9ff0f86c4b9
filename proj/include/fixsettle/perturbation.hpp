#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixsettle/lyapunov.hpp"
#include "fixsettle/settling.hpp"
#include "fixsettle/systems.hpp"

namespace fixsettle {

/// Which side of V = 1 the initial condition starts on. Selects both the
/// attractive level and the settling bound.
enum class AttractBranch { V0GreaterThanOne, V0AtMostOne };

[[nodiscard]] std::string_view to_string(AttractBranch b);
[[nodiscard]] AttractBranch branch_from_string(std::string_view s);
[[nodiscard]] AttractBranch branch_for(double v0) noexcept;

struct AttractivenessConfig {
  double m1 = 2.0;
  double m2 = 2.0;
  double lv = 1.0;
  double delta0 = 0.0;
  FixedTimeGains gains;
  AttractBranch branch = AttractBranch::V0GreaterThanOne;
  /// "user", "builtin" or "estimated"; recorded in reports.
  std::string lv_source = "user";

  /// m1 > 1, m2 > 1, L_V > 0, delta0 >= 0 finite, admissible gains.
  void validate() const;
};

/// B = (m1 L_V delta0 / beta)^(1/r2) or (m2 L_V delta0 / alpha)^(1/r1).
[[nodiscard]] double attractive_level(const AttractivenessConfig& cfg);

/// beta B^r2 - m1 L_V delta0 or alpha B^r1 - m2 L_V delta0, by branch.
/// Zero at B = attractive_level(cfg); positive for larger levels.
[[nodiscard]] double feasibility_residual(const AttractivenessConfig& cfg, double b_target);

/// beta_d = (1 - 1/m1) beta or alpha_d = (1 - 1/m2) alpha, by branch.
[[nodiscard]] double decayed_gain(const AttractivenessConfig& cfg);

/// Phase-1 kernel at (beta_d, r2) or phase-2 kernel at (alpha_d, r1).
[[nodiscard]] long long perturbed_settling_bound(const AttractivenessConfig& cfg,
                                                 double guard = kDefaultFloorGuard);

struct AttractivenessCheck {
  std::optional<std::size_t> entry;
  bool remained = false;
};

/// entry: smallest k with V(y(j)) <= B for all recorded j >= k.
/// remained: the orbit entered and never left again.
[[nodiscard]] AttractivenessCheck verify_attractiveness(const Trajectory& traj,
                                                        const LyapunovCandidate& v, double b);

struct AttractivenessReport {
  double B = 0.0;
  long long K_star = 0;
  AttractBranch branch = AttractBranch::V0GreaterThanOne;
  double decayed_gain = 0.0;  // beta_d or alpha_d
  double b_target = 0.0;
  double feasibility_residual = 0.0;
  std::optional<std::size_t> empirical_entry;
  bool remained_inside = false;
  /// First k with V(y(k)) <= 1 on an orbit analysed with the V(0) > 1 branch.
  std::optional<std::size_t> crossing_index;
  std::string lv_source;

  friend bool operator==(const AttractivenessReport&, const AttractivenessReport&) = default;
};

/// Evaluates level, bound and feasibility; with a trajectory and V also the
/// empirical entry into {V <= B}. `b_target` defaults to B.
[[nodiscard]] AttractivenessReport analyze_attractiveness(
    const AttractivenessConfig& cfg, const Trajectory* traj = nullptr,
    const LyapunovCandidate* v = nullptr, std::optional<double> b_target = std::nullopt);

struct TradeoffRow {
  double m = 0.0;
  double B = 0.0;
  long long K_star = 0;

  friend bool operator==(const TradeoffRow&, const TradeoffRow&) = default;
};

/// One row per m (used as m1 or m2 according to cfg.branch).
[[nodiscard]] std::vector<TradeoffRow> remark1_tradeoff_table(const AttractivenessConfig& base,
                                                              const std::vector<double>& m_values);

/// For consecutive rows with nondecreasing m: B nondecreasing and K* nonincreasing.
[[nodiscard]] bool tradeoff_is_monotone(const std::vector<TradeoffRow>& rows);

}  // namespace fixsettle
