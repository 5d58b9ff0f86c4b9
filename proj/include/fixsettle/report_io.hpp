#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "fixsettle/lyapunov.hpp"
#include "fixsettle/oracle.hpp"
#include "fixsettle/perturbation.hpp"
#include "fixsettle/settling.hpp"
#include "json.hpp"

namespace fixsettle {

/// Keys emitted by the `bound` command; each is present only when applicable.
struct BoundReport {
  std::optional<long long> K_star;
  std::optional<long long> K1_bound;
  std::optional<long long> K2_gap;
  std::optional<long long> example_K_star;
  std::optional<long long> perturbed_K_star;
  std::optional<double> B;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

// JSON mapping. Non-finite doubles serialise as null and parse back as
// +inf (residuals) or -inf (max_residual of a report with no residuals).
void to_json(nlohmann::json& j, const FixedTimeGains& g);
void from_json(const nlohmann::json& j, FixedTimeGains& g);
void to_json(nlohmann::json& j, const ExampleParams& p);
void from_json(const nlohmann::json& j, ExampleParams& p);
void to_json(nlohmann::json& j, const Violation& v);
void from_json(const nlohmann::json& j, Violation& v);
void to_json(nlohmann::json& j, const ViolationInterval& v);
void from_json(const nlohmann::json& j, ViolationInterval& v);
void to_json(nlohmann::json& j, const ConditionReport& r);
void from_json(const nlohmann::json& j, ConditionReport& r);
void to_json(nlohmann::json& j, const SettlingReport& r);
void from_json(const nlohmann::json& j, SettlingReport& r);
void to_json(nlohmann::json& j, const AttractivenessReport& r);
void from_json(const nlohmann::json& j, AttractivenessReport& r);
void to_json(nlohmann::json& j, const TradeoffRow& r);
void from_json(const nlohmann::json& j, TradeoffRow& r);
void to_json(nlohmann::json& j, const EpsilonRow& r);
void from_json(const nlohmann::json& j, EpsilonRow& r);
void to_json(nlohmann::json& j, const SweepResult& r);
void from_json(const nlohmann::json& j, SweepResult& r);
void to_json(nlohmann::json& j, const Table1Row& r);
void from_json(const nlohmann::json& j, Table1Row& r);
void to_json(nlohmann::json& j, const Table1Result& r);
void from_json(const nlohmann::json& j, Table1Result& r);
void to_json(nlohmann::json& j, const BoundReport& r);
void from_json(const nlohmann::json& j, BoundReport& r);

/// 17 significant digits with a '.' decimal separator, independent of the
/// global locale. Round-trips every finite double.
[[nodiscard]] std::string format_double(double v);

/// Header `k,x_1,...,x_n,V` and one row per state.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const LyapunovCandidate& v);

/// case,alpha',beta',r1',r2',K_star_recomputed,K_star_published,discrepancy,
/// then settle_eps=<e> and first_eps=<e> per epsilon.
void write_table1_csv(std::ostream& out, const Table1Result& table);

/// Serialises with two-space indentation and a trailing newline.
[[nodiscard]] std::string dump_json(const nlohmann::json& j);

}  // namespace fixsettle
