#include "fixsettle/report_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

namespace fixsettle {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or(const json& j, double fallback) {
  return j.is_null() ? fallback : j.get<double>();
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

void to_json(json& j, const FixedTimeGains& g) {
  j = json{{"alpha", g.alpha}, {"beta", g.beta}, {"r1", g.r1}, {"r2", g.r2}};
}

void from_json(const json& j, FixedTimeGains& g) {
  g.alpha = j.at("alpha").get<double>();
  g.beta = j.at("beta").get<double>();
  g.r1 = j.at("r1").get<double>();
  g.r2 = j.at("r2").get<double>();
}

void to_json(json& j, const ExampleParams& p) {
  j = json{{"alpha", p.alpha}, {"beta", p.beta}, {"r1", p.r1}, {"r2", p.r2}};
}

void from_json(const json& j, ExampleParams& p) {
  p.alpha = j.at("alpha").get<double>();
  p.beta = j.at("beta").get<double>();
  p.r1 = j.at("r1").get<double>();
  p.r2 = j.at("r2").get<double>();
}

void to_json(json& j, const Violation& v) {
  j = json{{"index", v.index},
           {"state", v.state},
           {"residual", finite_or_null(v.residual)},
           {"kind", std::string(to_string(v.kind))}};
}

void from_json(const json& j, Violation& v) {
  v.index = j.at("index").get<std::size_t>();
  v.state = j.at("state").get<State>();
  v.residual = number_or(j.at("residual"), kInf);
  v.kind = violation_kind_from_string(j.at("kind").get<std::string>());
}

void to_json(json& j, const ViolationInterval& v) {
  j = json{{"first_index", v.first_index}, {"last_index", v.last_index},
           {"lower", v.lower},             {"upper", v.upper},
           {"before", optional_json(v.before)}, {"after", optional_json(v.after)}};
}

void from_json(const json& j, ViolationInterval& v) {
  v.first_index = j.at("first_index").get<std::size_t>();
  v.last_index = j.at("last_index").get<std::size_t>();
  v.lower = j.at("lower").get<double>();
  v.upper = j.at("upper").get<double>();
  v.before = optional_from<double>(j, "before");
  v.after = optional_from<double>(j, "after");
}

void to_json(json& j, const ConditionReport& r) {
  j = json{{"condition_id", std::string(to_string(r.condition))},
           {"checked_points", r.checked_points},
           {"violations", r.violations},
           {"max_residual", finite_or_null(r.max_residual)},
           {"holds_everywhere", r.holds_everywhere},
           {"tolerance", finite_or_null(r.tolerance)},
           {"intervals", r.intervals}};
}

void from_json(const json& j, ConditionReport& r) {
  r.condition = condition_from_string(j.at("condition_id").get<std::string>());
  r.checked_points = j.at("checked_points").get<std::size_t>();
  r.violations = j.at("violations").get<std::vector<Violation>>();
  r.max_residual = number_or(j.at("max_residual"), -kInf);
  r.holds_everywhere = j.at("holds_everywhere").get<bool>();
  r.tolerance = number_or(j.at("tolerance"), kInf);
  r.intervals = j.at("intervals").get<std::vector<ViolationInterval>>();
}

void to_json(json& j, const SettlingReport& r) {
  j = json{{"bound_K_star", r.bound_K_star},
           {"bound_K1", r.bound_K1},
           {"bound_K2_gap", r.bound_K2_gap},
           {"empirical_settling", optional_json(r.empirical_settling)},
           {"epsilon_used", r.epsilon_used},
           {"satisfied", r.satisfied}};
}

void from_json(const json& j, SettlingReport& r) {
  r.bound_K_star = j.at("bound_K_star").get<long long>();
  r.bound_K1 = j.at("bound_K1").get<long long>();
  r.bound_K2_gap = j.at("bound_K2_gap").get<long long>();
  r.empirical_settling = optional_from<std::size_t>(j, "empirical_settling");
  r.epsilon_used = j.at("epsilon_used").get<double>();
  r.satisfied = j.at("satisfied").get<bool>();
}

void to_json(json& j, const AttractivenessReport& r) {
  const bool gt = r.branch == AttractBranch::V0GreaterThanOne;
  j = json{{"B", r.B},
           {"K_star", r.K_star},
           {"branch", std::string(to_string(r.branch))},
           {gt ? "beta_d" : "alpha_d", r.decayed_gain},
           {"B_target", r.b_target},
           {"feasibility_residual", r.feasibility_residual},
           {"empirical_entry", optional_json(r.empirical_entry)},
           {"remained_inside", r.remained_inside},
           {"crossing_index", optional_json(r.crossing_index)},
           {"lv_source", r.lv_source}};
}

void from_json(const json& j, AttractivenessReport& r) {
  r.B = j.at("B").get<double>();
  r.K_star = j.at("K_star").get<long long>();
  r.branch = branch_from_string(j.at("branch").get<std::string>());
  r.decayed_gain = j.at(r.branch == AttractBranch::V0GreaterThanOne ? "beta_d" : "alpha_d")
                       .get<double>();
  r.b_target = j.at("B_target").get<double>();
  r.feasibility_residual = j.at("feasibility_residual").get<double>();
  r.empirical_entry = optional_from<std::size_t>(j, "empirical_entry");
  r.remained_inside = j.at("remained_inside").get<bool>();
  r.crossing_index = optional_from<std::size_t>(j, "crossing_index");
  r.lv_source = j.at("lv_source").get<std::string>();
}

void to_json(json& j, const TradeoffRow& r) {
  j = json{{"m", r.m}, {"B", r.B}, {"K_star", r.K_star}};
}

void from_json(const json& j, TradeoffRow& r) {
  r.m = j.at("m").get<double>();
  r.B = j.at("B").get<double>();
  r.K_star = j.at("K_star").get<long long>();
}

void to_json(json& j, const EpsilonRow& r) {
  j = json{{"epsilon", r.epsilon},
           {"entry_and_stay", optional_json(r.entry_and_stay)},
           {"first_entry", optional_json(r.first_entry)}};
}

void from_json(const json& j, EpsilonRow& r) {
  r.epsilon = j.at("epsilon").get<double>();
  r.entry_and_stay = optional_from<std::size_t>(j, "entry_and_stay");
  r.first_entry = optional_from<std::size_t>(j, "first_entry");
}

void to_json(json& j, const SweepResult& r) {
  j = json{{"case_id", r.case_id},
           {"grid", r.grid_description},
           {"grid_size", r.grid_size},
           {"epsilon", r.epsilon},
           {"k_max", r.k_max},
           {"worst_settling", optional_json(r.worst_settling)},
           {"unsettled", r.unsettled},
           {"bound", r.bound},
           {"all_within_bound", r.all_within_bound},
           {"reference_x0", r.reference_x0},
           {"settling_vs_epsilon", r.settling_vs_epsilon}};
}

void from_json(const json& j, SweepResult& r) {
  r.case_id = j.at("case_id").get<std::string>();
  r.grid_description = j.at("grid").get<std::string>();
  r.grid_size = j.at("grid_size").get<std::size_t>();
  r.epsilon = j.at("epsilon").get<double>();
  r.k_max = j.at("k_max").get<std::size_t>();
  r.worst_settling = optional_from<std::size_t>(j, "worst_settling");
  r.unsettled = j.at("unsettled").get<std::size_t>();
  r.bound = j.at("bound").get<long long>();
  r.all_within_bound = j.at("all_within_bound").get<bool>();
  r.reference_x0 = j.at("reference_x0").get<State>();
  r.settling_vs_epsilon = j.at("settling_vs_epsilon").get<std::vector<EpsilonRow>>();
}

void to_json(json& j, const Table1Row& r) {
  j = json{{"case", r.case_id},
           {"params", r.params},
           {"K_star_recomputed", r.K_star_recomputed},
           {"K_star_published", r.K_star_published},
           {"discrepancy", r.discrepancy},
           {"note", r.note},
           {"x0", r.x0},
           {"settling", r.settling}};
}

void from_json(const json& j, Table1Row& r) {
  r.case_id = j.at("case").get<int>();
  r.params = j.at("params").get<ExampleParams>();
  r.K_star_recomputed = j.at("K_star_recomputed").get<long long>();
  r.K_star_published = j.at("K_star_published").get<long long>();
  r.discrepancy = j.at("discrepancy").get<bool>();
  r.note = j.at("note").get<std::string>();
  r.x0 = j.at("x0").get<double>();
  r.settling = j.at("settling").get<std::vector<EpsilonRow>>();
}

void to_json(json& j, const Table1Result& r) {
  j = json{{"rows", r.rows}, {"k_max", r.k_max}};
}

void from_json(const json& j, Table1Result& r) {
  r.rows = j.at("rows").get<std::vector<Table1Row>>();
  r.k_max = j.at("k_max").get<std::size_t>();
}

void to_json(json& j, const BoundReport& r) {
  j = json::object();
  if (r.K_star) j["K_star"] = *r.K_star;
  if (r.K1_bound) j["K1_bound"] = *r.K1_bound;
  if (r.K2_gap) j["K2_gap"] = *r.K2_gap;
  if (r.example_K_star) j["example_K_star"] = *r.example_K_star;
  if (r.perturbed_K_star) j["perturbed_K_star"] = *r.perturbed_K_star;
  if (r.B) j["B"] = *r.B;
}

void from_json(const json& j, BoundReport& r) {
  r.K_star = optional_from<long long>(j, "K_star");
  r.K1_bound = optional_from<long long>(j, "K1_bound");
  r.K2_gap = optional_from<long long>(j, "K2_gap");
  r.example_K_star = optional_from<long long>(j, "example_K_star");
  r.perturbed_K_star = optional_from<long long>(j, "perturbed_K_star");
  r.B = optional_from<double>(j, "B");
}

namespace {

// Shortest round-trip form; used for column labels only.
std::string short_label(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const LyapunovCandidate& v) {
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
  out << "k";
  for (std::size_t i = 1; i <= n; ++i) out << ",x_" << i;
  out << ",V\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    out << k;
    for (double x : traj.states[k]) out << ',' << format_double(x);
    out << ',' << format_double(v(traj.states[k])) << '\n';
  }
}

void write_table1_csv(std::ostream& out, const Table1Result& table) {
  out << "case,alpha_prime,beta_prime,r1_prime,r2_prime,K_star_recomputed,K_star_published,"
         "discrepancy";
  if (!table.rows.empty()) {
    for (const auto& e : table.rows.front().settling) {
      out << ",settle_eps=" << short_label(e.epsilon);
    }
    for (const auto& e : table.rows.front().settling) {
      out << ",first_eps=" << short_label(e.epsilon);
    }
  }
  out << '\n';
  auto opt = [](const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  for (const auto& r : table.rows) {
    out << r.case_id << ',' << format_double(r.params.alpha) << ','
        << format_double(r.params.beta) << ',' << format_double(r.params.r1) << ','
        << format_double(r.params.r2) << ',' << r.K_star_recomputed << ','
        << r.K_star_published << ',' << (r.discrepancy ? 1 : 0);
    for (const auto& e : r.settling) out << ',' << opt(e.entry_and_stay);
    for (const auto& e : r.settling) out << ',' << opt(e.first_entry);
    out << '\n';
  }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace fixsettle
