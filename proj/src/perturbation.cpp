#include "fixsettle/perturbation.hpp"

#include <cmath>
#include <sstream>

#include "fixsettle/errors.hpp"

namespace fixsettle {

std::string_view to_string(AttractBranch b) {
  return b == AttractBranch::V0GreaterThanOne ? "V0_GT_1" : "V0_LE_1";
}

AttractBranch branch_from_string(std::string_view s) {
  if (s == "V0_GT_1") return AttractBranch::V0GreaterThanOne;
  if (s == "V0_LE_1") return AttractBranch::V0AtMostOne;
  throw ConfigurationError("unknown branch '" + std::string(s) + "' (expected V0_GT_1 or V0_LE_1)");
}

AttractBranch branch_for(double v0) noexcept {
  return v0 > 1.0 ? AttractBranch::V0GreaterThanOne : AttractBranch::V0AtMostOne;
}

void AttractivenessConfig::validate() const {
  std::ostringstream msg;
  if (!(m1 > 1.0 && std::isfinite(m1))) msg << "m1 = " << m1 << " must exceed 1; ";
  if (!(m2 > 1.0 && std::isfinite(m2))) msg << "m2 = " << m2 << " must exceed 1; ";
  if (!(lv > 0.0 && std::isfinite(lv))) msg << "L_V = " << lv << " must be positive; ";
  if (!(delta0 >= 0.0 && std::isfinite(delta0))) {
    msg << "delta0 = " << delta0 << " must be finite and nonnegative; ";
  }
  std::string text = msg.str();
  if (text.size() >= 2) text.resize(text.size() - 2);
  if (!text.empty()) throw ParameterDomainError("attractiveness config: " + text);
  gains.validate();
}

double attractive_level(const AttractivenessConfig& cfg) {
  cfg.validate();
  const auto& g = cfg.gains;
  if (cfg.branch == AttractBranch::V0GreaterThanOne) {
    return std::pow(cfg.m1 * cfg.lv * cfg.delta0 / g.beta, 1.0 / g.r2);
  }
  return std::pow(cfg.m2 * cfg.lv * cfg.delta0 / g.alpha, 1.0 / g.r1);
}

double feasibility_residual(const AttractivenessConfig& cfg, double b_target) {
  cfg.validate();
  if (!(b_target > 0.0)) throw DomainError("feasibility level B must be positive");
  const auto& g = cfg.gains;
  if (cfg.branch == AttractBranch::V0GreaterThanOne) {
    return g.beta * std::pow(b_target, g.r2) - cfg.m1 * cfg.lv * cfg.delta0;
  }
  return g.alpha * std::pow(b_target, g.r1) - cfg.m2 * cfg.lv * cfg.delta0;
}

double decayed_gain(const AttractivenessConfig& cfg) {
  cfg.validate();
  if (cfg.branch == AttractBranch::V0GreaterThanOne) return (1.0 - 1.0 / cfg.m1) * cfg.gains.beta;
  return (1.0 - 1.0 / cfg.m2) * cfg.gains.alpha;
}

long long perturbed_settling_bound(const AttractivenessConfig& cfg, double guard) {
  const double d = decayed_gain(cfg);
  if (cfg.branch == AttractBranch::V0GreaterThanOne) return phase1_bound(d, cfg.gains.r2, guard);
  return phase2_bound(d, cfg.gains.r1, guard);
}

AttractivenessCheck verify_attractiveness(const Trajectory& traj, const LyapunovCandidate& v,
                                          double b) {
  std::vector<double> values;
  values.reserve(traj.states.size());
  for (const auto& s : traj.states) values.push_back(v(s));
  AttractivenessCheck check;
  check.entry = entry_and_stay(values, b);
  const auto first = first_entry(values, b);
  check.remained = check.entry.has_value() && first == check.entry;
  return check;
}

AttractivenessReport analyze_attractiveness(const AttractivenessConfig& cfg,
                                            const Trajectory* traj, const LyapunovCandidate* v,
                                            std::optional<double> b_target) {
  AttractivenessReport r;
  r.B = attractive_level(cfg);
  r.K_star = perturbed_settling_bound(cfg);
  r.branch = cfg.branch;
  r.decayed_gain = decayed_gain(cfg);
  r.lv_source = cfg.lv_source;
  r.b_target = b_target.value_or(r.B);
  // With delta0 = 0 the level is 0 and the residual is evaluated at the limit.
  r.feasibility_residual = r.b_target > 0.0 ? feasibility_residual(cfg, r.b_target) : 0.0;
  if (traj != nullptr && v != nullptr) {
    const auto check = verify_attractiveness(*traj, *v, r.B);
    r.empirical_entry = check.entry;
    r.remained_inside = check.remained;
    if (cfg.branch == AttractBranch::V0GreaterThanOne) {
      for (std::size_t k = 0; k < traj->states.size(); ++k) {
        if ((*v)(traj->states[k]) <= 1.0) {
          r.crossing_index = k;
          break;
        }
      }
    }
  }
  return r;
}

std::vector<TradeoffRow> remark1_tradeoff_table(const AttractivenessConfig& base,
                                                const std::vector<double>& m_values) {
  if (m_values.empty()) throw EmptyDomainError("trade-off table needs at least one m value");
  std::vector<TradeoffRow> rows;
  rows.reserve(m_values.size());
  for (double m : m_values) {
    AttractivenessConfig cfg = base;
    if (cfg.branch == AttractBranch::V0GreaterThanOne) {
      cfg.m1 = m;
    } else {
      cfg.m2 = m;
    }
    rows.push_back({m, attractive_level(cfg), perturbed_settling_bound(cfg)});
  }
  return rows;
}

bool tradeoff_is_monotone(const std::vector<TradeoffRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].m < rows[i - 1].m) continue;
    if (rows[i].B < rows[i - 1].B || rows[i].K_star > rows[i - 1].K_star) return false;
  }
  return true;
}

}  // namespace fixsettle
