#include "fixsettle/settling.hpp"

#include <cmath>
#include <sstream>

#include "fixsettle/errors.hpp"

namespace fixsettle {

namespace {

// Largest floor argument we convert to an integer bound.
constexpr double kMaxBoundArgument = 9.0e15;

void require_phase1_domain(double beta, double r2) {
  if (!(beta > 0.0 && beta < 1.0) || !(r2 > 1.0 && std::isfinite(r2))) {
    std::ostringstream msg;
    msg << "phase-1 bound needs 0 < beta < 1 and r2 > 1 (got beta = " << beta << ", r2 = " << r2
        << ")";
    throw ParameterDomainError(msg.str());
  }
}

void require_phase2_domain(double alpha, double r1) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(r1 > 0.0 && r1 < 1.0)) {
    std::ostringstream msg;
    msg << "phase-2 bound needs 0 < alpha < 1 and 0 < r1 < 1 (got alpha = " << alpha
        << ", r1 = " << r1 << ")";
    throw ParameterDomainError(msg.str());
  }
}

}  // namespace

long long guarded_floor(double x, double guard) {
  if (!(guard >= 0.0)) throw ConfigurationError("floor guard must be nonnegative");
  if (!std::isfinite(x) || std::abs(x) > kMaxBoundArgument) {
    std::ostringstream msg;
    msg << "bound argument " << x << " is outside the representable integer range";
    throw ParameterDomainError(msg.str());
  }
  const double up = std::ceil(x);
  if (up > x && up - x <= guard) return static_cast<long long>(up);
  return static_cast<long long>(std::floor(x));
}

long long phase1_bound(double beta, double r2, double guard) {
  require_phase1_domain(beta, r2);
  const double arg = (std::pow(beta, 1.0 / (1.0 - r2)) - 1.0) / beta;
  return guarded_floor(arg, guard) + 1;
}

long long phase2_bound(double alpha, double r1, double guard) {
  require_phase2_domain(alpha, r1);
  return guarded_floor(std::pow(alpha, 1.0 / (r1 - 1.0)), guard) + 1;
}

long long settling_bound(const FixedTimeGains& gains, double guard) {
  gains.validate();
  return phase1_bound(gains.beta, gains.r2, guard) + phase2_bound(gains.alpha, gains.r1, guard);
}

long long example_bound(const ExampleParams& p, double guard) {
  p.validate();
  const double inner = std::pow(p.alpha, 2.0 / (2.0 * p.r1 - 1.0));
  const double outer =
      (std::pow(p.beta, 2.0 / (1.0 - 2.0 * p.r2)) - 1.0) / (p.beta * p.beta);
  return guarded_floor(inner, guard) + guarded_floor(outer, guard) + 2;
}

std::optional<std::size_t> entry_and_stay(const std::vector<double>& values, double level) {
  // Walk backwards: the answer is one past the last value above the level.
  std::size_t k = values.size();
  while (k > 0 && values[k - 1] <= level) --k;
  if (k == values.size()) return std::nullopt;
  return k;
}

std::optional<std::size_t> first_entry(const std::vector<double>& values, double level) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] <= level) return k;
  }
  return std::nullopt;
}

namespace {
std::vector<double> norms(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.states.size());
  for (const auto& s : traj.states) out.push_back(euclidean_norm(s));
  return out;
}
}  // namespace

std::optional<std::size_t> measure_settling(const Trajectory& traj, double epsilon) {
  return entry_and_stay(norms(traj), epsilon);
}

std::optional<std::size_t> measure_first_entry(const Trajectory& traj, double epsilon) {
  return first_entry(norms(traj), epsilon);
}

SettlingReport settling_report(const FixedTimeGains& gains, const Trajectory* traj,
                               double epsilon) {
  gains.validate();
  SettlingReport r;
  r.bound_K1 = phase1_bound(gains.beta, gains.r2);
  r.bound_K2_gap = phase2_bound(gains.alpha, gains.r1);
  r.bound_K_star = r.bound_K1 + r.bound_K2_gap;
  r.epsilon_used = epsilon;
  if (traj != nullptr) {
    r.empirical_settling = measure_settling(*traj, epsilon);
    r.satisfied = r.empirical_settling &&
                  static_cast<long long>(*r.empirical_settling) <= r.bound_K_star;
  }
  return r;
}

QSequence q_sequence(const std::vector<double>& v_values, double beta, double r2) {
  require_phase1_domain(beta, r2);
  if (v_values.empty()) throw EmptyDomainError("q-sequence needs at least one V value");
  for (std::size_t k = 0; k < v_values.size(); ++k) {
    const double v = v_values[k];
    if (!(v > 1.0) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "V[" << k << "] = " << v << " is not > 1";
      throw LemmaPreconditionError(msg.str(), k);
    }
    if (k + 1 < v_values.size()) {
      const double cap = v - beta * std::pow(v, r2);
      if (!(v_values[k + 1] <= cap)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "V[" << k + 1 << "] = " << v_values[k + 1]
            << " exceeds V[k] - beta V[k]^r2 = " << cap;
        throw LemmaPreconditionError(msg.str(), k + 1);
      }
    }
  }
  QSequence seq;
  seq.beta = beta;
  seq.r2 = r2;
  seq.lower = std::pow(beta, 1.0 / (1.0 - r2));
  seq.upper = std::pow(beta, 2.0 / (1.0 - r2));
  seq.q.reserve(v_values.size());
  // beta^(-1/(r2-1)) is the same number as the lower edge of the window.
  // The window test runs on logarithms: for r2 near 1 the edges overflow.
  const double log_lower = std::log(beta) / (1.0 - r2);
  for (std::size_t k = 0; k < v_values.size(); ++k) {
    seq.q.push_back(v_values[k] * seq.lower);
    const double log_q = std::log(v_values[k]) + log_lower;
    if (!(log_q > log_lower && log_q < 2.0 * log_lower)) seq.out_of_bounds.push_back(k);
  }
  return seq;
}

SSequence s_sequence(double s0, double r1, std::size_t max_steps) {
  if (!(s0 > 0.0 && s0 <= 1.0)) {
    std::ostringstream msg;
    msg << "s0 = " << s0 << " must lie in (0, 1]";
    throw DomainError(msg.str());
  }
  if (!(r1 > 0.0 && r1 < 1.0)) throw ParameterDomainError("s-sequence needs 0 < r1 < 1");
  if (max_steps < 1) throw DomainError("s-sequence needs max_steps >= 1");
  SSequence seq;
  seq.r1 = r1;
  seq.s.push_back(s0);
  for (std::size_t step = 0; step < max_steps; ++step) {
    const double cur = seq.s.back();
    if (cur == 0.0) break;
    double next = cur * (1.0 - std::pow(cur, r1 - 1.0));
    if (next < 0.0) {
      seq.clamps.push_back({seq.s.size(), next});
      next = 0.0;
    }
    seq.s.push_back(next);
  }
  return seq;
}

}  // namespace fixsettle
