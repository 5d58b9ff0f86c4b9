#include "fixsettle/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "fixsettle/errors.hpp"
#include "fixsettle/parallel.hpp"

namespace fixsettle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double bound_term(const FixedTimeGains& g, double v) {
  return std::max(g.alpha * std::pow(v, g.r1), g.beta * std::pow(v, g.r2));
}

void require_nonzero(const State& x) {
  if (is_origin(x)) {
    throw DomainError("decrement condition is posed away from the origin; got x = 0");
  }
}

void require_grid(const std::vector<State>& grid) {
  if (grid.empty()) throw EmptyDomainError("condition scan needs a nonempty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (is_origin(grid[i])) {
      std::ostringstream msg;
      msg << "grid point " << i << " is the origin; the decrement condition excludes it";
      throw DomainError(msg.str());
    }
  }
}

struct PointResult {
  double residual = 0.0;
  bool has_residual = false;  // false when V <= 0 made the decrement moot
  bool positivity_failed = false;
};

using PointFn = std::function<PointResult(std::size_t)>;

// Shared reduction: violations in index order, intervals for 1-D inputs.
ConditionReport reduce(ConditionId id, const std::vector<State>& points,
                       const std::vector<std::size_t>& labels, const PointFn& eval,
                       double tolerance, bool with_intervals) {
  if (!(tolerance >= 0.0)) throw ConfigurationError("tolerance must be nonnegative");
  const auto results = parallel_map(points.size(), eval);
  ConditionReport report;
  report.condition = id;
  report.tolerance = tolerance;
  report.checked_points = points.size();
  std::vector<bool> violating(points.size(), false);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const PointResult& r = results[i];
    if (r.has_residual && std::isfinite(r.residual)) {
      report.max_residual = std::max(report.max_residual, r.residual);
    }
    double residual = r.residual;
    ViolationKind kind = ViolationKind::Decrement;
    if (r.positivity_failed) {
      residual = kInf;
      kind = ViolationKind::Positivity;
    }
    // NaN residuals (e.g. a candidate returning NaN) count as violations.
    if (residual > tolerance || std::isnan(residual)) {
      violating[i] = true;
      report.violations.push_back({labels[i], points[i], residual, kind});
    }
  }
  report.holds_everywhere = report.violations.empty();
  if (with_intervals) {
    for (std::size_t i = 0; i < points.size();) {
      if (!violating[i]) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < points.size() && violating[j + 1]) ++j;
      ViolationInterval iv;
      iv.first_index = labels[i];
      iv.last_index = labels[j];
      iv.lower = points[i][0];
      iv.upper = points[j][0];
      if (i > 0) iv.before = points[i - 1][0];
      if (j + 1 < points.size()) iv.after = points[j + 1][0];
      report.intervals.push_back(iv);
      i = j + 1;
    }
  }
  return report;
}

std::vector<std::size_t> iota_labels(std::size_t n) {
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i;
  return labels;
}

PointResult mixed_point(const SystemMap& system, const LyapunovCandidate& lhs,
                        const LyapunovCandidate& rhs, const FixedTimeGains& gains,
                        const State& x) {
  const double v_lhs = lhs(x);
  const double v_rhs = rhs(x);
  PointResult r;
  if (!(v_lhs > 0.0) || !(v_rhs > 0.0)) {
    r.positivity_failed = true;
    return r;
  }
  r.residual = (lhs(system(x)) - v_lhs) + bound_term(gains, v_rhs);
  r.has_residual = true;
  return r;
}

// Keeps the nonzero states of a trajectory, labelled with their step index.
void nonzero_states(const Trajectory& traj, std::vector<State>& points,
                    std::vector<std::size_t>& labels) {
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    if (is_origin(traj.states[k])) continue;
    points.push_back(traj.states[k]);
    labels.push_back(k);
  }
}

}  // namespace

void FixedTimeGains::validate() const {
  std::ostringstream msg;
  if (!(alpha > 0.0 && alpha < 1.0)) msg << "alpha = " << alpha << " must lie in (0, 1); ";
  if (!(beta > 0.0 && beta < 1.0)) msg << "beta = " << beta << " must lie in (0, 1); ";
  if (!(r1 > 0.0 && r1 < 1.0)) msg << "r1 = " << r1 << " must lie in (0, 1); ";
  if (!(r2 > 1.0 && std::isfinite(r2))) msg << "r2 = " << r2 << " must exceed 1; ";
  std::string text = msg.str();
  if (text.size() >= 2) text.resize(text.size() - 2);
  if (!text.empty()) throw ParameterDomainError("fixed-time gains: " + text);
}

bool FixedTimeGains::admissible() const noexcept {
  return alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0 && r1 > 0.0 && r1 < 1.0 &&
         r2 > 1.0 && std::isfinite(r2);
}

FixedTimeGains mapped_gains(const ExampleParams& p) {
  p.validate();
  return {p.alpha * p.alpha, p.beta * p.beta, 2.0 * p.r1, 2.0 * p.r2};
}

LyapunovCandidate::LyapunovCandidate(std::string name, std::size_t dimension, Fn fn,
                                     std::optional<double> lipschitz)
    : name_(std::move(name)), dimension_(dimension), fn_(std::move(fn)), lipschitz_(lipschitz) {
  if (!fn_) throw ConfigurationError("Lyapunov candidate '" + name_ + "' has no function");
  if (dimension_ == 0) throw ConfigurationError("Lyapunov candidate needs dimension >= 1");
  if (lipschitz_ && !(*lipschitz_ > 0.0 && std::isfinite(*lipschitz_))) {
    throw ConfigurationError("Lipschitz constant L_V must be positive and finite");
  }
  const double at_origin = fn_(zero_state(dimension_));
  if (at_origin != 0.0) {
    std::ostringstream msg;
    msg << "Lyapunov candidate '" << name_ << "' has V(0) = " << at_origin << "; V(0) = 0 is required";
    throw ConfigurationError(msg.str());
  }
}

LyapunovCandidate LyapunovCandidate::with_lipschitz(double lv) const {
  return LyapunovCandidate(name_, dimension_, fn_, lv);
}

LyapunovCandidate norm_candidate(std::size_t dimension) {
  return LyapunovCandidate("abs", dimension, [](const State& x) { return euclidean_norm(x); },
                           1.0);
}

LyapunovCandidate square_candidate(std::size_t dimension) {
  return LyapunovCandidate("square", dimension, [](const State& x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return acc;
  });
}

LyapunovCandidate polynomial_candidate(std::size_t dimension, std::vector<double> coeffs) {
  if (coeffs.empty()) throw ConfigurationError("polynomial Lyapunov candidate needs coefficients");
  return LyapunovCandidate("polynomial", dimension, [coeffs = std::move(coeffs)](const State& x) {
    const double r = euclidean_norm(x);
    // Horner in r
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r + *it;
    return acc;
  });
}

LyapunovCandidate quadratic_form_candidate(Matrix p) {
  const std::size_t n = p.size();
  if (n == 0 || std::any_of(p.begin(), p.end(), [n](const State& row) { return row.size() != n; })) {
    throw ConfigurationError("quadratic form needs a square nonempty matrix");
  }
  return LyapunovCandidate("quadratic_form", n, [p = std::move(p)](const State& x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < x.size(); ++j) acc += x[i] * p[i][j] * x[j];
    }
    return acc;
  });
}

std::string_view to_string(ConditionId id) {
  switch (id) {
    case ConditionId::LyapBasic: return "LYAP_BASIC";
    case ConditionId::FtDecrement: return "FT_DECREMENT";
    case ConditionId::FtMixed: return "FT_MIXED";
    case ConditionId::PerturbedDecrement: return "PERTURBED_DECREMENT";
  }
  return "?";
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Origin: return "origin";
    case ViolationKind::Positivity: return "positivity";
    case ViolationKind::Decrement: return "decrement";
  }
  return "?";
}

ConditionId condition_from_string(std::string_view s) {
  for (auto id : {ConditionId::LyapBasic, ConditionId::FtDecrement, ConditionId::FtMixed,
                  ConditionId::PerturbedDecrement}) {
    if (to_string(id) == s) return id;
  }
  throw ConfigurationError("unknown condition id '" + std::string(s) + "'");
}

ViolationKind violation_kind_from_string(std::string_view s) {
  for (auto k : {ViolationKind::Origin, ViolationKind::Positivity, ViolationKind::Decrement}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigurationError("unknown violation kind '" + std::string(s) + "'");
}

double decrement_residual(const SystemMap& system, const LyapunovCandidate& v,
                          const FixedTimeGains& gains, const State& x) {
  return mixed_decrement_residual(system, v, v, gains, x);
}

double mixed_decrement_residual(const SystemMap& system, const LyapunovCandidate& v_lhs,
                                const LyapunovCandidate& v_rhs, const FixedTimeGains& gains,
                                const State& x) {
  gains.validate();
  require_nonzero(x);
  const double v_now = v_lhs(x);
  return (v_lhs(system(x)) - v_now) + bound_term(gains, v_rhs(x));
}

double perturbed_decrement_residual(const SystemMap& system, double g_norm,
                                    const LyapunovCandidate& v, const FixedTimeGains& gains,
                                    const State& x) {
  const auto lv = v.lipschitz();
  if (!lv) {
    throw ConfigurationError("perturbed decrement needs a Lipschitz constant L_V for '" +
                             v.name() + "'");
  }
  if (!(g_norm >= 0.0)) throw DomainError("perturbation norm must be nonnegative");
  return decrement_residual(system, v, gains, x) - *lv * g_norm;
}

ConditionReport check_basic_lyapunov(const SystemMap& system, const LyapunovCandidate& v,
                                     const std::vector<State>& grid, double tolerance) {
  require_grid(grid);
  PointFn eval = [&](std::size_t i) {
    PointResult r;
    const double now = v(grid[i]);
    if (!(now > 0.0)) r.positivity_failed = true;
    r.residual = v(system(grid[i])) - now;
    r.has_residual = true;
    return r;
  };
  ConditionReport report = reduce(ConditionId::LyapBasic, grid, iota_labels(grid.size()), eval,
                                  tolerance, system.dimension == 1);
  report.checked_points += 1;
  const double at_origin = v(zero_state(system.dimension));
  if (std::abs(at_origin) > tolerance) {
    report.violations.push_back(
        {kOriginIndex, zero_state(system.dimension), std::abs(at_origin), ViolationKind::Origin});
    report.holds_everywhere = false;
  }
  return report;
}

ConditionReport scan_conditions(const SystemMap& system, const LyapunovCandidate& v,
                                const FixedTimeGains& gains, const std::vector<State>& grid,
                                double tolerance) {
  ConditionReport report = scan_conditions(system, v, v, gains, grid, tolerance);
  report.condition = ConditionId::FtDecrement;
  return report;
}

ConditionReport scan_conditions(const SystemMap& system, const LyapunovCandidate& v_lhs,
                                const LyapunovCandidate& v_rhs, const FixedTimeGains& gains,
                                const std::vector<State>& grid, double tolerance) {
  gains.validate();
  require_grid(grid);
  PointFn eval = [&](std::size_t i) { return mixed_point(system, v_lhs, v_rhs, gains, grid[i]); };
  return reduce(ConditionId::FtMixed, grid, iota_labels(grid.size()), eval, tolerance,
                system.dimension == 1);
}

ConditionReport scan_trajectory(const SystemMap& system, const LyapunovCandidate& v,
                                const FixedTimeGains& gains, const Trajectory& traj,
                                double tolerance) {
  ConditionReport report = scan_trajectory(system, v, v, gains, traj, tolerance);
  report.condition = ConditionId::FtDecrement;
  return report;
}

ConditionReport scan_trajectory(const SystemMap& system, const LyapunovCandidate& v_lhs,
                                const LyapunovCandidate& v_rhs, const FixedTimeGains& gains,
                                const Trajectory& traj, double tolerance) {
  gains.validate();
  std::vector<State> points;
  std::vector<std::size_t> labels;
  nonzero_states(traj, points, labels);
  PointFn eval = [&](std::size_t i) {
    return mixed_point(system, v_lhs, v_rhs, gains, points[i]);
  };
  return reduce(ConditionId::FtMixed, points, labels, eval, tolerance, false);
}

ConditionReport scan_perturbed_trajectory(const SystemMap& system, const LyapunovCandidate& v,
                                          const FixedTimeGains& gains, const Trajectory& traj,
                                          double tolerance) {
  gains.validate();
  if (!v.lipschitz()) {
    throw ConfigurationError("perturbed decrement needs a Lipschitz constant L_V for '" +
                             v.name() + "'");
  }
  // The last state has no successor, so it carries no injected disturbance.
  std::vector<State> points;
  std::vector<std::size_t> labels;
  for (std::size_t k = 0; k + 1 < traj.states.size(); ++k) {
    if (is_origin(traj.states[k])) continue;
    points.push_back(traj.states[k]);
    labels.push_back(k);
  }
  PointFn eval = [&](std::size_t i) {
    PointResult r;
    const State& x = points[i];
    if (!(v(x) > 0.0)) {
      r.positivity_failed = true;
      return r;
    }
    const State nominal = system(x);
    const State& actual = traj.states[labels[i] + 1];
    State g(nominal.size());
    for (std::size_t j = 0; j < g.size(); ++j) g[j] = actual[j] - nominal[j];
    r.residual = perturbed_decrement_residual(system, euclidean_norm(g), v, gains, x);
    r.has_residual = true;
    return r;
  };
  return reduce(ConditionId::PerturbedDecrement, points, labels, eval, tolerance, false);
}

double estimate_lipschitz(const std::function<State(const State&)>& f,
                          const std::vector<State>& grid) {
  if (grid.size() < 2) throw DegenerateDomainError("Lipschitz estimate needs at least two points");
  std::vector<State> images(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) images[i] = f(grid[i]);
  auto distance = [](const State& a, const State& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc);
  };
  bool any_pair = false;
  double best = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double dx = distance(grid[i], grid[j]);
      if (dx == 0.0) continue;
      any_pair = true;
      best = std::max(best, distance(images[i], images[j]) / dx);
    }
  }
  if (!any_pair) throw DegenerateDomainError("Lipschitz estimate needs two distinct grid points");
  return best;
}

double estimate_lipschitz(const std::function<double(const State&)>& f,
                          const std::vector<State>& grid) {
  return estimate_lipschitz([&f](const State& x) { return State{f(x)}; }, grid);
}

}  // namespace fixsettle
