#include "fixsettle/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "fixsettle/errors.hpp"
#include "fixsettle/rng.hpp"

namespace fixsettle {

namespace {

bool within_guard(const State& x) {
  return std::all_of(x.begin(), x.end(),
                     [](double v) { return std::isfinite(v) && std::abs(v) <= kDivergenceGuard; });
}

void require_dimension(const SystemMap& system, const State& x, const char* what) {
  if (x.size() != system.dimension) {
    std::ostringstream msg;
    msg << what << ": state has length " << x.size() << " but system '" << system.name
        << "' has dimension " << system.dimension;
    throw DomainError(msg.str());
  }
}

void require_start(const SystemMap& system, const State& x0, std::size_t k_max) {
  require_dimension(system, x0, "initial state");
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  if (!within_guard(x0)) throw SimulationDivergedError("initial state is not finite", 0);
}

[[noreturn]] void diverged(const SystemMap& system, std::size_t k) {
  std::ostringstream msg;
  msg << "simulation of '" << system.name << "' diverged after step " << k;
  throw SimulationDivergedError(msg.str(), k);
}

}  // namespace

double euclidean_norm(const State& x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc);
}

bool is_origin(const State& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
}

State zero_state(std::size_t dimension) { return State(dimension, 0.0); }

State SystemMap::operator()(const State& x) const {
  require_dimension(*this, x, "step input");
  State next = step(x);
  if (next.size() != dimension) {
    std::ostringstream msg;
    msg << "system '" << name << "' returned a state of length " << next.size()
        << ", expected " << dimension;
    throw DomainError(msg.str());
  }
  return next;
}

State PerturbationSpec::sample(std::size_t k, const State& x) const {
  if (!std::isfinite(delta0) || delta0 < 0.0) {
    throw ParameterDomainError("perturbation bound delta0 must be finite and nonnegative");
  }
  if (!generator) throw ConfigurationError("perturbation has no generator");
  State g = generator(k, x);
  if (g.size() != x.size()) {
    throw SpecViolationError("perturbation dimension does not match the state");
  }
  const double norm = euclidean_norm(g);
  const bool ok = delta0 == 0.0 ? norm == 0.0 : norm < delta0;
  if (!ok) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "perturbation at step " << k << " has norm " << norm << " >= delta0 = " << delta0;
    throw SpecViolationError(msg.str());
  }
  return g;
}

PerturbationSpec zero_perturbation(std::size_t dimension) {
  return {0.0, [dimension](std::size_t, const State&) { return zero_state(dimension); }, 0,
          "zero"};
}

PerturbationSpec constant_perturbation(State value, double delta0) {
  return {delta0, [value = std::move(value)](std::size_t, const State&) { return value; }, 0,
          "constant"};
}

PerturbationSpec uniform_ball_perturbation(std::size_t dimension, double delta0,
                                           std::uint64_t seed) {
  auto gen = [dimension, delta0, seed](std::size_t k, const State&) {
    State g(dimension, 0.0);
    if (delta0 == 0.0) return g;
    SplitMix64 rng(seed, k);
    // Gaussian direction via Box-Muller; written out so samples do not
    // depend on the standard library's distribution implementation.
    double norm = 0.0;
    while (norm == 0.0) {
      for (std::size_t i = 0; i < dimension; i += 2) {
        const double u1 = 1.0 - rng.uniform();
        const double u2 = rng.uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        g[i] = rad * std::cos(2.0 * std::numbers::pi * u2);
        if (i + 1 < dimension) g[i + 1] = rad * std::sin(2.0 * std::numbers::pi * u2);
      }
      norm = euclidean_norm(g);
    }
    const double radius =
        delta0 * std::pow(rng.uniform(), 1.0 / static_cast<double>(dimension));
    for (double& v : g) v *= radius / norm;
    const double achieved = euclidean_norm(g);
    if (achieved >= delta0) {
      for (double& v : g) v *= (delta0 / achieved) * (1.0 - 1e-12);
    }
    return g;
  };
  return {delta0, gen, seed, "uniform_ball"};
}

PerturbationSpec radial_perturbation(std::size_t dimension, double delta0) {
  auto gen = [dimension, delta0](std::size_t, const State& x) {
    State g(dimension, 0.0);
    if (delta0 == 0.0) return g;
    const double magnitude = delta0 * (1.0 - 1e-12);
    const double norm = euclidean_norm(x);
    if (norm == 0.0) {
      g[0] = magnitude;
      return g;
    }
    for (std::size_t i = 0; i < dimension; ++i) g[i] = magnitude * x[i] / norm;
    return g;
  };
  return {delta0, gen, 0, "radial"};
}

Trajectory simulate(const SystemMap& system, const State& x0, std::size_t k_max,
                    std::optional<double> stop_epsilon) {
  require_start(system, x0, k_max);
  if (stop_epsilon && !(*stop_epsilon >= 0.0)) {
    throw DomainError("stop_epsilon must be nonnegative");
  }
  Trajectory traj;
  traj.initial_state = x0;
  traj.states.reserve(k_max + 1);
  traj.states.push_back(x0);
  auto should_stop = [&](const State& x) {
    return stop_epsilon && euclidean_norm(x) <= *stop_epsilon;
  };
  if (should_stop(x0)) {
    traj.stop_index = 0;
    return traj;
  }
  for (std::size_t k = 1; k <= k_max; ++k) {
    State next = system(traj.states.back());
    if (!within_guard(next)) diverged(system, k - 1);
    traj.states.push_back(std::move(next));
    if (should_stop(traj.states.back())) {
      traj.stop_index = k;
      return traj;
    }
  }
  traj.truncated = true;
  return traj;
}

Trajectory simulate_perturbed(const SystemMap& system, const PerturbationSpec& pert,
                              const State& x0, std::size_t k_max) {
  require_start(system, x0, k_max);
  Trajectory traj;
  traj.initial_state = x0;
  traj.states.reserve(k_max + 1);
  traj.states.push_back(x0);
  for (std::size_t k = 0; k < k_max; ++k) {
    const State& current = traj.states.back();
    State next = system(current);
    const State g = pert.sample(k, current);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += g[i];
    if (!within_guard(next)) diverged(system, k);
    traj.states.push_back(std::move(next));
  }
  traj.truncated = true;
  return traj;
}

// ---------------------------------------------------------------------------

void ExampleParams::validate() const {
  auto open_unit = [](double v) { return v > 0.0 && v < 1.0; };
  std::ostringstream msg;
  if (!open_unit(alpha)) msg << "alpha' = " << alpha << " must lie in (0, 1); ";
  if (!open_unit(beta)) msg << "beta' = " << beta << " must lie in (0, 1); ";
  if (!(r1 > 0.0 && r1 < 0.5)) msg << "r1' = " << r1 << " must lie in (0, 0.5); ";
  if (!(r2 > 1.0 && std::isfinite(r2))) msg << "r2' = " << r2 << " must exceed 1; ";
  std::string text = msg.str();
  if (text.size() >= 2) text.resize(text.size() - 2);
  if (!text.empty()) throw ParameterDomainError("example parameters: " + text);
}

double example_step(double x, const ExampleParams& p) {
  p.validate();
  if (x == 0.0) return 0.0;
  const double m = std::abs(x);
  const double shrink = std::max(p.alpha * std::pow(m, p.r1), p.beta * std::pow(m, p.r2));
  return x > 0.0 ? x - shrink : x + shrink;
}

double example_step(double x, double aprime, double bprime, double r1prime, double r2prime) {
  return example_step(x, ExampleParams{aprime, bprime, r1prime, r2prime});
}

ExampleBranch example_branch(double x, const ExampleParams& p) {
  const double m = std::abs(x);
  return p.beta * std::pow(m, p.r2) >= p.alpha * std::pow(m, p.r1) ? ExampleBranch::Beta
                                                                   : ExampleBranch::Alpha;
}

double example_crossover(const ExampleParams& p) {
  p.validate();
  return std::pow(p.alpha / p.beta, 1.0 / (p.r2 - p.r1));
}

SystemMap example_system(const ExampleParams& p) {
  p.validate();
  SystemMap sys;
  sys.name = "example";
  sys.dimension = 1;
  sys.step = [p](const State& x) { return State{example_step(x[0], p)}; };
  sys.params = {{"alpha_prime", p.alpha}, {"beta_prime", p.beta}, {"r1_prime", p.r1},
                {"r2_prime", p.r2}};
  return sys;
}

const std::array<Table1Case, 4>& table1_cases() {
  static const std::array<Table1Case, 4> cases{{
      {1, {0.8, 0.5, 0.4, 1.1}, 19},
      {2, {0.5, 0.2, 0.3, 1.2}, 258},
      {3, {0.1, 0.1, 0.05, 1.4}, 1359},
      {4, {0.2, 0.05, 0.2, 1.5}, 7814},
  }};
  return cases;
}

SystemMap affine_map(Matrix a, State offset) {
  const std::size_t n = offset.size();
  if (n == 0) throw ConfigurationError("affine map needs a nonzero dimension");
  if (a.size() != n ||
      std::any_of(a.begin(), a.end(), [n](const State& row) { return row.size() != n; })) {
    throw ConfigurationError("affine map matrix must be square and match the offset length");
  }
  SystemMap sys;
  sys.name = "affine";
  sys.dimension = n;
  sys.step = [a = std::move(a), offset = std::move(offset)](const State& x) {
    State y = offset;
    for (std::size_t i = 0; i < y.size(); ++i) {
      for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    }
    return y;
  };
  return sys;
}

SystemMap linear_map(Matrix a) {
  const std::size_t n = a.size();
  SystemMap sys = affine_map(std::move(a), zero_state(n));
  sys.name = "linear";
  return sys;
}

SystemMap scalar_linear_map(double gain) {
  SystemMap sys = linear_map(Matrix{{gain}});
  sys.params = {{"gain", gain}};
  return sys;
}

SystemMap identity_map(std::size_t dimension) {
  SystemMap sys;
  sys.name = "identity";
  sys.dimension = dimension;
  sys.step = [](const State& x) { return x; };
  return sys;
}

}  // namespace fixsettle
