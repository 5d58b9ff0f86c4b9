#include <cmath>

#include "doctest.h"
#include "fixsettle/errors.hpp"
#include "fixsettle/grid.hpp"
#include "fixsettle/systems.hpp"

using namespace fixsettle;

namespace {
const ExampleParams kCase1{0.8, 0.5, 0.4, 1.1};
}

TEST_CASE("example_step spot values") {
  CHECK(example_step(0.0, kCase1) == 0.0);
  CHECK(example_step(2.0, kCase1) == doctest::Approx(0.92822653746370684).epsilon(1e-14));
  CHECK(example_step(-2.0, kCase1) == doctest::Approx(-0.92822653746370684).epsilon(1e-14));
  CHECK(example_step(2.0, 0.8, 0.5, 0.4, 1.1) == example_step(2.0, kCase1));
}

TEST_CASE("example_step rejects parameters outside the admissible ranges") {
  CHECK_THROWS_AS((void)example_step(1.0, 1.0, 0.5, 0.4, 1.1), ParameterDomainError);
  CHECK_THROWS_AS((void)example_step(1.0, 0.8, 0.0, 0.4, 1.1), ParameterDomainError);
  CHECK_THROWS_AS((void)example_step(1.0, 0.8, 0.5, 0.5, 1.1), ParameterDomainError);
  CHECK_THROWS_AS((void)example_step(1.0, 0.8, 0.5, 0.4, 1.0), ParameterDomainError);
}

TEST_CASE("example_step is odd") {
  for (const auto& c : table1_cases()) {
    for (double x : log_spaced(1e-4, 1e5, 200)) {
      CHECK(example_step(-x, c.params) == -example_step(x, c.params));
    }
  }
}

TEST_CASE("branch switches exactly once at the crossover") {
  const double star = example_crossover(kCase1);
  CHECK(star == doctest::Approx(1.9570412298280909).epsilon(1e-12));
  int switches = 0;
  ExampleBranch prev = example_branch(star / 10.0, kCase1);
  CHECK(prev == ExampleBranch::Alpha);
  for (double x : log_spaced(star / 10.0, star * 10.0, 1001)) {
    const ExampleBranch b = example_branch(x, kCase1);
    if (b != prev) ++switches;
    prev = b;
  }
  CHECK(switches == 1);
  CHECK(prev == ExampleBranch::Beta);
}

TEST_CASE("simulate: origin is a fixed point") {
  for (const auto& c : table1_cases()) {
    const auto t = simulate(example_system(c.params), {0.0}, 10);
    REQUIRE(t.size() == 11);
    for (const auto& s : t.states) CHECK(s[0] == 0.0);
  }
}

TEST_CASE("simulate: case 1 orbit prefix from 1500") {
  const auto t = simulate(example_system(kCase1), {1500.0}, 8);
  const double expected[] = {1500.0,
                             -58.369319069997253,
                             -14.539155244395497,
                             -5.0382913731168586,
                             -2.0769967899261729,
                             -0.9597492368088707,
                             -0.172788441708415,
                             0.22357707297894598,
                             -0.21582377778162888};
  REQUIRE(t.size() == 9);
  CHECK(t.truncated);
  CHECK(t.initial_state == State{1500.0});
  for (std::size_t k = 0; k < 9; ++k) {
    CHECK(t.states[k][0] == doctest::Approx(expected[k]).epsilon(1e-11));
  }
}

TEST_CASE("simulate: geometric orbit and early stop") {
  const auto half = scalar_linear_map(0.5);
  const auto t = simulate(half, {8.0}, 3);
  CHECK(t.states == std::vector<State>{{8.0}, {4.0}, {2.0}, {1.0}});

  const auto stopped = simulate(half, {8.0}, 10, 2.0);
  CHECK(stopped.size() == 3);
  CHECK_FALSE(stopped.truncated);
  REQUIRE(stopped.stop_index.has_value());
  CHECK(*stopped.stop_index == 2);

  const auto at_zero = simulate(half, {0.0}, 5, 0.0);
  CHECK(at_zero.size() == 1);
}

TEST_CASE("simulate: divergence carries last finite index") {
  const auto doubling = scalar_linear_map(1e200);
  try {
    (void)simulate(doubling, {1e200}, 10);
    FAIL("expected divergence");
  } catch (const SimulationDivergedError& e) {
    CHECK(e.last_finite_index() == 0);
  }
}

TEST_CASE("simulate: rejects bad input") {
  CHECK_THROWS_AS((void)simulate(scalar_linear_map(0.5), {1.0, 2.0}, 3), DomainError);
  CHECK_THROWS((void)simulate(scalar_linear_map(0.5), {1.0}, 0));
}

TEST_CASE("simulate is bit-reproducible") {
  const auto sys = example_system(table1_cases()[3].params);
  CHECK(simulate(sys, {1500.0}, 100) == simulate(sys, {1500.0}, 100));
}

TEST_CASE("simulate_perturbed with zero perturbation equals simulate") {
  const auto sys = example_system(kCase1);
  const auto a = simulate_perturbed(sys, zero_perturbation(1), {1500.0}, 30);
  const auto b = simulate(sys, {1500.0}, 30);
  CHECK(a.states == b.states);
}

TEST_CASE("simulate_perturbed: constant injection accumulates on the identity map") {
  const auto t = simulate_perturbed(identity_map(1), constant_perturbation({0.04}, 0.05), {0.0}, 3);
  REQUIRE(t.size() == 4);
  CHECK(t.states[1][0] == doctest::Approx(0.04));
  CHECK(t.states[2][0] == doctest::Approx(0.08));
  CHECK(t.states[3][0] == doctest::Approx(0.12));
}

TEST_CASE("simulate_perturbed: seeded injections stay inside the ball and reproduce") {
  const auto sys = example_system(kCase1);
  const auto pert = uniform_ball_perturbation(1, 0.05, 7);
  const auto t = simulate_perturbed(sys, pert, {1500.0}, 50);
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double g = std::abs(t.states[k + 1][0] - sys(t.states[k])[0]);
    CHECK(g < 0.05);
  }
  CHECK(t == simulate_perturbed(sys, pert, {1500.0}, 50));
  const auto other = simulate_perturbed(sys, uniform_ball_perturbation(1, 0.05, 8), {1500.0}, 50);
  CHECK_FALSE(other.states == t.states);
}

TEST_CASE("perturbation norm bound is enforced") {
  CHECK_THROWS_AS((void)constant_perturbation({0.05}, 0.05).sample(0, {0.0}), SpecViolationError);
  CHECK_THROWS_AS((void)constant_perturbation({0.01}, 0.0).sample(0, {0.0}), SpecViolationError);
  CHECK(zero_perturbation(2).sample(3, {1.0, 1.0}) == State{0.0, 0.0});

  const auto radial = radial_perturbation(2, 0.1);
  const State g = radial.sample(0, {3.0, 4.0});
  CHECK(euclidean_norm(g) < 0.1);
  CHECK(g[0] / g[1] == doctest::Approx(0.75));
  CHECK(g[0] > 0.0);
}

TEST_CASE("uniform ball samples depend only on (seed, k)") {
  const auto p = uniform_ball_perturbation(3, 1.0, 11);
  CHECK(p.sample(5, {0.0, 0.0, 0.0}) == p.sample(5, {9.0, 9.0, 9.0}));
  CHECK_FALSE(p.sample(5, {0.0, 0.0, 0.0}) == p.sample(6, {0.0, 0.0, 0.0}));
}

TEST_CASE("generic maps") {
  const auto a = affine_map({{0.0, 1.0}, {-1.0, 0.0}}, {1.0, 2.0});
  CHECK(a({1.0, 0.0}) == State{1.0, 1.0});
  CHECK(linear_map({{2.0}})({3.0}) == State{6.0});
  CHECK_THROWS_AS((void)linear_map({{1.0, 2.0}}), ConfigurationError);
}

TEST_CASE("example system records its parameters") {
  const auto sys = example_system(kCase1);
  CHECK(sys.dimension == 1);
  CHECK(sys.params.at("alpha_prime") == 0.8);
  CHECK(sys.params.at("r2_prime") == 1.1);
}

TEST_CASE("grids") {
  const auto g = log_grid(1e-3, 1e4, 8, true);
  REQUIRE(g.size() == 16);
  CHECK(g.front()[0] == doctest::Approx(-1e4));
  CHECK(g.back()[0] == doctest::Approx(1e4));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i - 1][0] < g[i][0]);
  CHECK(linear_grid(0.0, 1.0, 3) == std::vector<State>{{0.0}, {0.5}, {1.0}});
}
