#include <cmath>

#include "doctest.h"
#include "fixsettle/errors.hpp"
#include "fixsettle/rng.hpp"
#include "fixsettle/settling.hpp"

using namespace fixsettle;

TEST_CASE("settling_bound spot values") {
  CHECK(settling_bound({0.64, 0.25, 0.8, 2.2}) == 19);
  CHECK(settling_bound({0.25, 0.25, 0.5, 2.0}) == 30);
  CHECK_THROWS_AS((void)settling_bound({1.0, 0.25, 0.5, 2.0}), ParameterDomainError);
}

TEST_CASE("phase bounds") {
  CHECK(phase1_bound(0.25, 2.2) == 9);
  CHECK(phase1_bound(0.25, 2.0) == 13);
  CHECK(phase1_bound(0.99, 2.0) == 1);
  CHECK(phase2_bound(0.64, 0.8) == 10);
  CHECK(phase2_bound(0.25, 0.5) == 17);
  CHECK(phase2_bound(0.5, 0.5) == 5);
  CHECK_THROWS_AS((void)phase1_bound(0.5, 1.0), ParameterDomainError);
  CHECK_THROWS_AS((void)phase2_bound(0.5, 1.0), ParameterDomainError);
}

TEST_CASE("guarded_floor") {
  CHECK(guarded_floor(16.0 - 1e-12) == 16);
  CHECK(guarded_floor(15.999) == 15);
  CHECK(guarded_floor(16.0 - 1e-12, 0.0) == 15);
  CHECK_THROWS((void)guarded_floor(std::nan("")));
}

TEST_CASE("example_bound reproduces the published table") {
  CHECK(example_bound({0.8, 0.5, 0.4, 1.1}) == 19);
  CHECK(example_bound({0.5, 0.2, 0.3, 1.2}) == 258);
  CHECK(example_bound({0.1, 0.1, 0.05, 1.4}) == 1359);
  CHECK(example_bound({0.2, 0.05, 0.2, 1.5}) == 7815);
}

TEST_CASE("bound composition and example mapping on random parameters") {
  SplitMix64 rng(2024);
  for (int i = 0; i < 2000; ++i) {
    // Boxes keep every bound below ~1e7, where the two evaluation orders agree.
    const FixedTimeGains g{0.1 + 0.85 * rng.uniform(), 0.1 + 0.85 * rng.uniform(),
                           0.05 + 0.8 * rng.uniform(), 1.2 + 3.0 * rng.uniform()};
    CHECK(settling_bound(g) == phase1_bound(g.beta, g.r2) + phase2_bound(g.alpha, g.r1));
    const ExampleParams p{0.1 + 0.85 * rng.uniform(), 0.05 + 0.9 * rng.uniform(),
                          0.02 + 0.33 * rng.uniform(), 1.05 + 1.5 * rng.uniform()};
    CHECK(example_bound(p) == settling_bound(mapped_gains(p)));
  }
}

TEST_CASE("settling_bound is nonincreasing in alpha") {
  long long prev = settling_bound({0.05, 0.3, 0.6, 1.8});
  for (int i = 2; i < 20; ++i) {
    const long long next = settling_bound({0.05 * i, 0.3, 0.6, 1.8});
    CHECK(next <= prev);
    prev = next;
  }
}

TEST_CASE("entry_and_stay vs first_entry") {
  const std::vector<double> v{5.0, 0.5, 2.0, 0.5, 0.2};
  CHECK(entry_and_stay(v, 1.0) == 3);
  CHECK(first_entry(v, 1.0) == 1);
  CHECK_FALSE(entry_and_stay(v, 0.1).has_value());
  CHECK(entry_and_stay({0.0, 0.0}, 0.0) == 0);
}

TEST_CASE("measure_settling on the case 1 orbit") {
  const auto traj = simulate(example_system({0.8, 0.5, 0.4, 1.1}), {1500.0}, 60);
  CHECK(measure_settling(traj, 1.0) == 5);
  CHECK_FALSE(measure_settling(traj, 1e-6).has_value());
  const auto zero = simulate(identity_map(1), {0.0}, 4);
  CHECK(measure_settling(zero, 0.0) == 0);
}

TEST_CASE("measure_settling is monotone in epsilon") {
  const auto traj = simulate(example_system({0.2, 0.05, 0.2, 1.5}), {1500.0}, 80);
  std::optional<std::size_t> prev;
  for (double eps : {0.05, 0.1, 0.2, 0.25, 0.5, 1.0, 2.0, 10.0, 100.0, 1e4}) {
    const auto k = measure_settling(traj, eps);
    if (prev && k) CHECK(*k <= *prev);
    if (prev) CHECK(k.has_value());
    if (k) prev = k;
  }
}

TEST_CASE("settling_report") {
  const FixedTimeGains g{0.64, 0.25, 0.8, 2.2};
  const auto traj = simulate(example_system({0.8, 0.5, 0.4, 1.1}), {1500.0}, 40);
  const auto r = settling_report(g, &traj, 1.0);
  CHECK(r.bound_K_star == r.bound_K1 + r.bound_K2_gap);
  CHECK(r.empirical_settling == 5);
  CHECK(r.satisfied);
  const auto no_traj = settling_report(g);
  CHECK_FALSE(no_traj.empirical_settling.has_value());
  CHECK_FALSE(no_traj.satisfied);
}

TEST_CASE("q_sequence near r2 = 1 where the window edges overflow") {
  const double beta = 0.2925004724490966;
  const double r2 = 1.000636086005795;
  std::vector<double> v{398.82187570433661};
  v.push_back(v[0] - beta * std::pow(v[0], r2));
  const auto q = q_sequence(v, beta, r2);
  CHECK(std::isinf(q.upper));
  CHECK(q.within_bounds());
}

TEST_CASE("q_sequence") {
  const auto q = q_sequence({2.0}, 0.25, 2.0);
  REQUIRE(q.q.size() == 1);
  CHECK(q.q[0] == doctest::Approx(8.0));
  CHECK(q.lower == doctest::Approx(4.0));
  CHECK(q.upper == doctest::Approx(16.0));
  CHECK(q.within_bounds());

  for (double target : {4.5, 7.0, 15.5}) {
    const auto r = q_sequence({0.25 * target}, 0.25, 2.0);
    if (0.25 * target > 1.0) CHECK(r.q[0] == doctest::Approx(target).epsilon(1e-15));
  }

  try {
    (void)q_sequence({3.0, 2.9, 0.5}, 0.25, 2.0);
    FAIL("expected precondition error");
  } catch (const LemmaPreconditionError& e) {
    CHECK(e.index() == 1);
  }
  try {
    (void)q_sequence({3.0, 0.9}, 0.1, 2.0);
    FAIL("expected precondition error");
  } catch (const LemmaPreconditionError& e) {
    CHECK(e.index() == 1);
  }
}

TEST_CASE("q_sequence of tight decrements stays in its window") {
  SplitMix64 rng(77);
  for (int i = 0; i < 300; ++i) {
    const double beta = 0.05 + 0.93 * rng.uniform();
    const double r2 = 1.1 + 3.9 * rng.uniform();
    const double cap = std::min(std::pow(beta, 1.0 / (1.0 - r2)), 1e3);
    std::vector<double> v{1.0 + (cap - 1.0) * (0.001 + 0.998 * rng.uniform())};
    while (true) {
      const double next = v.back() - beta * std::pow(v.back(), r2);
      if (!(next > 1.0)) break;
      v.push_back(next);
    }
    const auto q = q_sequence(v, beta, r2);
    CHECK(q.within_bounds());
    CHECK(v.size() <= static_cast<std::size_t>(phase1_bound(beta, r2)));
  }
}

TEST_CASE("s_sequence") {
  const auto one = s_sequence(1.0, 0.3, 10);
  CHECK(one.s == std::vector<double>{1.0, 0.0});
  CHECK(one.clamps.empty());

  const auto neg = s_sequence(0.25, 0.5, 10);
  CHECK(neg.s == std::vector<double>{0.25, 0.0});
  REQUIRE(neg.clamps.size() == 1);
  CHECK(neg.clamps[0].index == 1);
  CHECK(neg.clamps[0].raw == doctest::Approx(-0.25));

  const auto near = s_sequence(0.9999, 0.9, 10);
  for (double s : near.s) CHECK(s >= 0.0);
  for (std::size_t i = 1; i < near.s.size(); ++i) CHECK(near.s[i] <= near.s[i - 1]);

  CHECK_THROWS_AS((void)s_sequence(0.0, 0.5, 3), DomainError);
  CHECK_THROWS_AS((void)s_sequence(1.5, 0.5, 3), DomainError);
}
