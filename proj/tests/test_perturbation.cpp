#include <cmath>

#include "doctest.h"
#include "fixsettle/errors.hpp"
#include "fixsettle/perturbation.hpp"
#include "fixsettle/rng.hpp"

using namespace fixsettle;

namespace {

AttractivenessConfig gt1(double m1, double lv, double delta0, double beta, double r2) {
  AttractivenessConfig c;
  c.m1 = m1;
  c.lv = lv;
  c.delta0 = delta0;
  c.gains = {0.5, beta, 0.5, r2};
  c.branch = AttractBranch::V0GreaterThanOne;
  return c;
}

AttractivenessConfig le1(double m2, double lv, double delta0, double alpha, double r1) {
  AttractivenessConfig c;
  c.m2 = m2;
  c.lv = lv;
  c.delta0 = delta0;
  c.gains = {alpha, 0.5, r1, 2.0};
  c.branch = AttractBranch::V0AtMostOne;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(gt1(1.0, 1.0, 0.1, 0.25, 2.0).validate(), ParameterDomainError);
  CHECK_THROWS_AS(gt1(2.0, 0.0, 0.1, 0.25, 2.0).validate(), ParameterDomainError);
  CHECK_THROWS_AS(gt1(2.0, 1.0, -0.1, 0.25, 2.0).validate(), ParameterDomainError);
  CHECK_NOTHROW(gt1(2.0, 1.0, 0.0, 0.25, 2.0).validate());
  CHECK(branch_for(1.0) == AttractBranch::V0AtMostOne);
  CHECK(branch_for(1.0000001) == AttractBranch::V0GreaterThanOne);
  CHECK(branch_from_string("V0_LE_1") == AttractBranch::V0AtMostOne);
  CHECK_THROWS_AS((void)branch_from_string("sideways"), ConfigurationError);
}

TEST_CASE("attractive_level") {
  CHECK(attractive_level(gt1(2.0, 2.0, 0.1, 0.25, 2.0)) ==
        doctest::Approx(1.2649110640673517).epsilon(1e-14));
  CHECK(attractive_level(le1(2.0, 1.0, 0.08, 0.64, 0.8)) ==
        doctest::Approx(0.17677669529663688).epsilon(1e-14));
  CHECK(attractive_level(gt1(2.0, 2.0, 0.0, 0.25, 2.0)) == 0.0);
  CHECK(attractive_level(le1(2.0, 2.0, 0.0, 0.64, 0.8)) == 0.0);
}

TEST_CASE("feasibility_residual") {
  const auto c = gt1(2.0, 2.0, 0.1, 0.25, 2.0);
  const double b = attractive_level(c);
  CHECK(std::abs(feasibility_residual(c, b)) <= 1e-12 * (c.m1 * c.lv * c.delta0));
  CHECK(feasibility_residual(c, 2.0 * b) == doctest::Approx(3.0 * c.m1 * c.lv * c.delta0));
  const auto z = gt1(2.0, 2.0, 0.0, 0.25, 2.0);
  CHECK(feasibility_residual(z, 3.0) == doctest::Approx(0.25 * 9.0));
  CHECK_THROWS_AS((void)feasibility_residual(c, 0.0), DomainError);
}

TEST_CASE("feasibility residual vanishes at the attractive level for random configs") {
  SplitMix64 rng(9);
  for (int i = 0; i < 500; ++i) {
    AttractivenessConfig c;
    c.m1 = 1.0 + 1e-3 + 9.0 * rng.uniform();
    c.m2 = 1.0 + 1e-3 + 9.0 * rng.uniform();
    c.lv = 0.1 + 5.0 * rng.uniform();
    c.delta0 = 1e-4 + 0.5 * rng.uniform();
    c.gains = {0.01 + 0.98 * rng.uniform(), 0.01 + 0.98 * rng.uniform(),
               0.01 + 0.98 * rng.uniform(), 1.01 + 4.0 * rng.uniform()};
    c.branch = rng.uniform() < 0.5 ? AttractBranch::V0GreaterThanOne : AttractBranch::V0AtMostOne;
    const double scale = (c.branch == AttractBranch::V0GreaterThanOne ? c.m1 : c.m2) * c.lv * c.delta0;
    CHECK(std::abs(feasibility_residual(c, attractive_level(c))) <= 1e-12 * scale);
  }
}

TEST_CASE("decayed gain and perturbed bound") {
  const auto c = gt1(2.0, 1.0, 0.1, 0.25, 2.0);
  CHECK(decayed_gain(c) == doctest::Approx(0.125));
  CHECK(perturbed_settling_bound(c) == 57);
  const auto d = le1(2.0, 1.0, 0.1, 0.64, 0.8);
  CHECK(decayed_gain(d) == doctest::Approx(0.32));
  CHECK(perturbed_settling_bound(d) == 299);
  CHECK(std::llabs(perturbed_settling_bound(gt1(1e6, 1.0, 0.1, 0.25, 2.0)) - phase1_bound(0.25, 2.0)) <= 1);
}

TEST_CASE("verify_attractiveness") {
  const auto zero = simulate(identity_map(1), {0.0}, 5);
  const auto z = verify_attractiveness(zero, norm_candidate(), 0.0);
  CHECK(z.entry == 0);
  CHECK(z.remained);

  const auto orbit = simulate(example_system({0.8, 0.5, 0.4, 1.1}), {1500.0}, 40);
  const auto r = verify_attractiveness(orbit, norm_candidate(), 1.0);
  CHECK(r.entry == 5);
  CHECK(r.remained);

  Trajectory two_phase;
  two_phase.states = {{5.0}, {0.5}, {3.0}, {0.4}, {0.3}};
  two_phase.initial_state = {5.0};
  const auto t = verify_attractiveness(two_phase, norm_candidate(), 1.0);
  CHECK(t.entry == 3);
  CHECK_FALSE(t.remained);

  two_phase.states.push_back({2.0});
  const auto none = verify_attractiveness(two_phase, norm_candidate(), 1.0);
  CHECK_FALSE(none.entry.has_value());
  CHECK_FALSE(none.remained);
}

TEST_CASE("zero-perturbation level agrees with settling at epsilon 0") {
  const auto traj = simulate(scalar_linear_map(0.0), {3.0}, 5);
  const auto c = gt1(2.0, 1.0, 0.0, 0.25, 2.0);
  CHECK(verify_attractiveness(traj, norm_candidate(), attractive_level(c)).entry ==
        measure_settling(traj, 0.0));
}

TEST_CASE("analyze_attractiveness on a perturbed example orbit") {
  const ExampleParams p{0.8, 0.5, 0.4, 1.1};
  AttractivenessConfig c;
  c.gains = mapped_gains(p);
  c.delta0 = 0.05;
  c.branch = AttractBranch::V0GreaterThanOne;
  const auto v = norm_candidate();
  const auto traj = simulate_perturbed(example_system(p), uniform_ball_perturbation(1, 0.05, 7),
                                       {500.0}, 80);
  const auto r = analyze_attractiveness(c, &traj, &v);
  CHECK(r.B == doctest::Approx(attractive_level(c)));
  CHECK(r.K_star == perturbed_settling_bound(c));
  CHECK(r.b_target == r.B);
  REQUIRE(r.empirical_entry.has_value());
  CHECK(static_cast<long long>(*r.empirical_entry) <= r.K_star);
  CHECK(r.crossing_index.has_value());

  const auto bare = analyze_attractiveness(c);
  CHECK_FALSE(bare.empirical_entry.has_value());
}

TEST_CASE("zero-perturbation attractiveness collapses to nominal settling") {
  const ExampleParams p{0.8, 0.5, 0.4, 1.1};
  AttractivenessConfig c;
  c.gains = mapped_gains(p);
  const auto v = norm_candidate();
  const auto traj = simulate(scalar_linear_map(0.0), {4.0}, 3);
  const auto r = analyze_attractiveness(c, &traj, &v);
  CHECK(r.B == 0.0);
  CHECK(r.empirical_entry == measure_settling(traj, 0.0));
}

TEST_CASE("remark1 trade-off table") {
  const auto base = gt1(2.0, 2.0, 0.1, 0.25, 2.0);
  const auto rows = remark1_tradeoff_table(base, {1.5, 2.0, 4.0});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].B == doctest::Approx(1.0954451150103322));
  CHECK(rows[1].B == doctest::Approx(1.2649110640673517));
  CHECK(rows[2].B == doctest::Approx(1.7888543819998318));
  CHECK(rows[0].K_star == 133);
  CHECK(rows[1].K_star == 57);
  CHECK(rows[2].K_star == 24);
  CHECK(tradeoff_is_monotone(rows));

  CHECK(remark1_tradeoff_table(base, {3.0}).size() == 1);
  const auto same = remark1_tradeoff_table(base, {3.0, 3.0});
  CHECK(same[0] == same[1]);
  CHECK_THROWS_AS((void)remark1_tradeoff_table(base, {}), EmptyDomainError);
  CHECK_THROWS_AS((void)remark1_tradeoff_table(base, {0.5}), ParameterDomainError);

  const auto le = remark1_tradeoff_table(le1(2.0, 1.0, 0.05, 0.64, 0.8), {1.1, 1.5, 2.0, 8.0, 100.0});
  CHECK(tradeoff_is_monotone(le));
}

TEST_CASE("tradeoff_is_monotone detects a violation") {
  CHECK_FALSE(tradeoff_is_monotone({{1.5, 1.0, 10}, {2.0, 0.9, 9}}));
  CHECK_FALSE(tradeoff_is_monotone({{1.5, 1.0, 10}, {2.0, 1.1, 11}}));
}
