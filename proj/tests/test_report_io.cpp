#include <limits>
#include <sstream>

#include "doctest.h"
#include "fixsettle/grid.hpp"
#include "fixsettle/report_io.hpp"

using namespace fixsettle;
using nlohmann::json;

namespace {

template <class T>
T round_trip(const T& value) {
  const std::string text = dump_json(json(value));
  return json::parse(text).get<T>();
}

const ExampleParams kCase1{0.8, 0.5, 0.4, 1.1};

}  // namespace

TEST_CASE("format_double is round-trip exact") {
  for (double v : {0.1, 1.0 / 3.0, -58.369319069997253, 1e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(1500.0) == "1500");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("condition report round-trip, including positivity violations") {
  const LyapunovCandidate flat("flat", 1, [](const State& x) { return x[0] > 0.0 ? x[0] : 0.0; });
  const auto basic = check_basic_lyapunov(scalar_linear_map(0.5), flat, {{-1.0}, {1.0}});
  CHECK(round_trip(basic) == basic);

  const auto mixed = scan_conditions(example_system(kCase1), square_candidate(), norm_candidate(),
                                     mapped_gains(kCase1), log_grid(1e-2, 2e3, 200, true));
  CHECK(round_trip(mixed) == mixed);
  const json j = mixed;
  CHECK(j.at("condition_id") == "FT_MIXED");
  CHECK(j.at("holds_everywhere") == false);

  const auto clean = scan_conditions(scalar_linear_map(0.5), square_candidate(),
                                     FixedTimeGains{0.1, 0.1, 0.5, 2.0}, linear_grid(0.1, 1.0, 5));
  CHECK(round_trip(clean) == clean);
}

TEST_CASE("settling and attractiveness reports round-trip") {
  const auto traj = simulate(example_system(kCase1), {1500.0}, 40);
  const auto s = settling_report(mapped_gains(kCase1), &traj, 1.0);
  CHECK(round_trip(s) == s);
  const auto none = settling_report(mapped_gains(kCase1));
  CHECK(round_trip(none) == none);

  AttractivenessConfig c;
  c.gains = mapped_gains(kCase1);
  c.delta0 = 0.05;
  const auto v = norm_candidate();
  const auto pt = simulate_perturbed(example_system(kCase1), uniform_ball_perturbation(1, 0.05, 3),
                                     {200.0}, 60);
  const auto a = analyze_attractiveness(c, &pt, &v);
  CHECK(round_trip(a) == a);
  CHECK(json(a).contains("beta_d"));

  c.branch = AttractBranch::V0AtMostOne;
  const auto b = analyze_attractiveness(c, &pt, &v, 0.9);
  CHECK(round_trip(b) == b);
  CHECK(json(b).contains("alpha_d"));

  const auto rows = remark1_tradeoff_table(c, {1.5, 2.0});
  CHECK(json(rows).get<std::vector<TradeoffRow>>() == rows);
}

TEST_CASE("sweep and table reports round-trip") {
  SweepOptions opt;
  opt.case_id = "case1";
  opt.grid_description = "log 20 points over [2, 1000]";
  const auto sweep = sweep_example(kCase1, log_grid(2.0, 1000.0, 20), opt);
  CHECK(round_trip(sweep) == sweep);

  const auto table = table1_reproduce(default_epsilon_list());
  CHECK(round_trip(table) == table);
}

TEST_CASE("bound report carries only present keys") {
  BoundReport r;
  r.example_K_star = 19;
  const json j = r;
  CHECK(j.size() == 1);
  CHECK(round_trip(r) == r);
  r.K_star = 19;
  r.B = 0.25;
  CHECK(round_trip(r) == r);
}

TEST_CASE("trajectory CSV layout") {
  const auto traj = simulate(example_system(kCase1), {1500.0}, 2);
  std::ostringstream out;
  write_trajectory_csv(out, traj, norm_candidate());
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "k,x_1,V");
  std::getline(in, line);
  CHECK(line == "0,1500,1500");
  std::getline(in, line);
  CHECK(line.rfind("1,-58.3693190699", 0) == 0);
}

TEST_CASE("table CSV layout") {
  const auto table = table1_reproduce({1.0});
  std::ostringstream out;
  write_table1_csv(out, table);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "case,alpha_prime,beta_prime,r1_prime,r2_prime,K_star_recomputed,K_star_published,"
        "discrepancy,settle_eps=1,first_eps=1");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
}
