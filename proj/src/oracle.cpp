#include "fixsettle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fixsettle/errors.hpp"
#include "fixsettle/parallel.hpp"
#include "fixsettle/rng.hpp"

namespace fixsettle {

const std::vector<double>& default_epsilon_list() {
  static const std::vector<double> eps{10.0, 1.0, 0.5, 0.25, 0.1};
  return eps;
}

std::vector<EpsilonRow> settling_vs_epsilon(const Trajectory& traj,
                                            const std::vector<double>& epsilons) {
  std::vector<EpsilonRow> rows;
  rows.reserve(epsilons.size());
  for (double eps : epsilons) {
    rows.push_back({eps, measure_settling(traj, eps), measure_first_entry(traj, eps)});
  }
  return rows;
}

SweepResult sweep_settling(const SystemMap& system, const std::vector<State>& x0_grid,
                           long long bound, const SweepOptions& options) {
  if (x0_grid.empty()) throw EmptyDomainError("settling sweep needs a nonempty grid");
  const auto settling = parallel_map(x0_grid.size(), [&](std::size_t i) {
    try {
      return measure_settling(simulate(system, x0_grid[i], options.k_max), options.epsilon);
    } catch (const SimulationDivergedError& e) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "sweep '" << options.case_id << "': orbit from x0 = [";
      for (std::size_t j = 0; j < x0_grid[i].size(); ++j) {
        msg << (j ? ", " : "") << x0_grid[i][j];
      }
      msg << "] diverged after step " << e.last_finite_index();
      throw SimulationDivergedError(msg.str(), e.last_finite_index());
    }
  });

  SweepResult r;
  r.case_id = options.case_id;
  r.grid_description = options.grid_description;
  r.grid_size = x0_grid.size();
  r.epsilon = options.epsilon;
  r.k_max = options.k_max;
  r.bound = bound;
  r.all_within_bound = true;
  std::size_t worst = 0;
  for (const auto& s : settling) {
    if (!s) {
      ++r.unsettled;
      r.all_within_bound = false;
      continue;
    }
    worst = std::max(worst, *s);
    if (static_cast<long long>(*s) > bound) r.all_within_bound = false;
  }
  if (r.unsettled == 0) r.worst_settling = worst;
  r.reference_x0 = options.reference_x0.value_or(x0_grid.front());
  r.settling_vs_epsilon =
      settling_vs_epsilon(simulate(system, r.reference_x0, options.k_max), options.epsilon_list);
  return r;
}

SweepResult sweep_example(const ExampleParams& params, const std::vector<State>& x0_grid,
                          const SweepOptions& options) {
  return sweep_settling(example_system(params), x0_grid, example_bound(params), options);
}

Table1Result table1_reproduce(const std::vector<double>& epsilon_list, std::size_t k_max) {
  Table1Result result;
  result.k_max = k_max;
  for (const auto& c : table1_cases()) {
    Table1Row row;
    row.case_id = c.id;
    row.params = c.params;
    row.K_star_recomputed = example_bound(c.params);
    row.K_star_published = c.printed_K_star;
    row.discrepancy = row.K_star_recomputed != row.K_star_published;
    if (row.discrepancy) {
      std::ostringstream note;
      note << "recomputed bound " << row.K_star_recomputed << " differs from published "
           << row.K_star_published << " by " << row.K_star_recomputed - row.K_star_published;
      row.note = note.str();
    }
    const auto traj = simulate(example_system(c.params), State{row.x0}, k_max);
    row.settling = settling_vs_epsilon(traj, epsilon_list);
    result.rows.push_back(std::move(row));
  }
  return result;
}

LemmaOutcome classify_lemma1_input(const std::vector<double>& v_values, double beta, double r2) {
  try {
    return q_sequence(v_values, beta, r2).within_bounds() ? LemmaOutcome::Pass
                                                          : LemmaOutcome::Fail;
  } catch (const LemmaPreconditionError&) {
    return LemmaOutcome::InvalidInput;
  } catch (const EmptyDomainError&) {
    return LemmaOutcome::InvalidInput;
  }
}

std::vector<double> lemma1_sequence(double v0, double beta, double r2,
                                    const std::vector<double>& shrink) {
  std::vector<double> seq;
  double v = v0;
  std::size_t k = 0;
  while (v > 1.0) {
    seq.push_back(v);
    const double factor = k < shrink.size() ? shrink[k] : 1.0;
    v = (v - beta * std::pow(v, r2)) * factor;
    ++k;
  }
  return seq;
}

Lemma1Summary lemma1_randomized_trial(std::size_t n_trials, std::uint64_t seed) {
  if (n_trials < 1) throw DomainError("Lemma-1 trial needs n_trials >= 1");

  struct TrialOutcome {
    std::size_t sequences = 0;
    std::size_t q_values = 0;
    std::size_t failures = 0;
    std::size_t invalid = 0;
    bool overrun = false;
    std::string detail;
  };

  const auto outcomes = parallel_map(n_trials, [seed](std::size_t t) {
    SplitMix64 rng(seed, t);
    const double beta = 0.01 + 0.98 * rng.uniform();
    const double r2 = 1.0 + 4.0 * (1.0 - rng.uniform());  // (1, 5]
    // A nonnegative V needs V - beta V^r2 >= 0, i.e. V0 below beta^(1/(1-r2)).
    // The cap keeps sequence lengths desk-sized.
    const double ceiling = std::min(std::pow(beta, 1.0 / (1.0 - r2)), 1e3);
    const double v0 = 1.0 + (ceiling - 1.0) * (1.0 - rng.uniform());

    TrialOutcome out;
    auto check = [&](const std::vector<double>& seq, const char* label) {
      ++out.sequences;
      out.q_values += seq.size();
      switch (classify_lemma1_input(seq, beta, r2)) {
        case LemmaOutcome::Pass: break;
        case LemmaOutcome::InvalidInput: ++out.invalid; break;
        case LemmaOutcome::Fail: {
          ++out.failures;
          std::ostringstream msg;
          msg.precision(17);
          msg << "trial " << t << " (" << label << "): V0=" << v0 << " beta=" << beta
              << " r2=" << r2;
          out.detail = msg.str();
          break;
        }
      }
    };

    const auto tight = lemma1_sequence(v0, beta, r2);
    if (!tight.empty()) check(tight, "tight");
    // Length n respects floor(a) + 1 iff n - 1 <= a. Comparing in double keeps
    // draws with r2 near 1, whose bound overflows an integer, in the trial.
    const double arg = (std::pow(beta, 1.0 / (1.0 - r2)) - 1.0) / beta;
    if (static_cast<double>(tight.size()) - 1.0 > arg + kDefaultFloorGuard) out.overrun = true;

    std::vector<double> shrink(tight.size() + 1);
    for (double& s : shrink) s = 1.0 - 0.5 * rng.uniform();
    const auto strengthened = lemma1_sequence(v0, beta, r2, shrink);
    if (!strengthened.empty()) check(strengthened, "strengthened");
    return out;
  });

  Lemma1Summary summary;
  summary.trials = n_trials;
  for (const auto& o : outcomes) {
    summary.sequences += o.sequences;
    summary.q_values += o.q_values;
    summary.failures += o.failures;
    summary.invalid_inputs += o.invalid;
    if (o.overrun) ++summary.phase1_overruns;
    if (!o.detail.empty() && summary.failure_details.size() < 10) {
      summary.failure_details.push_back(o.detail);
    }
  }
  return summary;
}

ContainmentResult perturbed_containment(const ContainmentSetup& setup) {
  setup.params.validate();
  if (setup.delta0_values.empty() || setup.x0_values.empty() || setup.seeds.empty()) {
    throw EmptyDomainError("containment ensemble needs delta0 values, x0 values and seeds");
  }
  const SystemMap system = example_system(setup.params);
  const LyapunovCandidate v = norm_candidate(1);
  const FixedTimeGains gains = mapped_gains(setup.params);

  const std::size_t n_x0 = setup.x0_values.size();
  const std::size_t n_seed = setup.seeds.size();
  const std::size_t total = setup.delta0_values.size() * n_x0 * n_seed;

  // Index order is (delta0, x0, seed), so aggregation is ordered by seed last.
  const auto runs = parallel_map(total, [&](std::size_t idx) {
    ContainmentRun run;
    run.delta0 = setup.delta0_values[idx / (n_x0 * n_seed)];
    run.x0 = setup.x0_values[(idx / n_seed) % n_x0];
    run.seed = setup.seeds[idx % n_seed];

    AttractivenessConfig cfg;
    cfg.m1 = setup.m;
    cfg.m2 = setup.m;
    cfg.lv = *v.lipschitz();
    cfg.delta0 = run.delta0;
    cfg.gains = gains;
    cfg.branch = branch_for(v(State{run.x0}));
    run.branch = cfg.branch;
    run.B = attractive_level(cfg);
    run.K_star = perturbed_settling_bound(cfg);

    const auto pert = uniform_ball_perturbation(1, run.delta0, run.seed);
    Trajectory orbit = simulate_perturbed(system, pert, State{run.x0}, setup.k_max);
    run.entry = verify_attractiveness(orbit, v, run.B * (1.0 + setup.margin)).entry;
    run.within = run.entry && static_cast<long long>(*run.entry) <= run.K_star + setup.slack;
    if (!run.within) run.orbit = std::move(orbit);
    return run;
  });

  ContainmentResult result;
  result.runs = runs.size();
  result.min_K_star = runs.front().K_star;
  std::size_t worst = 0;
  bool all_entered = true;
  for (const auto& run : runs) {
    result.min_K_star = std::min(result.min_K_star, run.K_star);
    if (run.entry) {
      worst = std::max(worst, *run.entry);
    } else {
      all_entered = false;
    }
    if (!run.within) result.failures.push_back(run);
  }
  if (all_entered) result.worst_entry = worst;
  return result;
}

}  // namespace fixsettle
