#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixsettle/systems.hpp"

namespace fixsettle {

/// Default absolute tolerance applied to condition residuals.
inline constexpr double kDefaultTolerance = 1e-12;

/// Decrement gains (alpha, beta, r1, r2) of the fixed-time condition
///   V(F(x)) - V(x) <= -max{alpha V(x)^r1, beta V(x)^r2}.
struct FixedTimeGains {
  double alpha = 0.0;
  double beta = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;

  /// Throws ParameterDomainError unless 0<alpha<1, 0<beta<1, 0<r1<1, r2>1.
  void validate() const;
  [[nodiscard]] bool admissible() const noexcept;

  friend bool operator==(const FixedTimeGains&, const FixedTimeGains&) = default;
};

/// Gains the example map certifies with V = |x|: (a'^2, b'^2, 2 r1', 2 r2').
[[nodiscard]] FixedTimeGains mapped_gains(const ExampleParams& p);

/// Scalar state function V with V(0) = 0, optionally Lipschitz with constant L_V.
class LyapunovCandidate {
 public:
  using Fn = std::function<double(const State&)>;

  /// Evaluates `fn` at the origin of R^dimension and throws ConfigurationError
  /// unless the value is exactly 0.
  LyapunovCandidate(std::string name, std::size_t dimension, Fn fn,
                    std::optional<double> lipschitz = std::nullopt);

  [[nodiscard]] double operator()(const State& x) const { return fn_(x); }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] std::optional<double> lipschitz() const noexcept { return lipschitz_; }

  [[nodiscard]] LyapunovCandidate with_lipschitz(double lv) const;

 private:
  std::string name_;
  std::size_t dimension_;
  Fn fn_;
  std::optional<double> lipschitz_;
};

/// V(x) = ||x||, Lipschitz with L_V = 1.
[[nodiscard]] LyapunovCandidate norm_candidate(std::size_t dimension = 1);
/// V(x) = ||x||^2 (not globally Lipschitz, so no L_V).
[[nodiscard]] LyapunovCandidate square_candidate(std::size_t dimension = 1);
/// V(x) = sum_i c_i ||x||^i. coeffs[0] must be 0.
[[nodiscard]] LyapunovCandidate polynomial_candidate(std::size_t dimension,
                                                     std::vector<double> coeffs);
/// V(x) = x^T P x.
[[nodiscard]] LyapunovCandidate quadratic_form_candidate(Matrix p);

enum class ConditionId { LyapBasic, FtDecrement, FtMixed, PerturbedDecrement };
enum class ViolationKind { Origin, Positivity, Decrement };

[[nodiscard]] std::string_view to_string(ConditionId id);
[[nodiscard]] std::string_view to_string(ViolationKind kind);
[[nodiscard]] ConditionId condition_from_string(std::string_view s);
[[nodiscard]] ViolationKind violation_kind_from_string(std::string_view s);

/// Index used for the origin entry of a basic Lyapunov check.
inline constexpr std::size_t kOriginIndex = std::numeric_limits<std::size_t>::max();

struct Violation {
  std::size_t index = 0;  // grid index or step k
  State state;
  /// Positive residual above tolerance; +inf for points where V <= 0.
  double residual = 0.0;
  ViolationKind kind = ViolationKind::Decrement;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// A maximal run of consecutive violating grid points (1-D scans only).
/// `before`/`after` are the neighbouring passing grid values, when they exist,
/// so the true boundary lies in [before, lower] or [upper, after].
struct ViolationInterval {
  std::size_t first_index = 0;
  std::size_t last_index = 0;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> before;
  std::optional<double> after;

  friend bool operator==(const ViolationInterval&, const ViolationInterval&) = default;
};

struct ConditionReport {
  ConditionId condition = ConditionId::FtDecrement;
  std::size_t checked_points = 0;
  std::vector<Violation> violations;  // sorted by index
  double max_residual = -std::numeric_limits<double>::infinity();
  bool holds_everywhere = true;
  double tolerance = kDefaultTolerance;
  std::vector<ViolationInterval> intervals;

  friend bool operator==(const ConditionReport&, const ConditionReport&) = default;
};

/// [V(F(x)) - V(x)] + max{alpha V(x)^r1, beta V(x)^r2}; the condition holds at x
/// iff the result is <= 0. Throws DomainError at the origin.
[[nodiscard]] double decrement_residual(const SystemMap& system, const LyapunovCandidate& v,
                                        const FixedTimeGains& gains, const State& x);

/// Same as decrement_residual, but the difference uses `v_lhs` and the
/// bound uses `v_rhs` (e.g. x^2 on the left, |x| on the right).
[[nodiscard]] double mixed_decrement_residual(const SystemMap& system,
                                              const LyapunovCandidate& v_lhs,
                                              const LyapunovCandidate& v_rhs,
                                              const FixedTimeGains& gains, const State& x);

/// Nominal residual minus L_V * g_norm. Throws ConfigurationError if `v`
/// carries no Lipschitz constant.
[[nodiscard]] double perturbed_decrement_residual(const SystemMap& system, double g_norm,
                                                  const LyapunovCandidate& v,
                                                  const FixedTimeGains& gains, const State& x);

/// V(0) = 0, V > 0 and V(F(x)) - V(x) <= 0 over the grid.
[[nodiscard]] ConditionReport check_basic_lyapunov(const SystemMap& system,
                                                   const LyapunovCandidate& v,
                                                   const std::vector<State>& grid,
                                                   double tolerance = kDefaultTolerance);

/// Grid scan of the fixed-time decrement condition.
[[nodiscard]] ConditionReport scan_conditions(const SystemMap& system, const LyapunovCandidate& v,
                                              const FixedTimeGains& gains,
                                              const std::vector<State>& grid,
                                              double tolerance = kDefaultTolerance);

/// Grid scan of the mixed decrement form.
[[nodiscard]] ConditionReport scan_conditions(const SystemMap& system,
                                              const LyapunovCandidate& v_lhs,
                                              const LyapunovCandidate& v_rhs,
                                              const FixedTimeGains& gains,
                                              const std::vector<State>& grid,
                                              double tolerance = kDefaultTolerance);

/// Along-trajectory scans: every nonzero state y(k) is checked, violations are
/// indexed by k. Zero states are skipped.
[[nodiscard]] ConditionReport scan_trajectory(const SystemMap& system, const LyapunovCandidate& v,
                                              const FixedTimeGains& gains,
                                              const Trajectory& traj,
                                              double tolerance = kDefaultTolerance);
[[nodiscard]] ConditionReport scan_trajectory(const SystemMap& system,
                                              const LyapunovCandidate& v_lhs,
                                              const LyapunovCandidate& v_rhs,
                                              const FixedTimeGains& gains,
                                              const Trajectory& traj,
                                              double tolerance = kDefaultTolerance);

/// Checks the perturbed decrement bound along a perturbed orbit, using the
/// injected disturbance norm ||y(k+1) - F(y(k))|| at each step.
[[nodiscard]] ConditionReport scan_perturbed_trajectory(const SystemMap& system,
                                                        const LyapunovCandidate& v,
                                                        const FixedTimeGains& gains,
                                                        const Trajectory& traj,
                                                        double tolerance = kDefaultTolerance);

/// max ||f(x) - f(y)|| / ||x - y|| over distinct grid pairs. This is a lower
/// bound on the local Lipschitz constant, not a certificate.
[[nodiscard]] double estimate_lipschitz(const std::function<State(const State&)>& f,
                                        const std::vector<State>& grid);
[[nodiscard]] double estimate_lipschitz(const std::function<double(const State&)>& f,
                                        const std::vector<State>& grid);

}  // namespace fixsettle
