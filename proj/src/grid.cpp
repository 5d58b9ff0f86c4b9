#include "fixsettle/grid.hpp"

#include <cmath>

#include "fixsettle/errors.hpp"

namespace fixsettle {

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw ConfigurationError("log grid needs 0 < lo <= hi < inf");
  }
  if (count == 0) throw EmptyDomainError("log grid needs at least one point");
  std::vector<double> pts(count);
  if (count == 1) {
    pts[0] = lo;
    return pts;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    pts[i] = std::pow(10.0, a + t * (b - a));
  }
  pts.front() = lo;
  pts.back() = hi;
  return pts;
}

std::vector<State> log_grid(double lo, double hi, std::size_t count, bool symmetric) {
  const auto pts = log_spaced(lo, hi, count);
  std::vector<State> grid;
  grid.reserve(symmetric ? 2 * count : count);
  if (symmetric) {
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) grid.push_back({-*it});
  }
  for (double p : pts) grid.push_back({p});
  return grid;
}

std::vector<State> linear_grid(double lo, double hi, std::size_t count) {
  if (!(hi >= lo)) throw ConfigurationError("linear grid needs lo <= hi");
  if (count == 0) throw EmptyDomainError("linear grid needs at least one point");
  std::vector<State> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    grid[i] = {lo + t * (hi - lo)};
  }
  return grid;
}

}  // namespace fixsettle
