#pragma once

#include <cstddef>
#include <vector>

#include "fixsettle/systems.hpp"

namespace fixsettle {

/// `count` points logarithmically spaced over [lo, hi], ascending, as 1-D states.
/// With `symmetric` the negated points are prepended, giving an ascending grid
/// over [-hi, -lo] U [lo, hi].
[[nodiscard]] std::vector<State> log_grid(double lo, double hi, std::size_t count,
                                          bool symmetric = false);

/// `count` evenly spaced 1-D points over [lo, hi].
[[nodiscard]] std::vector<State> linear_grid(double lo, double hi, std::size_t count);

[[nodiscard]] std::vector<double> log_spaced(double lo, double hi, std::size_t count);

}  // namespace fixsettle
