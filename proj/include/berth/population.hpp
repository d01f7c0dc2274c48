#pragma once

// Population objective evaluation. The serial loop is the reference; the
// OpenMP kernel must return bitwise-identical values in the same order.

#include <vector>

#include "berth/optimizer.hpp"

namespace berth {

using Population = std::vector<std::vector<double>>;

std::vector<double> evaluate_population_serial(const Objective& f, const Population& xs);

/// threads <= 0 uses the OpenMP default. Exceptions thrown by `f` are
/// rethrown on the calling thread (the first by candidate index).
std::vector<double> evaluate_population_parallel(const Objective& f, const Population& xs,
                                                 int threads);

std::vector<double> evaluate_population(const Objective& f, const Population& xs, int threads);

}  // namespace berth
