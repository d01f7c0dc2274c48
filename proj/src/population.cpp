#include "berth/population.hpp"

#include <exception>

#include <omp.h>

namespace berth {

std::vector<double> evaluate_population_serial(const Objective& f, const Population& xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
  return out;
}

std::vector<double> evaluate_population_parallel(const Objective& f, const Population& xs,
                                                 int threads) {
  const auto n = static_cast<long>(xs.size());
  std::vector<double> out(xs.size());
  std::vector<std::exception_ptr> errors(xs.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = f(xs[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<double> evaluate_population(const Objective& f, const Population& xs, int threads) {
  if (threads == 1) return evaluate_population_serial(f, xs);
  return evaluate_population_parallel(f, xs, threads);
}

}  // namespace berth
