#include <cmath>
#include <random>
#include <stdexcept>

#include "berth/planner.hpp"
#include "berth/population.hpp"
#include "berth/scenario.hpp"
#include "doctest.h"

using namespace berth;

namespace {

Population random_population(const BoxBounds& box, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Population p(count, std::vector<double>(box.dim()));
  for (auto& x : p)
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = std::uniform_real_distribution<double>(box.lower[i], box.upper[i])(rng);
  return p;
}

}  // namespace

TEST_CASE("parallel evaluation matches the serial reference bitwise") {
  for (const char* name : {"nanko_berth", "straight_berth", "nanko_waypoint"}) {
    const auto sc = builtin(name);
    const auto f = make_objective(sc);
    const auto pop = random_population(sc.box_bounds(), 24, 17);
    const auto serial = evaluate_population_serial(f, pop);
    for (int threads : {1, 2, 4, 0}) {
      const auto par = evaluate_population_parallel(f, pop, threads);
      REQUIRE(par.size() == serial.size());
      for (std::size_t k = 0; k < serial.size(); ++k) CHECK(par[k] == serial[k]);
    }
  }
}

TEST_CASE("exceptions propagate from worker threads in candidate order") {
  Population pop(16, std::vector<double>(1));
  for (int k = 0; k < 16; ++k) pop[k][0] = k;
  const Objective f = [](std::span<const double> x) -> double {
    if (x[0] == 5.0) throw std::runtime_error("five");
    if (x[0] == 11.0) throw std::runtime_error("eleven");
    return x[0];
  };
  try {
    evaluate_population_parallel(f, pop, 4);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "five");
  }
  CHECK_THROWS_AS(evaluate_population_serial(f, pop), std::runtime_error);
}

TEST_CASE("empty population") {
  const Objective f = [](std::span<const double>) { return 0.0; };
  CHECK(evaluate_population_parallel(f, {}, 4).empty());
  CHECK(evaluate_population(f, {}, 1).empty());
}
