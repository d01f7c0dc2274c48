#include <cmath>
#include <random>

#include "berth/core.hpp"
#include "doctest.h"

using namespace berth;

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(deg_to_rad(340.0)) == doctest::Approx(deg_to_rad(-20.0)).epsilon(1e-14));
  CHECK(wrap_angle(kPi) == kPi);
  CHECK(wrap_angle(-kPi) == kPi);
  CHECK(wrap_angle(-3.0 * kPi) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK_THROWS_AS(wrap_angle(std::nan("")), Error);
  CHECK_THROWS_AS(wrap_angle(INFINITY), Error);
}

TEST_CASE("wrap_angle is idempotent and preserves the angle mod 2pi") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-50.0, 50.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = d(rng);
    const double w = wrap_angle(a);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
    CHECK(wrap_angle(w) == w);
    const double k = (a - w) / (2.0 * kPi);
    CHECK(std::abs(k - std::round(k)) < 1e-12);
  }
}

TEST_CASE("unit conversions") {
  CHECK(knots_to_mps(8.0) == doctest::Approx(4.115552));
  CHECK(knots_to_mps(0.0) == 0.0);
  CHECK(knots_to_mps(5.0) == doctest::Approx(2.57222).epsilon(1e-12));
  CHECK(mps_to_knots(knots_to_mps(6.0)) == doctest::Approx(6.0));
  CHECK(rad_to_deg(deg_to_rad(227.0)) == doctest::Approx(227.0));
}

TEST_CASE("berthing speed regression") {
  CHECK(berthing_speed_tolerance(10000.0) == doctest::Approx(0.09763).epsilon(1e-4));
  CHECK(berthing_speed_tolerance(1.0) == doctest::Approx(0.279));
  CHECK(berthing_speed_tolerance(100000.0) == doctest::Approx(0.0751).epsilon(1e-3));
  CHECK(berthing_speed_tolerance(100000.0) < berthing_speed_tolerance(10000.0));
  CHECK_THROWS_AS(berthing_speed_tolerance(0.0), Error);
  CHECK_THROWS_AS(berthing_speed_tolerance(-5.0), Error);
}

TEST_CASE("make_state normalizes heading and rejects non-finite input") {
  const auto s = make_state(1, 2, 3, 4, deg_to_rad(360.0 + 45.0), 0.1);
  CHECK(s.psi == doctest::Approx(deg_to_rad(45.0)));
  CHECK_THROWS_AS(make_state(0, NAN, 0, 0, 0, 0), Error);
  CHECK(ShipState::from_array(s.to_array()) == s);
}

TEST_CASE("control schedule segment lookup") {
  ControlSchedule c;
  c.segment_duration = 90.0;
  for (int i = 0; i < 3; ++i) c.segments.push_back({0.1 * i, 1.0 * i, 0, 0});
  CHECK(c.at(0.0).np == 0.0);
  CHECK(c.at(89.999).np == 0.0);
  CHECK(c.at(90.0).np == 1.0);
  CHECK(c.at(269.0).np == 2.0);
  CHECK(c.at(1000.0).np == 2.0);  // capped at the last segment
}

TEST_CASE("wind normalization") {
  CHECK(make_wind(deg_to_rad(-90.0), 3.0).gamma_T == doctest::Approx(deg_to_rad(270.0)));
  CHECK(make_wind(2.0 * kPi, 0.0).gamma_T == 0.0);
  CHECK_THROWS_AS(make_wind(0.0, -1.0), Error);
}

TEST_CASE("dimension weights and their invariants") {
  const auto w = make_weights(15.0, knots_to_mps(4.0), 75.0);
  const auto recomputed = dimension_weights(w.w_L, w.w_U);
  for (int i = 0; i < 6; ++i) CHECK(w.w_dim[i] == recomputed[i]);
  CHECK(w.w_dim[0] == doctest::Approx(1.0 / 225.0));
  CHECK(w.w_dim[4] == doctest::Approx(kPi * kPi));
  CHECK(w.w_dim[5] == doctest::Approx(225.0 / (knots_to_mps(4.0) * knots_to_mps(4.0))));
  CHECK_THROWS_AS(make_weights(15.0, 1.0, 75.0, 1.0), Error);          // w_pen must exceed 1
  CHECK_THROWS_AS(make_weights(15.0, 1.0, 75.0, 1e4, 1e3), Error);     // w_c must exceed w_pen
  CHECK_THROWS_AS(make_weights(0.0, 1.0, 75.0), Error);
}

TEST_CASE("tolerance vector invariants") {
  ToleranceVector t{{1, 0.1, 1, 0.0, 0.01, 0.001}};
  CHECK_NOTHROW(validate(t));  // only sway may be zero
  t.values[1] = 0.0;
  CHECK_THROWS_AS(validate(t), Error);
  t.values[1] = -0.1;
  CHECK_THROWS_AS(validate(t), Error);
}

TEST_CASE("ship parameter invariants") {
  ShipParameters p;
  CHECK_NOTHROW(validate(p));
  p.x_G = 80.0;
  CHECK_THROWS_AS(validate(p), Error);
  p = ShipParameters{};
  p.B = 0.0;
  CHECK_THROWS_AS(validate(p), Error);
}

TEST_CASE("missing coefficient groups are named") {
  HydroCoefficients c;
  try {
    require_all_groups(c);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.path() == "coefficients.added_mass");
  }
}

TEST_CASE("mode names") {
  CHECK(mode_from_string("berthing") == Mode::kBerthing);
  CHECK(std::string(to_string(Mode::kUnberthing)) == "unberthing");
  CHECK_THROWS_AS(mode_from_string("docking"), Error);
}
