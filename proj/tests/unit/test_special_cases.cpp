#include <cmath>
#include <cstdio>

#include "check_error.hpp"
#include "doctest.h"
#include "killingbeck/quasi_exact.hpp"
#include "killingbeck/shooting.hpp"
#include "killingbeck/special_cases.hpp"

using namespace killingbeck;

TEST_SUITE("special_cases") {

TEST_CASE("Coulomb closed form") {
  CHECK(coulomb_energy(2.0, 1, 0, 5.0) == 0.0);
  CHECK(coulomb_energy(0.0, 3, 2, 5.0) == -5.0);
  CHECK(coulomb_energy(1.0, 1, 1, 5.0) == doctest::Approx(-75.0 / 17.0).epsilon(1e-15));

  for (double c : {0.1, 0.7, 1.0, 3.0, 10.0}) {
    for (int n : {1, 2, 3}) {
      for (int l : {0, 1, 4}) {
        const double e = coulomb_energy(c, n, l, 5.0);
        const double big_n = n + l;
        CHECK(e > -5.0);
        CHECK(e < 5.0);
        CHECK((e + 5.0) / (e - 5.0) == doctest::Approx(-c * c / (4.0 * big_n * big_n)).epsilon(1e-12));
      }
    }
  }
  CHECK(coulomb_energy(1e-6, 1, 0, 5.0) == doctest::Approx(-5.0).epsilon(1e-11));
  CHECK(coulomb_energy(1e6, 1, 0, 5.0) == doctest::Approx(5.0).epsilon(1e-11));
}

TEST_CASE("Coulomb argument checks") {
  CHECK(code_of([] { coulomb_energy(-1.0, 1, 0, 5.0); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { coulomb_energy(1.0, 0, 0, 5.0); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { coulomb_energy(1.0, 1, -1, 5.0); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { coulomb_energy(1.0, 1, 0, 0.0); }) == ErrorCode::invalid_input);
}

TEST_CASE("oscillator level") {
  const double e = oscillator_energy({1.0, 0, 0, 5.0});
  CHECK(e == doctest::Approx(5.215602859300757).epsilon(1e-13));
  char digits[16];
  std::snprintf(digits, sizeof digits, "%.4f", e);
  CHECK(std::string(digits) == "5.2156");

  CHECK(oscillator_energy({1e-9, 0, 0, 5.0}) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(oscillator_energy({1.0, 1, 0, 5.0}) > oscillator_energy({1.0, 0, 1, 5.0}));

  CHECK(code_of([] { oscillator_energy({0.0, 0, 0, 5.0}); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { oscillator_energy({1.0, -1, 0, 5.0}); }) == ErrorCode::invalid_input);
}

TEST_CASE("oscillator levels solve the general spectrum equation") {
  for (int n_r : {0, 1}) {
    for (int l : {0, 1}) {
      const OscillatorSpec spec{1.0, n_r, l, 5.0};
      const auto p = oscillator_problem(spec);
      CHECK(p.channel.kappa == l + 1);
      CHECK(p.channel.n == 2 * (n_r + 1));
      CHECK(p.potential.a == 2.5);
      const double e = oscillator_energy(spec);
      const double r = energy_residual(gamma_tilde(e, p.physical), p.potential.a, 0.0, p.physical,
                                       p.channel);
      CHECK(std::abs(r) < 1e-10);
    }
  }
}

TEST_CASE("closed forms agree with the shooting oracle on a 3 x 3 grid") {
  const int quantum[][2] = {{1, 0}, {1, 1}, {2, 0}};
  for (const auto& nl : quantum) {
    for (double c : {0.5, 1.0, 2.0}) {
      CAPTURE(nl[0]);
      CAPTURE(nl[1]);
      CAPTURE(c);
      const auto p = coulomb_problem(c, nl[0], nl[1], 5.0);
      const auto rep = verify_energy(coulomb_energy(c, nl[0], nl[1], 5.0), p.potential,
                                     p.physical, p.channel, p.n_r);
      CHECK(rep.converged);
      CHECK(rep.abs_diff < 1e-6);
    }
  }
  const int oscillator[][2] = {{0, 0}, {0, 1}, {1, 0}};
  for (const auto& nl : oscillator) {
    for (double omega : {0.5, 1.0, 2.0}) {
      CAPTURE(nl[0]);
      CAPTURE(nl[1]);
      CAPTURE(omega);
      const OscillatorSpec spec{omega, nl[0], nl[1], 5.0};
      const auto p = oscillator_problem(spec);
      const auto rep =
          verify_energy(oscillator_energy(spec), p.potential, p.physical, p.channel, p.n_r);
      CHECK(rep.converged);
      CHECK(rep.node_count == nl[0]);
      CHECK(rep.abs_diff < 1e-6);
    }
  }
}

TEST_CASE("oscillator limit of the general solver") {
  const PhysicalParams phys{5.0, 0.0};
  const PotentialParams pot{2.5, 0.0, 0.0};
  const auto ch = channel_from_kappa(1, 2);

  const auto exact = limit_consistency(pot, phys, ch, {0.0});
  REQUIRE(exact.points.size() == 1);
  CHECK(exact.points[0].gap < 1e-12);

  const auto report = limit_consistency(pot, phys, ch);
  CHECK_FALSE(report.oracle_only);
  REQUIRE(report.points.size() == 3);
  CHECK(report.points[0].epsilon == 1e-2);
  CHECK(report.monotone);
  REQUIRE(report.observed_orders.size() == 2);
  for (double order : report.observed_orders) CHECK(order >= 1.0);
  CHECK(report.reference_energy == oscillator_energy({1.0, 0, 0, 5.0}));
}

TEST_CASE("Coulomb limit is an oracle-only comparison") {
  const auto report =
      limit_consistency({0.0, 0.0, 1.0}, {5.0, 0.0}, channel_from_kappa(2, 1));
  CHECK(report.oracle_only);
  CHECK(report.reference_energy == doctest::Approx(-75.0 / 17.0).epsilon(1e-15));
  REQUIRE(report.points.size() == 1);
  CHECK(report.points[0].gap < 1e-6);
}

TEST_CASE("limit preconditions") {
  CHECK(code_of([] {
          limit_consistency({2.5, 0.0, 0.0}, {5.0, -1.0}, channel_from_kappa(1, 2));
        }) == ErrorCode::invalid_input);
  CHECK(code_of([] {
          limit_consistency({2.5, 0.0, 0.0}, {5.0, 0.0}, channel_from_kappa(1, 3));
        }) == ErrorCode::invalid_input);
  CHECK(code_of([] {
          limit_consistency({2.5, 0.0, 0.0}, {5.0, 0.0}, channel_from_kappa(-1, 2));
        }) == ErrorCode::invalid_input);
}

}
