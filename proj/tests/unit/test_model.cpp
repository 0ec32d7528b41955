#include <cmath>
#include <limits>

#include "check_error.hpp"
#include "doctest.h"
#include "killingbeck/model.hpp"

using namespace killingbeck;

TEST_SUITE("model") {

TEST_CASE("channel labels for small kappa") {
  const auto m2 = channel_from_kappa(-2);
  CHECK(m2.l_tilde == 2);
  CHECK(m2.delta == 3.0);
  CHECK(m2.n == 1);

  const auto p1 = channel_from_kappa(1);
  CHECK(p1.l_tilde == 0);
  CHECK(p1.delta == 1.0);

  const auto m1 = channel_from_kappa(-1, 3);
  CHECK(m1.l_tilde == 1);
  CHECK(m1.delta == 2.0);
  CHECK(m1.n == 3);
}

TEST_CASE("kappa = 0 and n < 1 are rejected") {
  CHECK(code_of([] { channel_from_kappa(0); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { channel_from_kappa(1, 0); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { kappa_from_l_tilde(0, KappaBranch::negative); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { kappa_from_l_tilde(-1, KappaBranch::positive); }) == ErrorCode::invalid_input);
}

TEST_CASE("kappa and l_tilde round-trip for |kappa| <= 20") {
  for (int kappa = -20; kappa <= 20; ++kappa) {
    if (kappa == 0) continue;
    CAPTURE(kappa);
    const auto ch = channel_from_kappa(kappa);
    const auto branch = kappa < 0 ? KappaBranch::negative : KappaBranch::positive;
    CHECK(kappa_from_l_tilde(ch.l_tilde, branch) == kappa);
    CHECK(ch.l_tilde >= 0);
    CHECK(kappa * (kappa - 1) == ch.l_tilde * (ch.l_tilde + 1));
    CHECK(ch.delta * (ch.delta - 1.0) == static_cast<double>(kappa * (kappa - 1)));
    CHECK(ch.delta >= 1.0);
    CHECK((ch.delta == kappa || ch.delta == 1 - kappa));
  }
}

TEST_CASE("canonical coefficients at a hand-checked point") {
  const PotentialParams pot{0.04, 0.001, 1.0};
  const PhysicalParams phys{5.0, -5.5};
  const auto cc = canonical_coefficients(pot, phys, channel_from_kappa(-1), -0.49);
  CHECK(gamma_tilde(-0.49, phys) == doctest::Approx(0.01).epsilon(1e-13));
  CHECK(cc.centrifugal == -2.0);
  CHECK(cc.coulomb == doctest::Approx(0.01).epsilon(1e-13));
  CHECK(cc.constant == doctest::Approx(-0.0451).epsilon(1e-13));
  CHECK(cc.linear == doctest::Approx(1e-5).epsilon(1e-12));
  CHECK(cc.quadratic == doctest::Approx(4e-4).epsilon(1e-12));
}

TEST_CASE("degenerate inputs of the canonical form") {
  const PhysicalParams phys{5.0, -5.5};
  const auto no_coulomb = canonical_coefficients({0.1, 0.2, 0.0}, phys, channel_from_kappa(2), 1.0);
  CHECK(no_coulomb.coulomb == 0.0);

  const double threshold = phys.mass + phys.c_ps;
  const auto flat = canonical_coefficients({0.1, 0.2, 1.0}, phys, channel_from_kappa(2), threshold);
  CHECK(flat.coulomb == 0.0);
  CHECK(flat.linear == 0.0);
  CHECK(flat.quadratic == 0.0);
}

TEST_CASE("beta_tilde^2 = -(M + E) gamma_tilde") {
  for (double mass : {0.5, 5.0, 40.0}) {
    for (double c_ps : {-12.0, -5.5, 0.0, 3.0}) {
      for (double e = -30.0; e <= 30.0; e += 0.37) {
        const PhysicalParams phys{mass, c_ps};
        const double lhs = beta_tilde_sq(e, phys);
        const double rhs = -(mass + e) * gamma_tilde(e, phys);
        const double scale = std::abs(mass + e) * (std::abs(e) + mass + std::abs(c_ps));
        CHECK(std::abs(lhs - rhs) <= 4.0 * std::numeric_limits<double>::epsilon() * scale);
      }
    }
  }
}

TEST_CASE("energy quantities follow the stored energy") {
  const PhysicalParams phys{5.0, -5.5};
  const EnergyQuantities q(-0.4955, phys);
  CHECK(q.energy() == -0.4955);
  CHECK(q.gamma_tilde() == gamma_tilde(-0.4955, phys));
  CHECK(q.beta_tilde_sq() == beta_tilde_sq(-0.4955, phys));
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(validate(PotentialParams{0.0, -1.0, 0.0}));
  CHECK(code_of([] { validate(PotentialParams{-0.1, 0.0, 1.0}); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { validate(PotentialParams{0.1, 0.0, -1.0}); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { validate(PotentialParams{std::nan(""), 0.0, 1.0}); }) ==
        ErrorCode::invalid_input);
  CHECK(code_of([] { validate(PhysicalParams{0.0, 0.0}); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { validate(PhysicalParams{5.0, INFINITY}); }) == ErrorCode::invalid_input);
}

TEST_CASE("error codes have stable names") {
  CHECK(to_string(ErrorCode::no_convergence) == "no-convergence");
  CHECK(to_string(ErrorCode::degenerate_channel) == "degenerate-channel");
}

}
