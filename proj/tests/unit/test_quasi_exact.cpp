#include <cmath>
#include <cstring>

#include "check_error.hpp"
#include "doctest.h"
#include "killingbeck/quasi_exact.hpp"
#include "killingbeck/series.hpp"
#include "killingbeck/special_cases.hpp"

using namespace killingbeck;

namespace {

const PhysicalParams kTable{5.0, -5.5};

// n_r = 0 termination points at c = 1, M = 5, C_ps = -5.5. Reference values are
// roots of s^3 (1 + c^2 / (4 delta^2)) + (2M + C_ps) s - 2 sqrt(a) (delta + 1/2) = 0
// with s = sqrt(gamma_tilde), evaluated at 40 digits.
struct Frozen {
  double a;
  int kappa;
  double x, energy, b;
};
constexpr Frozen kTermination[] = {
    {0.01, -1, 0.012274430145252844, -0.48772556985474716, 0.005539501364124041},
    {0.01, 1, 0.004433517676367469, -0.49556648232363253, 0.006658466547462312},
    {0.01, -2, 0.023935124987964972, -0.47606487501203503, 0.005156993631948859},
    {0.1, 1, 0.04339209903336078, -0.4566079009666392, 0.06587267949109159},
    {0.1, 2, 0.11691305538554759, -0.3830869446144524, 0.054063170316202229},
    {0.1, -2, 0.21942995186886758, -0.28057004813113242, 0.04937722730491001},
};

bool bit_equal(double u, double v) { return std::memcmp(&u, &v, sizeof u) == 0; }

}  // namespace

TEST_SUITE("quasi_exact") {

TEST_CASE("ansatz parameters") {
  const auto an = ansatz_params({0.04, 0.001, 0.0}, 0.01, channel_from_kappa(-1));
  CHECK(an.p == doctest::Approx(-0.02).epsilon(1e-14));
  CHECK(an.q == doctest::Approx(-2.5e-4).epsilon(1e-13));
  CHECK(an.p * an.p == doctest::Approx(0.01 * 0.04).epsilon(1e-14));
  CHECK(2.0 * an.p * an.q == doctest::Approx(0.01 * 0.001).epsilon(1e-14));
  CHECK(an.delta == 2.0);

  CHECK(ansatz_params({0.04, 0.0, 1.0}, 0.01, channel_from_kappa(1)).q == 0.0);

  const auto unit = ansatz_params({1.0, 2.0, 0.0}, 1.0, channel_from_kappa(1));
  CHECK(unit.p == -1.0);
  CHECK(unit.q == -1.0);
}

TEST_CASE("ansatz domain errors") {
  CHECK(code_of([] { ansatz_params({0.0, 0.0, 1.0}, 0.1, channel_from_kappa(1)); }) ==
        ErrorCode::domain);
  CHECK(code_of([] { ansatz_params({0.1, 0.0, 1.0}, 0.0, channel_from_kappa(1)); }) ==
        ErrorCode::domain);
  CHECK(code_of([] { ansatz_params({0.1, 0.0, 1.0}, -0.2, channel_from_kappa(1)); }) ==
        ErrorCode::domain);
  try {
    solve_energy(0.0, 1.0, kTable, channel_from_kappa(-1));
    FAIL("a = 0 accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("special coulomb") != std::string::npos);
  }
}

TEST_CASE("constrained b") {
  const auto ch = channel_from_kappa(-1, 1);
  const double x = 0.0044335177;
  const double b = constrained_b(0.01, 1.0, ch, x);
  CHECK(b == doctest::Approx(3.32929e-3).epsilon(1e-5));
  CHECK(b * b / 0.01 == doctest::Approx(x / 4.0).epsilon(1e-14));

  CHECK(constrained_b(0.01, 0.0, ch, x) == 0.0);
  CHECK(constrained_b(1.0, 1.0, channel_from_kappa(1, 1), 1.0) == 1.0);

  // n + kappa - 1 = 0 for (n, kappa) = (2, -1) under the literal convention.
  CHECK(code_of([] {
          constrained_b(0.01, 1.0, channel_from_kappa(-1, 2), 0.01, IndexConvention::paper_kappa);
        }) == ErrorCode::degenerate_channel);
}

TEST_CASE("energy residual") {
  const auto ch = channel_from_kappa(-1, 1);
  CHECK(energy_residual(0.0, 0.01, 1.0, kTable, ch) == 0.0);

  const double literal =
      energy_residual(0.0044335177, 0.01, 1.0, kTable, ch, IndexConvention::paper_kappa);
  CHECK(literal == doctest::Approx(0.03995079944462088).epsilon(1e-12));

  // With c = 0 the last term drops; choose x so the first two cancel.
  const PhysicalParams phys{5.0, 0.0};
  const auto ch2 = channel_from_kappa(1, 2);
  const double x = 0.044601258310964;
  const double e = x + phys.mass;
  const double lhs = (phys.mass + e) * std::sqrt(x);
  const double rhs = 2.0 * std::sqrt(0.5) * 1.5;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  CHECK(std::abs(energy_residual(x, 0.5, 0.0, phys, ch2)) < 1e-13);
}

TEST_CASE("oscillator-mapped root of the spectrum equation") {
  const PhysicalParams phys{5.0, 0.0};
  const auto sols = solve_energy(0.5, 0.0, phys, channel_from_kappa(1, 2));
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].energy == doctest::Approx(5.044601258310964).epsilon(1e-13));
  CHECK(sols[0].b_solved() == 0.0);
  const double e_osc = oscillator_energy({std::sqrt(2.0 * 0.5 / 5.0), 0, 0, 5.0});
  CHECK(std::abs(sols[0].energy - e_osc) < 1e-10);
}

TEST_CASE("spectrum-equation roots satisfy their invariants") {
  for (int kappa : {-2, -1, 1, 2}) {
    for (int n : {1, 2, 3}) {
      for (double a : {0.01, 0.04, 0.1, 0.2}) {
        CAPTURE(kappa);
        CAPTURE(n);
        CAPTURE(a);
        const auto ch = channel_from_kappa(kappa, n);
        const SearchConfig search;
        const auto sols = solve_energy(a, 1.0, kTable, ch, search);
        REQUIRE(!sols.empty());
        for (std::size_t i = 0; i < sols.size(); ++i) {
          const auto& s = sols[i];
          const double x = s.gamma_tilde();
          CHECK(x > 0.0);
          CHECK(s.method == SolveMethod::eq19);
          CHECK(std::abs(s.residual) < search.tol_root);
          const double index = n + ch.delta - 1.0;
          CHECK(s.b_solved() * s.b_solved() / a == doctest::Approx(x / (index * index)).epsilon(1e-10));
          CHECK(s.ansatz.p < 0.0);
          CHECK(s.ansatz.q <= 0.0);
          if (i > 0) CHECK(sols[i - 1].energy < s.energy);
          // Bracket preservation: the residual changes sign across the root.
          const double lo = energy_residual(x * (1.0 - 1e-9), a, 1.0, kTable, ch);
          const double hi = energy_residual(x * (1.0 + 1e-9), a, 1.0, kTable, ch);
          CHECK(lo * hi <= 0.0);
        }
      }
    }
  }
}

TEST_CASE("invalid search settings") {
  SearchConfig bad;
  bad.x_min = 0.0;
  CHECK(code_of([&] { solve_energy(0.1, 1.0, kTable, channel_from_kappa(1), bad); }) ==
        ErrorCode::invalid_input);
  bad = {};
  bad.grid_points = 1;
  CHECK(code_of([&] { solve_energy(0.1, 1.0, kTable, channel_from_kappa(1), bad); }) ==
        ErrorCode::invalid_input);
  bad = {};
  bad.x_max = bad.x_min;
  CHECK(code_of([&] { solve_energy(0.1, 1.0, kTable, channel_from_kappa(1), bad); }) ==
        ErrorCode::invalid_input);
  CHECK(code_of([&] { solve_by_termination(0.1, 1.0, kTable, 1, -1); }) ==
        ErrorCode::invalid_input);
}

TEST_CASE("repeated solves are bit-identical") {
  const auto u = solve_energy(0.04, 1.0, kTable, channel_from_kappa(-2, 2));
  const auto v = solve_energy(0.04, 1.0, kTable, channel_from_kappa(-2, 2));
  REQUIRE(u.size() == v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(bit_equal(u[i].energy, v[i].energy));
    CHECK(bit_equal(u[i].b_solved(), v[i].b_solved()));
  }
  const auto s = solve_by_termination(0.04, 1.0, kTable, -1, 1);
  const auto t = solve_by_termination(0.04, 1.0, kTable, -1, 1);
  REQUIRE(s.size() == t.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(bit_equal(s[i].energy, t[i].energy));
    CHECK(bit_equal(s[i].b_solved(), t[i].b_solved()));
  }
}

TEST_CASE("n_r = 0 termination matches the reference points") {
  for (const auto& f : kTermination) {
    CAPTURE(f.a);
    CAPTURE(f.kappa);
    const auto sols = solve_by_termination(f.a, 1.0, kTable, f.kappa, 0);
    REQUIRE(sols.size() == 1);
    const auto& s = sols[0];
    CHECK(s.method == SolveMethod::recurrence);
    CHECK(s.gamma_tilde() == doctest::Approx(f.x).epsilon(1e-12));
    CHECK(s.energy == doctest::Approx(f.energy).epsilon(1e-13));
    CHECK(s.b_solved() == doctest::Approx(f.b).epsilon(1e-11));
    // a_1 = 0 is the constraint with n = 1.
    const double b17 = constrained_b(f.a, 1.0, channel_from_kappa(f.kappa, 1), s.gamma_tilde());
    CHECK(s.b_solved() == doctest::Approx(b17).epsilon(1e-10));
    const auto check = termination_check(series_for(s, 6), 0, 6);
    CHECK(check.terminated);
    CHECK(check.max_trailing < 1e-10 * check.max_leading);
  }
}

TEST_CASE("kappa and 1 - kappa share the n_r = 0 point") {
  const auto m = solve_by_termination(0.01, 1.0, kTable, -1, 0);
  const auto p = solve_by_termination(0.01, 1.0, kTable, 2, 0);
  REQUIRE(m.size() == 1);
  REQUIRE(p.size() == 1);
  CHECK(bit_equal(m[0].energy, p[0].energy));
}

TEST_CASE("c = 0 termination lines up with the spectrum equation at n = n_r + 2") {
  const PhysicalParams phys{5.0, -5.5};
  for (int kappa : {-1, 1, 2}) {
    CAPTURE(kappa);
    const auto term = solve_by_termination(0.05, 0.0, phys, kappa, 0);
    REQUIRE(term.size() == 1);
    CHECK(std::abs(term[0].b_solved()) < 1e-14);
    const auto aligned = solve_energy(0.05, 0.0, phys, channel_from_kappa(kappa, 2));
    REQUIRE(aligned.size() == 1);
    CHECK(std::abs(term[0].energy - aligned[0].energy) < 1e-10);
    // The same-index spectrum equation describes a different level.
    const auto same_n = solve_energy(0.05, 0.0, phys, channel_from_kappa(kappa, 1));
    REQUIRE(same_n.size() == 1);
    CHECK(std::abs(term[0].energy - same_n[0].energy) > 1e-3);
  }
}

TEST_CASE("higher-degree termination points terminate") {
  for (int n_r : {1, 2}) {
    for (int kappa : {-2, -1, 1, 2}) {
      for (double a : {0.01, 0.1}) {
        CAPTURE(n_r);
        CAPTURE(kappa);
        CAPTURE(a);
        const auto sols = solve_by_termination(a, 1.0, kTable, kappa, n_r);
        REQUIRE(!sols.empty());
        for (const auto& s : sols) {
          CHECK(s.b_solved() >= 0.0);
          CHECK(s.gamma_tilde() > 0.0);
          CHECK(s.residual < 1e-12);
          CHECK(s.polynomial_degree() == n_r);
          const auto series = series_for(s, 6);
          CHECK(termination_check(series, n_r, 6).terminated);
          const double z_scale = s.ansatz.q * s.ansatz.q +
                                 2.0 * std::abs(s.ansatz.p) * (n_r + s.ansatz.delta + 0.5) +
                                 std::abs(beta_tilde_sq(s.energy, kTable));
          CHECK(std::abs(series.z[static_cast<std::size_t>(n_r)]) < 1e-10 * z_scale);
        }
      }
    }
  }
}

TEST_CASE("Newton failure reports the best iterate") {
  TerminationConfig cfg;
  cfg.max_newton_iterations = 1;
  cfg.tol_residual = 1e-300;
  try {
    solve_by_termination(0.01, 1.0, kTable, -1, 1, cfg);
    FAIL("expected NoConvergenceError");
  } catch (const NoConvergenceError& e) {
    CHECK(e.code() == ErrorCode::no_convergence);
    CHECK(std::isfinite(e.best_residual));
    CHECK(e.best_gamma_tilde > 0.0);
  }
}

TEST_CASE("nearest solution") {
  const auto sols = solve_by_termination(0.1, 40.0, kTable, -1, 2);
  REQUIRE(sols.size() == 3);
  CHECK(nearest_solution(sols, sols[1].energy + 1e-6) == &sols[1]);
  CHECK(nearest_solution({}, 0.0) == nullptr);
}

TEST_CASE("published table rows all yield roots with tiny residuals") {
  const double a_values[] = {0.01, 0.04, 0.1, 0.2};
  const int channels[][2] = {{1, -1}, {1, -2}, {2, -1}, {2, -2}};
  for (const auto& nk : channels) {
    for (double a : a_values) {
      const auto eq19 = solve_energy(a, 1.0, kTable, channel_from_kappa(nk[1], nk[0]));
      REQUIRE(!eq19.empty());
      for (const auto& s : eq19) CHECK(std::abs(s.residual) < 1e-12);
      const auto rec = solve_by_termination(a, 1.0, kTable, nk[1], nk[0] - 1);
      REQUIRE(!rec.empty());
      for (const auto& s : rec) CHECK(s.residual < 1e-12);
    }
  }
}

}
