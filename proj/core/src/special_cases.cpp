#include "killingbeck/special_cases.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "killingbeck/errors.hpp"
#include "killingbeck/quasi_exact.hpp"

namespace killingbeck {

namespace {

void require_positive_mass(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw Error(ErrorCode::invalid_input, "M must be positive and finite");
  }
}

}  // namespace

double coulomb_energy(double c, int n, int l_tilde, double mass) {
  require_positive_mass(mass);
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::invalid_input, "c must be finite and >= 0");
  }
  if (n < 1 || l_tilde < 0) {
    throw Error(ErrorCode::invalid_input, "need n >= 1 and l_tilde >= 0");
  }
  const double big_n = static_cast<double>(n + l_tilde);
  const double c2 = c * c;
  const double four_n2 = 4.0 * big_n * big_n;
  return mass * (c2 - four_n2) / (c2 + four_n2);
}

double oscillator_energy(const OscillatorSpec& spec) {
  require_positive_mass(spec.mass);
  if (!(spec.omega > 0.0) || !std::isfinite(spec.omega)) {
    throw Error(ErrorCode::invalid_input, "omega must be positive and finite");
  }
  if (spec.n_r < 0 || spec.l_tilde < 0) {
    throw Error(ErrorCode::invalid_input, "need n_r >= 0 and l_tilde >= 0");
  }
  const double m = spec.mass;
  const double target = (2.0 * spec.n_r + spec.l_tilde + 1.5) * spec.omega;
  // Strictly increasing in E on (M, inf), zero at E = M.
  auto lhs = [m, target](double e) { return (e + m) * std::sqrt((e - m) / (2.0 * m)) - target; };

  double lo = m + 1e-12;
  if (lhs(lo) >= 0.0) return lo;
  double upper = 1.0;
  while (lhs(m + upper) < 0.0) upper *= 2.0;
  double hi = m + upper;
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (lhs(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::abs(lhs(lo)) < std::abs(lhs(hi)) ? lo : hi;
}

GeneralProblem oscillator_problem(const OscillatorSpec& spec) {
  require_positive_mass(spec.mass);
  if (!(spec.omega > 0.0) || spec.n_r < 0 || spec.l_tilde < 0) {
    throw Error(ErrorCode::invalid_input, "need omega > 0, n_r >= 0, l_tilde >= 0");
  }
  GeneralProblem out;
  out.potential = {0.5 * spec.mass * spec.omega * spec.omega, 0.0, 0.0};
  out.physical = {spec.mass, 0.0};
  out.channel = channel_from_kappa(spec.l_tilde + 1, 2 * (spec.n_r + 1));
  out.n_r = spec.n_r;
  return out;
}

GeneralProblem coulomb_problem(double c, int n, int l_tilde, double mass) {
  coulomb_energy(c, n, l_tilde, mass);  // argument checks
  GeneralProblem out;
  out.potential = {0.0, 0.0, -c};
  out.physical = {mass, 0.0};
  out.channel = channel_from_kappa(l_tilde + 1, n);
  out.n_r = n - 1;
  return out;
}

LimitReport limit_consistency(const PotentialParams& pot, const PhysicalParams& phys,
                              const Channel& ch, const std::vector<double>& epsilons,
                              const ShootingConfig& oracle) {
  validate(phys);
  if (phys.c_ps != 0.0) {
    throw Error(ErrorCode::invalid_input, "special-case limits need C_ps = 0");
  }
  if (ch.kappa < 1) {
    throw Error(ErrorCode::invalid_input, "special-case limits use kappa = l_tilde + 1 >= 1");
  }

  LimitReport report;
  if (pot.a == 0.0) {
    report.oracle_only = true;
    report.note = "oracle-only comparison: the general solver needs a > 0";
    report.reference_energy = coulomb_energy(pot.c, ch.n, ch.l_tilde, phys.mass);
    const auto problem = coulomb_problem(pot.c, ch.n, ch.l_tilde, phys.mass);
    const auto numeric =
        solve_numeric(problem.potential, problem.physical, problem.channel, problem.n_r, oracle);
    report.points.push_back(
        {0.0, numeric.energy, std::abs(numeric.energy - report.reference_energy)});
    report.monotone = true;
    return report;
  }

  if (!(pot.a > 0.0) || ch.n < 2 || ch.n % 2 != 0) {
    throw Error(ErrorCode::invalid_input, "oscillator limit needs a > 0 and an even n >= 2");
  }
  OscillatorSpec spec;
  spec.mass = phys.mass;
  spec.omega = std::sqrt(2.0 * pot.a / phys.mass);
  spec.n_r = ch.n / 2 - 1;
  spec.l_tilde = ch.l_tilde;
  report.reference_energy = oscillator_energy(spec);
  report.note = "oscillator limit b, c -> 0";

  auto eps = epsilons;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  for (const double e : eps) {
    const auto roots = solve_energy(pot.a, e, phys, ch);
    if (roots.empty()) {
      throw Error(ErrorCode::not_found,
                  "no general root at epsilon = " + std::to_string(e));
    }
    const auto nearest = std::min_element(
        roots.begin(), roots.end(), [&](const auto& u, const auto& v) {
          return std::abs(u.energy - report.reference_energy) <
                 std::abs(v.energy - report.reference_energy);
        });
    report.points.push_back(
        {e, nearest->energy, std::abs(nearest->energy - report.reference_energy)});
  }
  report.monotone = true;
  for (std::size_t i = 1; i < report.points.size(); ++i) {
    const auto& prev = report.points[i - 1];
    const auto& cur = report.points[i];
    if (!(cur.gap < prev.gap) && !(cur.gap == 0.0 && prev.gap == 0.0)) report.monotone = false;
    if (prev.gap > 0.0 && cur.gap > 0.0 && cur.epsilon > 0.0) {
      report.observed_orders.push_back(std::log(prev.gap / cur.gap) /
                                       std::log(prev.epsilon / cur.epsilon));
    }
  }
  return report;
}

}  // namespace killingbeck
