#include "killingbeck/quasi_exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bracket.hpp"
#include "killingbeck/errors.hpp"
#include "killingbeck/series.hpp"

namespace killingbeck {

const char* to_string(IndexConvention convention) {
  return convention == IndexConvention::regular_delta ? "regular-delta" : "paper-kappa";
}

const char* to_string(SolveMethod method) {
  return method == SolveMethod::eq19 ? "eq19" : "recurrence";
}

namespace {

double index_exponent(const Channel& ch, IndexConvention convention) {
  return convention == IndexConvention::regular_delta ? ch.delta
                                                      : static_cast<double>(ch.kappa);
}

void require_ansatz_domain(double a, double gamma_tilde) {
  if (!(a > 0.0)) {
    throw Error(ErrorCode::domain,
                "the Gaussian ansatz needs a > 0; use the special-case solvers "
                "(special coulomb / special oscillator) for a = 0");
  }
  if (!(gamma_tilde > 0.0)) {
    throw Error(ErrorCode::domain,
                "the Gaussian ansatz needs gamma_tilde = E - M - C_ps > 0");
  }
}

void validate(const SearchConfig& s) {
  if (!(s.x_min > 0.0) || !(s.x_max > s.x_min) || !std::isfinite(s.x_max)) {
    throw Error(ErrorCode::invalid_input, "search bracket must satisfy 0 < x_min < x_max");
  }
  if (s.grid_points < 2) {
    throw Error(ErrorCode::invalid_input, "search grid needs at least 2 points");
  }
  if (!(s.tol_root > 0.0) || !(s.tol_x > 0.0) || s.max_polish_iterations < 1) {
    throw Error(ErrorCode::invalid_input, "search tolerances must be positive");
  }
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double ratio = hi / lo;
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        i == points - 1 ? hi : lo * std::pow(ratio, static_cast<double>(i) / (points - 1));
  }
  return grid;
}

bool opposite(double u, double v) { return (u < 0.0 && v > 0.0) || (u > 0.0 && v < 0.0); }

}  // namespace

AnsatzParams ansatz_params(const PotentialParams& pot, double gamma_tilde,
                           const Channel& ch) {
  require_ansatz_domain(pot.a, gamma_tilde);
  AnsatzParams out;
  out.p = -std::sqrt(gamma_tilde * pot.a);
  out.q = gamma_tilde * pot.b / (2.0 * out.p);
  out.delta = ch.delta;
  return out;
}

double constrained_b(double a, double c, const Channel& ch, double gamma_tilde,
                     IndexConvention convention) {
  require_ansatz_domain(a, gamma_tilde);
  const double index = ch.n + index_exponent(ch, convention) - 1.0;
  if (index == 0.0) {
    throw Error(ErrorCode::degenerate_channel,
                "n + delta - 1 = 0: the constraint on b is undefined");
  }
  return c * std::sqrt(a * gamma_tilde) / index;
}

double energy_residual(double x, double a, double c, const PhysicalParams& phys,
                       const Channel& ch, IndexConvention convention) {
  const double d = index_exponent(ch, convention);
  const double energy = x + phys.mass + phys.c_ps;
  const double index_b = ch.n + d - 1.0;
  const double index_e = ch.n + d - 1.5;
  return (phys.mass + energy) * x - 2.0 * std::sqrt(a) * std::sqrt(x) * index_e +
         x * x * c * c / (4.0 * index_b * index_b);
}

std::vector<QuasiExactSolution> solve_energy(double a, double c,
                                             const PhysicalParams& phys,
                                             const Channel& ch,
                                             const SearchConfig& search) {
  validate(PotentialParams{a, 0.0, c});
  validate(phys);
  validate(search);
  require_ansatz_domain(a, 1.0);
  if (ch.n + index_exponent(ch, search.convention) - 1.0 == 0.0) {
    throw Error(ErrorCode::degenerate_channel,
                "n + " + std::string(search.convention == IndexConvention::regular_delta
                                         ? "delta"
                                         : "kappa") +
                    " - 1 = 0 for this channel");
  }

  auto residual = [&](double x) {
    return energy_residual(x, a, c, phys, ch, search.convention);
  };

  const auto grid = geometric_grid(search.x_min, search.x_max, search.grid_points);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = residual(grid[i]);

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (values[i + 1] == 0.0) {
      roots.push_back(grid[i + 1]);
      continue;
    }
    if (!opposite(values[i], values[i + 1])) continue;
    const auto r = detail::brent_refine(residual, grid[i], grid[i + 1], values[i],
                                        values[i + 1], search.tol_x, search.tol_root,
                                        search.max_polish_iterations);
    roots.push_back(r.x);
  }

  std::vector<QuasiExactSolution> out;
  out.reserve(roots.size());
  for (const double x : roots) {
    QuasiExactSolution sol;
    sol.energy = x + phys.mass + phys.c_ps;
    sol.physical = phys;
    sol.channel = ch;
    sol.potential = PotentialParams{a, constrained_b(a, c, ch, x, search.convention), c};
    sol.ansatz = ansatz_params(sol.potential, x, ch);
    sol.residual = std::abs(residual(x));
    sol.method = SolveMethod::eq19;
    out.push_back(sol);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& l, const auto& r) { return l.energy < r.energy; });
  return out;
}

namespace {

struct TerminationSystem {
  double a;
  double c;
  PhysicalParams phys;
  Channel ch;
  int n_r;

  struct Value {
    double trailing = 0.0;  // a_{n_r+1} / max_{k<=n_r} |a_k|
    double z = 0.0;         // Z_{n_r} / scale
    double norm() const { return std::max(std::abs(trailing), std::abs(z)); }
  };

  Value operator()(double x, double b) const {
    const double energy = x + phys.mass + phys.c_ps;
    const PotentialParams pot{a, b, c};
    const auto cc = canonical_coefficients(pot, phys, ch, energy);
    const auto ansatz = ansatz_params(pot, x, ch);
    const auto series = series_coefficients(ansatz, cc, n_r + 1);
    double lead = 0.0;
    for (int k = 0; k <= n_r; ++k) lead = std::max(lead, std::abs(series.a[static_cast<std::size_t>(k)]));
    const double zn = series.z[static_cast<std::size_t>(n_r)];
    const double scale = std::abs(ansatz.q * ansatz.q) +
                         std::abs(2.0 * ansatz.p * (n_r + ch.delta + 0.5)) +
                         std::abs(cc.constant);
    return Value{series.a[static_cast<std::size_t>(n_r + 1)] / lead, zn / scale};
  }

  // b on the Z_{n_r} = 0 surface with q <= 0, or NaN where q^2 < 0.
  double b_on_z_surface(double x) const {
    const double energy = x + phys.mass + phys.c_ps;
    const double p = -std::sqrt(a * x);
    const double q_sq = beta_tilde_sq(energy, phys) - 2.0 * p * (n_r + ch.delta + 0.5);
    if (!(q_sq >= 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double q = -std::sqrt(q_sq);
    return 2.0 * p * q / x;
  }
};

struct NewtonOutcome {
  double x = 0.0;
  double b = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
};

NewtonOutcome damped_newton(const TerminationSystem& sys, double x, double b,
                            const TerminationConfig& cfg) {
  NewtonOutcome best{x, b};
  auto value = sys(x, b);
  best.residual = value.norm();
  if (!std::isfinite(best.residual)) return best;

  for (int it = 0; it < cfg.max_newton_iterations; ++it) {
    const double hx = 1e-7 * x;
    const double hb = 1e-7 * std::max(std::abs(b), std::sqrt(sys.a * x));
    const auto fxp = sys(x + hx, b);
    const auto fxm = sys(x - hx, b);
    const auto fbp = sys(x, b + hb);
    const auto fbm = sys(x, b - hb);
    const double j11 = (fxp.trailing - fxm.trailing) / (2.0 * hx);
    const double j21 = (fxp.z - fxm.z) / (2.0 * hx);
    const double j12 = (fbp.trailing - fbm.trailing) / (2.0 * hb);
    const double j22 = (fbp.z - fbm.z) / (2.0 * hb);
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dx = -(value.trailing * j22 - j12 * value.z) / det;
    const double db = -(j11 * value.z - j21 * value.trailing) / det;

    double lambda = 1.0;
    bool accepted = false;
    while (lambda > 1e-8) {
      const double xt = x + lambda * dx;
      const double bt = b + lambda * db;
      if (xt > 0.0) {
        const auto vt = sys(xt, bt);
        if (std::isfinite(vt.norm()) && vt.norm() < value.norm()) {
          x = xt;
          b = bt;
          value = vt;
          accepted = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (value.norm() < best.residual) best = NewtonOutcome{x, b, value.norm()};
    const bool small_step = std::abs(lambda * dx) <= 4e-16 * x &&
                            std::abs(lambda * db) <= 4e-16 * std::max(std::abs(b), 1e-300);
    if (!accepted || small_step) break;
  }
  best.converged = best.residual <= cfg.tol_residual;
  return best;
}

}  // namespace

std::vector<QuasiExactSolution> solve_by_termination(double a, double c,
                                                     const PhysicalParams& phys,
                                                     int kappa, int n_r,
                                                     const TerminationConfig& cfg) {
  validate(PotentialParams{a, 0.0, c});
  validate(phys);
  validate(cfg.search);
  require_ansatz_domain(a, 1.0);
  if (n_r < 0) throw Error(ErrorCode::invalid_input, "polynomial degree n_r must be >= 0");
  if (cfg.buffer < 1 || cfg.max_newton_iterations < 1 || !(cfg.tol_residual > 0.0)) {
    throw Error(ErrorCode::invalid_input, "invalid termination solver settings");
  }
  const Channel ch = channel_from_kappa(kappa, n_r + 1);
  const TerminationSystem sys{a, c, phys, ch, n_r};

  // Starting points: roots of the closed spectrum equation with the same n,
  // then sign changes of a_{n_r+1} along the Z_{n_r} = 0 surface.
  std::vector<std::pair<double, double>> seeds;
  SearchConfig search = cfg.search;
  search.convention = IndexConvention::regular_delta;
  for (const auto& s : solve_energy(a, c, phys, ch, search)) {
    seeds.emplace_back(s.gamma_tilde(), s.b_solved());
  }
  const auto grid = geometric_grid(search.x_min, search.x_max, search.grid_points);
  double prev_x = std::numeric_limits<double>::quiet_NaN();
  double prev_g = std::numeric_limits<double>::quiet_NaN();
  for (const double x : grid) {
    const double b = sys.b_on_z_surface(x);
    double g = std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(b)) g = sys(x, b).trailing;
    if (std::isfinite(g) && std::isfinite(prev_g) && opposite(prev_g, g)) {
      const double xs = prev_x + (x - prev_x) * prev_g / (prev_g - g);
      const double bs = sys.b_on_z_surface(xs);
      seeds.emplace_back(xs, std::isfinite(bs) ? bs : b);
    }
    prev_x = x;
    prev_g = g;
  }
  if (seeds.empty()) return {};

  std::vector<QuasiExactSolution> out;
  NewtonOutcome best;
  for (const auto& [x0, b0] : seeds) {
    const auto r = damped_newton(sys, x0, b0, cfg);
    if (r.residual < best.residual) best = r;
    if (!r.converged) continue;
    const double b_scale = std::sqrt(a * r.x);
    if (r.b < -1e-12 * b_scale) continue;  // negative-b branch is not reported
    const double b = std::max(r.b, 0.0);
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const auto& s) {
      return std::abs(s.gamma_tilde() - r.x) <= 1e-9 * r.x &&
             std::abs(s.b_solved() - b) <= 1e-9 * b_scale;
    });
    if (duplicate) continue;

    QuasiExactSolution sol;
    sol.energy = r.x + phys.mass + phys.c_ps;
    sol.physical = phys;
    sol.channel = ch;
    sol.potential = PotentialParams{a, b, c};
    sol.ansatz = ansatz_params(sol.potential, r.x, ch);
    sol.residual = r.residual;
    sol.method = SolveMethod::recurrence;
    const auto check = termination_check(series_for(sol, cfg.buffer), n_r, cfg.buffer);
    if (!check.terminated) continue;
    out.push_back(sol);
  }
  if (out.empty() && !best.converged) {
    throw NoConvergenceError(
        "termination solver did not converge from any of " + std::to_string(seeds.size()) +
            " starting points",
        best.x, best.b, best.residual);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& l, const auto& r) { return l.energy < r.energy; });
  return out;
}

const QuasiExactSolution* nearest_solution(const std::vector<QuasiExactSolution>& sols,
                                           double energy) {
  const QuasiExactSolution* best = nullptr;
  for (const auto& s : sols) {
    if (!best || std::abs(s.energy - energy) < std::abs(best->energy - energy)) best = &s;
  }
  return best;
}

}  // namespace killingbeck
