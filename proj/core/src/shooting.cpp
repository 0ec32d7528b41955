#include "killingbeck/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "killingbeck/errors.hpp"

namespace killingbeck {

void validate(const ShootingConfig& cfg) {
  if (!(cfg.r_min > 0.0) || !std::isfinite(cfg.r_min)) {
    throw Error(ErrorCode::invalid_input, "r_min must be positive");
  }
  if (cfg.r_match && !(*cfg.r_match > cfg.r_min)) {
    throw Error(ErrorCode::invalid_input, "r_match must exceed r_min");
  }
  if (cfg.r_max && !(*cfg.r_max > cfg.r_match.value_or(cfg.r_min))) {
    throw Error(ErrorCode::invalid_input, "r_max must exceed r_match and r_min");
  }
  if (cfg.steps < 1000) {
    throw Error(ErrorCode::invalid_input, "at least 1000 integration steps per leg are required");
  }
  if (cfg.scan_points < 2 || cfg.renormalize_every < 1) {
    throw Error(ErrorCode::invalid_input, "scan needs >= 2 points");
  }
  if (!(cfg.tol_energy > 0.0) || !(cfg.defect_tol > 0.0) || !(cfg.decay_exponent > 0.0)) {
    throw Error(ErrorCode::invalid_input, "tolerances and decay exponent must be positive");
  }
  if (cfg.energy_bracket && !(cfg.energy_bracket->first < cfg.energy_bracket->second)) {
    throw Error(ErrorCode::invalid_input, "energy bracket must be an increasing pair");
  }
}

double effective_rhs(double r, double energy, const PotentialParams& pot,
                     const PhysicalParams& phys, const Channel& ch) {
  const double k = ch.kappa;
  return k * (k - 1.0) / (r * r) + gamma_tilde(energy, phys) * pot(r) +
         beta_tilde_sq(energy, phys);
}

namespace {

enum class Tail { gaussian, exponential };

struct Asymptotics {
  Tail tail = Tail::gaussian;
  double alpha = 0.0;  // sqrt(gamma_tilde a)
  double qt = 0.0;     // gamma_tilde b / (2 alpha)
  double k = 0.0;      // sqrt(beta_tilde^2)
  double r_max = 0.0;

  double log_derivative(double r) const {
    return tail == Tail::gaussian ? -alpha * r - qt : -k;
  }
};

Asymptotics asymptotics(double energy, const PotentialParams& pot, const PhysicalParams& phys,
                        double decay_exponent) {
  Asymptotics as;
  const double x = gamma_tilde(energy, phys);
  if (pot.a > 0.0) {
    if (!(x > 0.0)) {
      throw Error(ErrorCode::unsupported_regime,
                  "a > 0 needs gamma_tilde > 0 for a confining tail");
    }
    as.tail = Tail::gaussian;
    as.alpha = std::sqrt(x * pot.a);
    as.qt = x * pot.b / (2.0 * as.alpha);
    as.r_max = (-as.qt + std::sqrt(as.qt * as.qt + 2.0 * as.alpha * decay_exponent)) / as.alpha;
    return as;
  }
  if (pot.a == 0.0 && pot.b == 0.0) {
    const double b2 = beta_tilde_sq(energy, phys);
    if (!(b2 > 0.0)) {
      throw Error(ErrorCode::unsupported_regime,
                  "a = b = 0 needs beta_tilde^2 > 0 for a decaying tail");
    }
    as.tail = Tail::exponential;
    as.k = std::sqrt(b2);
    as.r_max = decay_exponent / as.k;
    return as;
  }
  throw Error(ErrorCode::unsupported_regime,
              pot.a < 0.0 ? "inverted oscillator (a < 0) is not supported"
                          : "a = 0 with b != 0 is not supported by the shooting oracle");
}

// Outer classical turning point on a geometric probe grid, or the minimum of
// |rhs| when the rhs never changes sign.
template <class Rhs>
double choose_match_radius(const Rhs& rhs, double r_min, double r_max) {
  constexpr int probes = 400;
  const double growth = std::pow(r_max / r_min, 1.0 / probes);
  std::vector<double> r(probes + 1), f(probes + 1);
  r[0] = r_min;
  for (int i = 1; i <= probes; ++i) r[static_cast<std::size_t>(i)] = r[static_cast<std::size_t>(i - 1)] * growth;
  for (int i = 0; i <= probes; ++i) f[static_cast<std::size_t>(i)] = rhs(r[static_cast<std::size_t>(i)]);

  int pick = -1;
  for (int i = probes - 1; i >= 1; --i) {
    if (f[static_cast<std::size_t>(i)] < 0.0 && f[static_cast<std::size_t>(i + 1)] >= 0.0) {
      pick = i;
      break;
    }
  }
  if (pick < 0) {
    pick = 1;
    for (int i = 1; i < probes; ++i) {
      if (std::abs(f[static_cast<std::size_t>(i)]) < std::abs(f[static_cast<std::size_t>(pick)])) pick = i;
    }
  }
  return r[static_cast<std::size_t>(pick)];
}

struct State {
  double g = 0.0;
  double dg = 0.0;
};

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Power-of-two rescaling keeps every log-derivative bit-identical.
void renormalize(State& s, double r) {
  const double m = std::max(std::abs(s.g), r * std::abs(s.dg));
  if (m == 0.0 || !std::isfinite(m)) return;
  int e = 0;
  std::frexp(m, &e);
  s.g = std::ldexp(s.g, -e);
  s.dg = std::ldexp(s.dg, -e);
}

}  // namespace

ShotResult shoot(double energy, const PotentialParams& pot, const PhysicalParams& phys,
                 const Channel& ch, const ShootingConfig& cfg) {
  validate(cfg);
  if (!std::isfinite(energy)) throw Error(ErrorCode::invalid_input, "energy must be finite");
  const auto as = asymptotics(energy, pot, phys, cfg.decay_exponent);
  const double r_max = cfg.r_max.value_or(as.r_max);
  auto rhs = [&](double r) { return effective_rhs(r, energy, pot, phys, ch); };
  const double r_match_target =
      cfg.r_match.value_or(choose_match_radius(rhs, cfg.r_min, r_max));
  if (!(cfg.r_min < r_match_target && r_match_target < r_max)) {
    throw Error(ErrorCode::invalid_input, "need r_min < r_match < r_max");
  }

  const int n = cfg.steps;
  ShotResult out;
  out.r_max = r_max;

  // Outward leg: uniform in t = ln r, y = (G, dG/dr), dy/dt = r (dG/dr, rhs G).
  const double delta = ch.delta;
  const double c1 = -gamma_tilde(energy, phys) * pot.c / (2.0 * delta);
  double r = cfg.r_min;
  State out_state{1.0 + c1 * r, delta / r * (1.0 + c1 * r) + c1};
  {
    const double dt = std::log(r_match_target / cfg.r_min) / n;
    const double growth = std::exp(dt);
    const double half = std::exp(0.5 * dt);
    auto deriv = [&](double rr, const State& s) {
      return State{rr * s.dg, rr * rhs(rr) * s.g};
    };
    for (int i = 0; i < n; ++i) {
      const double rh = r * half;
      const double rn = r * growth;
      const State& s = out_state;
      const State k1 = deriv(r, s);
      const State k2 = deriv(rh, {s.g + 0.5 * dt * k1.g, s.dg + 0.5 * dt * k1.dg});
      const State k3 = deriv(rh, {s.g + 0.5 * dt * k2.g, s.dg + 0.5 * dt * k2.dg});
      const State k4 = deriv(rn, {s.g + dt * k3.g, s.dg + dt * k3.dg});
      const State next{s.g + dt / 6.0 * (k1.g + 2.0 * k2.g + 2.0 * k3.g + k4.g),
                       s.dg + dt / 6.0 * (k1.dg + 2.0 * k2.dg + 2.0 * k3.dg + k4.dg)};
      if (sign_of(next.g) != 0 && sign_of(s.g) != 0 && sign_of(next.g) != sign_of(s.g)) {
        ++out.node_count_outward;
      }
      out_state = next;
      r = rn;
      if ((i + 1) % cfg.renormalize_every == 0) renormalize(out_state, r);
      if (!std::isfinite(out_state.g) || !std::isfinite(out_state.dg)) {
        throw Error(ErrorCode::integration, "outward integration overflowed");
      }
    }
  }
  const double r_join = r;
  out.r_match = r_join;

  // Inward leg: uniform in r from the asymptotic tail down to r_join.
  State in_state{1.0, as.log_derivative(r_max)};
  int nodes_in = 0;
  {
    const double h = (r_max - r_join) / n;
    double rr = r_max;
    auto deriv = [&](double at, const State& s) { return State{s.dg, rhs(at) * s.g}; };
    for (int i = 0; i < n; ++i) {
      const double rn = i + 1 == n ? r_join : r_max - h * (i + 1);
      const double step = rn - rr;
      const double rh = rr + 0.5 * step;
      const State& s = in_state;
      const State k1 = deriv(rr, s);
      const State k2 = deriv(rh, {s.g + 0.5 * step * k1.g, s.dg + 0.5 * step * k1.dg});
      const State k3 = deriv(rh, {s.g + 0.5 * step * k2.g, s.dg + 0.5 * step * k2.dg});
      const State k4 = deriv(rn, {s.g + step * k3.g, s.dg + step * k3.dg});
      const State next{s.g + step / 6.0 * (k1.g + 2.0 * k2.g + 2.0 * k3.g + k4.g),
                       s.dg + step / 6.0 * (k1.dg + 2.0 * k2.dg + 2.0 * k3.dg + k4.dg)};
      if (sign_of(next.g) != 0 && sign_of(s.g) != 0 && sign_of(next.g) != sign_of(s.g)) {
        ++nodes_in;
      }
      in_state = next;
      rr = rn;
      if ((i + 1) % cfg.renormalize_every == 0) renormalize(in_state, rr);
      if (!std::isfinite(in_state.g) || !std::isfinite(in_state.dg)) {
        throw Error(ErrorCode::integration, "inward integration overflowed");
      }
    }
  }

  const double norm_out = std::hypot(out_state.g, r_join * out_state.dg);
  const double norm_in = std::hypot(in_state.g, r_join * in_state.dg);
  out.wronskian = r_join * (out_state.dg * in_state.g - in_state.dg * out_state.g) /
                  (norm_out * norm_in);
  out.match_defect = out_state.dg / out_state.g - in_state.dg / in_state.g;
  out.node_count = out.node_count_outward + nodes_in;
  return out;
}

namespace {

struct Scan {
  bool confining = false;  // gamma_tilde > 0 branch (a > 0)
  std::vector<double> energies;
};

Scan scan_energies(const PotentialParams& pot, const PhysicalParams& phys,
                   const ShootingConfig& cfg) {
  Scan scan;
  const auto points = static_cast<std::size_t>(cfg.scan_points);
  scan.energies.resize(points);
  const double shift = phys.mass + phys.c_ps;
  if (pot.a > 0.0) {
    scan.confining = true;
    double x_lo = 1e-6, x_hi = 20.0;
    if (cfg.energy_bracket) {
      x_lo = cfg.energy_bracket->first - shift;
      x_hi = cfg.energy_bracket->second - shift;
      if (!(x_lo > 0.0)) {
        throw Error(ErrorCode::unsupported_regime,
                    "energy bracket must lie above M + C_ps when a > 0");
      }
    }
    const double ratio = x_hi / x_lo;
    for (std::size_t j = 0; j < points; ++j) {
      const double x = j + 1 == points
                           ? x_hi
                           : x_lo * std::pow(ratio, static_cast<double>(j) / (points - 1));
      scan.energies[j] = x + shift;
    }
    return scan;
  }
  if (pot.a == 0.0 && pot.b == 0.0) {
    double lo, hi;
    if (cfg.energy_bracket) {
      lo = cfg.energy_bracket->first;
      hi = cfg.energy_bracket->second;
    } else {
      const double e1 = -phys.mass, e2 = phys.mass + phys.c_ps;
      const double span = std::abs(e2 - e1);
      if (span == 0.0) throw Error(ErrorCode::unsupported_regime, "empty bound-state window");
      lo = std::min(e1, e2) + 0.01 * span;
      hi = std::max(e1, e2) - 0.01 * span;
    }
    for (std::size_t j = 0; j < points; ++j) {
      scan.energies[j] =
          j + 1 == points ? hi : lo + (hi - lo) * static_cast<double>(j) / (points - 1);
    }
    return scan;
  }
  throw Error(ErrorCode::unsupported_regime,
              pot.a < 0.0 ? "inverted oscillator (a < 0) is not supported"
                          : "a = 0 with b != 0 is not supported by the shooting oracle");
}

bool opposite(double u, double v) { return (u < 0.0 && v > 0.0) || (u > 0.0 && v < 0.0); }

}  // namespace

NumericEigenvalue solve_numeric(const PotentialParams& pot, const PhysicalParams& phys,
                                const Channel& ch, int n_r, const ShootingConfig& cfg) {
  validate(cfg);
  validate(phys);
  if (n_r < 0) throw Error(ErrorCode::invalid_input, "node count must be >= 0");
  const auto scan = scan_energies(pot, phys, cfg);

  auto trial = [&](double e) { return shoot(e, pot, phys, ch, cfg); };

  std::vector<double> energies;
  std::vector<ShotResult> shots;
  for (const double e : scan.energies) {
    shots.push_back(trial(e));
    energies.push_back(e);
    // Node counts only grow with E on the confining branch.
    if (scan.confining && shots.back().node_count >= n_r + 2) break;
  }

  std::vector<NumericEigenvalue> roots;
  for (std::size_t j = 0; j + 1 < shots.size(); ++j) {
    const double w_lo = shots[j].wronskian, w_hi = shots[j + 1].wronskian;
    if (!opposite(w_lo, w_hi) && w_hi != 0.0) continue;
    double lo = energies[j], hi = energies[j + 1];
    double mid = w_hi == 0.0 ? hi : 0.5 * (lo + hi);
    ShotResult at = w_hi == 0.0 ? shots[j + 1] : trial(mid);
    for (int it = 0; it < 200 && at.wronskian != 0.0; ++it) {
      if (opposite(at.wronskian, w_lo)) {
        hi = mid;
      } else {
        lo = mid;
      }
      if (hi - lo <= cfg.tol_energy && std::abs(at.match_defect) <= cfg.defect_tol) break;
      const double next = 0.5 * (lo + hi);
      if (next <= lo || next >= hi) break;
      mid = next;
      at = trial(mid);
    }
    NumericEigenvalue root;
    root.energy = mid;
    root.node_count = at.node_count;
    root.match_defect = at.match_defect;
    root.bracket_width = at.wronskian == 0.0 ? 0.0 : hi - lo;
    root.converged = root.bracket_width <= cfg.tol_energy &&
                     std::abs(root.match_defect) <= cfg.defect_tol;
    roots.push_back(root);
  }

  if (scan.confining) {
    for (std::size_t i = 1; i < roots.size(); ++i) {
      if (roots[i].node_count < roots[i - 1].node_count) {
        throw Error(ErrorCode::no_convergence,
                    "node count decreases from " + std::to_string(roots[i - 1].node_count) +
                        " to " + std::to_string(roots[i].node_count) + " between E = " +
                        std::to_string(roots[i - 1].energy) + " and E = " +
                        std::to_string(roots[i].energy) +
                        "; increase steps or refine the energy bracket");
      }
    }
  }
  for (const auto& root : roots) {
    if (root.node_count == n_r) return root;
  }
  throw Error(ErrorCode::not_found,
              "no eigenvalue with " + std::to_string(n_r) + " nodes in the scanned bracket (" +
                  std::to_string(roots.size()) + " sign changes found)");
}

VerificationReport verify_energy(double energy_analytic, const PotentialParams& pot,
                                 const PhysicalParams& phys, const Channel& ch, int n_r,
                                 const ShootingConfig& cfg) {
  NumericEigenvalue numeric;
  try {
    numeric = solve_numeric(pot, phys, ch, n_r, cfg);
  } catch (const Error& e) {
    throw Error(e.code(), "verify (E_analytic = " + std::to_string(energy_analytic) +
                              ", kappa = " + std::to_string(ch.kappa) +
                              ", n_r = " + std::to_string(n_r) + "): " + e.what());
  }
  VerificationReport report;
  report.energy_analytic = energy_analytic;
  report.energy_numeric = numeric.energy;
  report.abs_diff = std::abs(numeric.energy - energy_analytic);
  report.node_count = numeric.node_count;
  report.match_defect = numeric.match_defect;
  report.converged = numeric.converged;
  return report;
}

VerificationReport verify(const QuasiExactSolution& sol, const ShootingConfig& cfg) {
  return verify_energy(sol.energy, sol.potential, sol.physical, sol.channel,
                       sol.polynomial_degree(), cfg);
}

}  // namespace killingbeck
