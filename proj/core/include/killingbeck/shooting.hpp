#pragma once

#include <optional>
#include <utility>

#include "killingbeck/model.hpp"
#include "killingbeck/quasi_exact.hpp"

namespace killingbeck {

/// Settings for the shooting eigensolver.
///
/// Radii left unset are chosen per trial energy: r_max where the dominant
/// decay exponent reaches `decay_exponent`, r_match at the outer classical
/// turning point (or the minimum of |rhs| when there is none). With the
/// energy bracket unset, the scan covers gamma_tilde in [1e-6, 20] fm^-1
/// when a > 0, and the beta_tilde^2 > 0 window when a = b = 0.
struct ShootingConfig {
  double r_min = 1e-4;  // fm
  std::optional<double> r_match;
  std::optional<double> r_max;
  int steps = 8000;     // RK4 steps per leg
  std::optional<std::pair<double, double>> energy_bracket;
  int scan_points = 200;
  double tol_energy = 1e-9;    // fm^-1
  double defect_tol = 1e-8;    // log-derivative mismatch, fm^-1
  double decay_exponent = 45.0;
  int renormalize_every = 100;
};

void validate(const ShootingConfig& cfg);

/// G'' = rhs * G with
///   rhs = kappa(kappa-1)/r^2 + gamma_tilde(E)(a r^2 + b r - c/r) + beta_tilde^2(E).
double effective_rhs(double r, double energy, const PotentialParams& pot,
                     const PhysicalParams& phys, const Channel& ch);

struct ShotResult {
  double match_defect = 0.0;  // G'_out/G_out - G'_in/G_in at r_match
  double wronskian = 0.0;     // scale-free Wronskian in [-1, 1]; sign drives bisection
  int node_count = 0;         // zeros of the outward plus inward solutions
  int node_count_outward = 0; // zeros on (r_min, r_match]
  double r_match = 0.0;
  double r_max = 0.0;
};

/// Integrates outward from a two-term Frobenius start and inward from the
/// asymptotic tail, then compares at r_match.
/// Throws Error(unsupported_regime) when no normalizable tail exists
/// (a < 0, a > 0 with gamma_tilde <= 0, a = 0 with b != 0, or a = b = 0 with
/// beta_tilde^2 <= 0) and Error(integration) on overflow.
ShotResult shoot(double energy, const PotentialParams& pot, const PhysicalParams& phys,
                 const Channel& ch, const ShootingConfig& cfg = {});

struct NumericEigenvalue {
  double energy = 0.0;
  int node_count = 0;
  double match_defect = 0.0;
  double bracket_width = 0.0;
  bool converged = false;
};

/// Eigenvalue with `n_r` nodes at fixed (a, b, c), by scanning the energy
/// bracket and bisecting sign changes of the matching Wronskian.
/// Throws Error(not_found) when no such eigenvalue is bracketed and
/// Error(no_convergence) when the node count is not monotone in E on the
/// gamma_tilde > 0 branch.
NumericEigenvalue solve_numeric(const PotentialParams& pot, const PhysicalParams& phys,
                                const Channel& ch, int n_r, const ShootingConfig& cfg = {});

struct VerificationReport {
  double energy_analytic = 0.0;
  double energy_numeric = 0.0;
  double abs_diff = 0.0;
  int node_count = 0;
  double match_defect = 0.0;
  bool converged = false;
};

/// Runs solve_numeric at (a, b, c) and compares with `energy_analytic`.
VerificationReport verify_energy(double energy_analytic, const PotentialParams& pot,
                                 const PhysicalParams& phys, const Channel& ch, int n_r,
                                 const ShootingConfig& cfg = {});

/// verify_energy at the solution's (a, b_solved, c) with n_r = n - 1.
VerificationReport verify(const QuasiExactSolution& sol, const ShootingConfig& cfg = {});

}  // namespace killingbeck
