#pragma once

#include <string>
#include <vector>

#include "killingbeck/model.hpp"
#include "killingbeck/shooting.hpp"

// Closed-form limits at exact pseudospin symmetry (C_ps = 0).

namespace killingbeck {

struct OscillatorSpec {
  double omega = 1.0;  // fm^-1
  int n_r = 0;
  int l_tilde = 0;
  double mass = 5.0;   // fm^-1
};

/// E = M (c^2 - 4N^2) / (c^2 + 4N^2) with N = n + l_tilde.
/// Requires c >= 0, n >= 1, l_tilde >= 0, M > 0.
double coulomb_energy(double c, int n, int l_tilde, double mass);

/// Unique root E > M of (E + M) sqrt((E - M) / 2M) = (2 n_r + l_tilde + 3/2) omega,
/// bisected down to adjacent doubles.
double oscillator_energy(const OscillatorSpec& spec);

/// The general problem that reproduces the oscillator levels:
/// a = M omega^2 / 2, b = c = 0, C_ps = 0, kappa = l_tilde + 1, n = 2(n_r + 1).
struct GeneralProblem {
  PotentialParams potential;
  PhysicalParams physical;
  Channel channel;
  int n_r = 0;  // node count of the bound state the shooting oracle should find
};

GeneralProblem oscillator_problem(const OscillatorSpec& spec);

/// Pure Coulomb problem for the shooting oracle. Below threshold gamma_tilde < 0,
/// so the closed-form levels belong to the coupling -c/r with the sign of c
/// flipped in the lower-component equation; the returned potential carries -c.
/// kappa = l_tilde + 1, n_r = n - 1.
GeneralProblem coulomb_problem(double c, int n, int l_tilde, double mass);

struct LimitPoint {
  double epsilon = 0.0;
  double energy = 0.0;  // general solver (or oracle) energy
  double gap = 0.0;     // |energy - reference|
};

struct LimitReport {
  bool oracle_only = false;  // Coulomb side: compared through the shooting oracle
  double reference_energy = 0.0;
  std::vector<LimitPoint> points;       // epsilon descending
  std::vector<double> observed_orders;  // between consecutive points
  bool monotone = false;                // gap shrinks with epsilon
  std::string note;
};

/// Oscillator side (a > 0): solve_energy with c = epsilon (b then follows from
/// the constraint and is O(epsilon)) against oscillator_energy. Needs C_ps = 0,
/// kappa >= 1 and an even n.
/// Coulomb side (a = 0): the general solver has no a -> 0 path, so the report
/// compares the shooting oracle with coulomb_energy and is marked oracle-only.
LimitReport limit_consistency(const PotentialParams& pot, const PhysicalParams& phys,
                              const Channel& ch,
                              const std::vector<double>& epsilons = {1e-2, 1e-3, 1e-4},
                              const ShootingConfig& oracle = {});

}  // namespace killingbeck
