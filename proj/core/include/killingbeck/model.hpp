#pragma once

// Physical quantities shared by every solver.
//
// Units: hbar = c = 1, lengths in fm, energies and masses in fm^-1.
// The Killingbeck potential is  a r^2 + b r - c / r  and enters the
// lower-component equation through Delta(r) under exact pseudospin
// symmetry Sigma(r) = C_ps.

namespace killingbeck {

/// Killingbeck coefficients: a [fm^-3], b [fm^-2], c [dimensionless].
struct PotentialParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double r) const { return (a * r + b) * r - c / r; }
};

/// Fermion mass M and pseudospin constant C_ps, both in fm^-1.
struct PhysicalParams {
  double mass = 0.0;
  double c_ps = 0.0;
};

/// Quantum labels of a radial channel.
///
/// kappa(kappa - 1) = l_tilde(l_tilde + 1) fixes l_tilde. The Frobenius
/// exponent is always the regular root delta = max(kappa, 1 - kappa) >= 1,
/// so that G ~ r^delta vanishes at the origin for either sign of kappa.
struct Channel {
  int kappa = 1;
  int n = 1;  // series truncation index (n = n_r + 1 on the recurrence path)
  int l_tilde = 0;
  double delta = 1.0;
};

enum class KappaBranch { negative, positive };

/// Throws Error(invalid_input) for kappa == 0 or n < 1.
Channel channel_from_kappa(int kappa, int n = 1);

/// Inverse of the l_tilde map: kappa = -l_tilde (negative branch, l_tilde >= 1)
/// or kappa = l_tilde + 1 (positive branch).
int kappa_from_l_tilde(int l_tilde, KappaBranch branch);

/// gamma_tilde = E - M - C_ps.
double gamma_tilde(double energy, const PhysicalParams& phys);

/// beta_tilde^2 = (M + E)(M - E + C_ps).
double beta_tilde_sq(double energy, const PhysicalParams& phys);

/// Energy together with the quantities derived from it. Only E and the
/// physical constants are stored; everything else is recomputed.
class EnergyQuantities {
 public:
  EnergyQuantities(double energy, const PhysicalParams& phys)
      : energy_(energy), phys_(phys) {}

  double energy() const { return energy_; }
  double gamma_tilde() const { return killingbeck::gamma_tilde(energy_, phys_); }
  double beta_tilde_sq() const { return killingbeck::beta_tilde_sq(energy_, phys_); }

 private:
  double energy_;
  PhysicalParams phys_;
};

/// Coefficients of the canonical radial form
///   G'' + [A1/r^2 + A2/r - A3 - A4 r - A5 r^2] G = 0
/// named by the power of r they multiply.
struct CanonicalCoefficients {
  double centrifugal = 0.0;  // A1 = -kappa(kappa - 1)
  double coulomb = 0.0;      // A2 = gamma_tilde c
  double constant = 0.0;     // A3 = beta_tilde^2
  double linear = 0.0;       // A4 = gamma_tilde b
  double quadratic = 0.0;    // A5 = gamma_tilde a
};

CanonicalCoefficients canonical_coefficients(const PotentialParams& pot,
                                             const PhysicalParams& phys,
                                             const Channel& ch, double energy);

/// Checks the documented invariants; throws Error(invalid_input).
void validate(const PotentialParams& pot);
void validate(const PhysicalParams& phys);

}  // namespace killingbeck
