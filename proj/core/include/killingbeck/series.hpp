#pragma once

#include <span>
#include <vector>

#include "killingbeck/model.hpp"
#include "killingbeck/quasi_exact.hpp"

namespace killingbeck {

/// Coefficients of the power series multiplying exp(p r^2/2 + q r) r^delta.
///
/// The recurrence is
///   X_n a_n + Y_{n-1} a_{n-1} + Z_{n-2} a_{n-2}
///       + (2pq - A4) a_{n-3} + (p^2 - A5) a_{n-4} = 0
/// with
///   X_n = (n + delta)(n + delta - 1) + A1
///   Y_n = 2q(n + delta) + A2
///   Z_n = q^2 + 2p(n + delta + 1/2) - A3.
/// The last two terms vanish on the ansatz-consistent path and the relation
/// reduces to three terms.
struct SeriesCoefficients {
  std::vector<double> a;  // a[0] = 1
  std::vector<double> x;  // X_n, n = 0..K
  std::vector<double> y;  // Y_n, n = 0..K
  std::vector<double> z;  // Z_n, n = 0..K
  double linear_defect = 0.0;     // 2pq - A4
  double quadratic_defect = 0.0;  // p^2 - A5

  int max_index() const { return static_cast<int>(a.size()) - 1; }
};

/// Throws Error(singular_recurrence) if X_n == 0 for some 1 <= n <= K.
SeriesCoefficients series_coefficients(const AnsatzParams& ansatz,
                                       const CanonicalCoefficients& coeffs,
                                       int max_index);

struct TerminationCheck {
  bool terminated = false;
  double max_trailing = 0.0;  // max |a_k|, n_r < k <= n_r + buffer
  double max_leading = 0.0;   // max |a_k|, k <= n_r
};

/// terminated iff max_trailing < 1e-10 * max_leading.
/// Throws Error(invalid_input) if the series is shorter than n_r + buffer.
TerminationCheck termination_check(const SeriesCoefficients& series, int n_r,
                                   int buffer = 6);

/// Coefficients up to degree n_r + buffer for a solved state.
SeriesCoefficients series_for(const QuasiExactSolution& sol, int buffer = 0);

/// Lower component G(r) = exp(p r^2/2 + q r) r^delta sum_k a_k r^k.
double eval_G(const QuasiExactSolution& sol, const SeriesCoefficients& series,
              double r);

/// dG/dr, analytic.
double eval_G_derivative(const QuasiExactSolution& sol,
                         const SeriesCoefficients& series, double r);

/// Upper component F = (G' - kappa G / r) / (M - E + C_ps), with G' analytic.
/// Throws Error(division_by_zero) when M - E + C_ps == 0.
double eval_F(const QuasiExactSolution& sol, const SeriesCoefficients& series,
              double r);

struct GridConfig {
  double r_min = 1e-6;             // fm
  int points = 4001;               // odd, composite Simpson
  double cutoff_exponent = -40.0;  // r_cut solves p r^2/2 + q r = cutoff_exponent
};

struct RadialWavefunction {
  std::vector<double> r;
  std::vector<double> G;
  std::vector<double> F;
  double norm = 1.0;  // N, such that the integral of F^2 + G^2 is 1
  int node_count_G = 0;
};

/// Samples the normalized spinor on a uniform grid over [r_min, r_cut] using
/// the polynomial of degree n - 1. Throws Error(numeric_overflow) on non-finite
/// samples.
RadialWavefunction build_wavefunction(const QuasiExactSolution& sol,
                                      const GridConfig& grid = {});

/// Composite Simpson rule on uniformly spaced samples (odd count).
double simpson(std::span<const double> samples, double step);

/// Sign changes of a sampled function, ignoring samples below
/// `floor_ratio * max|f|`.
int count_sign_changes(std::span<const double> f, double floor_ratio = 1e-12);

/// Simpson integral of F^2 + G^2 over the sampled grid (1 after build_wavefunction).
double normalization(const RadialWavefunction& wf);

/// Relative residuals of the first-order pair on interior grid points, using
/// fourth-order central differences:
///   upper: (d/dr + kappa/r) F - (M + E - Delta(r)) G
///   lower: (d/dr - kappa/r) G - (M - E + C_ps) F
/// each divided by the sup-norm of its right-hand side.
struct DiracResidual {
  double upper = 0.0;
  double lower = 0.0;
};

DiracResidual dirac_residual(const RadialWavefunction& wf,
                             const QuasiExactSolution& sol);

}  // namespace killingbeck
