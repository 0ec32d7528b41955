#pragma once

#include <vector>

#include "killingbeck/model.hpp"

namespace killingbeck {

/// Parameters of the ansatz G = exp(p r^2 / 2 + q r) r^delta sum_k a_k r^k.
struct AnsatzParams {
  double p = 0.0;  // fm^-2, p = -sqrt(gamma_tilde a)
  double q = 0.0;  // fm^-1, 2 p q = gamma_tilde b
  double delta = 1.0;
};

/// Which exponent enters the index expressions (n + . - 1), (n + . - 3/2) of
/// the constraint and spectrum equations. `regular_delta` uses the channel's
/// regular Frobenius root; `paper_kappa` substitutes kappa literally and is
/// kept for diagnostics against published tables.
enum class IndexConvention { regular_delta, paper_kappa };

enum class SolveMethod { eq19, recurrence };

const char* to_string(IndexConvention convention);
const char* to_string(SolveMethod method);

struct QuasiExactSolution {
  double energy = 0.0;
  PotentialParams potential;  // b holds the constrained b_solved
  PhysicalParams physical;
  AnsatzParams ansatz;
  Channel channel;            // channel.n = n_r + 1 on the recurrence path
  double residual = 0.0;
  SolveMethod method = SolveMethod::eq19;

  double b_solved() const { return potential.b; }
  double gamma_tilde() const { return killingbeck::gamma_tilde(energy, physical); }
  int polynomial_degree() const { return channel.n - 1; }
};

/// Geometric scan of x = gamma_tilde followed by bracketed polishing.
struct SearchConfig {
  double x_min = 1e-12;    // fm^-1
  double x_max = 50.0;     // fm^-1
  int grid_points = 2000;
  double tol_root = 1e-12;  // |R| at the polished root
  double tol_x = 1e-13;     // bracket width at the polished root
  int max_polish_iterations = 200;
  IndexConvention convention = IndexConvention::regular_delta;
};

struct TerminationConfig {
  SearchConfig search;
  int max_newton_iterations = 60;
  double tol_residual = 1e-12;
  int buffer = 6;  // trailing coefficients checked after convergence
};

/// p = -sqrt(gamma_tilde a), q = gamma_tilde b / (2p).
/// Throws Error(domain) unless a > 0 and gamma_tilde > 0.
AnsatzParams ansatz_params(const PotentialParams& pot, double gamma_tilde,
                           const Channel& ch);

/// b = c sqrt(a gamma_tilde) / (n + delta - 1), the linear strength on the
/// quasi-exact constraint surface. Throws Error(degenerate_channel) when the
/// index vanishes and Error(domain) for a <= 0 or gamma_tilde <= 0.
double constrained_b(double a, double c, const Channel& ch, double gamma_tilde,
                     IndexConvention convention = IndexConvention::regular_delta);

/// Spectrum residual in x = gamma_tilde:
///   R(x) = (M+E) x - 2 sqrt(a) sqrt(x) (n + d - 3/2) + x^2 c^2 / (4 (n + d - 1)^2)
/// with E = x + M + C_ps and d = delta or kappa per the convention.
double energy_residual(double x, double a, double c, const PhysicalParams& phys,
                       const Channel& ch,
                       IndexConvention convention = IndexConvention::regular_delta);

/// All roots of energy_residual inside (x_min, x_max], ascending in E.
std::vector<QuasiExactSolution> solve_energy(double a, double c,
                                             const PhysicalParams& phys,
                                             const Channel& ch,
                                             const SearchConfig& search = {});

/// Solves for (gamma_tilde, b) such that the series terminates at degree n_r:
/// a_{n_r+1} = 0 and Z_{n_r} = 0. Uses damped 2-D Newton with a finite-difference
/// Jacobian, started from solve_energy roots and from sign changes of the
/// reduced one-dimensional termination function. Only b >= 0 solutions are
/// kept. Throws NoConvergenceError if starts exist but none converge.
std::vector<QuasiExactSolution> solve_by_termination(double a, double c,
                                                     const PhysicalParams& phys,
                                                     int kappa, int n_r,
                                                     const TerminationConfig& cfg = {});

/// The solution whose energy is closest to `energy`, or nullptr for an empty set.
const QuasiExactSolution* nearest_solution(const std::vector<QuasiExactSolution>& sols,
                                           double energy);

}  // namespace killingbeck
