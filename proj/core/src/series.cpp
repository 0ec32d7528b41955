#include "killingbeck/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "killingbeck/errors.hpp"

namespace killingbeck {

SeriesCoefficients series_coefficients(const AnsatzParams& ansatz,
                                       const CanonicalCoefficients& coeffs,
                                       int max_index) {
  if (max_index < 0) {
    throw Error(ErrorCode::invalid_input, "series length must be >= 0");
  }
  const auto size = static_cast<std::size_t>(max_index) + 1;
  const double p = ansatz.p, q = ansatz.q, delta = ansatz.delta;

  SeriesCoefficients s;
  s.a.assign(size, 0.0);
  s.x.resize(size);
  s.y.resize(size);
  s.z.resize(size);
  s.linear_defect = 2.0 * p * q - coeffs.linear;
  s.quadratic_defect = p * p - coeffs.quadratic;

  for (std::size_t n = 0; n < size; ++n) {
    const double nd = static_cast<double>(n) + delta;
    s.x[n] = nd * (nd - 1.0) + coeffs.centrifugal;
    s.y[n] = 2.0 * q * nd + coeffs.coulomb;
    s.z[n] = q * q + 2.0 * p * (nd + 0.5) - coeffs.constant;
  }

  s.a[0] = 1.0;
  for (std::size_t n = 1; n < size; ++n) {
    if (s.x[n] == 0.0) {
      throw Error(ErrorCode::singular_recurrence,
                  "X_" + std::to_string(n) + " = 0: delta is not the regular root");
    }
    double sum = s.y[n - 1] * s.a[n - 1];
    if (n >= 2) sum += s.z[n - 2] * s.a[n - 2];
    if (n >= 3) sum += s.linear_defect * s.a[n - 3];
    if (n >= 4) sum += s.quadratic_defect * s.a[n - 4];
    s.a[n] = -sum / s.x[n];
  }
  return s;
}

TerminationCheck termination_check(const SeriesCoefficients& series, int n_r,
                                   int buffer) {
  if (n_r < 0 || buffer < 1) {
    throw Error(ErrorCode::invalid_input, "termination check needs n_r >= 0, buffer >= 1");
  }
  if (series.max_index() < n_r + buffer) {
    throw Error(ErrorCode::invalid_input,
                "series has " + std::to_string(series.max_index()) +
                    " as highest index, need " + std::to_string(n_r + buffer));
  }
  TerminationCheck out;
  for (int k = 0; k <= n_r; ++k) {
    out.max_leading = std::max(out.max_leading, std::abs(series.a[static_cast<std::size_t>(k)]));
  }
  for (int k = n_r + 1; k <= n_r + buffer; ++k) {
    out.max_trailing = std::max(out.max_trailing, std::abs(series.a[static_cast<std::size_t>(k)]));
  }
  out.terminated = out.max_trailing < 1e-10 * out.max_leading;
  return out;
}

SeriesCoefficients series_for(const QuasiExactSolution& sol, int buffer) {
  const auto cc = canonical_coefficients(sol.potential, sol.physical, sol.channel, sol.energy);
  return series_coefficients(sol.ansatz, cc, sol.polynomial_degree() + buffer);
}

namespace {

struct PolyValue {
  double value = 0.0;
  double derivative = 0.0;
};

PolyValue horner(const std::vector<double>& a, double r) {
  PolyValue out;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    out.derivative = out.derivative * r + out.value;
    out.value = out.value * r + *it;
  }
  return out;
}

double prefactor(const AnsatzParams& ansatz, double r) {
  return std::exp(0.5 * ansatz.p * r * r + ansatz.q * r) * std::pow(r, ansatz.delta);
}

}  // namespace

double eval_G(const QuasiExactSolution& sol, const SeriesCoefficients& series, double r) {
  return prefactor(sol.ansatz, r) * horner(series.a, r).value;
}

double eval_G_derivative(const QuasiExactSolution& sol, const SeriesCoefficients& series,
                         double r) {
  const auto& an = sol.ansatz;
  const auto poly = horner(series.a, r);
  // d/dr [e^phi r^delta P] = e^phi r^(delta-1) [(p r^2 + q r + delta) P + r P']
  const double bracket = (an.p * r * r + an.q * r + an.delta) * poly.value + r * poly.derivative;
  return std::exp(0.5 * an.p * r * r + an.q * r) * std::pow(r, an.delta - 1.0) * bracket;
}

double eval_F(const QuasiExactSolution& sol, const SeriesCoefficients& series, double r) {
  const double denom = sol.physical.mass - sol.energy + sol.physical.c_ps;
  if (denom == 0.0) {
    throw Error(ErrorCode::division_by_zero,
                "M - E + C_ps = 0: upper component is undefined at the exact "
                "pseudospin point");
  }
  const auto& an = sol.ansatz;
  const auto poly = horner(series.a, r);
  const double kappa = sol.channel.kappa;
  const double bracket = (an.p * r * r + an.q * r + an.delta - kappa) * poly.value +
                         r * poly.derivative;
  return std::exp(0.5 * an.p * r * r + an.q * r) * std::pow(r, an.delta - 1.0) * bracket /
         denom;
}

double simpson(std::span<const double> samples, double step) {
  const auto n = samples.size();
  if (n < 3 || n % 2 == 0) {
    throw Error(ErrorCode::invalid_input, "Simpson rule needs an odd number (>= 3) of samples");
  }
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    (i % 2 == 1 ? odd : even) += samples[i];
  }
  return step / 3.0 * (samples.front() + samples.back() + 4.0 * odd + 2.0 * even);
}

int count_sign_changes(std::span<const double> f, double floor_ratio) {
  double peak = 0.0;
  for (const double v : f) peak = std::max(peak, std::abs(v));
  const double floor = floor_ratio * peak;
  int changes = 0;
  int last_sign = 0;
  for (const double v : f) {
    if (std::abs(v) <= floor) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

RadialWavefunction build_wavefunction(const QuasiExactSolution& sol, const GridConfig& grid) {
  if (!(grid.r_min > 0.0) || grid.points < 3 || grid.points % 2 == 0 ||
      !(grid.cutoff_exponent < 0.0)) {
    throw Error(ErrorCode::invalid_input,
                "grid needs r_min > 0, an odd point count >= 3 and a negative cutoff exponent");
  }
  const auto& an = sol.ansatz;
  if (!(an.p < 0.0)) {
    throw Error(ErrorCode::domain, "wavefunction needs a decaying Gaussian factor (p < 0)");
  }
  // p r^2 / 2 + q r = cutoff  ->  positive root of the quadratic.
  const double disc = an.q * an.q + 2.0 * an.p * grid.cutoff_exponent;
  const double r_cut = (-an.q - std::sqrt(disc)) / an.p;
  if (!(r_cut > grid.r_min)) {
    throw Error(ErrorCode::invalid_input, "cutoff radius does not exceed r_min");
  }

  const auto series = series_for(sol);
  const auto count = static_cast<std::size_t>(grid.points);
  const double h = (r_cut - grid.r_min) / static_cast<double>(count - 1);

  RadialWavefunction wf;
  wf.r.resize(count);
  wf.G.resize(count);
  wf.F.resize(count);
  std::vector<double> density(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = i + 1 == count ? r_cut : grid.r_min + h * static_cast<double>(i);
    wf.r[i] = r;
    wf.G[i] = eval_G(sol, series, r);
    wf.F[i] = eval_F(sol, series, r);
    if (!std::isfinite(wf.G[i]) || !std::isfinite(wf.F[i])) {
      throw Error(ErrorCode::numeric_overflow,
                  "non-finite wavefunction sample at r = " + std::to_string(r));
    }
    density[i] = wf.F[i] * wf.F[i] + wf.G[i] * wf.G[i];
  }
  const double integral = simpson(density, h);
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw Error(ErrorCode::numeric_overflow, "wavefunction norm is not finite and positive");
  }
  wf.norm = 1.0 / std::sqrt(integral);
  for (std::size_t i = 0; i < count; ++i) {
    wf.G[i] *= wf.norm;
    wf.F[i] *= wf.norm;
  }
  wf.node_count_G = count_sign_changes(wf.G);
  return wf;
}

double normalization(const RadialWavefunction& wf) {
  if (wf.r.size() < 3) throw Error(ErrorCode::invalid_input, "need at least three grid points");
  std::vector<double> density(wf.r.size());
  for (std::size_t i = 0; i < density.size(); ++i) {
    density[i] = wf.F[i] * wf.F[i] + wf.G[i] * wf.G[i];
  }
  return simpson(density, (wf.r.back() - wf.r.front()) / static_cast<double>(wf.r.size() - 1));
}

DiracResidual dirac_residual(const RadialWavefunction& wf, const QuasiExactSolution& sol) {
  const auto n = wf.r.size();
  if (n < 5) throw Error(ErrorCode::invalid_input, "need at least five grid points");
  const double kappa = sol.channel.kappa;
  const double upper_mass = sol.physical.mass + sol.energy;
  const double lower_mass = sol.physical.mass - sol.energy + sol.physical.c_ps;
  // Fourth-order central differences on the (uniform) grid.
  auto diff = [](const std::vector<double>& f, std::size_t i, double h) {
    return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
  };

  double res_upper = 0.0, res_lower = 0.0, ref_upper = 0.0, ref_lower = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double r = wf.r[i];
    const double h = 0.25 * (wf.r[i + 2] - wf.r[i - 2]);
    const double dF = diff(wf.F, i, h);
    const double dG = diff(wf.G, i, h);
    const double rhs_upper = (upper_mass - sol.potential(r)) * wf.G[i];
    const double rhs_lower = lower_mass * wf.F[i];
    res_upper = std::max(res_upper, std::abs(dF + kappa / r * wf.F[i] - rhs_upper));
    res_lower = std::max(res_lower, std::abs(dG - kappa / r * wf.G[i] - rhs_lower));
    ref_upper = std::max(ref_upper, std::abs(rhs_upper));
    ref_lower = std::max(ref_lower, std::abs(rhs_lower));
  }
  return DiracResidual{ref_upper > 0.0 ? res_upper / ref_upper : res_upper,
                       ref_lower > 0.0 ? res_lower / ref_lower : res_lower};
}

}  // namespace killingbeck
