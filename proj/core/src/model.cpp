#include "killingbeck/model.hpp"

#include <cmath>
#include <string>

#include "killingbeck/errors.hpp"

namespace killingbeck {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::domain: return "domain";
    case ErrorCode::degenerate_channel: return "degenerate-channel";
    case ErrorCode::singular_recurrence: return "singular-recurrence";
    case ErrorCode::no_convergence: return "no-convergence";
    case ErrorCode::numeric_overflow: return "numeric-overflow";
    case ErrorCode::integration: return "integration";
    case ErrorCode::unsupported_regime: return "unsupported-regime";
    case ErrorCode::not_found: return "not-found";
    case ErrorCode::division_by_zero: return "division-by-zero";
  }
  return "unknown";
}

Channel channel_from_kappa(int kappa, int n) {
  if (kappa == 0) {
    throw Error(ErrorCode::invalid_input, "kappa must be nonzero");
  }
  if (n < 1) {
    throw Error(ErrorCode::invalid_input,
                "series index n must be >= 1, got " + std::to_string(n));
  }
  Channel ch;
  ch.kappa = kappa;
  ch.n = n;
  ch.l_tilde = kappa < 0 ? -kappa : kappa - 1;
  ch.delta = kappa > 0 ? static_cast<double>(kappa) : 1.0 - kappa;
  return ch;
}

int kappa_from_l_tilde(int l_tilde, KappaBranch branch) {
  if (l_tilde < 0) {
    throw Error(ErrorCode::invalid_input, "l_tilde must be >= 0");
  }
  if (branch == KappaBranch::negative) {
    if (l_tilde == 0) {
      throw Error(ErrorCode::invalid_input,
                  "l_tilde = 0 has no negative-kappa partner");
    }
    return -l_tilde;
  }
  return l_tilde + 1;
}

double gamma_tilde(double energy, const PhysicalParams& phys) {
  return energy - phys.mass - phys.c_ps;
}

double beta_tilde_sq(double energy, const PhysicalParams& phys) {
  return (phys.mass + energy) * (phys.mass - energy + phys.c_ps);
}

CanonicalCoefficients canonical_coefficients(const PotentialParams& pot,
                                             const PhysicalParams& phys,
                                             const Channel& ch, double energy) {
  const double g = gamma_tilde(energy, phys);
  const double k = ch.kappa;
  CanonicalCoefficients out;
  out.centrifugal = -k * (k - 1.0);
  out.coulomb = g * pot.c;
  out.constant = beta_tilde_sq(energy, phys);
  out.linear = g * pot.b;
  out.quadratic = g * pot.a;
  return out;
}

void validate(const PotentialParams& pot) {
  if (!std::isfinite(pot.a) || !std::isfinite(pot.b) || !std::isfinite(pot.c)) {
    throw Error(ErrorCode::invalid_input, "potential parameters must be finite");
  }
  if (pot.a < 0.0) {
    throw Error(ErrorCode::invalid_input, "quadratic strength a must be >= 0");
  }
  if (pot.c < 0.0) {
    throw Error(ErrorCode::invalid_input, "Coulomb strength c must be >= 0");
  }
}

void validate(const PhysicalParams& phys) {
  if (!std::isfinite(phys.mass) || !std::isfinite(phys.c_ps)) {
    throw Error(ErrorCode::invalid_input, "physical parameters must be finite");
  }
  if (phys.mass <= 0.0) {
    throw Error(ErrorCode::invalid_input, "mass M must be > 0");
  }
}

}  // namespace killingbeck
