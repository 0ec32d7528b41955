#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace killingbeck {

enum class ErrorCode {
  invalid_input,
  domain,               // outside the a > 0, gamma_tilde > 0 ansatz domain
  degenerate_channel,   // n + delta - 1 == 0
  singular_recurrence,  // X_n == 0 for some n
  no_convergence,
  numeric_overflow,
  integration,
  unsupported_regime,
  not_found,
  division_by_zero,     // M - E + C_ps == 0
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the termination solver when no Newton start converges.
/// Carries the iterate with the smallest residual norm seen.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, double best_gamma_tilde,
                     double best_b, double best_residual)
      : Error(ErrorCode::no_convergence, what),
        best_gamma_tilde(best_gamma_tilde),
        best_b(best_b),
        best_residual(best_residual) {}

  double best_gamma_tilde;
  double best_b;
  double best_residual;
};

}  // namespace killingbeck
