#pragma once

#include <stdexcept>
#include <string>

namespace ucw {

/// Caller passed arguments outside an operation's contract (bad lambda range,
/// model mismatch, invalid parameters). Maps to CLI exit code 2.
struct UsageError : std::invalid_argument {
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical solver failed to converge within its caps. Maps to CLI exit
/// code 3. Carries the best residual reached.
struct SolverError : std::runtime_error {
  SolverError(const std::string& what, double residual_)
      : std::runtime_error(what), residual(residual_) {}
  double residual;
};

}  // namespace ucw
