#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ptspec {

using cplx = std::complex<double>;

/// A potential or grid was evaluated outside its domain (singular node,
/// non-finite value, inconsistent bounds).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical engine failed (QR non-convergence, shooting divergence,
/// singular time-step solve).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied configuration: unknown family or parameter name,
/// out-of-range option.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ptspec
