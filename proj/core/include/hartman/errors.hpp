#pragma once

#include <stdexcept>
#include <string>

namespace hartman {

/// Invalid argument or a quantity evaluated outside its domain of definition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure (quadrature, refinement, root bracketing) did not
/// reach its target accuracy. `estimate` carries the best value obtained.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}

  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// An integral that does not exist, e.g. the mean exit time of a packet
/// with zero-momentum content scattered at a bound-state threshold.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hartman
