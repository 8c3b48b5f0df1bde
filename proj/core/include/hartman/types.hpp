#pragma once

#include <cmath>
#include <numbers>
#include <string_view>

#include "hartman/errors.hpp"

namespace hartman {

/// hbar and particle mass. Defaults are atomic units.
struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;

  /// Planck's constant h = 2*pi*hbar.
  double planck() const { return 2.0 * std::numbers::pi * hbar; }

  void validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
      throw DomainError("hbar must be positive and finite");
    }
    if (!(mass > 0.0) || !std::isfinite(mass)) {
      throw DomainError("mass must be positive and finite");
    }
  }
};

/// V(x) = v0 on [-half_width, half_width], zero elsewhere. v0 > 0 is a
/// barrier, v0 < 0 a well.
struct SquarePotential {
  double v0 = 0.0;
  double half_width = 1.0;

  static SquarePotential from_width(double v0, double width) {
    return SquarePotential{v0, 0.5 * width};
  }

  double width() const { return 2.0 * half_width; }

  /// Signed 2 m V0 / hbar^2; negative for wells.
  double kappa_squared(const PhysicalConstants& c) const {
    return 2.0 * c.mass * v0 / (c.hbar * c.hbar);
  }

  /// Barrier momentum sqrt(2 m V0); only defined for barriers.
  double barrier_momentum(const PhysicalConstants& c) const {
    if (!(v0 > 0.0)) {
      throw DomainError("barrier momentum requires v0 > 0");
    }
    return std::sqrt(2.0 * c.mass * v0);
  }

  void validate() const {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
      throw DomainError("half_width must be positive and finite");
    }
    if (!std::isfinite(v0)) {
      throw DomainError("v0 must be finite");
    }
  }
};

/// Parity of the real standing-wave eigenfunctions.
enum class Parity { even = 0, odd = 1 };

constexpr std::string_view to_string(Parity p) {
  return p == Parity::even ? "even" : "odd";
}

}  // namespace hartman
