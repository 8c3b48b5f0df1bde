#pragma once

#include "hartman/types.hpp"

namespace hartman {

/// Dwell time of the real standing wave of given parity, normalized to
/// amplitude (2/h)^{1/2} outside the potential.
struct DwellRecord {
  double k = 0.0;
  Parity parity = Parity::even;
  double tau_d = 0.0;
  /// Integral of psi_j^2 over [-a, a].
  double interior_norm = 0.0;
};

/// Interior norm in closed form: psi_0 = C0 cos(qx), psi_1 = C1 sin(qx),
/// with C_j^2 fixed by matching value and slope at x = a. Finite for every
/// real q^2 including q -> 0 and cos(qa) -> 0.
DwellRecord dwell_time(const SquarePotential& pot, const PhysicalConstants& c,
                       double k, Parity parity);

/// Outer standing wave and its x-derivative at x = a for a given eigenphase:
///   even: (2/h)^{1/2} cos(ka + delta),  odd: (2/h)^{1/2} sin(ka + delta).
struct EdgeValues {
  double psi = 0.0;
  double dpsi = 0.0;
};

EdgeValues edge_values(const PhysicalConstants& c, double k, double a,
                       Parity parity, double delta);

struct SmithReport {
  /// Closed-form interior norm.
  double lhs = 0.0;
  /// (hbar^2/m)(psi_E psi' - psi psi_E') at x = a, Richardson-extrapolated
  /// from steps dE and dE/2.
  double rhs = 0.0;
  double relative_error = 0.0;
  /// Same comparison with steps dE/2 and dE/4.
  double relative_error_half_step = 0.0;
  /// Round-off dominates: halving the step made the error grow, or the
  /// step is so small that eps E / dE exceeds 1e-6.
  bool cancellation_warning = false;
  double energy_step = 0.0;
};

/// Verifies int_{-a}^{a} psi_j^2 dx = (hbar^2/m)(psi_E psi' - psi psi_E')(a)
/// with the energy derivative taken by central differences of the
/// eigenphase. dE <= 0 selects the step automatically from a decade scan.
SmithReport smith_identity_check(const SquarePotential& pot,
                                 const PhysicalConstants& c, double k,
                                 Parity parity, double dE = 0.0);

}  // namespace hartman
