#pragma once

#include <optional>
#include <vector>

#include "hartman/bound_states.hpp"
#include "hartman/phase_table.hpp"

namespace hartman {

/// Time delay, phase time and the causality bounds at one wavenumber.
struct DelayRecord {
  double k = 0.0;
  /// (m / hbar k) dphi_T/dk.
  double delta_t = 0.0;
  /// hbar dphi_T/dp = dphi_T/dk.
  double spatial_delay = 0.0;
  /// Extrapolated phase time m d / p + delta_t.
  double tau_ph = 0.0;
  /// -m d / p; holds without bound states.
  double bound_simple = 0.0;
  /// (m / hbar k) {-d - [sin(2ka + 2 delta0) - sin(2ka + 2 delta1)] / 2k}.
  double bound_tight_osc = 0.0;
  /// (m / p)(-d - 1/k).
  double bound_tight_weak = 0.0;
  /// -(m / p)(d + 1 / K_b) using the shallowest bound state; only for wells.
  std::optional<double> bound_bound_state;
  /// Set when the well has more than one bound state: the single-state
  /// bound is then evaluated with the smallest K_b only.
  bool multiple_bound_states = false;
};

/// Delay quantities evaluated directly from the closed form. `spectrum` is
/// used for the bound-state field when given; otherwise wells are solved on
/// demand.
DelayRecord delay_record(const SquarePotential& pot,
                         const PhysicalConstants& c, double k,
                         const BoundStateSpectrum* spectrum = nullptr);

/// Wigner time delay at k; k must lie inside the table range.
double wigner_delay(const PhaseTable& table, double k);

/// Extrapolated phase time m d / p + delta_t.
double phase_time(const PhaseTable& table, double k);

DelayRecord causality_bounds(const PhaseTable& table, double k);

struct EigenphaseBoundViolation {
  double k = 0.0;
  int channel = 0;
  double slope = 0.0;
  double bound = 0.0;
};

struct EigenphaseBoundReport {
  /// delta_0' > -a - sin[2(ka + delta_0)] / 2k and
  /// delta_1' > -a + sin[2(ka + delta_1)] / 2k; hold for every real V0.
  std::vector<EigenphaseBoundViolation> oscillatory;
  /// delta_j' >= -a; required only without bound states.
  std::vector<EigenphaseBoundViolation> causal;
  bool causal_required = false;
  double min_oscillatory_slack = 0.0;
  double min_causal_slack = 0.0;

  bool passed() const {
    return oscillatory.empty() && (!causal_required || causal.empty());
  }
};

EigenphaseBoundReport eigenphase_derivative_bounds(const PhaseTable& table,
                                                   double tol = 1e-9);

}  // namespace hartman
