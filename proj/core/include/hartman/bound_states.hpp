#pragma once

#include <cstddef>
#include <vector>

#include "hartman/phase_table.hpp"
#include "hartman/types.hpp"

namespace hartman {

struct BoundLevel {
  Parity parity = Parity::even;
  /// Decay constant outside the well (inverse length).
  double k_b = 0.0;
  /// Interior wavenumber; q^2 + k_b^2 = 2 m |V0| / hbar^2.
  double q = 0.0;
  /// -(hbar k_b)^2 / 2m.
  double energy = 0.0;
  /// Matching residual (q sin qa - k_b cos qa) / kappa for even levels,
  /// (q cos qa + k_b sin qa) / kappa for odd ones.
  double residual = 0.0;
  bool near_threshold = false;
};

/// Bound levels sorted by energy (deepest first); parities alternate
/// starting from even.
struct BoundStateSpectrum {
  std::vector<BoundLevel> levels;
  /// The well depth sits on a threshold; the zero-energy state is excluded.
  bool at_threshold = false;

  std::size_t count() const { return levels.size(); }
  /// Smallest decay constant (shallowest level); requires count() > 0.
  double shallowest_k_b() const { return levels.back().k_b; }
};

/// V0 at which the n-th bound state appears: -hbar^2 n^2 pi^2 / (8 m a^2).
double threshold_depth(int n, const SquarePotential& pot,
                       const PhysicalConstants& c);

struct ThresholdProximity {
  int index = 0;         // nearest n
  double depth = 0.0;    // threshold_depth(index)
  double distance = 0.0; // |V0 - depth|
};

ThresholdProximity nearest_threshold(const SquarePotential& pot,
                                     const PhysicalConstants& c);

/// floor(2 a sqrt(2 m |V0|) / (pi hbar)) + 1 for wells, 0 otherwise. A well
/// exactly on a threshold does not count its zero-energy state.
std::size_t count_bound_states(const SquarePotential& pot,
                               const PhysicalConstants& c);

bool is_at_threshold(const SquarePotential& pot, const PhysicalConstants& c);

/// Solves the even (q tan qa = K) and odd (-q cot qa = K) matching
/// conditions on q^2 + K^2 = 2 m |V0| / hbar^2 by bisection on disjoint
/// brackets. Requires V0 < 0. Throws ConvergenceError if a residual exceeds
/// `tol` and std::logic_error on a count mismatch.
BoundStateSpectrum solve_bound_states(const SquarePotential& pot,
                                      const PhysicalConstants& c,
                                      double tol = 1e-12);

struct LevinsonReport {
  double phi_t_at_kmin = 0.0;
  double predicted = 0.0;
  double residual = 0.0;
  std::size_t n_b = 0;
  /// Branch of Levinson's theorem: T(k -> 0) = 0.
  bool t_vanishes_at_zero = true;
  double t_modulus_at_kmin = 0.0;
  /// |T(k_min)| < 0.5: k_min is small enough for the T(0) = 0 branch to be
  /// visible.
  bool asymptotic = true;
};

/// Compares the unwrapped phi_T(k_min) with pi (n_b - 1/2) (generic case)
/// or pi n_b (T(0) != 0). Refuses wells within 1e-8 of a threshold.
LevinsonReport levinson_check(const SquarePotential& pot,
                              const PhysicalConstants& c, double k_min,
                              const PhaseTableOptions& opts = {});

}  // namespace hartman
