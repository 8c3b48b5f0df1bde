#pragma once

#include <cstddef>
#include <vector>

#include "hartman/scattering.hpp"
#include "hartman/types.hpp"

namespace hartman {

enum class GridSpacing { automatic, linear, logarithmic };

struct PhaseTableOptions {
  /// Nodes of the base grid before refinement.
  std::size_t samples = 512;
  /// automatic: logarithmic when k_max / k_min > 50.
  GridSpacing spacing = GridSpacing::automatic;
  /// Largest phase change allowed between adjacent nodes (radians, at most
  /// pi/2). Intervals exceeding it are bisected.
  double max_jump = 0.5;
  /// Refinement gives up below this step relative to k.
  double min_relative_step = 1e-12;
  /// Wavenumbers that must appear in the table (inside [k_min, k_max]).
  std::vector<double> extra_nodes;
};

/// Continuously unwrapped transmission phase and eigenphases on an
/// increasing k grid, anchored so that all phases vanish as k -> infinity.
struct PhaseTable {
  SquarePotential potential;
  PhysicalConstants constants;
  std::vector<double> k_grid;
  std::vector<cplx> t;
  std::vector<double> phi_t;
  std::vector<double> delta0;
  std::vector<double> delta1;
  std::vector<double> dphi_t;
  std::vector<double> ddelta0;
  std::vector<double> ddelta1;

  std::size_t size() const { return k_grid.size(); }
  double k_min() const { return k_grid.front(); }
  double k_max() const { return k_grid.back(); }
  bool contains(double k) const {
    return !k_grid.empty() && k >= k_min() && k <= k_max();
  }
};

/// Default upper wavenumber for the anchor: max(20 kappa, 40 / a,
/// kappa^2 d), kappa = sqrt(2 m |V0|) / hbar. The last term keeps the
/// O(kappa^2 d / 2k) tail of phi_T below pi/2.
double default_anchor_k(const SquarePotential& pot, const PhysicalConstants& c);

/// Evaluates the phases on [k_min, k_max], anchors them at k_max to their
/// principal values and unwraps downward. Throws DomainError when the
/// anchor condition fails at k_max and ConvergenceError when an interval
/// cannot be refined.
PhaseTable build_phase_table(const SquarePotential& pot,
                             const PhysicalConstants& c, double k_min,
                             double k_max, const PhaseTableOptions& opts = {});

/// Relative difference between the analytic dphi_T/dk and a five-point
/// central difference of the unwrapped phase, per table node. Nodes closer
/// than two steps to the table ends report zero.
std::vector<double> slope_discrepancy(const PhaseTable& table,
                                      double relative_step = 1e-4);

}  // namespace hartman
