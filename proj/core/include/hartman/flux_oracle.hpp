#pragma once

#include "hartman/types.hpp"
#include "hartman/wavepacket.hpp"

namespace hartman {

struct TimeWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

struct FluxResult {
  double mean_time = 0.0;
  double integrated_flux = 0.0;
  double transmission_probability = 0.0;
  /// |integrated_flux - P_T| / P_T
  double deficit = 0.0;
  std::size_t time_nodes = 0;
  std::size_t momentum_nodes = 0;
};

/// Time-domain mean exit time: the transmitted wave psi_T(a, t) and its
/// x-derivative are rebuilt by trapezoidal momentum sums on a time grid,
/// J = (hbar/m) Im(psi* dpsi/dx), and the result is int J t dt / int J dt.
/// Slow; intended as an independent check of mean_exit_time.
/// Throws ConvergenceError (estimate = deficit) when the flux integrated
/// over the window misses P_T by more than `tol` relative.
FluxResult mean_exit_time_via_flux(const GaussianPacketSpec& spec,
                                   const SquarePotential& pot,
                                   const PhysicalConstants& c,
                                   TimeWindow window, double tol = 1e-6);

/// Window whose late edge leaves out only momenta with transmitted weight
/// (including the 1/p arrival-time factor) below `tail_fraction`.
TimeWindow suggest_flux_window(const GaussianPacketSpec& spec,
                               const SquarePotential& pot,
                               const PhysicalConstants& c,
                               double tail_fraction = 1e-5);

}  // namespace hartman
