#pragma once

#include <complex>
#include <vector>

#include "hartman/quadrature.hpp"
#include "hartman/types.hpp"

namespace hartman {

/// Gaussian momentum amplitude restricted to p > 0 and renormalized:
///   phi(p) = N exp(-(p - p0)^2 / (4 dp^2)) exp(-i p x0 / hbar),  p > 0,
/// with p0 = hbar k0 and dp = delta_p the momentum standard deviation of
/// the untruncated Gaussian.
struct GaussianPacketSpec {
  double k0 = 1.0;
  double delta_p = 0.1;
  double x0 = -10.0;

  void validate() const;
  double central_momentum(const PhysicalConstants& c) const {
    return c.hbar * k0;
  }
  /// N, fixed by the integral of |phi|^2 over (0, inf) being one.
  double norm_constant(const PhysicalConstants& c) const;
};

std::complex<double> packet_amplitude(const GaussianPacketSpec& spec,
                                      const PhysicalConstants& c, double p);

/// |phi(p)|^2; zero for p <= 0.
double packet_density(const GaussianPacketSpec& spec,
                      const PhysicalConstants& c, double p);

/// -hbar Im(phi'(p) / phi(p)); the constant x0 for a Gaussian.
double x0_of_p(const GaussianPacketSpec& spec, const PhysicalConstants& c,
               double p);

/// Momentum above which |phi|^2 is below exp(-72) of its peak.
double packet_momentum_cutoff(const GaussianPacketSpec& spec,
                              const PhysicalConstants& c);

/// Integration breakpoints for packet integrals against |T(p)|^2: the
/// packet centre, the barrier momentum, above-barrier resonances
/// (sin(qd) = 0) and a geometric ladder towards p = 0.
std::vector<double> packet_breakpoints(const GaussianPacketSpec& spec,
                                       const SquarePotential& pot,
                                       const PhysicalConstants& c, double p_lo,
                                       double p_hi);

/// P_T = int_0^inf |phi|^2 |T|^2 dp.
double transmission_probability(const GaussianPacketSpec& spec,
                                const SquarePotential& pot,
                                const PhysicalConstants& c,
                                const quad::Options& opts = {});

struct ClassicalTime {
  double time = 0.0;
  /// False when p0^2 <= 2 m V0; time then holds the free value.
  bool defined = true;
};

/// Classical time from x0 to +a at momentum p0, moving through the
/// potential region with sqrt(p0^2 - 2 m V0).
ClassicalTime classical_reference_time(const GaussianPacketSpec& spec,
                                       const SquarePotential& pot,
                                       const PhysicalConstants& c);

struct PassageTimeReport {
  double p_t = 0.0;
  double t_out = 0.0;
  double t_classical = 0.0;
  double t_subtracted = 0.0;
  bool classical_defined = true;
};

/// Flux-averaged exit time at x = a,
///   t_out = (m / P_T) int dp/p |phi|^2 |T|^2 [a - x0(p) + dphi_T/dk].
/// The lower limit is pushed towards zero until the discarded part is below
/// 1e-12 of the result. Throws DivergenceError when the integral grows
/// without bound (threshold well, packet nonvanishing at p = 0).
PassageTimeReport mean_exit_time(const GaussianPacketSpec& spec,
                                 const SquarePotential& pot,
                                 const PhysicalConstants& c,
                                 const quad::Options& opts = {});

/// (hbar / 4 dp^2) ((p_b - p0)^3 / (p_b + p0))^{1/2}; needs V0 > 0 and
/// p0 < p_b.
double critical_width(const GaussianPacketSpec& spec,
                      const SquarePotential& pot, const PhysicalConstants& c);

/// Width at which the below- and above-barrier parts of the transmitted
/// probability are equal, found by bisection in d. `pot.half_width` is
/// ignored.
double crossover_width_empirical(const GaussianPacketSpec& spec,
                                 const SquarePotential& pot,
                                 const PhysicalConstants& c,
                                 double tol = 1e-6);

/// Below-barrier minus above-barrier transmitted probability at width d.
double crossover_balance(const GaussianPacketSpec& spec, double v0,
                         double width, const PhysicalConstants& c);

}  // namespace hartman
