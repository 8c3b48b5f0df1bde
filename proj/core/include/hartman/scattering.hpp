#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hartman/types.hpp"

namespace hartman {

using cplx = std::complex<double>;

/// Transmission and reflection amplitudes at wavenumber k. For real k > 0,
/// t = |t| exp(i phi_T) with phi_T the principal argument.
struct Amplitudes {
  cplx k;
  cplx t;
  cplx r;

  double transmission() const { return std::norm(t); }
  double reflection() const { return std::norm(r); }
  double phase() const { return std::arg(t); }
};

/// Parity-channel S-matrix eigenvalues s0 = t + r (even), s1 = t - r (odd)
/// and principal phase shifts delta_j = arg(s_j) / 2 in (-pi/2, pi/2].
struct EigenChannelValues {
  cplx s0;
  cplx s1;
  double delta0 = 0.0;
  double delta1 = 0.0;
};

/// k-derivatives of the transmission phase and the two eigenphases.
struct PhaseSlopes {
  double dphi_t = 0.0;
  double ddelta0 = 0.0;
  double ddelta1 = 0.0;
};

/// Everything the phase table and the delay module need at one real k.
struct ScatteringPoint {
  double k = 0.0;
  Amplitudes amps;
  EigenChannelValues channels;
  PhaseSlopes slopes;
};

/// Closed-form amplitudes
///   t = exp(-ikd) / D,  D = cos(qd) - (i/2)(k/q + q/k) sin(qd),
///   r = t (i/2)(q/k - k/q) sin(qd),   q^2 = k^2 - 2 m V0 / hbar^2.
/// Both are entire in q^2, so k may be complex; the E = V0 point is
/// evaluated by series. Throws DomainError for k = 0.
Amplitudes amplitudes(const SquarePotential& pot, const PhysicalConstants& c,
                      cplx k);

inline Amplitudes amplitudes(const SquarePotential& pot,
                             const PhysicalConstants& c, double k) {
  return amplitudes(pot, c, cplx(k, 0.0));
}

EigenChannelValues eigen_channels(const Amplitudes& amps);

/// Analytic d(phi_T)/dk and d(delta_j)/dk for real k > 0.
PhaseSlopes phase_slopes(const SquarePotential& pot,
                         const PhysicalConstants& c, double k);

ScatteringPoint evaluate(const SquarePotential& pot,
                         const PhysicalConstants& c, double k);

/// S_j(k) for complex k, without the principal-phase bookkeeping.
struct ChannelMatrix {
  cplx s0;
  cplx s1;
  /// exp(ikd) s_j, bounded by one in the upper half plane without bound
  /// states.
  cplx s0_shifted;
  cplx s1_shifted;
  /// |D| relative to the magnitude of its terms; small near a pole.
  double denominator_scale = 1.0;
};

ChannelMatrix channel_matrix(const SquarePotential& pot,
                             const PhysicalConstants& c, cplx k);

struct VanKampenSample {
  cplx k;
  double shifted_modulus[2] = {0.0, 0.0};
  double symmetry_error[2] = {0.0, 0.0};
  bool near_pole = false;
  bool pass = false;
};

/// Checks |exp(ikd) S_j(k)| <= 1 + 1e-10 and S_j(k)* = S_j(-k*) at each
/// sample with Im k >= 0. Requires v0 >= 0 (no bound states). Samples near
/// a pole are flagged rather than rejected.
std::vector<VanKampenSample> van_kampen_check(const SquarePotential& pot,
                                              const PhysicalConstants& c,
                                              std::span<const cplx> samples);

}  // namespace hartman
