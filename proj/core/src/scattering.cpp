#include "hartman/scattering.hpp"

#include <cmath>

#include "trig_series.hpp"

namespace hartman {

namespace {

constexpr cplx I(0.0, 1.0);

struct Denominator {
  cplx d;        // D(k)
  cplx sinc;     // sin(qd)/q
  cplx dsinc;    // (d cos(qd) - sin(qd)/q) / q^2
  cplx cos_qd;
  double kap2;
  double width;
};

Denominator denominator(const SquarePotential& pot, const PhysicalConstants& c,
                        cplx k) {
  pot.validate();
  c.validate();
  if (k == cplx(0.0, 0.0)) {
    throw DomainError("amplitudes are undefined at k = 0");
  }
  const double kap2 = pot.kappa_squared(c);
  const double width = pot.width();
  const auto tp = detail::trig_parts(k * k - kap2, width);
  const cplx dval =
      tp.cos_ql - 0.5 * I * tp.sinc_ql * (2.0 * k * k - kap2) / k;
  return Denominator{dval, tp.sinc_ql, tp.dsinc, tp.cos_ql, kap2, width};
}

}  // namespace

Amplitudes amplitudes(const SquarePotential& pot, const PhysicalConstants& c,
                      cplx k) {
  const Denominator den = denominator(pot, c, k);
  if (den.kap2 == 0.0) {
    return Amplitudes{k, 1.0, 0.0};
  }
  const cplx t = std::exp(-I * k * den.width) / den.d;
  const cplx r = t * (-0.5 * I * den.kap2 * den.sinc / k);
  return Amplitudes{k, t, r};
}

EigenChannelValues eigen_channels(const Amplitudes& amps) {
  EigenChannelValues ev;
  ev.s0 = amps.t + amps.r;
  ev.s1 = amps.t - amps.r;
  ev.delta0 = 0.5 * std::arg(ev.s0);
  ev.delta1 = 0.5 * std::arg(ev.s1);
  return ev;
}

PhaseSlopes phase_slopes(const SquarePotential& pot,
                         const PhysicalConstants& c, double k) {
  if (!(k > 0.0)) {
    throw DomainError("phase slopes require real k > 0");
  }
  const Denominator den = denominator(pot, c, cplx(k, 0.0));
  const double kap2 = den.kap2;
  if (kap2 == 0.0) {
    return PhaseSlopes{};
  }
  const double d = den.width;
  // dq/dk = k/q; d(cos qd)/dk = -d k sin(qd)/q; d(sin(qd)/q)/dk = k dsinc.
  const cplx dprime =
      -d * k * den.sinc -
      0.5 * I *
          (den.dsinc * (2.0 * k * k - kap2) + den.sinc * (2.0 + kap2 / (k * k)));
  const cplx dlog_t = -I * d - dprime / den.d;

  const cplx g = 0.5 * I * kap2 * den.sinc / k;
  const cplx dg = 0.5 * I * kap2 * (den.dsinc - den.sinc / (k * k));
  const cplx g0 = 1.0 - g;
  const cplx g1 = 1.0 + g;

  PhaseSlopes out;
  out.dphi_t = dlog_t.imag();
  out.ddelta0 = 0.5 * (dlog_t - dg / g0).imag();
  out.ddelta1 = 0.5 * (dlog_t + dg / g1).imag();
  return out;
}

ScatteringPoint evaluate(const SquarePotential& pot,
                         const PhysicalConstants& c, double k) {
  ScatteringPoint p;
  p.k = k;
  p.amps = amplitudes(pot, c, k);
  p.channels = eigen_channels(p.amps);
  p.slopes = phase_slopes(pot, c, k);
  return p;
}

ChannelMatrix channel_matrix(const SquarePotential& pot,
                             const PhysicalConstants& c, cplx k) {
  const Denominator den = denominator(pot, c, k);
  const cplx g = 0.5 * I * den.kap2 * den.sinc / k;
  ChannelMatrix m;
  m.s0_shifted = (1.0 - g) / den.d;
  m.s1_shifted = (1.0 + g) / den.d;
  const cplx phase = std::exp(-I * k * den.width);
  m.s0 = phase * m.s0_shifted;
  m.s1 = phase * m.s1_shifted;
  const double terms =
      std::abs(den.cos_qd) +
      std::abs(0.5 * den.sinc * (2.0 * k * k - den.kap2) / k);
  m.denominator_scale = terms > 0.0 ? std::abs(den.d) / terms : 1.0;
  return m;
}

std::vector<VanKampenSample> van_kampen_check(const SquarePotential& pot,
                                              const PhysicalConstants& c,
                                              std::span<const cplx> samples) {
  if (pot.v0 < 0.0) {
    throw DomainError(
        "van Kampen bound applies only without bound states (v0 >= 0)");
  }
  constexpr double kBoundSlack = 1e-10;
  constexpr double kPoleScale = 1e-8;
  constexpr double kSymmetryTol = 1e-12;
  std::vector<VanKampenSample> out;
  out.reserve(samples.size());
  for (const cplx k : samples) {
    if (k.imag() < 0.0) {
      throw DomainError("van Kampen samples must satisfy Im k >= 0");
    }
    VanKampenSample s;
    s.k = k;
    const ChannelMatrix m = channel_matrix(pot, c, k);
    const ChannelMatrix mirror = channel_matrix(pot, c, -std::conj(k));
    s.near_pole = m.denominator_scale < kPoleScale;
    s.shifted_modulus[0] = std::abs(m.s0_shifted);
    s.shifted_modulus[1] = std::abs(m.s1_shifted);
    const auto rel = [](cplx a, cplx b) {
      const double scale = std::max(std::abs(a), std::abs(b));
      return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
    };
    s.symmetry_error[0] = rel(std::conj(m.s0), mirror.s0);
    s.symmetry_error[1] = rel(std::conj(m.s1), mirror.s1);
    s.pass = s.near_pole ||
             (s.shifted_modulus[0] <= 1.0 + kBoundSlack &&
              s.shifted_modulus[1] <= 1.0 + kBoundSlack &&
              s.symmetry_error[0] <= kSymmetryTol &&
              s.symmetry_error[1] <= kSymmetryTol);
    out.push_back(s);
  }
  return out;
}

}  // namespace hartman
