#include "hartman/flux_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "hartman/errors.hpp"
#include "hartman/quadrature.hpp"
#include "hartman/scattering.hpp"

namespace hartman {

namespace {

constexpr std::size_t kReseed = 512;
constexpr std::size_t kNodesPerPanel = 16;
constexpr std::size_t kMaxMomentumNodes = std::size_t{1} << 24;

struct Grid {
  double step = 0.0;
  std::vector<double> a_re, a_im;  // phi T e^{i p a / hbar}, index j -> p = (j+1) step
};

// Largest |dphi_T/dk| over momenta carrying non-negligible transmitted
// weight; this is the spatial shift of the transmitted wave relative to
// free motion.
double max_spatial_delay(const GaussianPacketSpec& spec,
                         const SquarePotential& pot,
                         const PhysicalConstants& c, double p_up) {
  const double peak = packet_density(spec, c, spec.central_momentum(c));
  double out = 0.0;
  constexpr int kSamples = 2000;
  for (int i = 0; i <= kSamples; ++i) {
    const double p = p_up * std::pow(1e-9, 1.0 - static_cast<double>(i) / kSamples);
    const double k = p / c.hbar;
    const double weight =
        packet_density(spec, c, p) * amplitudes(pot, c, k).transmission();
    if (weight > 1e-14 * peak) {
      out = std::max(out, std::abs(phase_slopes(pot, c, k).dphi_t));
    }
  }
  return out;
}

// Spatial period of the trapezoidal momentum sum is 2 pi hbar / step; it has
// to exceed the extent of the transmitted wave at time t.
double alias_length(const GaussianPacketSpec& spec, const SquarePotential& pot,
                    const PhysicalConstants& c, double p_up, double shift,
                    double t) {
  const double a = pot.half_width;
  return 2.0 * (a - spec.x0 + p_up * std::abs(t) / c.mass + shift) +
         40.0 * c.hbar / spec.delta_p + 10.0 * pot.width();
}

// Sums sum_m A_m z_m and sum_m p_m A_m z_m over j = s-1, 2s-1, ..., with
// z_m = exp(-i p_m^2 t / (2 m hbar)).
void momentum_sums(const Grid& g, std::size_t stride, double t,
                   const PhysicalConstants& c, double out[4]) {
  const double h = g.step * static_cast<double>(stride);
  const double rate = -t / (2.0 * c.mass * c.hbar);
  const double c_arg = 2.0 * rate * h * h;
  const double cc = std::cos(c_arg), cs = std::sin(c_arg);
  double sa_re = 0, sa_im = 0, sb_re = 0, sb_im = 0;
  double z_re = 0, z_im = 0, r_re = 0, r_im = 0;
  const std::size_t count = g.a_re.size() / stride;
  for (std::size_t m = 0; m < count; ++m) {
    const double p = h * static_cast<double>(m + 1);
    if (m % kReseed == 0) {
      const double arg = rate * p * p;
      z_re = std::cos(arg);
      z_im = std::sin(arg);
      const double r_arg = rate * (2.0 * p * h + h * h);
      r_re = std::cos(r_arg);
      r_im = std::sin(r_arg);
    }
    const std::size_t j = (m + 1) * stride - 1;
    const double ar = g.a_re[j], ai = g.a_im[j];
    const double v_re = ar * z_re - ai * z_im;
    const double v_im = ar * z_im + ai * z_re;
    sa_re += v_re;
    sa_im += v_im;
    sb_re += p * v_re;
    sb_im += p * v_im;
    const double nz_re = z_re * r_re - z_im * r_im;
    z_im = z_re * r_im + z_im * r_re;
    z_re = nz_re;
    const double nr_re = r_re * cc - r_im * cs;
    r_im = r_re * cs + r_im * cc;
    r_re = nr_re;
  }
  out[0] = sa_re;
  out[1] = sa_im;
  out[2] = sb_re;
  out[3] = sb_im;
}

}  // namespace

FluxResult mean_exit_time_via_flux(const GaussianPacketSpec& spec,
                                   const SquarePotential& pot,
                                   const PhysicalConstants& c,
                                   TimeWindow window, double tol) {
  spec.validate();
  pot.validate();
  c.validate();
  if (!(window.t_hi > window.t_lo)) {
    throw DomainError("flux window must satisfy t_lo < t_hi");
  }
  if (!(tol > 0.0)) {
    throw DomainError("flux tolerance must be positive");
  }
  if (!(spec.x0 + pot.half_width < 0.0)) {
    throw DomainError("packet must start left of the potential (x0 < -a)");
  }

  const double p_up = packet_momentum_cutoff(spec, c);
  const double shift = max_spatial_delay(spec, pot, c, p_up);
  const double base_step =
      2.0 * std::numbers::pi * c.hbar /
      alias_length(spec, pot, c, p_up, shift,
                   std::max(std::abs(window.t_lo), std::abs(window.t_hi)));
  const double nodes = std::ceil(p_up / base_step);
  if (nodes > static_cast<double>(kMaxMomentumNodes)) {
    std::ostringstream msg;
    msg << "flux window up to t = " << window.t_hi << " needs " << nodes
        << " momentum nodes (limit " << kMaxMomentumNodes << ")";
    throw DomainError(msg.str());
  }
  const auto n = static_cast<std::size_t>(nodes);
  Grid g;
  g.step = p_up / static_cast<double>(n);
  g.a_re.resize(n);
  g.a_im.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double p = g.step * static_cast<double>(j + 1);
    const cplx v = packet_amplitude(spec, c, p) *
                   amplitudes(pot, c, p / c.hbar).t *
                   std::polar(1.0, p * pot.half_width / c.hbar);
    g.a_re[j] = v.real();
    g.a_im[j] = v.imag();
  }

  std::vector<double> gl_x, gl_w;
  quad::gauss_legendre(kNodesPerPanel, gl_x, gl_w);
  const double p0 = spec.central_momentum(c);
  const double min_width =
      c.hbar * c.mass / (spec.delta_p * (p0 + 3.0 * spec.delta_p));
  const double planck = c.planck();

  FluxResult res;
  res.momentum_nodes = n;
  double f0 = 0.0, f1 = 0.0;
  // Panels are finest around the arrival of the central momentum and grow
  // geometrically away from it in both directions.
  const double center = std::clamp(
      c.mass * (pot.half_width - spec.x0 + phase_slopes(pot, c, p0 / c.hbar).dphi_t) / p0,
      window.t_lo, window.t_hi);
  double t = window.t_lo;
  while (t < window.t_hi) {
    const double width = std::max(min_width, 0.04 * std::abs(t - center));
    double end = t + width;
    if (t < center && end > center) {
      end = center;
    }
    if (end > window.t_hi - 0.5 * width) {
      end = window.t_hi;
    }
    std::size_t stride = 1;
    const double allowed =
        2.0 * std::numbers::pi * c.hbar /
        alias_length(spec, pot, c, p_up, shift, std::max(std::abs(t), std::abs(end)));
    while (2.0 * static_cast<double>(stride) * g.step <= allowed &&
           2 * stride <= n / 64) {
      stride *= 2;
    }
    const double h = g.step * static_cast<double>(stride);
    const double half = 0.5 * (end - t), mid = 0.5 * (end + t);
    for (std::size_t i = 0; i < kNodesPerPanel; ++i) {
      const double tn = mid + half * gl_x[i];
      double s[4];
      momentum_sums(g, stride, tn, c, s);
      // J = (hbar/m) Im(psi* psi_x) with psi = h S_A / sqrt(2 pi hbar),
      // psi_x = i h S_B / (hbar sqrt(2 pi hbar)).
      const double flux = h * h / (c.mass * planck) * (s[0] * s[2] + s[1] * s[3]);
      f0 += half * gl_w[i] * flux;
      f1 += half * gl_w[i] * tn * flux;
    }
    res.time_nodes += kNodesPerPanel;
    t = end;
  }

  res.integrated_flux = f0;
  res.transmission_probability = transmission_probability(spec, pot, c);
  res.deficit = std::abs(f0 - res.transmission_probability) /
                res.transmission_probability;
  res.mean_time = f1 / f0;
  if (res.deficit > tol) {
    std::ostringstream msg;
    msg << "flux window [" << window.t_lo << ", " << window.t_hi
        << "] misses transmitted probability: relative deficit "
        << res.deficit << " > " << tol;
    throw ConvergenceError(msg.str(), res.deficit);
  }
  return res;
}

TimeWindow suggest_flux_window(const GaussianPacketSpec& spec,
                               const SquarePotential& pot,
                               const PhysicalConstants& c,
                               double tail_fraction) {
  spec.validate();
  pot.validate();
  const double p0 = spec.central_momentum(c);
  const double p_up = packet_momentum_cutoff(spec, c);
  const double travel = pot.half_width - spec.x0;
  const double shift = max_spatial_delay(spec, pot, c, p_up);
  // Transmitted weight times the stationary-phase arrival time of p.
  const auto weight = [&](double p) {
    const double k = p / c.hbar;
    const double delay = phase_slopes(pot, c, k).dphi_t;
    return packet_density(spec, c, p) * amplitudes(pot, c, k).transmission() *
           c.mass * std::abs(travel + delay) / p;
  };
  const double p_t = transmission_probability(spec, pot, c);
  const double target = tail_fraction * p_t * c.mass * travel / p0;
  const auto tail = [&](double p_cut) {
    const double lo = 1e-12 * p_cut;
    return quad::integrate(
               weight, packet_breakpoints(spec, pot, c, lo, p_cut), {})
        .value;
  };

  double lo = std::log(1e-8 * p0), hi = std::log(std::min(p0, p_up));
  if (tail(std::exp(lo)) > target) {
    throw DomainError(
        "no finite flux window: slow transmitted content does not decay");
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tail(std::exp(mid)) > target ? hi : lo) = mid;
  }
  const double p_cut = std::exp(lo);
  TimeWindow w;
  w.t_lo = 0.25 * c.mass * (-pot.half_width - spec.x0) / p_up;
  w.t_hi = 2.0 * c.mass * (travel + shift) / p_cut;
  // A shallow bound state makes the delay strongly negative at low p, so
  // part of the transmitted flux arrives before the free packet would.
  double earliest = 0.0;
  constexpr int kSamples = 2000;
  for (int i = 0; i <= kSamples; ++i) {
    const double p =
        p_cut * std::pow(p_up / p_cut, static_cast<double>(i) / kSamples);
    const double arrival =
        c.mass * (travel + phase_slopes(pot, c, p / c.hbar).dphi_t) / p;
    earliest = std::min(earliest, arrival);
  }
  w.t_lo = std::min(w.t_lo, 2.0 * earliest);
  return w;
}

}  // namespace hartman
