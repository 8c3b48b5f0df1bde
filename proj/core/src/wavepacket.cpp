#include "hartman/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hartman/bound_states.hpp"
#include "hartman/scattering.hpp"

namespace hartman {

namespace {

constexpr double kPi = std::numbers::pi;

void require_left_of_potential(const GaussianPacketSpec& spec,
                               const SquarePotential& pot) {
  if (!(spec.x0 + pot.half_width < 0.0)) {
    throw DomainError("packet must start left of the potential (x0 < -a)");
  }
}

// Momenta p_n = hbar sqrt((n pi / d)^2 + 2 m V0 / hbar^2) where sin(qd) = 0.
void add_resonances(const SquarePotential& pot, const PhysicalConstants& c,
                    double p_lo, double p_hi, std::vector<double>& out) {
  const double kap2 = pot.kappa_squared(c);
  const double step = kPi / pot.width();
  for (int n = 1; n < 4000; ++n) {
    const double k2 = std::pow(n * step, 2) + kap2;
    if (k2 <= 0.0) {
      continue;
    }
    const double p = c.hbar * std::sqrt(k2);
    if (p >= p_hi) {
      break;
    }
    if (p > p_lo) {
      out.push_back(p);
    }
  }
}

}  // namespace

void GaussianPacketSpec::validate() const {
  if (!(k0 > 0.0) || !std::isfinite(k0)) {
    throw DomainError("packet k0 must be positive");
  }
  if (!(delta_p > 0.0) || !std::isfinite(delta_p)) {
    throw DomainError("packet delta_p must be positive");
  }
  if (!std::isfinite(x0)) {
    throw DomainError("packet x0 must be finite");
  }
}

double GaussianPacketSpec::norm_constant(const PhysicalConstants& c) const {
  validate();
  const double p0 = central_momentum(c);
  const double mass = delta_p * std::sqrt(0.5 * kPi) *
                      std::erfc(-p0 / (std::numbers::sqrt2 * delta_p));
  return 1.0 / std::sqrt(mass);
}

std::complex<double> packet_amplitude(const GaussianPacketSpec& spec,
                                      const PhysicalConstants& c, double p) {
  if (!(p > 0.0)) {
    throw DomainError("packet amplitude is defined for p > 0 only");
  }
  const double p0 = spec.central_momentum(c);
  const double envelope =
      spec.norm_constant(c) *
      std::exp(-std::pow(p - p0, 2) / (4.0 * spec.delta_p * spec.delta_p));
  return std::polar(envelope, -p * spec.x0 / c.hbar);
}

double packet_density(const GaussianPacketSpec& spec,
                      const PhysicalConstants& c, double p) {
  if (!(p > 0.0)) {
    return 0.0;
  }
  const double n = spec.norm_constant(c);
  const double p0 = spec.central_momentum(c);
  return n * n *
         std::exp(-std::pow(p - p0, 2) / (2.0 * spec.delta_p * spec.delta_p));
}

double x0_of_p(const GaussianPacketSpec& spec, const PhysicalConstants& c,
               double p) {
  if (std::abs(packet_amplitude(spec, c, p)) == 0.0) {
    throw DomainError("x0(p) undefined where the packet amplitude vanishes");
  }
  // d/dp log phi = -(p - p0) / (2 dp^2) - i x0 / hbar.
  const double p0 = spec.central_momentum(c);
  const std::complex<double> dlog(
      -(p - p0) / (2.0 * spec.delta_p * spec.delta_p), -spec.x0 / c.hbar);
  return -c.hbar * dlog.imag();
}

double packet_momentum_cutoff(const GaussianPacketSpec& spec,
                              const PhysicalConstants& c) {
  return spec.central_momentum(c) + 12.0 * spec.delta_p;
}

std::vector<double> packet_breakpoints(const GaussianPacketSpec& spec,
                                       const SquarePotential& pot,
                                       const PhysicalConstants& c, double p_lo,
                                       double p_hi) {
  const double p0 = spec.central_momentum(c);
  const double dp = spec.delta_p;
  std::vector<double> pts = {p0,          p0 - dp,     p0 + dp,
                             p0 - 3 * dp, p0 + 3 * dp, p0 + 6 * dp};
  if (pot.v0 > 0.0) {
    pts.push_back(pot.barrier_momentum(c));
  }
  add_resonances(pot, c, p_lo, p_hi, pts);
  const double ladder_top = std::min({p0, dp, p_hi});
  for (double p = p_lo * 2.0; p < ladder_top; p *= 2.0) {
    pts.push_back(p);
  }
  return quad::make_breakpoints(p_lo, p_hi, std::move(pts));
}

double transmission_probability(const GaussianPacketSpec& spec,
                                const SquarePotential& pot,
                                const PhysicalConstants& c,
                                const quad::Options& opts) {
  spec.validate();
  pot.validate();
  const double p_lo = 1e-10 * std::min(spec.central_momentum(c), spec.delta_p);
  const double p_hi = packet_momentum_cutoff(spec, c);
  const auto f = [&](double p) {
    return packet_density(spec, c, p) *
           amplitudes(pot, c, p / c.hbar).transmission();
  };
  const auto pts = packet_breakpoints(spec, pot, c, p_lo, p_hi);
  return quad::integrate(f, pts, opts).value;
}

ClassicalTime classical_reference_time(const GaussianPacketSpec& spec,
                                       const SquarePotential& pot,
                                       const PhysicalConstants& c) {
  spec.validate();
  pot.validate();
  const double p0 = spec.central_momentum(c);
  const double m = c.mass;
  const double a = pot.half_width;
  const double inside2 = p0 * p0 - 2.0 * m * pot.v0;
  if (inside2 > 0.0) {
    return {m * (-a - spec.x0) / p0 + m * pot.width() / std::sqrt(inside2),
            true};
  }
  return {m * (a - spec.x0) / p0, false};
}

PassageTimeReport mean_exit_time(const GaussianPacketSpec& spec,
                                 const SquarePotential& pot,
                                 const PhysicalConstants& c,
                                 const quad::Options& opts) {
  spec.validate();
  pot.validate();
  c.validate();
  require_left_of_potential(spec, pot);

  const double p0 = spec.central_momentum(c);
  const double peak_density = packet_density(spec, c, std::max(p0, 1e-300));
  const double density_at_zero = packet_density(
      spec, c, std::numeric_limits<double>::min());
  const bool threshold = pot.v0 == 0.0 || is_at_threshold(pot, c);
  if (threshold && density_at_zero > 1e-12 * peak_density) {
    throw DivergenceError(
        "mean exit time diverges: zero-energy transmission at a bound-state "
        "threshold with a packet that does not vanish at p = 0");
  }

  const double a = pot.half_width;
  const double m = c.mass;
  const auto integrand = [&](double p) {
    const double k = p / c.hbar;
    const double t2 = amplitudes(pot, c, k).transmission();
    const double slope = phase_slopes(pot, c, k).dphi_t;
    return m / p * packet_density(spec, c, p) * t2 *
           (a - x0_of_p(spec, c, p) + slope);
  };

  PassageTimeReport report;
  report.p_t = transmission_probability(spec, pot, c, opts);

  double eps = 1e-6 * std::min(p0, spec.delta_p);
  const double p_hi = packet_momentum_cutoff(spec, c);
  double total =
      quad::integrate(integrand, packet_breakpoints(spec, pot, c, eps, p_hi),
                      opts)
          .value;
  // Near p = 0 the integrand is O(p) off threshold; extend the lower limit
  // until the linear estimate of the remainder is negligible.
  double previous_piece = 0.0;
  int stagnant = 0;
  while (std::abs(integrand(eps)) * eps * 0.5 > 1e-12 * std::abs(total)) {
    const double piece = quad::integrate(integrand, 0.5 * eps, eps, opts).value;
    total += piece;
    eps *= 0.5;
    stagnant = (previous_piece != 0.0 &&
                std::abs(piece) > 0.9 * std::abs(previous_piece))
                   ? stagnant + 1
                   : 0;
    previous_piece = piece;
    if (stagnant >= 30 || eps < 1e-250) {
      std::ostringstream msg;
      msg << "mean exit time diverges as the lower momentum cutoff shrinks "
             "(cutoff "
          << eps << ", partial value " << total / report.p_t << ")";
      throw DivergenceError(msg.str());
    }
  }

  report.t_out = total / report.p_t;
  const ClassicalTime cl = classical_reference_time(spec, pot, c);
  report.t_classical = cl.time;
  report.classical_defined = cl.defined;
  report.t_subtracted = report.t_out - report.t_classical;
  return report;
}

double critical_width(const GaussianPacketSpec& spec,
                      const SquarePotential& pot, const PhysicalConstants& c) {
  spec.validate();
  if (!(pot.v0 > 0.0)) {
    throw DomainError("critical width requires a barrier (v0 > 0)");
  }
  const double pb = pot.barrier_momentum(c);
  const double p0 = spec.central_momentum(c);
  if (!(p0 < pb)) {
    throw DomainError("critical width requires p0 < p_b");
  }
  return c.hbar / (4.0 * spec.delta_p * spec.delta_p) *
         std::sqrt(std::pow(pb - p0, 3) / (pb + p0));
}

double crossover_balance(const GaussianPacketSpec& spec, double v0,
                         double width, const PhysicalConstants& c) {
  const SquarePotential pot = SquarePotential::from_width(v0, width);
  const double pb = pot.barrier_momentum(c);
  const double p0 = spec.central_momentum(c);
  const double dp = spec.delta_p;
  const auto f = [&](double p) {
    return packet_density(spec, c, p) *
           amplitudes(pot, c, p / c.hbar).transmission();
  };
  quad::Options opts;
  opts.rel_tol = 1e-8;

  const double scale = dp * dp / std::max(std::abs(pb - p0), dp);
  std::vector<double> below_pts = {p0, p0 + dp, p0 - dp};
  std::vector<double> above_pts;
  for (int j = 1; j <= 40; ++j) {
    below_pts.push_back(pb * (1.0 - std::ldexp(1.0, -j)));
  }
  for (double s : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    above_pts.push_back(pb + s * scale);
    below_pts.push_back(pb - s * scale);
  }
  const double upper =
      p0 + std::sqrt(std::pow(std::max(pb - p0, 0.0), 2) + 80.0 * dp * dp);
  add_resonances(pot, c, pb, upper, above_pts);

  const double lo_edge = 1e-10 * std::min(p0, dp);
  const double below =
      quad::integrate(f, quad::make_breakpoints(lo_edge, pb, below_pts), opts)
          .value;
  const double above =
      quad::integrate(f, quad::make_breakpoints(pb, upper, above_pts), opts)
          .value;
  return below - above;
}

double crossover_width_empirical(const GaussianPacketSpec& spec,
                                 const SquarePotential& pot,
                                 const PhysicalConstants& c, double tol) {
  const double dc = critical_width(spec, pot, c);
  const double pb = pot.barrier_momentum(c);
  const double length = c.hbar / pb;
  double lo = 1e-6 * length;
  double hi = std::max(dc, length);
  if (!(crossover_balance(spec, pot.v0, lo, c) > 0.0)) {
    std::ostringstream msg;
    msg << "crossover: below-barrier part does not dominate at d = " << lo;
    throw ConvergenceError(msg.str(), lo);
  }
  // cosh(kappa d) must stay finite.
  const double d_limit = 600.0 * length;
  while (crossover_balance(spec, pot.v0, hi, c) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > d_limit) {
      std::ostringstream msg;
      msg << "crossover: no sign change in [" << 1e-6 * length << ", "
          << d_limit << "]";
      throw ConvergenceError(msg.str(), hi);
    }
  }
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (crossover_balance(spec, pot.v0, mid, c) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace hartman
