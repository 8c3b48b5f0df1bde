#include "hartman/dwell.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hartman/scattering.hpp"

namespace hartman {

namespace {

// sin(sqrt(u)) / sqrt(u), analytic for real u of either sign.
double sinc_sqrt(double u) {
  if (std::abs(u) < 0.25) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 12; ++n) {
      term *= -u / ((2.0 * n) * (2.0 * n + 1.0));
      sum += term;
    }
    return sum;
  }
  if (u > 0.0) {
    const double z = std::sqrt(u);
    return std::sin(z) / z;
  }
  const double z = std::sqrt(-u);
  return std::sinh(z) / z;
}

// cos(sqrt(u)), cosh for u < 0.
double cos_sqrt(double u) {
  return u >= 0.0 ? std::cos(std::sqrt(u)) : std::cosh(std::sqrt(-u));
}

// (1 - sin(sqrt(u))/sqrt(u)) / u.
double one_minus_sinc_over_u(double u) {
  if (std::abs(u) < 0.25) {
    double term = 1.0 / 6.0;
    double sum = term;
    for (int n = 1; n < 12; ++n) {
      term *= -u / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
      sum += term;
    }
    return sum;
  }
  return (1.0 - sinc_sqrt(u)) / u;
}

double snap(double value, double target, double period) {
  return value + period * std::round((target - value) / period);
}

double eigenphase(const SquarePotential& pot, const PhysicalConstants& c,
                  double k, Parity parity) {
  const EigenChannelValues ev = eigen_channels(amplitudes(pot, c, k));
  return parity == Parity::even ? ev.delta0 : ev.delta1;
}

}  // namespace

DwellRecord dwell_time(const SquarePotential& pot, const PhysicalConstants& c,
                       double k, Parity parity) {
  pot.validate();
  c.validate();
  if (!(k > 0.0)) {
    throw DomainError("dwell time requires k > 0");
  }
  const double a = pot.half_width;
  const double w = k * k - pot.kappa_squared(c);
  const double amp2 = 2.0 / c.planck();
  const double f_a = sinc_sqrt(a * a * w);
  const double cos_a = cos_sqrt(a * a * w);
  double norm = 0.0;
  if (parity == Parity::even) {
    const double integral = a * (1.0 + sinc_sqrt(4.0 * a * a * w));
    const double match = cos_a * cos_a + w * w * a * a * f_a * f_a / (k * k);
    norm = amp2 * integral / match;
  } else {
    // Scaled amplitude C1 q keeps the q -> 0 limit finite.
    const double integral = 4.0 * a * a * a * one_minus_sinc_over_u(4.0 * a * a * w);
    const double match = a * a * f_a * f_a + cos_a * cos_a / (k * k);
    norm = amp2 * integral / match;
  }
  DwellRecord rec;
  rec.k = k;
  rec.parity = parity;
  rec.interior_norm = norm;
  rec.tau_d = c.mass / (c.hbar * k) * norm;
  return rec;
}

EdgeValues edge_values(const PhysicalConstants& c, double k, double a,
                       Parity parity, double delta) {
  const double amp = std::sqrt(2.0 / c.planck());
  const double phase = k * a + delta;
  if (parity == Parity::even) {
    return {amp * std::cos(phase), -amp * k * std::sin(phase)};
  }
  return {amp * std::sin(phase), amp * k * std::cos(phase)};
}

SmithReport smith_identity_check(const SquarePotential& pot,
                                 const PhysicalConstants& c, double k,
                                 Parity parity, double dE) {
  if (!(k > 0.0)) {
    throw DomainError("Smith identity check requires k > 0");
  }
  const double a = pot.half_width;
  const double energy = std::pow(c.hbar * k, 2) / (2.0 * c.mass);
  const bool automatic = dE <= 0.0;
  if (!automatic && !(dE < energy)) {
    throw DomainError("energy step must be smaller than the energy");
  }
  const double delta = eigenphase(pot, c, k, parity);
  const double slope = [&] {
    const PhaseSlopes s = phase_slopes(pot, c, k);
    return parity == Parity::even ? s.ddelta0 : s.ddelta1;
  }();
  const EdgeValues centre = edge_values(c, k, a, parity, delta);

  // Edge values at energy E + offset, on the eigenphase branch continuous
  // with the one at E.
  const auto at_energy = [&](double offset) {
    const double kk = std::sqrt(2.0 * c.mass * (energy + offset)) / c.hbar;
    const double d = snap(eigenphase(pot, c, kk, parity),
                          delta + slope * (kk - k), std::numbers::pi);
    return edge_values(c, kk, a, parity, d);
  };
  const auto central = [&](double h) {
    const EdgeValues plus = at_energy(h);
    const EdgeValues minus = at_energy(-h);
    return EdgeValues{(plus.psi - minus.psi) / (2.0 * h),
                      (plus.dpsi - minus.dpsi) / (2.0 * h)};
  };
  const auto richardson = [&](double h) {
    const EdgeValues coarse = central(h);
    const EdgeValues fine = central(0.5 * h);
    return EdgeValues{(4.0 * fine.psi - coarse.psi) / 3.0,
                      (4.0 * fine.dpsi - coarse.dpsi) / 3.0};
  };
  const auto wronskian = [&](const EdgeValues& de) {
    return c.hbar * c.hbar / c.mass *
           (de.psi * centre.dpsi - centre.psi * de.dpsi);
  };

  if (automatic) {
    // Pick the step where successive extrapolations agree best: larger
    // steps carry truncation error, smaller ones round-off.
    double best = std::numeric_limits<double>::infinity();
    double previous = wronskian(richardson(0.2 * energy));
    for (double h = 0.02 * energy; h > 1e-8 * energy; h *= 0.1) {
      const double value = wronskian(richardson(h));
      const double change = std::abs(value - previous);
      if (change < best) {
        best = change;
        dE = h;
      }
      previous = value;
    }
  }

  SmithReport report;
  report.energy_step = dE;
  report.lhs = dwell_time(pot, c, k, parity).interior_norm;
  report.rhs = wronskian(richardson(dE));
  const double rhs_half = wronskian(richardson(0.5 * dE));
  report.relative_error = std::abs(report.lhs - report.rhs) / report.lhs;
  report.relative_error_half_step = std::abs(report.lhs - rhs_half) / report.lhs;
  // Round-off in the difference quotient is about eps E / dE relative.
  report.cancellation_warning =
      (report.relative_error_half_step > 2.0 * report.relative_error &&
       report.relative_error_half_step > 1e-12) ||
      std::numeric_limits<double>::epsilon() * energy / dE > 1e-6;
  return report;
}

}  // namespace hartman
