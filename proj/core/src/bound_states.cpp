#include "hartman/bound_states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hartman {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kThresholdTol = 1e-8;

// a sqrt(2 m |V0|) / hbar: the largest interior phase q a.
double well_radius(const SquarePotential& pot, const PhysicalConstants& c) {
  return pot.half_width * std::sqrt(2.0 * c.mass * std::abs(pot.v0)) / c.hbar;
}

// Even:  theta sin(theta) - K a cos(theta)
// Odd:   theta cos(theta) + K a sin(theta)
// on the circle theta^2 + (K a)^2 = R^2. These are the matching conditions
// multiplied by cos / sin, bounded across the poles of tan and cot. The
// angle phi (theta = R sin phi) keeps K a = R cos phi smooth at the
// threshold end phi = pi/2.
double matching(Parity parity, double phi, double radius) {
  const double theta = radius * std::sin(phi);
  const double outer = radius * std::cos(phi);
  return parity == Parity::even
             ? theta * std::sin(theta) - outer * std::cos(theta)
             : theta * std::cos(theta) + outer * std::sin(theta);
}

}  // namespace

double threshold_depth(int n, const SquarePotential& pot,
                       const PhysicalConstants& c) {
  const double a = pot.half_width;
  return -c.hbar * c.hbar * n * n * kPi * kPi / (8.0 * c.mass * a * a);
}

ThresholdProximity nearest_threshold(const SquarePotential& pot,
                                     const PhysicalConstants& c) {
  pot.validate();
  c.validate();
  ThresholdProximity out;
  if (pot.v0 >= 0.0) {
    out.index = 0;
    out.depth = 0.0;
    out.distance = pot.v0;
    return out;
  }
  const double x = 2.0 * well_radius(pot, c) / kPi;
  const int n = static_cast<int>(std::lround(x));
  out.index = n;
  out.depth = threshold_depth(n, pot, c);
  out.distance = std::abs(pot.v0 - out.depth);
  return out;
}

bool is_at_threshold(const SquarePotential& pot, const PhysicalConstants& c) {
  const ThresholdProximity t = nearest_threshold(pot, c);
  return t.distance <= kThresholdTol * std::max(1.0, std::abs(t.depth));
}

std::size_t count_bound_states(const SquarePotential& pot,
                               const PhysicalConstants& c) {
  pot.validate();
  c.validate();
  if (pot.v0 >= 0.0) {
    return 0;
  }
  const double x = 2.0 * well_radius(pot, c) / kPi;
  const double nearest = std::round(x);
  if (nearest >= 1.0 && std::abs(x - nearest) <= 1e-12 * std::max(1.0, x)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::floor(x)) + 1;
}

BoundStateSpectrum solve_bound_states(const SquarePotential& pot,
                                      const PhysicalConstants& c,
                                      double tol) {
  pot.validate();
  c.validate();
  if (!(pot.v0 < 0.0)) {
    throw DomainError("bound states require a well (v0 < 0)");
  }
  const double a = pot.half_width;
  const double radius = well_radius(pot, c);
  const double kappa = radius / a;
  const std::size_t expected = count_bound_states(pot, c);

  BoundStateSpectrum spectrum;
  spectrum.at_threshold =
      std::abs(2.0 * radius / kPi - std::round(2.0 * radius / kPi)) <=
      1e-12 * std::max(1.0, 2.0 * radius / kPi);

  for (std::size_t j = 0;; ++j) {
    const double lo_edge = 0.5 * kPi * static_cast<double>(j);
    if (!(lo_edge < radius) || spectrum.levels.size() == expected) {
      break;
    }
    const Parity parity = j % 2 == 0 ? Parity::even : Parity::odd;
    double lo = std::asin(lo_edge / radius);
    const double hi_edge = 0.5 * kPi * static_cast<double>(j + 1);
    double hi = hi_edge < radius ? std::asin(hi_edge / radius) : 0.5 * kPi;
    double f_lo = matching(parity, lo, radius);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) {
        break;
      }
      const double f_mid = matching(parity, mid, radius);
      if ((f_mid < 0.0) == (f_lo < 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    const double phi = 0.5 * (lo + hi);
    BoundLevel level;
    level.parity = parity;
    level.q = radius * std::sin(phi) / a;
    level.k_b = radius * std::cos(phi) / a;
    level.energy = -std::pow(c.hbar * level.k_b, 2) / (2.0 * c.mass);
    const double qa = level.q * a;
    level.residual =
        parity == Parity::even
            ? (level.q * std::sin(qa) - level.k_b * std::cos(qa)) / kappa
            : (level.q * std::cos(qa) + level.k_b * std::sin(qa)) / kappa;
    level.near_threshold = level.k_b < 1e-12;
    if (!(std::abs(level.residual) < tol)) {
      std::ostringstream msg;
      msg << "bound state " << j << " residual " << level.residual
          << " exceeds " << tol;
      throw ConvergenceError(msg.str(), level.k_b);
    }
    spectrum.levels.push_back(level);
  }
  if (spectrum.levels.size() != expected) {
    throw std::logic_error("bound-state solver found " +
                           std::to_string(spectrum.levels.size()) +
                           " levels, threshold formula gives " +
                           std::to_string(expected));
  }
  return spectrum;
}

LevinsonReport levinson_check(const SquarePotential& pot,
                              const PhysicalConstants& c, double k_min,
                              const PhaseTableOptions& opts) {
  pot.validate();
  c.validate();
  LevinsonReport report;
  if (pot.v0 == 0.0) {
    // Free particle: phi_T vanishes identically and T(0) = 1.
    report.t_vanishes_at_zero = false;
    report.t_modulus_at_kmin = 1.0;
    report.asymptotic = true;
    return report;
  }
  if (is_at_threshold(pot, c)) {
    const ThresholdProximity t = nearest_threshold(pot, c);
    std::ostringstream msg;
    msg << "Levinson check refused: V0 = " << pot.v0
        << " lies on bound-state threshold " << t.index << " (V0 = "
        << t.depth << "), where the branch of the theorem is undetermined";
    throw DomainError(msg.str());
  }
  PhaseTableOptions table_opts = opts;
  table_opts.spacing = GridSpacing::logarithmic;
  const double k_max = std::max(default_anchor_k(pot, c), 10.0 * k_min);
  const PhaseTable table = build_phase_table(pot, c, k_min, k_max, table_opts);

  report.n_b = count_bound_states(pot, c);
  report.phi_t_at_kmin = table.phi_t.front();
  report.t_modulus_at_kmin = std::abs(table.t.front());
  report.asymptotic = report.t_modulus_at_kmin < 0.5;
  // Off threshold T(k) = O(k) as k -> 0.
  report.t_vanishes_at_zero = true;
  report.predicted = kPi * (static_cast<double>(report.n_b) - 0.5);
  report.residual = std::abs(report.phi_t_at_kmin - report.predicted);
  return report;
}

}  // namespace hartman
