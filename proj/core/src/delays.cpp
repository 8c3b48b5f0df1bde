#include "hartman/delays.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hartman {

namespace {

void require_in_table(const PhaseTable& table, double k) {
  if (!table.contains(k)) {
    std::ostringstream msg;
    msg << "k = " << k << " outside phase table range [" << table.k_min()
        << ", " << table.k_max() << "]";
    throw DomainError(msg.str());
  }
}

}  // namespace

DelayRecord delay_record(const SquarePotential& pot,
                         const PhysicalConstants& c, double k,
                         const BoundStateSpectrum* spectrum) {
  const ScatteringPoint sp = evaluate(pot, c, k);
  const double m = c.mass;
  const double p = c.hbar * k;
  const double d = pot.width();
  const double a = pot.half_width;

  DelayRecord rec;
  rec.k = k;
  rec.spatial_delay = sp.slopes.dphi_t;
  rec.delta_t = m / p * sp.slopes.dphi_t;
  rec.tau_ph = m * d / p + rec.delta_t;
  rec.bound_simple = -m * d / p;
  const double osc = std::sin(2.0 * k * a + 2.0 * sp.channels.delta0) -
                     std::sin(2.0 * k * a + 2.0 * sp.channels.delta1);
  rec.bound_tight_osc = m / p * (-d - osc / (2.0 * k));
  rec.bound_tight_weak = m / p * (-d - 1.0 / k);

  if (pot.v0 < 0.0) {
    BoundStateSpectrum solved;
    if (spectrum == nullptr) {
      solved = solve_bound_states(pot, c);
      spectrum = &solved;
    }
    if (spectrum->count() > 0) {
      rec.bound_bound_state = -m / p * (d + 1.0 / spectrum->shallowest_k_b());
      rec.multiple_bound_states = spectrum->count() > 1;
    }
  }
  return rec;
}

double wigner_delay(const PhaseTable& table, double k) {
  require_in_table(table, k);
  const auto it = std::lower_bound(table.k_grid.begin(), table.k_grid.end(), k);
  const double p = table.constants.hbar * k;
  if (it != table.k_grid.end() && *it == k) {
    return table.constants.mass / p *
           table.dphi_t[static_cast<std::size_t>(it - table.k_grid.begin())];
  }
  return table.constants.mass / p *
         phase_slopes(table.potential, table.constants, k).dphi_t;
}

double phase_time(const PhaseTable& table, double k) {
  const double p = table.constants.hbar * k;
  return table.constants.mass * table.potential.width() / p +
         wigner_delay(table, k);
}

DelayRecord causality_bounds(const PhaseTable& table, double k) {
  require_in_table(table, k);
  return delay_record(table.potential, table.constants, k);
}

EigenphaseBoundReport eigenphase_derivative_bounds(const PhaseTable& table,
                                                   double tol) {
  EigenphaseBoundReport report;
  report.causal_required = table.potential.v0 >= 0.0;
  report.min_oscillatory_slack = std::numeric_limits<double>::infinity();
  report.min_causal_slack = std::numeric_limits<double>::infinity();
  const double a = table.potential.half_width;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double k = table.k_grid[i];
    const double slopes[2] = {table.ddelta0[i], table.ddelta1[i]};
    const double osc[2] = {
        -a - std::sin(2.0 * (k * a + table.delta0[i])) / (2.0 * k),
        -a + std::sin(2.0 * (k * a + table.delta1[i])) / (2.0 * k)};
    for (int j = 0; j < 2; ++j) {
      const double s_osc = slopes[j] - osc[j];
      const double s_causal = slopes[j] + a;
      report.min_oscillatory_slack =
          std::min(report.min_oscillatory_slack, s_osc);
      report.min_causal_slack = std::min(report.min_causal_slack, s_causal);
      if (s_osc < -tol) {
        report.oscillatory.push_back({k, j, slopes[j], osc[j]});
      }
      if (s_causal < -tol) {
        report.causal.push_back({k, j, slopes[j], -a});
      }
    }
  }
  return report;
}

}  // namespace hartman
