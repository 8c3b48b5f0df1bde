#include "hartman/phase_table.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hartman {

namespace {

constexpr double kPi = std::numbers::pi;

// Unwrapped values in the order phi_t, delta0, delta1.
using Phases = std::array<double, 3>;
constexpr Phases kPeriods = {2.0 * kPi, kPi, kPi};

Phases principal(const ScatteringPoint& p) {
  return {p.amps.phase(), p.channels.delta0, p.channels.delta1};
}

Phases slopes(const ScatteringPoint& p) {
  return {p.slopes.dphi_t, p.slopes.ddelta0, p.slopes.ddelta1};
}

double snap(double principal_value, double target, double period) {
  return principal_value +
         period * std::round((target - principal_value) / period);
}

struct Node {
  ScatteringPoint point;
  Phases unwrapped;
};

class Unwrapper {
 public:
  Unwrapper(const SquarePotential& pot, const PhysicalConstants& c,
            const PhaseTableOptions& opts)
      : pot_(pot), c_(c), opts_(opts) {}

  // Appends nodes strictly below `hi` down to and including `lo`.
  void descend(const ScatteringPoint& lo, const Node& hi,
               std::vector<Node>& out) {
    const double h = hi.point.k - lo.k;
    const ScatteringPoint mid = evaluate(pot_, c_, 0.5 * (lo.k + hi.point.k));
    const Phases p_lo = principal(lo);
    const Phases s_lo = slopes(lo);
    const Phases s_mid = slopes(mid);
    const Phases s_hi = slopes(hi.point);

    Node candidate{lo, {}};
    bool accept = true;
    for (std::size_t j = 0; j < 3; ++j) {
      const double increment = h / 6.0 * (s_lo[j] + 4.0 * s_mid[j] + s_hi[j]);
      const double target = hi.unwrapped[j] - increment;
      const double value = snap(p_lo[j], target, kPeriods[j]);
      candidate.unwrapped[j] = value;
      if (std::abs(value - target) > kPeriods[j] / 8.0 ||
          std::abs(hi.unwrapped[j] - value) > opts_.max_jump) {
        accept = false;
      }
    }
    if (accept) {
      out.push_back(candidate);
      return;
    }
    if (h <= opts_.min_relative_step * hi.point.k) {
      std::ostringstream msg;
      msg << "phase table: refinement below relative step "
          << opts_.min_relative_step << " near k = " << hi.point.k;
      throw ConvergenceError(msg.str(), hi.point.k);
    }
    descend(mid, hi, out);
    const Node mid_node = out.back();
    descend(lo, mid_node, out);
  }

 private:
  const SquarePotential& pot_;
  const PhysicalConstants& c_;
  const PhaseTableOptions& opts_;
};

std::vector<double> base_grid(double k_min, double k_max,
                              const PhaseTableOptions& opts) {
  const std::size_t n = std::max<std::size_t>(opts.samples, 2);
  GridSpacing spacing = opts.spacing;
  if (spacing == GridSpacing::automatic) {
    spacing = k_max / k_min > 50.0 ? GridSpacing::logarithmic
                                   : GridSpacing::linear;
  }
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    grid[i] = spacing == GridSpacing::logarithmic
                  ? k_min * std::pow(k_max / k_min, f)
                  : k_min + (k_max - k_min) * f;
  }
  grid.front() = k_min;
  grid.back() = k_max;
  for (double k : opts.extra_nodes) {
    if (k >= k_min && k <= k_max) {
      grid.push_back(k);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

double default_anchor_k(const SquarePotential& pot,
                        const PhysicalConstants& c) {
  pot.validate();
  c.validate();
  const double kappa = std::sqrt(2.0 * c.mass * std::abs(pot.v0)) / c.hbar;
  return std::max({20.0 * kappa, 40.0 / pot.half_width,
                   kappa * kappa * pot.width()});
}

PhaseTable build_phase_table(const SquarePotential& pot,
                             const PhysicalConstants& c, double k_min,
                             double k_max, const PhaseTableOptions& opts) {
  pot.validate();
  c.validate();
  if (!(k_min > 0.0) || !(k_max > k_min) || !std::isfinite(k_max)) {
    throw DomainError("phase table requires 0 < k_min < k_max");
  }
  if (!(opts.max_jump > 0.0) || opts.max_jump > 0.5 * kPi) {
    throw DomainError("phase table max_jump must lie in (0, pi/2]");
  }

  const std::vector<double> grid = base_grid(k_min, k_max, opts);

  const ScatteringPoint top = evaluate(pot, c, grid.back());
  const Phases anchor = principal(top);
  if (std::abs(anchor[0]) >= 0.5 * kPi || std::abs(anchor[1]) >= 0.5 * kPi ||
      std::abs(anchor[2]) >= 0.5 * kPi ||
      std::abs(anchor[1] + anchor[2] - anchor[0]) > 1e-8) {
    std::ostringstream msg;
    msg << "phase table: phases at k_max = " << grid.back()
        << " are not small enough to anchor (phi_T = " << anchor[0]
        << "); use k_max >= " << default_anchor_k(pot, c);
    throw DomainError(msg.str());
  }

  std::vector<Node> nodes;
  nodes.reserve(grid.size() * 2);
  nodes.push_back(Node{top, anchor});
  Unwrapper unwrapper(pot, c, opts);
  for (std::size_t i = grid.size() - 1; i-- > 0;) {
    const Node hi = nodes.back();
    unwrapper.descend(evaluate(pot, c, grid[i]), hi, nodes);
  }
  std::reverse(nodes.begin(), nodes.end());

  PhaseTable table;
  table.potential = pot;
  table.constants = c;
  const std::size_t n = nodes.size();
  table.k_grid.reserve(n);
  table.t.reserve(n);
  for (auto* v : {&table.phi_t, &table.delta0, &table.delta1, &table.dphi_t,
                  &table.ddelta0, &table.ddelta1}) {
    v->reserve(n);
  }
  for (const Node& node : nodes) {
    table.k_grid.push_back(node.point.k);
    table.t.push_back(node.point.amps.t);
    table.phi_t.push_back(node.unwrapped[0]);
    table.delta0.push_back(node.unwrapped[1]);
    table.delta1.push_back(node.unwrapped[2]);
    table.dphi_t.push_back(node.point.slopes.dphi_t);
    table.ddelta0.push_back(node.point.slopes.ddelta0);
    table.ddelta1.push_back(node.point.slopes.ddelta1);
  }
  return table;
}

std::vector<double> slope_discrepancy(const PhaseTable& table,
                                      double relative_step) {
  std::vector<double> out(table.size(), 0.0);
  const auto& pot = table.potential;
  const auto& c = table.constants;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double k = table.k_grid[i];
    const double h = relative_step * k;
    if (k - 2.0 * h < table.k_min() || k + 2.0 * h > table.k_max()) {
      continue;
    }
    // Local unwrap around the node: snap each offset sample to the branch
    // predicted by the node value and its slope.
    const auto phase_at = [&](double offset) {
      const double value = amplitudes(pot, c, k + offset).phase();
      return snap(value, table.phi_t[i] + table.dphi_t[i] * offset, 2.0 * kPi);
    };
    const double fd = (-phase_at(2.0 * h) + 8.0 * phase_at(h) -
                       8.0 * phase_at(-h) + phase_at(-2.0 * h)) /
                      (12.0 * h);
    const double scale = std::max(std::abs(table.dphi_t[i]), 1e-300);
    out[i] = std::abs(fd - table.dphi_t[i]) / scale;
  }
  return out;
}

}  // namespace hartman
