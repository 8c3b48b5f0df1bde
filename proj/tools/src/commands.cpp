#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "hartman/bound_states.hpp"
#include "hartman/delays.hpp"
#include "hartman/dwell.hpp"
#include "hartman/errors.hpp"
#include "hartman/phase_table.hpp"
#include "hartman/scattering.hpp"
#include "hartman/wavepacket.hpp"
#include "parallel.hpp"

namespace hartman::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string where(double v0, double k) {
  std::ostringstream os;
  os.precision(17);
  os << "v0=" << v0 << " k=" << k;
  return os.str();
}

// Records a violation measure; larger is worse, the check fails above tol.
void observe(CheckResult& r, double measure, const std::string& location) {
  ++r.cases;
  if (r.cases == 1 || std::isnan(measure) || measure > r.worst) {
    r.worst = measure;
    r.location = location;
  }
  if (!(measure <= r.tolerance)) {
    r.passed = false;
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = lo * std::pow(hi / lo, static_cast<double>(i) /
                                      static_cast<double>(n - 1));
  }
  return v;
}

CheckResult check_unitarity(const RunConfig& cfg) {
  CheckResult r{"unitarity", true, 0.0, 1e-12 * cfg.tol_scale, "", 0};
  const auto c = cfg.constants();
  for (double v0 : linspace(-10.0, 10.0, 41)) {
    const auto pot = SquarePotential::from_width(v0, cfg.width);
    for (double k : logspace(0.02, 20.0, 60)) {
      const auto amps = amplitudes(pot, c, k);
      const auto ch = eigen_channels(amps);
      const double err = std::max(
          {std::abs(amps.transmission() + amps.reflection() - 1.0),
           std::abs(std::abs(ch.s0) - 1.0), std::abs(std::abs(ch.s1) - 1.0)});
      observe(r, err, where(v0, k));
    }
  }
  return r;
}

CheckResult check_van_kampen(const RunConfig& cfg) {
  CheckResult r{"van_kampen", true, 0.0, 1e-10 * cfg.tol_scale, "", 0};
  const auto c = cfg.constants();
  const double v0 = cfg.v0 > 0.0 ? cfg.v0 : 5.0;
  const auto pot = SquarePotential::from_width(v0, cfg.width);
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> re(-10.0, 10.0), im(0.0, 5.0);
  std::vector<cplx> samples(100);
  for (auto& k : samples) {
    k = {re(rng), im(rng)};
  }
  for (const auto& s : van_kampen_check(pot, c, samples)) {
    if (s.near_pole) {
      continue;
    }
    const double excess =
        std::max({s.shifted_modulus[0] - 1.0, s.shifted_modulus[1] - 1.0, 0.0});
    std::ostringstream loc;
    loc << "v0=" << v0 << " k=" << s.k.real() << "+" << s.k.imag() << "i";
    observe(r, excess, loc.str());
  }
  return r;
}

void check_bounds(const RunConfig& cfg, CheckResult& eig, CheckResult& simple) {
  const auto c = cfg.constants();
  PhaseTableOptions opts;
  opts.samples = 400;
  for (double v0 : linspace(-10.0, 10.0, 21)) {
    const auto pot = SquarePotential::from_width(v0, cfg.width);
    if (is_at_threshold(pot, c)) {
      continue;
    }
    const auto table = build_phase_table(
        pot, c, 0.02, std::max(20.0, default_anchor_k(pot, c)), opts);
    const auto rep = eigenphase_derivative_bounds(table, 0.0);
    const double worst = -std::min(rep.min_oscillatory_slack,
                                   rep.causal_required ? rep.min_causal_slack
                                                       : 0.0);
    observe(eig, worst, where(v0, 0.0) + " (table)");
    if (v0 >= 0.0) {
      for (double k : logspace(0.02, 20.0, 50)) {
        const auto rec = delay_record(pot, c, k);
        observe(simple, (rec.bound_simple - rec.delta_t) / std::abs(rec.bound_simple),
                where(v0, k));
      }
    }
  }
}

CheckResult check_bound_states(const RunConfig& cfg) {
  CheckResult r{"bound_states", true, 0.0, 1e-10 * cfg.tol_scale, "", 0};
  const auto c = cfg.constants();
  for (double v0 : {-0.5, -1.0, -3.0, -5.0, -10.0, -25.0}) {
    const auto pot = SquarePotential::from_width(v0, cfg.width);
    const auto spec = solve_bound_states(pot, c);
    double worst = 0.0;
    for (const auto& lv : spec.levels) {
      worst = std::max(worst, std::abs(lv.residual));
    }
    if (spec.count() != count_bound_states(pot, c)) {
      worst = std::numeric_limits<double>::infinity();
    }
    observe(r, worst, where(v0, 0.0));
  }
  return r;
}

CheckResult check_levinson(const RunConfig& cfg) {
  CheckResult r{"levinson", true, 0.0, 1e-2 * std::numbers::pi * cfg.tol_scale,
                "", 0};
  const auto c = cfg.constants();
  // One, two and three bound states for the unit half-width well.
  for (double v0 : {-0.8, -3.0, -8.0, 2.0}) {
    const auto pot = SquarePotential{v0, 1.0};
    const auto rep = levinson_check(pot, c, 1e-4);
    observe(r, std::abs(rep.residual), where(v0, 1e-4));
  }
  return r;
}

void check_smith(const RunConfig& cfg, CheckResult& smith, CheckResult& dwell) {
  const auto c = cfg.constants();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> v(-10.0, 10.0), lk(std::log(0.05),
                                                           std::log(10.0));
  for (int i = 0; i < 50; ++i) {
    const double v0 = v(rng);
    const double k = std::exp(lk(rng));
    const Parity par = (i % 2 == 0) ? Parity::even : Parity::odd;
    const auto pot = SquarePotential::from_width(v0, cfg.width);
    const auto rep = smith_identity_check(pot, c, k, par);
    observe(smith, rep.relative_error,
            where(v0, k) + " parity=" + std::string(to_string(par)));
    const auto d = dwell_time(pot, c, k, par);
    observe(dwell, d.tau_d > 0.0 ? 0.0 : 1.0, where(v0, k));
  }
}

CheckResult check_normalization(const RunConfig& cfg) {
  CheckResult r{"packet_normalization", true, 0.0, 1e-10 * cfg.tol_scale, "",
                0};
  const auto c = cfg.constants();
  const auto packet = cfg.packet();
  for (double v0 : {-5.0, -1.0, -0.3, 0.0, 0.5, 5.0}) {
    const auto pot = SquarePotential::from_width(v0, cfg.width);
    const double pt = transmission_probability(packet, pot, c);
    observe(r, std::max(pt - 1.0, 0.0), where(v0, packet.k0));
  }
  return r;
}

CheckResult check_slopes(const RunConfig& cfg) {
  CheckResult r{"phase_slope_consistency", true, 0.0, 1e-5 * cfg.tol_scale, "",
                0};
  const auto c = cfg.constants();
  const auto pot = cfg.potential();
  if (is_at_threshold(pot, c)) {
    return r;
  }
  PhaseTableOptions opts;
  opts.samples = 200;
  const auto table = build_phase_table(
      pot, c, cfg.k_min, std::max(cfg.k_max, default_anchor_k(pot, c)), opts);
  const auto disc = slope_discrepancy(table);
  for (std::size_t i = 0; i < disc.size(); ++i) {
    observe(r, disc[i], where(pot.v0, table.k_grid[i]));
  }
  return r;
}

}  // namespace

nlohmann::ordered_json config_metadata(const RunConfig& cfg,
                                       const std::string& command) {
  nlohmann::ordered_json m;
  m["command"] = command;
  m["preset"] = cfg.preset;
  m["v0"] = cfg.v0;
  m["width"] = cfg.width;
  m["hbar"] = cfg.hbar;
  m["mass"] = cfg.mass;
  m["k_min"] = cfg.k_min;
  m["k_max"] = cfg.k_max;
  m["samples"] = cfg.samples;
  m["adaptive"] = cfg.adaptive;
  m["k"] = cfg.k;
  m["k0"] = cfg.k0;
  m["delta_p"] = cfg.delta_p;
  m["x0"] = cfg.x0;
  m["v0_min"] = cfg.v0_min;
  m["v0_max"] = cfg.v0_max;
  m["v0_steps"] = cfg.v0_steps;
  m["precision"] = cfg.precision;
  return m;
}

Dataset cmd_amplitudes(const RunConfig& cfg) {
  cfg.validate();
  const auto c = cfg.constants();
  const auto pot = cfg.potential();
  const auto ks = cfg.k_values();
  PhaseTableOptions opts;
  opts.samples = std::max<std::size_t>(cfg.samples, 64);
  opts.spacing = cfg.adaptive ? GridSpacing::automatic : GridSpacing::linear;
  opts.extra_nodes = ks;
  const double top = std::max(cfg.k_max, default_anchor_k(pot, c));
  const auto table = build_phase_table(pot, c, cfg.k_min, top, opts);

  Dataset ds;
  ds.columns = {"k", "re_T", "im_T", "abs_T2", "phi_T", "delta0", "delta1"};
  ds.metadata = config_metadata(cfg, "amplitudes");
  for (double k : ks) {
    const auto it = std::lower_bound(table.k_grid.begin(), table.k_grid.end(), k);
    if (it == table.k_grid.end() || *it != k) {
      throw std::logic_error("phase table is missing a requested node");
    }
    const auto i = static_cast<std::size_t>(it - table.k_grid.begin());
    const cplx t = table.t[i];
    ds.add_row({k, t.real(), t.imag(), std::norm(t), table.phi_t[i],
                table.delta0[i], table.delta1[i]});
  }
  return ds;
}

Dataset cmd_delay_sweep(const RunConfig& cfg) {
  cfg.validate();
  const auto c = cfg.constants();
  const auto vs = cfg.v0_values();
  const auto rows = parallel_map<std::vector<Cell>>(
      vs.size(), cfg.jobs, [&](std::size_t i) -> std::vector<Cell> {
        const auto pot = SquarePotential::from_width(vs[i], cfg.width);
        const auto spectrum =
            vs[i] < 0.0 ? solve_bound_states(pot, c) : BoundStateSpectrum{};
        const auto rec = delay_record(pot, c, cfg.k, &spectrum);
        return {vs[i], rec.delta_t, rec.bound_tight_osc, rec.bound_simple,
                static_cast<std::int64_t>(spectrum.count())};
      });
  Dataset ds;
  ds.columns = {"v0", "delta_t", "bound_osc", "bound_simple", "n_b"};
  ds.metadata = config_metadata(cfg, "delay-sweep");
  for (const auto& r : rows) {
    ds.add_row(r);
  }
  return ds;
}

Dataset cmd_packet_sweep(const RunConfig& cfg) {
  cfg.validate();
  const auto c = cfg.constants();
  const auto packet = cfg.packet();
  const auto vs = cfg.v0_values();
  struct Point {
    std::vector<Cell> row;
    bool divergent = false;
  };
  const auto points = parallel_map<Point>(
      vs.size(), cfg.jobs, [&](std::size_t i) -> Point {
        const auto pot = SquarePotential::from_width(vs[i], cfg.width);
        try {
          const auto r = mean_exit_time(packet, pot, c);
          return {{vs[i], r.p_t, r.t_out, r.t_classical, r.t_subtracted,
                   r.classical_defined},
                  false};
        } catch (const DivergenceError&) {
          const auto cl = classical_reference_time(packet, pot, c);
          return {{vs[i], transmission_probability(packet, pot, c), Cell{},
                   cl.time, Cell{}, cl.defined},
                  true};
        }
      });
  Dataset ds;
  ds.columns = {"v0",          "p_t",          "t_out",
                "t_classical", "t_subtracted", "classical_defined"};
  ds.metadata = config_metadata(cfg, "packet-sweep");
  auto divergent = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    ds.add_row(p.row);
    if (p.divergent) {
      divergent.push_back(std::get<double>(p.row[0]));
    }
  }
  ds.metadata["divergent_v0"] = divergent;
  return ds;
}

bool VerifySummary::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

nlohmann::ordered_json VerifySummary::to_json() const {
  nlohmann::ordered_json doc;
  doc["passed"] = passed();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["cases"] = c.cases;
    j["worst"] = std::isfinite(c.worst) ? nlohmann::ordered_json(c.worst)
                                        : nlohmann::ordered_json();
    j["tolerance"] = c.tolerance;
    j["location"] = c.location;
    arr.push_back(std::move(j));
  }
  doc["checks"] = std::move(arr);
  return doc;
}

VerifySummary cmd_verify(const RunConfig& cfg) {
  cfg.validate();
  VerifySummary s;
  s.checks.push_back(check_unitarity(cfg));
  s.checks.push_back(check_van_kampen(cfg));
  CheckResult eig{"eigenphase_bounds", true, 0.0, 1e-9 * cfg.tol_scale, "", 0};
  CheckResult simple{"simple_delay_bound", true, 0.0, 1e-9 * cfg.tol_scale, "",
                     0};
  check_bounds(cfg, eig, simple);
  s.checks.push_back(eig);
  s.checks.push_back(simple);
  s.checks.push_back(check_bound_states(cfg));
  s.checks.push_back(check_levinson(cfg));
  CheckResult smith{"smith_identity", true, 0.0, 1e-6 * cfg.tol_scale, "", 0};
  CheckResult dwell{"dwell_positive", true, 0.0, 0.0, "", 0};
  check_smith(cfg, smith, dwell);
  s.checks.push_back(smith);
  s.checks.push_back(dwell);
  s.checks.push_back(check_normalization(cfg));
  s.checks.push_back(check_slopes(cfg));
  return s;
}

}  // namespace hartman::cli
