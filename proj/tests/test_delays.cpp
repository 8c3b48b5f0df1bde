#include <cmath>
#include <numbers>

#include <doctest.h>

#include "hartman/delays.hpp"
#include "hartman/scattering.hpp"

using namespace hartman;

namespace {
const PhysicalConstants kUnits{};

PhaseTable table_for(const SquarePotential& pot, double k_min = 0.01) {
  return build_phase_table(pot, kUnits, k_min,
                           std::max(20.0, default_anchor_k(pot, kUnits)));
}

double delay_at(double v0, double k, double d = 2.0) {
  return delay_record(SquarePotential::from_width(v0, d), kUnits, k).delta_t;
}

// Root of delta_t + m d / p in V0 by bisection.
double crossing(double lo, double hi) {
  const auto f = [](double v) { return delay_at(v, 0.1) + 20.0; };
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) < 0) == (f(lo) < 0) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("free particle has no delay") {
  const auto t = table_for(SquarePotential{0.0, 1.0});
  CHECK(wigner_delay(t, 1.3) == 0.0);
  CHECK(phase_time(t, 1.3) == doctest::Approx(2.0 / 1.3));
}

TEST_CASE("delay outside the table is rejected") {
  const auto t = table_for(SquarePotential{5.0, 1.0}, 0.5);
  CHECK_THROWS_AS(wigner_delay(t, 0.1), DomainError);
  CHECK_THROWS_AS(causality_bounds(t, 1e6), DomainError);
}

TEST_CASE("table delay agrees with the direct record") {
  const SquarePotential pot{-0.7, 1.0};
  const auto t = table_for(pot);
  for (double k : {0.05, 0.3, 2.0}) {
    CHECK(wigner_delay(t, k) == doctest::Approx(delay_record(pot, kUnits, k).delta_t));
  }
}

TEST_CASE("barrier delay is negative but bounded by -md/p") {
  const auto rec = delay_record(SquarePotential::from_width(5.0, 2.0), kUnits, 0.1);
  CHECK(rec.delta_t < 0.0);
  CHECK(rec.delta_t >= rec.bound_simple);
  CHECK(rec.bound_simple == doctest::Approx(-20.0));
  CHECK_FALSE(rec.bound_bound_state.has_value());
}

TEST_CASE("well near the first crossing violates the simple bound") {
  // Crossings of delta_t = -md/p at k = 0.1, d = 2 lie at V0 = -0.2928 and
  // -1.2388; the violation window of the shallow one is (-0.2928, -0.25).
  const auto rec = delay_record(SquarePotential::from_width(-0.27, 2.0), kUnits, 0.1);
  CHECK(rec.delta_t < rec.bound_simple);
  CHECK(rec.delta_t >= rec.bound_tight_osc - 1e-9);
  REQUIRE(rec.bound_bound_state.has_value());
  CHECK(rec.delta_t >= *rec.bound_bound_state - 1e-9);

  const double c1 = crossing(-0.35, -0.28);
  const double c2 = crossing(-1.30, -1.2338);
  CHECK(std::abs(c1 + std::numbers::pi * std::numbers::pi / 32) < 0.02);
  CHECK(std::abs(c2 + std::numbers::pi * std::numbers::pi / 8) < 0.02);
}

TEST_CASE("V0 = -0.30 does not violate the simple bound") {
  // Just outside the violation window.
  CHECK(delay_at(-0.30, 0.1) > -20.0);
}

TEST_CASE("oscillatory bound chain and the no-bound-state bound on a dense grid") {
  double worst_chain = 0.0, worst_simple = 0.0, worst_weak = 0.0;
  for (int iv = 0; iv <= 100; ++iv) {
    const double v0 = -10.0 + 0.2 * iv;
    const auto pot = SquarePotential::from_width(v0, 2.0);
    for (int ik = 0; ik < 100; ++ik) {
      const double k = 0.02 * std::pow(1000.0, ik / 99.0);
      const auto r = delay_record(pot, kUnits, k);
      const double scale = std::abs(r.bound_tight_weak);
      worst_chain = std::min(worst_chain, (r.delta_t - r.bound_tight_osc) / scale);
      worst_weak = std::min(worst_weak, (r.bound_tight_osc - r.bound_tight_weak) / scale);
      if (v0 >= 0.0) {
        worst_simple = std::min(worst_simple, (r.delta_t - r.bound_simple) / scale);
      }
    }
  }
  CHECK(worst_chain >= -1e-9);
  CHECK(worst_weak >= -1e-9);
  CHECK(worst_simple >= -1e-9);
}

TEST_CASE("single bound state bound holds for one-level wells") {
  for (double v0 : {-0.1, -0.5, -1.0}) {
    const auto pot = SquarePotential::from_width(v0, 2.0);
    const auto spectrum = solve_bound_states(pot, kUnits);
    REQUIRE(spectrum.count() == 1);
    for (int ik = 0; ik < 200; ++ik) {
      const double k = 0.01 * std::pow(2000.0, ik / 199.0);
      const auto r = delay_record(pot, kUnits, k, &spectrum);
      REQUIRE(r.bound_bound_state.has_value());
      CHECK(r.delta_t >= *r.bound_bound_state - 1e-9 * std::abs(r.bound_simple));
      CHECK_FALSE(r.multiple_bound_states);
    }
  }
  const auto deep = delay_record(SquarePotential{-5.0, 1.0}, kUnits, 1.0);
  CHECK(deep.multiple_bound_states);
}

TEST_CASE("Hartman plateau of the extrapolated phase time") {
  const double p0 = 0.5;
  const double t8 = delay_record(SquarePotential::from_width(5.0, 8.0), kUnits, p0).tau_ph;
  const double t12 = delay_record(SquarePotential::from_width(5.0, 12.0), kUnits, p0).tau_ph;
  const double t16 = delay_record(SquarePotential::from_width(5.0, 16.0), kUnits, p0).tau_ph;
  CHECK(std::abs(t8 - t12) < 1e-6);
  CHECK(std::abs(t8 - t16) < 1e-6);
  const double asymptote = 2.0 / (p0 * std::sqrt(10.0));
  CHECK(std::abs(t12 - asymptote) < 0.1 * asymptote);
  // The exact opaque limit uses the evanescent wavenumber.
  const double kappa = std::sqrt(10.0 - p0 * p0);
  CHECK(t12 == doctest::Approx(2.0 / (p0 * kappa)).epsilon(1e-6));
}

TEST_CASE("eigenphase derivative bounds") {
  const auto free = eigenphase_derivative_bounds(table_for(SquarePotential{0.0, 1.0}));
  CHECK(free.passed());

  const auto barrier = eigenphase_derivative_bounds(
      build_phase_table(SquarePotential{5.0, 1.0}, kUnits, 0.01,
                        default_anchor_k(SquarePotential{5.0, 1.0}, kUnits)));
  CHECK(barrier.causal_required);
  CHECK(barrier.passed());
  CHECK(barrier.causal.empty());

  const auto well = eigenphase_derivative_bounds(table_for(SquarePotential{-1.0, 1.0}));
  CHECK(well.oscillatory.empty());
  CHECK_FALSE(well.causal_required);
  CHECK_FALSE(well.causal.empty());
  bool even_violation = false;
  for (const auto& v : well.causal) {
    even_violation = even_violation || v.channel == 0;
  }
  CHECK(even_violation);
  CHECK(well.passed());
}
