#include <cmath>
#include <numbers>

#include <doctest.h>

#include "hartman/errors.hpp"
#include "hartman/flux_oracle.hpp"
#include "hartman/wavepacket.hpp"

using namespace hartman;

namespace {
const PhysicalConstants kUnits{};
}

TEST_CASE("free packet: flux oracle against the analytic arrival time") {
  const GaussianPacketSpec spec{2.0, 0.25, -15.0};
  const SquarePotential free{0.0, 1.0};
  // m (a - x0) <1/p> with <1/p> by Simpson.
  const int n = 200000;
  const double lo = 0.0, hi = 6.0, h = (hi - lo) / n;
  double s = 0.0;
  for (int i = 1; i < n; ++i) {
    const double p = lo + i * h;
    s += (i % 2 ? 4.0 : 2.0) * packet_density(spec, kUnits, p) / p;
  }
  const double analytic = 16.0 * s * h / 3.0;
  const auto w = suggest_flux_window(spec, free, kUnits);
  const auto res = mean_exit_time_via_flux(spec, free, kUnits, w, 1e-6);
  CHECK(res.mean_time == doctest::Approx(analytic).epsilon(1e-4));
  CHECK(res.integrated_flux == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("flux oracle agrees with the momentum-space exit time") {
  const GaussianPacketSpec spec{1.5, 0.25, -20.0};
  for (double v0 : {0.8, -2.0}) {
    const auto pot = SquarePotential::from_width(v0, 2.0);
    const auto ref = mean_exit_time(spec, pot, kUnits);
    const auto res =
        mean_exit_time_via_flux(spec, pot, kUnits, suggest_flux_window(spec, pot, kUnits), 1e-4);
    CHECK(res.mean_time == doctest::Approx(ref.t_out).epsilon(1e-3));
    CHECK(res.transmission_probability == doctest::Approx(ref.p_t).epsilon(1e-10));
    CHECK(res.deficit < 1e-4);
  }
}

TEST_CASE("a window that misses the flux is an error carrying the deficit") {
  const GaussianPacketSpec spec{1.5, 0.25, -20.0};
  const SquarePotential pot{0.5, 1.0};
  try {
    mean_exit_time_via_flux(spec, pot, kUnits, {0.0, 10.0}, 1e-3);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.estimate() > 0.5);
  }
  CHECK_THROWS_AS(mean_exit_time_via_flux(spec, pot, kUnits, {5.0, 1.0}, 1e-3), DomainError);
}

TEST_CASE("slow truncated packet over a shallow well") {
  const GaussianPacketSpec spec{std::numbers::pi / 8.0, 1.0, -41.0};
  const auto pot = SquarePotential::from_width(-0.30, 2.0);
  const auto ref = mean_exit_time(spec, pot, kUnits);
  const auto res = mean_exit_time_via_flux(
      spec, pot, kUnits, suggest_flux_window(spec, pot, kUnits), 1e-4);
  CHECK(res.mean_time == doctest::Approx(ref.t_out).epsilon(1e-3));
}

TEST_CASE("a shallow bound state pulls the window below t = 0") {
  const GaussianPacketSpec spec{1.0, 0.25, -20.0};
  const SquarePotential pot{-std::numbers::pi * std::numbers::pi / 8.0 - 0.01, 1.0};
  const auto w = suggest_flux_window(spec, pot, kUnits);
  CHECK(w.t_lo < 0.0);
  const auto ref = mean_exit_time(spec, pot, kUnits);
  const auto res = mean_exit_time_via_flux(spec, pot, kUnits, w, 1e-4);
  CHECK(res.mean_time == doctest::Approx(ref.t_out).epsilon(1e-3));
}

TEST_CASE("windows needing an oversized momentum grid are refused") {
  const GaussianPacketSpec spec{1.5, 0.25, -20.0};
  const SquarePotential pot{0.5, 1.0};
  CHECK_THROWS_AS(mean_exit_time_via_flux(spec, pot, kUnits, {0.0, 1e9}, 1e-3),
                  DomainError);
}
