#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "hartman/scattering.hpp"
#include "oracles.hpp"

using namespace hartman;

namespace {
const PhysicalConstants kUnits{};
}

TEST_CASE("free particle is fully transmitted") {
  const SquarePotential free{0.0, 1.3};
  for (double k : {1e-3, 0.5, 7.0, 40.0}) {
    const auto amps = amplitudes(free, kUnits, k);
    CHECK(std::abs(amps.t - 1.0) < 1e-15);
    CHECK(std::abs(amps.r) < 1e-15);
    const auto ch = eigen_channels(amps);
    CHECK(std::abs(ch.s0 - 1.0) < 1e-15);
    CHECK(std::abs(ch.s1 - 1.0) < 1e-15);
    CHECK(ch.delta0 == doctest::Approx(0.0));
    CHECK(ch.delta1 == doctest::Approx(0.0));
  }
}

TEST_CASE("zero wavenumber is rejected") {
  CHECK_THROWS_AS(amplitudes(SquarePotential{5.0, 1.0}, kUnits, 0.0),
                  DomainError);
}

TEST_CASE("above-barrier resonances transmit fully") {
  const auto pot = SquarePotential::from_width(5.0, 3.0);
  for (int n = 1; n <= 6; ++n) {
    const double q = n * std::numbers::pi / 3.0;
    const double p = std::sqrt(q * q + 10.0);
    CHECK(amplitudes(pot, kUnits, p).transmission() ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("closed form agrees with plane-wave matching") {
  const auto pot = SquarePotential::from_width(5.0, 1.0);
  const auto ref = oracle::plane_wave_matching(pot, kUnits, 1.0);
  const auto amps = amplitudes(pot, kUnits, 1.0);
  CHECK(std::norm(amps.t) == doctest::Approx(std::norm(ref.t)).epsilon(1e-12));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> v(-10.0, 10.0), lk(-3.0, 2.5),
      a(0.2, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const SquarePotential p{v(rng), a(rng)};
    const double k = std::exp(lk(rng));
    const auto m = oracle::plane_wave_matching(p, kUnits, k);
    const auto c = amplitudes(p, kUnits, k);
    worst = std::max(worst, std::abs(c.t - m.t) / std::abs(m.t));
    worst = std::max(worst, std::abs(c.r - m.r) / std::max(std::abs(m.r), 1e-300));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("complex wavenumbers continue the closed form") {
  const SquarePotential pot{5.0, 0.5};
  for (std::complex<double> k : {cplx(1.0, 1.0), cplx(-2.0, 0.3), cplx(0.4, 2.0)}) {
    const auto m = oracle::plane_wave_matching(pot, kUnits, k);
    const auto c = amplitudes(pot, kUnits, k);
    CHECK(std::abs(c.t - m.t) < 1e-10 * std::abs(m.t));
    CHECK(std::abs(c.r - m.r) < 1e-10 * std::abs(m.r));
  }
}

TEST_CASE("unitarity and channel factorization") {
  double worst = 0.0;
  for (int iv = 0; iv <= 40; ++iv) {
    const SquarePotential pot{-10.0 + 0.5 * iv, 1.0};
    for (int ik = 0; ik <= 60; ++ik) {
      const double k = 1e-3 * std::pow(5e4, ik / 60.0);
      const auto amps = amplitudes(pot, kUnits, k);
      const auto ch = eigen_channels(amps);
      worst = std::max({worst, std::abs(amps.transmission() + amps.reflection() - 1.0),
                        std::abs(std::abs(ch.s0) - 1.0),
                        std::abs(std::abs(ch.s1) - 1.0),
                        std::abs(ch.s0 * ch.s1 - (amps.t * amps.t - amps.r * amps.r)),
                        std::abs(0.5 * (ch.s0 + ch.s1) - amps.t)});
      const auto neg = amplitudes(pot, kUnits, cplx(-k, 0.0));
      worst = std::max({worst, std::abs(neg.t - std::conj(amps.t)),
                        std::abs(neg.r - std::conj(amps.r))});
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("eigenphases satisfy the interior matching conditions") {
  const SquarePotential pot{-1.0, 1.0};
  const double k = 0.5;
  const double q = std::sqrt(k * k + 2.0);
  const auto ch = eigen_channels(amplitudes(pot, kUnits, k));
  const double a = pot.half_width;
  CHECK(std::tan(k * a + ch.delta0) ==
        doctest::Approx(q / k * std::tan(q * a)).epsilon(1e-12));
  // odd channel: k cot(ka + delta1) = q cot(qa)
  CHECK(k / std::tan(k * a + ch.delta1) ==
        doctest::Approx(q / std::tan(q * a)).epsilon(1e-12));
  CHECK(ch.delta0 > -std::numbers::pi / 2);
  CHECK(ch.delta0 <= std::numbers::pi / 2);
}

TEST_CASE("amplitudes are continuous across q = 0") {
  const SquarePotential pot{2.0, 1.0};
  const double kb = 2.0;  // sqrt(2 m V0)
  const auto at = amplitudes(pot, kUnits, kb);
  // q = sqrt(k^2 - kb^2) = 1e-6 and 1e-6 i.
  for (double eps : {1e-12, -1e-12}) {
    const double k = std::sqrt(kb * kb + eps);
    const auto near = amplitudes(pot, kUnits, k);
    CHECK(std::abs(near.t - at.t) < 1e-8);
    CHECK(std::abs(near.r - at.r) < 1e-8);
  }
  const auto m = oracle::plane_wave_matching(pot, kUnits, kb * (1 + 1e-3));
  CHECK(std::abs(amplitudes(pot, kUnits, kb * (1 + 1e-3)).t - m.t) < 1e-10);
}

TEST_CASE("analytic phase slope matches finite differences") {
  const SquarePotential pot{-3.0, 1.0};
  for (double k : {0.2, 1.0, 2.7, 9.0}) {
    const double h = 1e-5 * k;
    const auto phase = [&](double kk) { return std::arg(amplitudes(pot, kUnits, kk).t); };
    double diff = (phase(k + h) - phase(k - h)) / (2 * h);
    CHECK(phase_slopes(pot, kUnits, k).dphi_t == doctest::Approx(diff).epsilon(1e-6));
  }
}

TEST_CASE("van Kampen condition in the upper half plane") {
  const SquarePotential pot{5.0, 0.5};
  std::vector<cplx> ks = {cplx(1.0, 1.0), cplx(3.0, 0.0), cplx(-0.7, 0.0),
                          cplx(0.1, 4.0)};
  const auto rep = van_kampen_check(pot, kUnits, ks);
  REQUIRE(rep.size() == ks.size());
  for (const auto& s : rep) {
    CHECK(s.pass);
    CHECK(s.symmetry_error[0] < 1e-12);
    CHECK(s.symmetry_error[1] < 1e-12);
  }
  CHECK(std::abs(rep[1].shifted_modulus[0] - 1.0) < 1e-12);
  CHECK(std::abs(rep[2].shifted_modulus[1] - 1.0) < 1e-12);

  CHECK_THROWS_AS(van_kampen_check(SquarePotential{-1.0, 1.0}, kUnits, ks),
                  DomainError);
  const std::vector<cplx> lower = {cplx(1.0, -0.5)};
  CHECK_THROWS_AS(van_kampen_check(pot, kUnits, lower), DomainError);
}
