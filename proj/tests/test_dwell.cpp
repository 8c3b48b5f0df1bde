#include <cmath>
#include <numbers>
#include <functional>
#include <random>

#include <doctest.h>

#include "hartman/dwell.hpp"
#include "hartman/scattering.hpp"

using namespace hartman;

namespace {
const PhysicalConstants kUnits{};

// Composite Simpson integral of psi_j^2 over [-a, a] with the interior
// amplitude fixed by continuity with the outer wave at x = a.
double interior_norm_by_quadrature(const SquarePotential& pot, double k,
                                   Parity par, int panels) {
  const auto ch = eigen_channels(amplitudes(pot, kUnits, k));
  const double a = pot.half_width;
  const std::complex<double> q = std::sqrt(std::complex<double>(k * k - pot.kappa_squared(kUnits)));
  const double amp = std::sqrt(2.0 / kUnits.planck());
  std::complex<double> c;
  std::function<std::complex<double>(double)> shape;
  if (par == Parity::even) {
    c = amp * std::cos(k * a + ch.delta0) / std::cos(q * a);
    shape = [q](double x) { return std::cos(q * x); };
  } else {
    c = amp * std::sin(k * a + ch.delta1) / std::sin(q * a);
    shape = [q](double x) { return std::sin(q * x); };
  }
  const double h = 2.0 * a / panels;
  double s = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double x = -a + i * h;
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::norm(c * shape(x));
  }
  return s * h / 3.0;
}
}  // namespace

TEST_CASE("free interior norm") {
  const SquarePotential free{0.0, 1.0};
  const double k = 1.7, a = 1.0, amp2 = 2.0 / kUnits.planck();
  CHECK(dwell_time(free, kUnits, k, Parity::even).interior_norm ==
        doctest::Approx(amp2 * (a + std::sin(2 * k * a) / (2 * k))).epsilon(1e-13));
  CHECK(dwell_time(free, kUnits, k, Parity::odd).interior_norm ==
        doctest::Approx(amp2 * (a - std::sin(2 * k * a) / (2 * k))).epsilon(1e-13));
}

TEST_CASE("closed form matches quadrature") {
  const SquarePotential pot{-1.0, 1.0};
  CHECK(dwell_time(pot, kUnits, 0.5, Parity::even).interior_norm ==
        doctest::Approx(interior_norm_by_quadrature(pot, 0.5, Parity::even, 20000))
            .epsilon(1e-10));
  for (double v0 : {5.0, 0.3, -4.0}) {
    for (double k : {0.2, 1.1, 3.0}) {
      for (Parity par : {Parity::even, Parity::odd}) {
        const SquarePotential p{v0, 0.8};
        CHECK(dwell_time(p, kUnits, k, par).interior_norm ==
              doctest::Approx(interior_norm_by_quadrature(p, k, par, 20000)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("dwell time at E = V0 and near interior nodes is finite") {
  const SquarePotential pot{2.0, 1.0};
  const auto at = dwell_time(pot, kUnits, 2.0, Parity::odd);
  const auto near = dwell_time(pot, kUnits, 2.0 * (1 + 1e-9), Parity::odd);
  CHECK(std::isfinite(at.tau_d));
  CHECK(at.tau_d == doctest::Approx(near.tau_d).epsilon(1e-7));
}

TEST_CASE("dwell times are positive") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> v(-10.0, 10.0), lk(-4.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const SquarePotential pot{v(rng), 1.0};
    const double k = std::exp(lk(rng));
    CHECK(dwell_time(pot, kUnits, k, Parity::even).tau_d > 0.0);
    CHECK(dwell_time(pot, kUnits, k, Parity::odd).tau_d > 0.0);
  }
}

TEST_CASE("Smith identity") {
  CHECK(smith_identity_check(SquarePotential{0.0, 1.0}, kUnits, 1.2, Parity::even)
            .relative_error < 1e-8);
  CHECK(smith_identity_check(SquarePotential{5.0, 1.0}, kUnits, 1.0, Parity::even)
            .relative_error < 1e-6);
  CHECK(smith_identity_check(SquarePotential{-1.0, 1.0}, kUnits, 0.3, Parity::odd)
            .relative_error < 1e-6);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> v(-10.0, 10.0), lk(std::log(0.02), std::log(20.0));
  for (int i = 0; i < 50; ++i) {
    const SquarePotential pot{v(rng), 1.0};
    const double k = std::exp(lk(rng));
    const Parity par = i % 2 ? Parity::odd : Parity::even;
    CHECK(smith_identity_check(pot, kUnits, k, par).relative_error < 1e-6);
  }
}

TEST_CASE("too small an energy step is reported") {
  const auto rep = smith_identity_check(SquarePotential{5.0, 1.0}, kUnits, 1.0,
                                        Parity::even, 1e-13);
  CHECK(rep.cancellation_warning);
  CHECK_THROWS_AS(smith_identity_check(SquarePotential{5.0, 1.0}, kUnits, 1.0,
                                       Parity::even, 10.0),
                  DomainError);
}
