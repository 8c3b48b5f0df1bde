#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "hartman/bound_states.hpp"

using namespace hartman;

namespace {
const PhysicalConstants kUnits{};
constexpr double kPi = std::numbers::pi;

// Dense sign-change scan of K cos(qa) - q sin(qa) (even) and
// K sin(qa) + q cos(qa) (odd) over q in (0, R/a), refined by bisection.
std::vector<double> scan_decay_constants(const SquarePotential& pot, Parity par,
                                         double resolution) {
  const double a = pot.half_width;
  const double r2 = -pot.kappa_squared(kUnits);
  const auto f = [&](double q) {
    const double kb = std::sqrt(std::max(r2 - q * q, 0.0));
    return par == Parity::even ? kb * std::cos(q * a) - q * std::sin(q * a)
                               : kb * std::sin(q * a) + q * std::cos(q * a);
  };
  std::vector<double> out;
  const double qmax = std::sqrt(r2);
  double prev = f(1e-300);
  for (double q = resolution; q < qmax; q += resolution) {
    const double cur = f(q);
    if ((prev < 0) != (cur < 0)) {
      double lo = q - resolution, hi = q;
      for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((f(mid) < 0) == (f(lo) < 0) ? lo : hi) = mid;
      }
      const double qs = 0.5 * (lo + hi);
      out.push_back(std::sqrt(r2 - qs * qs));
    }
    prev = cur;
  }
  return out;
}
}  // namespace

TEST_CASE("counting by threshold formula") {
  CHECK(count_bound_states(SquarePotential{0.0, 1.0}, kUnits) == 0);
  CHECK(count_bound_states(SquarePotential{3.0, 1.0}, kUnits) == 0);
  CHECK(count_bound_states(SquarePotential{-1.0, 1.0}, kUnits) == 1);
  CHECK(count_bound_states(SquarePotential{-1.3, 1.0}, kUnits) == 2);
  CHECK(count_bound_states(SquarePotential{-5.0, 1.0}, kUnits) == 3);
}

TEST_CASE("thresholds") {
  CHECK(threshold_depth(1, SquarePotential{-1.0, 1.0}, kUnits) ==
        doctest::Approx(-kPi * kPi / 8));
  CHECK(threshold_depth(2, SquarePotential{-1.0, 1.0}, kUnits) ==
        doctest::Approx(-kPi * kPi / 2));
  const SquarePotential at{-kPi * kPi / 8, 1.0};
  CHECK(is_at_threshold(at, kUnits));
  CHECK(count_bound_states(at, kUnits) == 1);
  const auto spec = solve_bound_states(at, kUnits);
  CHECK(spec.at_threshold);
  CHECK(spec.count() == 1);
}

TEST_CASE("single even level against the scan oracle") {
  const SquarePotential pot{-1.0, 1.0};
  const auto spec = solve_bound_states(pot, kUnits);
  REQUIRE(spec.count() == 1);
  CHECK(spec.levels[0].parity == Parity::even);
  const auto ref = scan_decay_constants(pot, Parity::even, 1e-4);
  REQUIRE(ref.size() == 1);
  CHECK(spec.levels[0].k_b == doctest::Approx(ref[0]).epsilon(1e-10));
  CHECK(spec.levels[0].energy == doctest::Approx(-0.5 * ref[0] * ref[0]));
}

TEST_CASE("three levels alternate parity") {
  const SquarePotential pot{-5.0, 1.0};
  const auto spec = solve_bound_states(pot, kUnits);
  REQUIRE(spec.count() == 3);
  CHECK(spec.levels[0].parity == Parity::even);
  CHECK(spec.levels[1].parity == Parity::odd);
  CHECK(spec.levels[2].parity == Parity::even);
  CHECK(spec.levels[0].energy < spec.levels[1].energy);
  CHECK(spec.levels[1].energy < spec.levels[2].energy);
  auto even = scan_decay_constants(pot, Parity::even, 1e-4);
  auto odd = scan_decay_constants(pot, Parity::odd, 1e-4);
  std::sort(even.begin(), even.end());
  REQUIRE(even.size() == 2);
  REQUIRE(odd.size() == 1);
  CHECK(spec.levels[0].k_b == doctest::Approx(even[1]).epsilon(1e-10));
  CHECK(spec.levels[1].k_b == doctest::Approx(odd[0]).epsilon(1e-10));
  CHECK(spec.levels[2].k_b == doctest::Approx(even[0]).epsilon(1e-10));
  CHECK(spec.shallowest_k_b() == doctest::Approx(even[0]).epsilon(1e-10));
}

TEST_CASE("random wells: count consistency, residuals and circle constraint") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> v(-20.0, 0.0), a(0.1, 5.0);
  int checked = 0;
  while (checked < 200) {
    const SquarePotential pot{v(rng), a(rng)};
    if (nearest_threshold(pot, kUnits).distance < 1e-6) {
      continue;
    }
    const auto spec = solve_bound_states(pot, kUnits);
    CHECK(spec.count() == count_bound_states(pot, kUnits));
    const double r2 = -pot.kappa_squared(kUnits);
    for (const auto& lv : spec.levels) {
      CHECK(std::abs(lv.residual) < 1e-12);
      CHECK(lv.k_b > 0.0);
      CHECK(std::abs(lv.q * lv.q + lv.k_b * lv.k_b - r2) < 1e-12 * std::max(1.0, r2));
    }
    ++checked;
  }
}

TEST_CASE("shallowest level grows continuously past a threshold") {
  const double vt = -kPi * kPi / 8;
  double prev = 0.0;
  for (double dv : {1e-6, 1e-4, 1e-3, 1e-2, 0.1}) {
    const auto spec = solve_bound_states(SquarePotential{vt - dv, 1.0}, kUnits);
    REQUIRE(spec.count() == 2);
    CHECK(spec.shallowest_k_b() > prev);
    prev = spec.shallowest_k_b();
  }
  CHECK(solve_bound_states(SquarePotential{vt - 1e-10, 1.0}, kUnits).shallowest_k_b() < 1e-4);
}

TEST_CASE("solving a barrier is an input error") {
  CHECK_THROWS_AS(solve_bound_states(SquarePotential{1.0, 1.0}, kUnits), DomainError);
}

TEST_CASE("Levinson theorem") {
  const auto barrier = levinson_check(SquarePotential{5.0, 1.0}, kUnits, 1e-4);
  CHECK(barrier.predicted == doctest::Approx(-kPi / 2));
  CHECK(barrier.residual < 1e-2 * kPi);

  const auto one = levinson_check(SquarePotential{-1.0, 1.0}, kUnits, 1e-4);
  CHECK(one.n_b == 1);
  CHECK(one.predicted == doctest::Approx(kPi / 2));
  CHECK(one.residual < 1e-2 * kPi);

  for (double v0 : {-3.0, -8.0}) {
    const auto rep = levinson_check(SquarePotential{v0, 1.0}, kUnits, 1e-4);
    CHECK(rep.residual < 1e-2 * kPi);
    CHECK(rep.t_vanishes_at_zero);
  }

  const auto free = levinson_check(SquarePotential{0.0, 1.0}, kUnits, 1e-4);
  CHECK(free.phi_t_at_kmin == 0.0);
  CHECK(free.residual == 0.0);
  CHECK_FALSE(free.t_vanishes_at_zero);

  CHECK_THROWS_AS(levinson_check(SquarePotential{-kPi * kPi / 8, 1.0}, kUnits, 1e-4),
                  DomainError);
}
