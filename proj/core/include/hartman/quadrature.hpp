#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hartman::quad {

struct Options {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  std::size_t max_subdivisions = 20000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// 15-point Gauss-Kronrod rule on [a, b] with the embedded 7-point Gauss
/// error estimate (QUADPACK scaling).
Result gauss_kronrod15(const Integrand& f, double a, double b);

/// Globally adaptive Gauss-Kronrod integration. The initial panels are the
/// consecutive pairs of `breakpoints` (sorted, at least two entries); the
/// panel with the largest error estimate is bisected until the total error
/// is below max(abs_tol, rel_tol * |I|). Throws ConvergenceError with the
/// current estimate when max_subdivisions is exhausted.
Result integrate(const Integrand& f, std::span<const double> breakpoints,
                 const Options& opts = {});

inline Result integrate(const Integrand& f, double a, double b,
                        const Options& opts = {}) {
  const double pts[] = {a, b};
  return integrate(f, pts, opts);
}

/// Sorts, removes duplicates and clips `points` to [a, b], always keeping
/// both endpoints.
std::vector<double> make_breakpoints(double a, double b,
                                     std::vector<double> points);

/// n-point Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(std::size_t n, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace hartman::quad
