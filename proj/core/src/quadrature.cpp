#include "hartman/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "hartman/errors.hpp"

namespace hartman::quad {

namespace {

// Kronrod abscissae (xgk) and weights from QUADPACK qk15. Odd indices are
// the Gauss points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace

Result gauss_kronrod15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) {
      resg += kWg[j / 2] * (f1 + f2);
    }
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  const double abs_half = std::abs(half);
  resasc *= abs_half;
  resabs *= abs_half;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return Result{resk * half, err, 15, 1};
}

Result integrate(const Integrand& f, std::span<const double> breakpoints,
                 const Options& opts) {
  if (breakpoints.size() < 2) {
    throw DomainError("integrate: need at least two breakpoints");
  }
  std::priority_queue<Panel> heap;
  double total = 0.0;
  double total_err = 0.0;
  std::size_t evals = 0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (!(b > a)) {
      continue;
    }
    const Result r = gauss_kronrod15(f, a, b);
    evals += r.evaluations;
    total += r.value;
    total_err += r.error;
    heap.push(Panel{a, b, r.value, r.error});
  }
  if (!std::isfinite(total)) {
    throw ConvergenceError("integrate: non-finite integrand", total);
  }

  std::size_t subdivisions = heap.size();
  // Repeated summation drifts; resum from the heap occasionally.
  std::size_t since_resum = 0;
  while (!heap.empty() &&
         total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (subdivisions >= opts.max_subdivisions) {
      std::ostringstream msg;
      msg << "integrate: no convergence after " << subdivisions
          << " subdivisions (estimate " << total << ", error " << total_err
          << ")";
      throw ConvergenceError(msg.str(), total);
    }
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in floating point.
      std::ostringstream msg;
      msg << "integrate: panel [" << worst.a << ", " << worst.b
          << "] at resolution limit (estimate " << total << ")";
      throw ConvergenceError(msg.str(), total);
    }
    heap.pop();
    const Result left = gauss_kronrod15(f, worst.a, mid);
    const Result right = gauss_kronrod15(f, mid, worst.b);
    evals += left.evaluations + right.evaluations;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(Panel{worst.a, mid, left.value, left.error});
    heap.push(Panel{mid, worst.b, right.value, right.error});
    ++subdivisions;
    if (++since_resum == 200) {
      since_resum = 0;
      auto copy = heap;
      total = 0.0;
      total_err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().error;
        copy.pop();
      }
    }
    if (!std::isfinite(total)) {
      throw ConvergenceError("integrate: non-finite integrand", total);
    }
  }
  return Result{total, total_err, evals, subdivisions};
}

std::vector<double> make_breakpoints(double a, double b,
                                     std::vector<double> points) {
  std::vector<double> out;
  out.reserve(points.size() + 2);
  out.push_back(a);
  for (double p : points) {
    if (p > a && p < b && std::isfinite(p)) {
      out.push_back(p);
    }
  }
  out.push_back(b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void gauss_legendre(std::size_t n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

}  // namespace hartman::quad
