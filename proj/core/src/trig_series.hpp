#pragma once

#include <complex>

namespace hartman::detail {

/// cos(qL), sin(qL)/q and (L cos(qL) - sin(qL)/q)/q^2 as entire functions
/// of w = q^2. The last one is d/dk[sin(qL)/q] / k when w = k^2 - const.
struct TrigParts {
  std::complex<double> cos_ql;
  std::complex<double> sinc_ql;
  std::complex<double> dsinc;
};

inline TrigParts trig_parts(std::complex<double> w, double length) {
  const std::complex<double> z2 = w * (length * length);
  TrigParts out;
  if (std::abs(z2) < 0.25) {
    // Power series in z^2 = (qL)^2; terms fall off faster than 0.25^n/(2n)!.
    std::complex<double> term_c(1.0, 0.0);  // (-1)^n z^2n / (2n)!
    std::complex<double> term_s(1.0, 0.0);  // (-1)^n z^2n / (2n+1)!
    std::complex<double> c = term_c;
    std::complex<double> s = term_s;
    std::complex<double> g(0.0, 0.0);
    // (-1)^n z^(2n-2) / (2n+1)!, starting at n = 1.
    std::complex<double> term_g(-1.0 / 6.0, 0.0);
    for (int n = 1; n < 16; ++n) {
      const double a = 2.0 * n;
      term_c *= -z2 / ((a - 1.0) * a);
      term_s *= -z2 / (a * (a + 1.0));
      c += term_c;
      s += term_s;
      g += a * term_g;
      term_g *= -z2 / ((a + 2.0) * (a + 3.0));
    }
    out.cos_ql = c;
    out.sinc_ql = length * s;
    out.dsinc = length * length * length * g;
    return out;
  }
  const std::complex<double> q = std::sqrt(w);
  out.cos_ql = std::cos(q * length);
  out.sinc_ql = std::sin(q * length) / q;
  out.dsinc = (length * out.cos_ql - out.sinc_ql) / w;
  return out;
}

}  // namespace hartman::detail
