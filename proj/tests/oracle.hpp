// Test-only reference integrators and series, independent of the library's
// Gauss-Kronrod path.  Used to compute (and freeze) expected values.
#ifndef WFR_TESTS_ORACLE_HPP
#define WFR_TESTS_ORACLE_HPP

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

// Double-exponential (tanh-sinh) quadrature over [a,b].  Handles integrable
// endpoint singularities; non-finite endpoint samples are dropped (their
// weights are doubly-exponentially small).
inline double integrate(const std::function<double(double)>& f, double a,
                        double b) {
  const double half = 0.5 * (b - a);
  const double pi_2 = std::numbers::pi / 2.0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double result = 0.0;
  for (int level = 2; level <= 12; ++level) {
    const double h = std::pow(2.0, -level);
    const int K = static_cast<int>(std::ceil(6.5 / h));
    double sum = 0.0;
    for (int k = -K; k <= K; ++k) {
      const double u = k * h;
      const double sh = pi_2 * std::sinh(u);
      // distance from the nearer endpoint, 1 -/+ tanh(sh) without
      // cancellation: 1 - tanh(s) = 2/(e^{2s}+1)
      const double d = half * 2.0 / (std::exp(2.0 * std::abs(sh)) + 1.0);
      if (d == 0.0) continue;
      const double point = k >= 0 ? b - d : a + d;
      const double csh = std::cosh(sh);
      const double w = pi_2 * std::cosh(u) / (csh * csh);
      const double fx = f(point);
      if (std::isfinite(fx) && std::isfinite(w)) sum += w * fx;
    }
    result = sum * h * half;
    if (level > 4 && std::abs(result - prev) <= 1e-13 * (1.0 + std::abs(result))) {
      break;
    }
    prev = result;
  }
  return result;
}

// Composite Simpson; second reference for smooth integrands.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n = 1 << 16) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) {
    sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// E1 by its defining series, -euler - ln z + sum (-1)^{k+1} z^k/(k k!).
inline double e1_series(double z) {
  constexpr double euler = 0.57721566490153286060651209008240243;
  double term = z;
  double sum = z;
  for (int k = 2; k <= 200; ++k) {
    term *= -z * (k - 1.0) / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return -euler - std::log(z) + sum;
}

// Lower incomplete gamma by direct quadrature of the defining integral.
inline double lower_gamma_quadrature(double a, double x) {
  return integrate([a](double t) { return std::pow(t, a - 1.0) * std::exp(-t); },
                   0.0, x);
}

// Upper incomplete gamma: quadrature on [x, cut] with the cut pushed far
// enough that the remaining tail is below 1e-16 relative.
inline double upper_gamma_quadrature(double a, double x) {
  double cut = std::max(x, 1.0);
  while (std::pow(cut, a - 1.0) * std::exp(-cut) > 1e-18 ||
         cut < x + 40.0) {
    cut *= 1.5;
    if (cut > 1e6) break;
  }
  return integrate([a](double t) { return std::pow(t, a - 1.0) * std::exp(-t); },
                   x, cut);
}

}  // namespace oracle

#endif  // WFR_TESTS_ORACLE_HPP
