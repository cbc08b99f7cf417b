#include "wfr/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wfr/errors.hpp"

namespace wfr {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kTiny = std::numeric_limits<double>::min() / 1e-30;

std::string describe(const char* fn, double a, double x) {
  return std::string(fn) + " did not converge at (a=" + std::to_string(a) +
         ", x=" + std::to_string(x) + ")";
}

// Regularized series for P(a,x), valid and fast for x < a + 1.
// gamma(a,x) = x^a e^{-x} sum_{n>=0} x^n / (a (a+1) ... (a+n)).
double lower_gamma_series(double a, double x, const SpecialFnConfig& cfg) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int i = 0; i < cfg.max_iter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * cfg.rel_tol) {
      return sum * std::exp(-x + a * std::log(x));
    }
  }
  throw ComputationError(describe("lower_incomplete_gamma series", a, x));
}

// Continued fraction (modified Lentz) for Gamma(a,x), valid for x >= a + 1.
double upper_gamma_cf(double a, double x, const SpecialFnConfig& cfg) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= cfg.max_iter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < cfg.rel_tol) {
      return std::exp(-x + a * std::log(x)) * h;
    }
  }
  throw ComputationError(describe("upper_incomplete_gamma fraction", a, x));
}

}  // namespace

void SpecialFnConfig::validate() const {
  if (!(rel_tol > 0.0)) throw ValidationError("SpecialFnConfig: rel_tol must be > 0");
  if (max_iter < 1) throw ValidationError("SpecialFnConfig: max_iter must be >= 1");
}

double lower_incomplete_gamma(double a, double x, const SpecialFnConfig& cfg) {
  cfg.validate();
  if (!(a > 0.0)) throw ValidationError("lower_incomplete_gamma: a must be > 0");
  if (!(x >= 0.0)) throw ValidationError("lower_incomplete_gamma: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return lower_gamma_series(a, x, cfg);
  return std::tgamma(a) - upper_gamma_cf(a, x, cfg);
}

double upper_incomplete_gamma(double a, double x, const SpecialFnConfig& cfg) {
  cfg.validate();
  if (!(a > 0.0)) throw ValidationError("upper_incomplete_gamma: a must be > 0");
  if (!(x >= 0.0)) throw ValidationError("upper_incomplete_gamma: x must be >= 0");
  if (x == 0.0) return std::tgamma(a);
  if (x >= a + 1.0) return upper_gamma_cf(a, x, cfg);
  return std::tgamma(a) - lower_gamma_series(a, x, cfg);
}

double exponential_integral_e1(double z, const SpecialFnConfig& cfg) {
  cfg.validate();
  if (!(z > 0.0)) throw ValidationError("exponential_integral_e1: z must be > 0");
  if (z <= 1.0) {
    // E1(z) = -euler - ln z + sum_{k>=1} (-1)^{k+1} z^k / (k k!)
    double term = z;
    double sum = z;
    for (int k = 2; k <= cfg.max_iter; ++k) {
      term *= -z * static_cast<double>(k - 1) /
              (static_cast<double>(k) * static_cast<double>(k));
      sum += term;
      if (std::abs(term) < std::abs(sum) * cfg.rel_tol) {
        return -kEulerGamma - std::log(z) + sum;
      }
    }
    throw ComputationError(describe("exponential_integral_e1 series", 1.0, z));
  }
  // Continued fraction E1(z) = e^{-z} * 1/(z+1- 1/(z+3- 4/(z+5- ...))).
  double b = z + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= cfg.max_iter; ++i) {
    const double an = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < cfg.rel_tol) return h * std::exp(-z);
  }
  throw ComputationError(describe("exponential_integral_e1 fraction", 1.0, z));
}

double euler_gamma() noexcept { return kEulerGamma; }

}  // namespace wfr
