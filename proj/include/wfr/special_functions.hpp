#ifndef WFR_SPECIAL_FUNCTIONS_HPP
#define WFR_SPECIAL_FUNCTIONS_HPP

namespace wfr {

struct SpecialFnConfig {
  double rel_tol = 1e-12;  // target relative error of series / fractions
  int max_iter = 500;      // iteration cap before ComputationError

  void validate() const;
};

/// Lower incomplete gamma gamma(a,x) = int_0^x t^{a-1} e^{-t} dt, a > 0, x >= 0.
double lower_incomplete_gamma(double a, double x,
                              const SpecialFnConfig& cfg = {});

/// Upper incomplete gamma Gamma(a,x) = int_x^inf t^{a-1} e^{-t} dt, a > 0, x >= 0.
double upper_incomplete_gamma(double a, double x,
                              const SpecialFnConfig& cfg = {});

/// Exponential integral E1(z) = int_z^inf e^{-t}/t dt, z > 0.
double exponential_integral_e1(double z, const SpecialFnConfig& cfg = {});

/// The Euler-Mascheroni constant, 0.5772156649... (pure constant).
double euler_gamma() noexcept;

}  // namespace wfr

#endif  // WFR_SPECIAL_FUNCTIONS_HPP
