#ifndef WFR_QUADRATURE_HPP
#define WFR_QUADRATURE_HPP

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace wfr {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 50;                 // bisection cap per panel chain
  double singularity_offset = 1e-12;  // base epsilon for divergence probes

  void validate() const;
};

struct Integral {
  double value = 0.0;
  double error = 0.0;  // reported error estimate
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over the finite
/// interval [a,b].  Integrable endpoint singularities (power or log type)
/// are handled by a power substitution; the integrand is never evaluated
/// at a singular endpoint.  Callers must provide a side-effect-free f.
///
/// Throws DomainError on a non-finite interior evaluation and
/// AccuracyError (carrying the best estimate) when the tolerance cannot
/// be met within max_depth.
Integral integrate(const std::function<double(double)>& f, double a, double b,
                   const QuadratureConfig& cfg = {});

/// Cumulative integrals int_0^{grid[i]} f, computed incrementally from
/// panel sums.  grid must be ascending with grid[0] >= 0.
std::vector<double> integrate_to_grid(const std::function<double(double)>& f,
                                      std::span<const double> grid,
                                      const QuadratureConfig& cfg = {});

/// Epsilon-halving probe for a suspected non-integrable singularity of f at
/// the left endpoint a: integrates over [a + eps/2^k, b] for k = 0,1,2 and
/// declares likely divergence when the increments fail to shrink.
struct DivergenceProbe {
  bool likely_divergent = false;
  std::array<double, 3> values{};  // probe integrals, shrinking epsilon
};

DivergenceProbe probe_left_divergence(const std::function<double(double)>& f,
                                      double a, double b,
                                      const QuadratureConfig& cfg = {});

}  // namespace wfr

#endif  // WFR_QUADRATURE_HPP
