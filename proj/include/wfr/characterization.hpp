#ifndef WFR_CHARACTERIZATION_HPP
#define WFR_CHARACTERIZATION_HPP

#include <optional>
#include <span>
#include <string>

#include "wfr/models.hpp"
#include "wfr/weighted_means.hpp"

namespace wfr {

enum class MeanKind { arithmetic, geometric, harmonic };
enum class MeanPair { AG, GH, AH };

const char* to_string(MeanKind k) noexcept;
const char* to_string(MeanPair p) noexcept;

/// Consistency verdict with an explicit threshold: "consistent-with" is a
/// numerical statement about the max deviation over the grid, never a proof.
struct CharacterizationVerdict {
  std::string test_id;
  double statistic = 0.0;
  double threshold = 0.0;
  bool consistent = false;
  bool inconclusive = false;
  double witness_x = 0.0;  // abscissa of the max deviation
  std::string note;
};

/// Equality of any two of the weighted means characterizes a constant
/// hazard.  The statistic is the largest relative gap of the chosen pair
/// over the grid; when it stays under the threshold, the hazard's scan
/// verdict is cross-checked to be constant.
CharacterizationVerdict test_exponentiality_via_mean_equality(
    const WeightedModel& m, MeanPair pair, std::span<const double> x_grid,
    double threshold = 1e-6, const EvalOptions& opts = {});

/// Hazard recovered from proportionality mean(x) = ratio * h(x):
///   arithmetic: h = k * W^((1-ratio)/ratio)
///   geometric:  h = k * W^(ln(e/ratio) - 1)
///   harmonic:   h = (W/(k*ratio))^(1-ratio)
/// where W is the cumulative weight.  For power weights w = x^n the
/// arithmetic recovery is Weibull with shape (n - ratio*n + 1)/ratio.
struct RecoveredHazard {
  HazardModel model;
  double w_exponent = 0.0;
  std::optional<double> weibull_shape;
  std::optional<double> weibull_scale;
};

RecoveredHazard recover_hazard_from_proportionality(const WeightFunction& w,
                                                    MeanKind which, double ratio,
                                                    double k);

/// Estimates mean(x)/h(x) by the grid median and reports the worst relative
/// deviation of the pointwise ratio from it.  ratio <= 1 predicts an
/// increasing hazard; the prediction is cross-checked against a scan.
struct ProportionalityResult {
  double ratio = 0.0;
  CharacterizationVerdict verdict;
  Monotone hazard_direction = Monotone::unknown;
  bool direction_consistent = true;
};

ProportionalityResult test_proportionality(const WeightedModel& m, MeanKind which,
                                           std::span<const double> x_grid,
                                           double threshold = 1e-6,
                                           const EvalOptions& opts = {});

}  // namespace wfr

#endif  // WFR_CHARACTERIZATION_HPP
