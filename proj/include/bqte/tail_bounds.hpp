#ifndef BQTE_TAIL_BOUNDS_HPP
#define BQTE_TAIL_BOUNDS_HPP

#include <vector>

#include "bqte/estimator.hpp"

namespace bqte {

// Difference in tail-conditional means between treatment and control above
// matched thresholds:
//   mean of treatment values >= G^-1(F(x))  minus  mean of control values >= x
// Tail membership is weak (ties at the threshold are in).  Bounds the average
// effect over the control upper tail without any order-preservation
// assumption.  RangeError when either tail is empty.
double utbqte_point(const Sample& control, const Sample& treatment, double x);

// Mirror image with <= tails.  At x = max(control) both thresholds cover the
// full samples and the value equals the plain difference of group means.
double ltbqte_point(const Sample& control, const Sample& treatment, double x);

struct TailCurves {
  EffectCurve upper;  // curve_kind = utbqte
  EffectCurve lower;  // curve_kind = ltbqte
};

// Both tail curves over the config's grid, absolute scale.  Point estimates
// follow config.kind (bagging by default, direct available; doksum has no
// tail analogue and falls back to direct); intervals are percentile bootstrap
// either way.  Relative variants come from relative_curve().
TailCurves estimate_tail_curves(const TrialDataset& dataset, const EstimatorConfig& config);
TailCurves estimate_tail_curves(const TrialDataset& dataset, const EstimatorConfig& config,
                                const std::vector<double>& grid);

}  // namespace bqte

#endif  // BQTE_TAIL_BOUNDS_HPP
