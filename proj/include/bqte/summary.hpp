#ifndef BQTE_SUMMARY_HPP
#define BQTE_SUMMARY_HPP

#include "bqte/estimator.hpp"

namespace bqte {

struct IntervalEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// The single-number comparators: mean difference, ratio of means and the
// relative reduction 1 - RoM (a presentation of RoM, not a separate
// estimate).
struct SummaryEffects {
  IntervalEstimate ate;                 // treatment mean - control mean
  IntervalEstimate rom;                 // treatment mean / control mean
  IntervalEstimate relative_reduction;  // 1 - rom, intervals flipped from rom's
  double alpha = 0.05;
  Provenance provenance;
};

// Percentile bootstrap intervals use the same replicate stream as the curve
// estimators: replicate b of (dataset, seed) is the identical paired
// resample everywhere.  RangeError when the control mean is zero (RoM
// undefined).
SummaryEffects summarize(const TrialDataset& dataset, const EstimatorConfig& config);

}  // namespace bqte

#endif  // BQTE_SUMMARY_HPP
