#ifndef BQTE_DATASET_HPP
#define BQTE_DATASET_HPP

#include <span>
#include <string>
#include <vector>

#include "bqte/sample.hpp"

namespace bqte {

struct ImputationEntry {
  double original = 0.0;
  double imputed = 0.0;
  std::string rule;
};

// Paired control/treatment samples from one trial (or a pool of trials).
struct TrialDataset {
  Sample control;
  Sample treatment;
  std::string trial_id;
  std::vector<ImputationEntry> imputation_log;

  // DataError unless both groups validate.  `require_positive` additionally
  // rejects nonpositive outcomes (duration-type data).
  void validate(bool require_positive = false) const;
};

struct ImputeRule {
  enum class Kind { at_censoring_time, fixed_value };
  Kind kind = Kind::at_censoring_time;
  double value = 0.0;  // fixed_value only

  static ImputeRule at_censoring_time() { return {Kind::at_censoring_time, 0.0}; }
  static ImputeRule fixed(double v) { return {Kind::fixed_value, v}; }
  std::string describe() const;
};

// Replaces every censored observation per the rule, clears the flags and
// appends to the imputation log.  fixed(v) with v below a censoring time is a
// DataError: it would move an observation under its known lower bound.
// Idempotent: a dataset without censored flags passes through unchanged.
TrialDataset impute_censored(TrialDataset dataset, const ImputeRule& rule);

// Concatenates the groups of several trials (individual patient data
// pooling).  Values are kept as-is, ids joined with '+', logs merged.
TrialDataset pool_trials(std::span<const TrialDataset> trials);

}  // namespace bqte

#endif  // BQTE_DATASET_HPP
