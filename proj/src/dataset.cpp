#include "bqte/dataset.hpp"

#include <cmath>
#include <sstream>

#include "bqte/errors.hpp"

namespace bqte {

void TrialDataset::validate(bool require_positive) const {
  control.validate();
  treatment.validate();
  if (require_positive) {
    for (const Sample* s : {&control, &treatment})
      for (double v : s->values)
        if (!(v > 0.0))
          throw DataError("nonpositive outcome value in dataset '" + trial_id + "'");
  }
}

std::string ImputeRule::describe() const {
  if (kind == Kind::at_censoring_time) return "at-censoring-time";
  std::ostringstream os;
  os << "fixed(" << value << ")";
  return os.str();
}

namespace {

void impute_group(Sample& s, const ImputeRule& rule, std::vector<ImputationEntry>& log) {
  if (s.censor_flags.empty()) return;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (!s.censor_flags[i]) continue;
    const double original = s.values[i];
    double imputed = original;
    if (rule.kind == ImputeRule::Kind::fixed_value) {
      if (rule.value < original)
        throw DataError("fixed imputation value below censoring time " +
                        std::to_string(original));
      imputed = rule.value;
    }
    s.values[i] = imputed;
    log.push_back({original, imputed, rule.describe()});
  }
  s.censor_flags.clear();
}

}  // namespace

TrialDataset impute_censored(TrialDataset dataset, const ImputeRule& rule) {
  impute_group(dataset.control, rule, dataset.imputation_log);
  impute_group(dataset.treatment, rule, dataset.imputation_log);
  return dataset;
}

TrialDataset pool_trials(std::span<const TrialDataset> trials) {
  if (trials.empty()) throw DataError("cannot pool an empty list of trials");
  TrialDataset pooled;
  for (const TrialDataset& t : trials) {
    auto append = [](Sample& dst, const Sample& src) {
      dst.values.insert(dst.values.end(), src.values.begin(), src.values.end());
      if (!src.censor_flags.empty() || !dst.censor_flags.empty()) {
        dst.censor_flags.resize(dst.values.size() - src.values.size(), false);
        if (src.censor_flags.empty())
          dst.censor_flags.resize(dst.values.size(), false);
        else
          dst.censor_flags.insert(dst.censor_flags.end(), src.censor_flags.begin(),
                                  src.censor_flags.end());
      }
    };
    append(pooled.control, t.control);
    append(pooled.treatment, t.treatment);
    pooled.trial_id += (pooled.trial_id.empty() ? "" : "+") + t.trial_id;
    pooled.imputation_log.insert(pooled.imputation_log.end(), t.imputation_log.begin(),
                                 t.imputation_log.end());
  }
  pooled.control.label = "control";
  pooled.treatment.label = "treatment";
  return pooled;
}

}  // namespace bqte
