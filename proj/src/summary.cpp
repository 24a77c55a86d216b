#include "bqte/summary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "bqte/errors.hpp"
#include "bqte/rng.hpp"

namespace bqte {

SummaryEffects summarize(const TrialDataset& dataset, const EstimatorConfig& config) {
  config.validate();
  dataset.validate();
  const double control_mean = sample_mean(dataset.control);
  const double treatment_mean = sample_mean(dataset.treatment);
  if (control_mean == 0.0) throw RangeError("ratio of means undefined: control mean is zero");

  const std::size_t boot_n = config.bootstrap_count;
  std::vector<double> ate_boot(boot_n), rom_boot(boot_n);
  parallel_for(boot_n, config.workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t b = lo; b < hi; ++b) {
      PairedResample rs = bootstrap_pair(dataset, config.seed, b);
      std::sort(rs.control.begin(), rs.control.end());
      std::sort(rs.treatment.begin(), rs.treatment.end());
      const double mc = sorted::mean(rs.control);
      const double mt = sorted::mean(rs.treatment);
      ate_boot[b] = mt - mc;
      rom_boot[b] = mc == 0.0 ? std::numeric_limits<double>::quiet_NaN() : mt / mc;
    }
  });
  // A resampled control mean of zero only happens when zero outcomes exist;
  // drop such replicates from the ratio's interval rather than poisoning it.
  std::erase_if(rom_boot, [](double v) { return std::isnan(v); });
  if (rom_boot.size() < 2) throw RangeError("too few valid bootstrap replicates for RoM");

  SummaryEffects out;
  out.alpha = config.alpha;
  out.ate.estimate = treatment_mean - control_mean;
  std::tie(out.ate.ci_low, out.ate.ci_high) = percentile_interval(ate_boot, config.alpha);
  out.rom.estimate = treatment_mean / control_mean;
  std::tie(out.rom.ci_low, out.rom.ci_high) = percentile_interval(rom_boot, config.alpha);
  out.relative_reduction.estimate = 1.0 - out.rom.estimate;
  out.relative_reduction.ci_low = 1.0 - out.rom.ci_high;
  out.relative_reduction.ci_high = 1.0 - out.rom.ci_low;
  out.provenance =
      detail::make_provenance(dataset, config, config.resolved_cutpoints(dataset.control.size()));
  return out;
}

}  // namespace bqte
