#include "bqte/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "bqte/errors.hpp"
#include "bqte/rng.hpp"

namespace bqte {

namespace {

// Mean over [from, to) of a sorted array, accumulated left to right so the
// full-sample case reproduces sample_mean() bit for bit.
double mean_range(std::span<const double> v, std::size_t from, std::size_t to) {
  double acc = 0.0;
  for (std::size_t i = from; i < to; ++i) acc += v[i];
  return acc / static_cast<double>(to - from);
}

double utbqte_sorted(std::span<const double> control, std::span<const double> treatment,
                     double x) {
  const auto first = std::lower_bound(control.begin(), control.end(), x);
  if (first == control.end()) throw RangeError("empty tail at threshold");
  const double control_mean =
      mean_range(control, static_cast<std::size_t>(first - control.begin()), control.size());

  const double p = sorted::ecdf(control, x);
  const double threshold =
      p > 0.0 ? sorted::generalized_inverse(treatment, p) : treatment.front();
  const auto tfirst = std::lower_bound(treatment.begin(), treatment.end(), threshold);
  const double treatment_mean = mean_range(
      treatment, static_cast<std::size_t>(tfirst - treatment.begin()), treatment.size());
  return treatment_mean - control_mean;
}

double ltbqte_sorted(std::span<const double> control, std::span<const double> treatment,
                     double x) {
  const auto last = std::upper_bound(control.begin(), control.end(), x);
  const std::size_t count = static_cast<std::size_t>(last - control.begin());
  if (count == 0) throw RangeError("empty tail at threshold");
  const double control_mean = mean_range(control, 0, count);

  const double p = sorted::ecdf(control, x);
  const double threshold = sorted::generalized_inverse(treatment, p);
  const auto tlast = std::upper_bound(treatment.begin(), treatment.end(), threshold);
  const double treatment_mean =
      mean_range(treatment, 0, static_cast<std::size_t>(tlast - treatment.begin()));
  return treatment_mean - control_mean;
}

}  // namespace

double utbqte_point(const Sample& control, const Sample& treatment, double x) {
  const std::vector<double> sc = sorted_values(control);
  const std::vector<double> st = sorted_values(treatment);
  return utbqte_sorted(sc, st, x);
}

double ltbqte_point(const Sample& control, const Sample& treatment, double x) {
  const std::vector<double> sc = sorted_values(control);
  const std::vector<double> st = sorted_values(treatment);
  return ltbqte_sorted(sc, st, x);
}

TailCurves estimate_tail_curves(const TrialDataset& dataset, const EstimatorConfig& config) {
  config.validate();
  dataset.validate();
  const std::vector<double> sc = sorted_values(dataset.control);
  const std::vector<double> st = sorted_values(dataset.treatment);
  const std::size_t cutpoints = config.resolved_cutpoints(sc.size());
  const auto range = valid_range(dataset.control, cutpoints);
  const std::vector<double> grid = build_grid(dataset.control, config, range);

  const std::size_t boot_n = config.bootstrap_count;
  const std::size_t grid_n = grid.size();
  std::vector<double> upper_boot(boot_n * grid_n);
  std::vector<double> lower_boot(boot_n * grid_n);

  parallel_for(boot_n, config.workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t b = lo; b < hi; ++b) {
      PairedResample rs = bootstrap_pair(dataset, config.seed, b);
      std::sort(rs.control.begin(), rs.control.end());
      std::sort(rs.treatment.begin(), rs.treatment.end());
      double* up = upper_boot.data() + b * grid_n;
      double* low = lower_boot.data() + b * grid_n;
      for (std::size_t g = 0; g < grid_n; ++g) {
        // Replicate boundary rule: thresholds are clamped into the
        // resample's observed control range so every replicate yields a
        // value (in-range x falls outside it only when the resample missed
        // an entire 5-observation tail).
        const double x = std::clamp(grid[g], rs.control.front(), rs.control.back());
        up[g] = utbqte_sorted(rs.control, rs.treatment, x);
        low[g] = ltbqte_sorted(rs.control, rs.treatment, x);
      }
    }
  });

  const bool bagged = config.kind == EstimatorKind::bagging;
  auto assemble = [&](CurveKind kind, const std::vector<double>& boot) {
    EffectCurve curve;
    curve.curve_kind = kind;
    curve.scale = Scale::absolute;
    curve.alpha = config.alpha;
    curve.valid_range = range;
    curve.points.resize(grid_n);
    std::vector<double> column(boot_n);
    for (std::size_t g = 0; g < grid_n; ++g) {
      for (std::size_t b = 0; b < boot_n; ++b) column[b] = boot[b * grid_n + g];
      CurvePoint& pt = curve.points[g];
      pt.x = grid[g];
      if (bagged) {
        double acc = 0.0;
        for (double v : column) acc += v;
        pt.estimate = acc / static_cast<double>(boot_n);
      } else {
        const double x = config.enforce_valid_range
                             ? grid[g]
                             : std::clamp(grid[g], sc.front(), sc.back());
        pt.estimate = kind == CurveKind::utbqte ? utbqte_sorted(sc, st, x)
                                                : ltbqte_sorted(sc, st, x);
      }
      const auto ci = percentile_interval(column, config.alpha);
      pt.ci_low = ci.first;
      pt.ci_high = ci.second;
    }
    return curve;
  };

  TailCurves out;
  out.upper = assemble(CurveKind::utbqte, upper_boot);
  out.lower = assemble(CurveKind::ltbqte, lower_boot);
  out.upper.provenance = detail::make_provenance(dataset, config, cutpoints);
  out.lower.provenance = out.upper.provenance;
  return out;
}

TailCurves estimate_tail_curves(const TrialDataset& dataset, const EstimatorConfig& config,
                                const std::vector<double>& grid) {
  EstimatorConfig cfg = config;
  cfg.grid = GridSpec::explicit_list(grid);
  return estimate_tail_curves(dataset, cfg);
}

}  // namespace bqte
