#ifndef BQTE_ESTIMATOR_HPP
#define BQTE_ESTIMATOR_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bqte/dataset.hpp"
#include "bqte/sample.hpp"

namespace bqte {

enum class EstimatorKind { bagging, direct, doksum };
enum class CurveKind { bqte, utbqte, ltbqte };
enum class Scale { absolute, relative };

std::string to_string(EstimatorKind k);
std::string to_string(CurveKind k);
std::string to_string(Scale s);
EstimatorKind estimator_kind_from_string(const std::string& name);

// Where a curve is evaluated.
//   observed      unique observed control values inside the validity range
//   uniform(n)    n evenly spaced points across the validity range
//   explicit      caller-supplied strictly increasing points
struct GridSpec {
  enum class Policy { observed, uniform, explicit_list };
  Policy policy = Policy::observed;
  std::size_t uniform_points = 0;
  std::vector<double> points;

  static GridSpec observed() { return {}; }
  static GridSpec uniform(std::size_t n);
  static GridSpec explicit_list(std::vector<double> xs);
  std::string describe() const;
};

struct EstimatorConfig {
  std::size_t bootstrap_count = 2000;
  std::size_t cutpoint_count = 0;  // 0 = control sample size
  double alpha = 0.05;
  EstimatorKind kind = EstimatorKind::bagging;
  std::uint64_t seed = 1;
  GridSpec grid;
  unsigned workers = 1;
  // Simulation-harness override: evaluate outside the validity range instead
  // of refusing (needed to measure how calibration degrades out there).  The
  // CLI never sets this.
  bool enforce_valid_range = true;

  void validate() const;  // ConfigError on violations
  std::size_t resolved_cutpoints(std::size_t n_control) const;
};

struct CurvePoint {
  double x = 0.0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  bool operator==(const CurvePoint&) const = default;
};

// Config echo carried by every curve so an output file is reproducible on its
// own.  Worker count is deliberately absent: it cannot affect results.
struct Provenance {
  std::string dataset_id;
  std::string control_label;
  std::string treatment_label;
  std::size_t n_control = 0;
  std::size_t n_treatment = 0;
  std::size_t bootstrap_count = 0;
  std::size_t cutpoint_count = 0;
  double alpha = 0.0;
  EstimatorKind kind = EstimatorKind::bagging;
  std::uint64_t seed = 0;
  std::string grid_policy;
  std::vector<std::string> warnings;

  bool operator==(const Provenance&) const = default;
};

struct EffectCurve {
  CurveKind curve_kind = CurveKind::bqte;
  Scale scale = Scale::absolute;
  std::vector<CurvePoint> points;
  double alpha = 0.05;
  std::pair<double, double> valid_range{0.0, 0.0};
  Provenance provenance;

  bool operator==(const EffectCurve&) const = default;
};

// Quantile levels of the K cut points: i/(K+1) for i = 1..K.
std::vector<double> cutpoint_levels(std::size_t cutpoint_count);

// (x_i, y_i) = control and treatment quantiles at the cut-point levels.
std::vector<std::pair<double, double>> paired_quantile_grid(const Sample& control,
                                                            const Sample& treatment,
                                                            std::size_t cutpoint_count);

// Piecewise-linear interpolation of the treatment quantile through the paired
// grid, minus x.  Consecutive knots sharing the same x (heavy ties in
// day-valued data) are collapsed into one knot at the mean of their y values,
// so the function is single-valued everywhere on its support.
class PiecewiseBqte {
 public:
  explicit PiecewiseBqte(std::span<const std::pair<double, double>> grid);

  double support_low() const { return xs_.front(); }
  double support_high() const { return xs_.back(); }

  // RangeError("outside interpolation support") beyond [support_low, support_high].
  double at(double x) const;

  // Evaluation with the boundary rule used inside bootstrap replicates: x
  // beyond the replicate's outermost knot is evaluated at that knot
  // (constant extension), so every replicate contributes a value at every
  // requested point.
  double at_clamped(double x) const;

 private:
  double interpolate(double x) const;
  std::vector<double> xs_, ys_;  // collapsed knots; ys_ holds y - x
};

double piecewise_bqte(std::span<const std::pair<double, double>> grid, double x);

// Control-outcome interval between quantile levels 5/K and 1 - 5/K; estimates
// and intervals are only calibrated inside it.  RangeError for K < 11 (the
// range would be empty or a point).
std::pair<double, double> valid_range(const Sample& control, std::size_t cutpoint_count);

// One paired with-replacement resample; a pure function of (seed, replicate).
// Groups are resampled independently at their original sizes, control first.
struct PairedResample {
  std::vector<double> control;
  std::vector<double> treatment;
};
PairedResample bootstrap_pair(const TrialDataset& dataset, std::uint64_t seed,
                              std::size_t replicate_index);

// Materializes the evaluation grid for a config (strictly increasing, inside
// the validity range when enforcement is on).
std::vector<double> build_grid(const Sample& control, const EstimatorConfig& config,
                               std::pair<double, double> range);

// The absolute-scale BQTE curve.
//   bagging  estimate = mean over bootstrap replicates of the interpolated
//            effect at x; CI = percentile interval of those replicates
//   direct   estimate from the observed grid; CI still from the bootstrap
//   doksum   plug-in G^-1(F(x)) - x on raw samples; CI from bootstrap
//            replicates of the same plug-in
EffectCurve estimate_bqte(const TrialDataset& dataset, const EstimatorConfig& config);
EffectCurve estimate_bqte(const TrialDataset& dataset, const EstimatorConfig& config,
                          const std::vector<double>& grid);

// Divides estimate and interval bounds by x at every point (the ratio to the
// control-group outcome).  RangeError if any grid x <= 0.
EffectCurve relative_curve(const EffectCurve& absolute);

// Percentile interval of the values at levels alpha/2 and 1 - alpha/2, using
// the shared quantile convention.  `values` need not be sorted.
std::pair<double, double> percentile_interval(std::vector<double> values, double alpha);

namespace detail {
// Config echo shared by every curve-producing estimator; appends the
// small-bootstrap warning when B * alpha / 2 < 5.
Provenance make_provenance(const TrialDataset& dataset, const EstimatorConfig& config,
                           std::size_t cutpoints);
}  // namespace detail

}  // namespace bqte

#endif  // BQTE_ESTIMATOR_HPP
