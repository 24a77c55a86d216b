#include "bqte/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bqte/errors.hpp"
#include "bqte/rng.hpp"

namespace bqte {

std::string to_string(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::bagging: return "bagging";
    case EstimatorKind::direct: return "direct";
    case EstimatorKind::doksum: return "doksum";
  }
  return "?";
}

std::string to_string(CurveKind k) {
  switch (k) {
    case CurveKind::bqte: return "bqte";
    case CurveKind::utbqte: return "utbqte";
    case CurveKind::ltbqte: return "ltbqte";
  }
  return "?";
}

std::string to_string(Scale s) {
  return s == Scale::absolute ? "absolute" : "relative";
}

EstimatorKind estimator_kind_from_string(const std::string& name) {
  if (name == "bagging") return EstimatorKind::bagging;
  if (name == "direct") return EstimatorKind::direct;
  if (name == "doksum") return EstimatorKind::doksum;
  throw ConfigError("unknown estimator kind '" + name + "'");
}

GridSpec GridSpec::uniform(std::size_t n) {
  GridSpec g;
  g.policy = Policy::uniform;
  g.uniform_points = n;
  return g;
}

GridSpec GridSpec::explicit_list(std::vector<double> xs) {
  GridSpec g;
  g.policy = Policy::explicit_list;
  g.points = std::move(xs);
  return g;
}

std::string GridSpec::describe() const {
  std::ostringstream os;
  switch (policy) {
    case Policy::observed: os << "observed"; break;
    case Policy::uniform: os << "uniform(" << uniform_points << ")"; break;
    case Policy::explicit_list: os << "explicit(" << points.size() << " points)"; break;
  }
  return os.str();
}

void EstimatorConfig::validate() const {
  if (bootstrap_count < 2)
    throw ConfigError("bootstrap count must be at least 2 for bagging and intervals");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ConfigError("alpha must lie in (0,1)");
  if (workers < 1) throw ConfigError("worker count must be at least 1");
}

std::size_t EstimatorConfig::resolved_cutpoints(std::size_t n_control) const {
  return cutpoint_count == 0 ? n_control : cutpoint_count;
}

std::vector<double> cutpoint_levels(std::size_t cutpoint_count) {
  if (cutpoint_count == 0) throw ConfigError("cutpoint count must be positive");
  std::vector<double> levels(cutpoint_count);
  const double denom = static_cast<double>(cutpoint_count + 1);
  for (std::size_t i = 0; i < cutpoint_count; ++i)
    levels[i] = static_cast<double>(i + 1) / denom;
  return levels;
}

namespace {

std::vector<std::pair<double, double>> paired_grid_sorted(std::span<const double> control,
                                                          std::span<const double> treatment,
                                                          std::size_t cutpoints) {
  const std::vector<double> levels = cutpoint_levels(cutpoints);
  std::vector<std::pair<double, double>> grid(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i)
    grid[i] = {sorted::quantile(control, levels[i]), sorted::quantile(treatment, levels[i])};
  return grid;
}

std::pair<double, double> valid_range_sorted(std::span<const double> control,
                                             std::size_t cutpoints) {
  if (cutpoints < 11)
    throw RangeError("validity range degenerate: need at least 11 cut points");
  const double k = static_cast<double>(cutpoints);
  return {sorted::quantile(control, 5.0 / k), sorted::quantile(control, 1.0 - 5.0 / k)};
}

// Doksum's plug-in on raw (sorted) samples: G^-1(F(x)) - x, no interpolation.
// Inside a bootstrap replicate the resampled minimum can exceed x, making
// F(x) = 0; the left-continuous inverse is then taken at the sample's lowest
// attainable level, i.e. the treatment minimum (same endpoint rule as the
// piecewise path).
double plugin_bqte(std::span<const double> control, std::span<const double> treatment,
                   double x) {
  const double p = sorted::ecdf(control, x);
  const double g = p > 0.0 ? sorted::generalized_inverse(treatment, p) : treatment.front();
  return g - x;
}

}  // namespace

std::vector<std::pair<double, double>> paired_quantile_grid(const Sample& control,
                                                            const Sample& treatment,
                                                            std::size_t cutpoint_count) {
  const std::vector<double> sc = sorted_values(control);
  const std::vector<double> st = sorted_values(treatment);
  return paired_grid_sorted(sc, st, cutpoint_count);
}

std::pair<double, double> valid_range(const Sample& control, std::size_t cutpoint_count) {
  const std::vector<double> sc = sorted_values(control);
  return valid_range_sorted(sc, cutpoint_count);
}

PiecewiseBqte::PiecewiseBqte(std::span<const std::pair<double, double>> grid) {
  if (grid.empty()) throw RangeError("empty interpolation grid");
  xs_.reserve(grid.size());
  ys_.reserve(grid.size());
  std::size_t i = 0;
  while (i < grid.size()) {
    const double x = grid[i].first;
    if (i > 0 && x < xs_.back())
      throw RangeError("interpolation grid x values must be nondecreasing");
    double sum = 0.0;
    std::size_t j = i;
    while (j < grid.size() && grid[j].first == x) sum += grid[j++].second;
    xs_.push_back(x);
    ys_.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
}

double PiecewiseBqte::interpolate(double x) const {
  if (x == xs_.back()) return ys_.back() - x;
  // segment with xs_[i] <= x < xs_[i+1]
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  if (x == xs_[i]) return ys_[i] - x;
  const double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
  return ys_[i] + t * (ys_[i + 1] - ys_[i]) - x;
}

double PiecewiseBqte::at(double x) const {
  if (x < xs_.front() || x > xs_.back()) {
    std::ostringstream os;
    os << "outside interpolation support: x = " << x << " not in [" << xs_.front() << ", "
       << xs_.back() << "]";
    throw RangeError(os.str());
  }
  return interpolate(x);
}

double PiecewiseBqte::at_clamped(double x) const {
  return interpolate(std::clamp(x, xs_.front(), xs_.back()));
}

double piecewise_bqte(std::span<const std::pair<double, double>> grid, double x) {
  return PiecewiseBqte(grid).at(x);
}

PairedResample bootstrap_pair(const TrialDataset& dataset, std::uint64_t seed,
                              std::size_t replicate_index) {
  std::mt19937_64 rng = stream_engine(seed, replicate_index);
  PairedResample out;
  const auto& cv = dataset.control.values;
  const auto& tv = dataset.treatment.values;
  out.control.resize(cv.size());
  out.treatment.resize(tv.size());
  for (double& v : out.control) v = cv[uniform_index(rng, cv.size())];
  for (double& v : out.treatment) v = tv[uniform_index(rng, tv.size())];
  return out;
}

std::vector<double> build_grid(const Sample& control, const EstimatorConfig& config,
                               std::pair<double, double> range) {
  const auto& spec = config.grid;
  std::vector<double> grid;
  switch (spec.policy) {
    case GridSpec::Policy::observed: {
      grid = sorted_values(control);
      grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
      std::erase_if(grid, [&](double x) { return x < range.first || x > range.second; });
      if (grid.empty())
        throw RangeError("no observed control values inside the validity range");
      break;
    }
    case GridSpec::Policy::uniform: {
      if (spec.uniform_points < 2)
        throw ConfigError("uniform grid needs at least 2 points");
      if (range.first == range.second) {
        grid.push_back(range.first);
        break;
      }
      const std::size_t n = spec.uniform_points;
      grid.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        grid[i] = range.first + (range.second - range.first) * static_cast<double>(i) /
                                    static_cast<double>(n - 1);
      grid.back() = range.second;
      break;
    }
    case GridSpec::Policy::explicit_list: {
      grid = spec.points;
      if (grid.empty()) throw ConfigError("explicit grid is empty");
      for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
          throw ConfigError("grid points must be strictly increasing");
      if (config.enforce_valid_range) {
        for (double x : grid)
          if (x < range.first || x > range.second) {
            std::ostringstream os;
            os << "grid point " << x << " outside the validity range [" << range.first
               << ", " << range.second << "]";
            throw RangeError(os.str());
          }
      }
      break;
    }
  }
  return grid;
}

std::pair<double, double> percentile_interval(std::vector<double> values, double alpha) {
  if (values.size() < 2) throw ConfigError("interval needs at least 2 bootstrap values");
  std::sort(values.begin(), values.end());
  return {sorted::quantile(values, alpha / 2.0), sorted::quantile(values, 1.0 - alpha / 2.0)};
}

namespace detail {

Provenance make_provenance(const TrialDataset& dataset, const EstimatorConfig& config,
                           std::size_t cutpoints) {
  Provenance p;
  p.dataset_id = dataset.trial_id;
  p.control_label = dataset.control.label;
  p.treatment_label = dataset.treatment.label;
  p.n_control = dataset.control.size();
  p.n_treatment = dataset.treatment.size();
  p.bootstrap_count = config.bootstrap_count;
  p.cutpoint_count = cutpoints;
  p.alpha = config.alpha;
  p.kind = config.kind;
  p.seed = config.seed;
  p.grid_policy = config.grid.describe();
  if (static_cast<double>(config.bootstrap_count) * config.alpha / 2.0 < 5.0) {
    std::ostringstream os;
    os << "bootstrap count " << config.bootstrap_count
       << " yields fewer than 5 tail replicates at alpha = " << config.alpha
       << "; interval endpoints are unstable";
    p.warnings.push_back(os.str());
  }
  return p;
}

}  // namespace detail

EffectCurve estimate_bqte(const TrialDataset& dataset, const EstimatorConfig& config) {
  config.validate();
  dataset.validate();
  const std::vector<double> sc = sorted_values(dataset.control);
  const std::vector<double> st = sorted_values(dataset.treatment);
  const std::size_t cutpoints = config.resolved_cutpoints(sc.size());
  const auto range = valid_range_sorted(sc, cutpoints);
  const std::vector<double> grid = build_grid(dataset.control, config, range);

  const std::size_t boot_n = config.bootstrap_count;
  const std::size_t grid_n = grid.size();
  std::vector<double> boot(boot_n * grid_n);

  parallel_for(boot_n, config.workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t b = lo; b < hi; ++b) {
      PairedResample rs = bootstrap_pair(dataset, config.seed, b);
      std::sort(rs.control.begin(), rs.control.end());
      std::sort(rs.treatment.begin(), rs.treatment.end());
      double* row = boot.data() + b * grid_n;
      if (config.kind == EstimatorKind::doksum) {
        for (std::size_t g = 0; g < grid_n; ++g)
          row[g] = plugin_bqte(rs.control, rs.treatment, grid[g]);
      } else {
        const PiecewiseBqte curve(paired_grid_sorted(rs.control, rs.treatment, cutpoints));
        for (std::size_t g = 0; g < grid_n; ++g) row[g] = curve.at_clamped(grid[g]);
      }
    }
  });

  EffectCurve out;
  out.curve_kind = CurveKind::bqte;
  out.scale = Scale::absolute;
  out.alpha = config.alpha;
  out.valid_range = range;
  out.provenance = detail::make_provenance(dataset, config, cutpoints);
  out.points.resize(grid_n);

  // Point estimates from the observed data for direct/doksum.
  std::vector<double> observed;
  if (config.kind != EstimatorKind::bagging) {
    observed.resize(grid_n);
    if (config.kind == EstimatorKind::direct) {
      const PiecewiseBqte curve(paired_grid_sorted(sc, st, cutpoints));
      for (std::size_t g = 0; g < grid_n; ++g)
        observed[g] = config.enforce_valid_range ? curve.at(grid[g]) : curve.at_clamped(grid[g]);
    } else {
      for (std::size_t g = 0; g < grid_n; ++g) observed[g] = plugin_bqte(sc, st, grid[g]);
    }
  }

  std::vector<double> column(boot_n);
  for (std::size_t g = 0; g < grid_n; ++g) {
    for (std::size_t b = 0; b < boot_n; ++b) column[b] = boot[b * grid_n + g];
    CurvePoint& pt = out.points[g];
    pt.x = grid[g];
    if (config.kind == EstimatorKind::bagging) {
      double acc = 0.0;
      for (double v : column) acc += v;
      pt.estimate = acc / static_cast<double>(boot_n);
    } else {
      pt.estimate = observed[g];
    }
    const auto ci = percentile_interval(column, config.alpha);
    pt.ci_low = ci.first;
    pt.ci_high = ci.second;
  }
  return out;
}

EffectCurve estimate_bqte(const TrialDataset& dataset, const EstimatorConfig& config,
                          const std::vector<double>& grid) {
  EstimatorConfig cfg = config;
  cfg.grid = GridSpec::explicit_list(grid);
  return estimate_bqte(dataset, cfg);
}

EffectCurve relative_curve(const EffectCurve& absolute) {
  if (absolute.scale != Scale::absolute)
    throw ConfigError("relative_curve expects an absolute-scale input");
  EffectCurve out = absolute;
  out.scale = Scale::relative;
  for (CurvePoint& pt : out.points) {
    if (!(pt.x > 0.0))
      throw RangeError("relative scale undefined at nonpositive outcome value");
    pt.estimate /= pt.x;
    pt.ci_low /= pt.x;
    pt.ci_high /= pt.x;
  }
  return out;
}

}  // namespace bqte
