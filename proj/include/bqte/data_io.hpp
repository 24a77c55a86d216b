#ifndef BQTE_DATA_IO_HPP
#define BQTE_DATA_IO_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bqte/dataset.hpp"
#include "bqte/estimator.hpp"
#include "bqte/simulation.hpp"
#include "bqte/summary.hpp"

namespace bqte {

enum class OutputFormat { csv, json, svg };

OutputFormat output_format_from_string(const std::string& name);
std::string to_string(OutputFormat format);

// Column layout of a trial CSV.  `group` accepts control/treatment or 0/1
// (0 = control); `duration` holds the outcome; `censored` is optional
// (0/1, true/false, yes/no) and defaults to false when the column is absent.
struct CsvSchema {
  std::string group_column = "group";
  std::string duration_column = "duration";
  std::string censored_column = "censored";
  // Durations must be positive.  When false, a nonpositive value is kept and
  // reported through `warnings` instead of failing the load.
  bool nonpositive_is_error = true;
};

// Reads one trial.  DataError names the offending row or column.  The
// trial id defaults to the file name without directories or extension.
TrialDataset load_csv(const std::string& path, const CsvSchema& schema = {},
                      std::vector<std::string>* warnings = nullptr);
TrialDataset parse_dataset_csv(std::istream& in, const CsvSchema& schema,
                               const std::string& trial_id,
                               std::vector<std::string>* warnings = nullptr);

// group,duration,censored rows at 15 significant digits; load(save(d)) is
// identity within that precision.
std::string dataset_to_csv(const TrialDataset& dataset);
void save_dataset_csv(const TrialDataset& dataset, const std::string& path);

// Figure annotations for the svg format; ignored by csv/json.
struct PlotOptions {
  std::optional<double> reference;  // dashed horizontal line (e.g. the ATE)
  std::string title;
  std::string x_label = "control outcome";
  std::string y_label;  // empty: derived from curve kind and scale
};

// One curve:
//   csv   header x,estimate,ci_low,ci_high then one row per grid point
//   json  versioned document ("bqte-curve/1") carrying the full config echo
//   svg   static figure, one marker and one CI whisker per grid point,
//         dashed reference line, labeled axes
std::string serialize_curve(const EffectCurve& curve, OutputFormat format,
                            const PlotOptions& plot = {});

// Several curves in one artifact (the tail pair, or absolute + relative).
// csv gains a leading `curve` column; json wraps them in "bqte-curveset/1";
// svg overlays them with a legend.
std::string serialize_curves(std::span<const EffectCurve> curves, OutputFormat format,
                             const PlotOptions& plot = {});

// Inverse of the json serializations; DataError on a missing or unknown
// schema tag.  parse_curve_json(serialize_curve(c, json)) == c exactly.
EffectCurve parse_curve_json(const std::string& text);
std::vector<EffectCurve> parse_curves_json(const std::string& text);

// ate / rom / relative_reduction with intervals; csv or json.
std::string serialize_summary(const SummaryEffects& summary, OutputFormat format);

// Per-arm, per-grid-point bias/RMSE/coverage table; csv or json.
std::string serialize_report(const SimulationReport& report, OutputFormat format);

// Declarative scenario file: `key = value` lines, '#' comments.  Keys:
//   name, control, treatment, n_control, n_treatment, replications,
//   grid_levels (lo:hi:count or comma list), bootstrap, cutpoints (auto or
//   integer), alpha, estimator (comma list compares several arms), seed,
//   workers.
// `control` takes a law ("lognormal(1.5, 0.6)"); `treatment` takes
// shift(c), scale(a) or `independent <law>`.
SimulationScenario parse_scenario_text(const std::string& text);
SimulationScenario load_scenario(const std::string& path);

// Locale-independent formatting at 15 significant digits.
std::string format_double(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace bqte

#endif  // BQTE_DATA_IO_HPP
