// bqte: back-transformed quantile treatment effects from two-group trial data.
//
// Subcommands:
//   estimate   BQTE curve with percentile bootstrap intervals
//   tails      upper/lower tail-average bound curves (UTBQTE / LTBQTE)
//   summary    ATE, ratio of means, relative reduction
//   simulate   Monte Carlo calibration harness driven by a scenario file
//
// Exit codes: 0 success, 1 data error, 2 configuration error,
// 3 numeric/validity-range error.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bqte/data_io.hpp"
#include "bqte/dataset.hpp"
#include "bqte/errors.hpp"
#include "bqte/estimator.hpp"
#include "bqte/simulation.hpp"
#include "bqte/summary.hpp"
#include "bqte/tail_bounds.hpp"

namespace {

using namespace bqte;

struct CommonOpts {
  std::vector<std::string> inputs;
  std::size_t bootstrap = 2000;
  double alpha = 0.05;
  std::string cutpoints = "AUTO";
  std::string estimator = "bagging";
  std::string grid = "observed";
  std::string scale = "absolute";
  std::uint64_t seed = 1;
  std::string impute = "censor";
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_grid_and_scale) {
  cmd->add_option("--input", o.inputs, "Trial CSV (repeat to pool several trials)")
      ->required();
  cmd->add_option("--bootstrap", o.bootstrap, "Bootstrap replicate count")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "Two-sided miscoverage level")->capture_default_str();
  cmd->add_option("--cutpoints", o.cutpoints,
                  "Cut-point count K, or AUTO for the control sample size")
      ->capture_default_str();
  cmd->add_option("--estimator", o.estimator, "bagging | direct | doksum")->capture_default_str();
  if (with_grid_and_scale) {
    cmd->add_option("--grid", o.grid, "observed | uniform:N | list:x1,x2,...")->capture_default_str();
    cmd->add_option("--scale", o.scale, "absolute | relative | both")->capture_default_str();
  }
  cmd->add_option("--seed", o.seed, "Bootstrap seed")->capture_default_str();
  cmd->add_option("--impute", o.impute,
                  "Censored-value rule: censor (impute at the censoring time) | fixed:V")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output path (default: stdout)");
  cmd->add_option("--format", o.format, "csv | json | svg")->capture_default_str();
  cmd->add_option("--threads", o.threads, "Bootstrap worker threads")->capture_default_str();
}

ImputeRule parse_impute(const std::string& text) {
  if (text == "censor") return ImputeRule::at_censoring_time();
  if (text.rfind("fixed:", 0) == 0) {
    try {
      return ImputeRule::fixed(std::stod(text.substr(6)));
    } catch (const std::exception&) {
      throw ConfigError("bad fixed imputation value in '" + text + "'");
    }
  }
  throw ConfigError("unknown imputation rule '" + text + "' (use censor or fixed:V)");
}

GridSpec parse_grid(const std::string& text) {
  if (text == "observed") return GridSpec::observed();
  if (text.rfind("uniform:", 0) == 0) {
    try {
      return GridSpec::uniform(std::stoul(text.substr(8)));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("bad uniform grid size in '" + text + "'");
    }
  }
  if (text.rfind("list:", 0) == 0) {
    std::vector<double> xs;
    std::string cell;
    std::stringstream ss(text.substr(5));
    while (std::getline(ss, cell, ',')) {
      try {
        xs.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("bad grid point '" + cell + "'");
      }
    }
    return GridSpec::explicit_list(std::move(xs));
  }
  throw ConfigError("unknown grid '" + text + "' (use observed, uniform:N or list:...)");
}

std::size_t parse_cutpoints(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), ::tolower);
  if (t == "auto") return 0;
  try {
    return std::stoul(t);
  } catch (const std::exception&) {
    throw ConfigError("bad cut-point count '" + text + "' (use AUTO or an integer)");
  }
}

EstimatorConfig make_config(const CommonOpts& o) {
  EstimatorConfig cfg;
  cfg.bootstrap_count = o.bootstrap;
  cfg.alpha = o.alpha;
  cfg.cutpoint_count = parse_cutpoints(o.cutpoints);
  cfg.kind = estimator_kind_from_string(o.estimator);
  cfg.seed = o.seed;
  cfg.grid = parse_grid(o.grid);
  cfg.workers = o.threads;
  cfg.validate();
  return cfg;
}

TrialDataset load_inputs(const CommonOpts& o) {
  const ImputeRule rule = parse_impute(o.impute);
  std::vector<TrialDataset> trials;
  std::vector<std::string> warnings;
  for (const std::string& path : o.inputs)
    trials.push_back(impute_censored(load_csv(path, {}, &warnings), rule));
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  TrialDataset ds = pool_trials(trials);
  ds.validate();
  return ds;
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty())
    std::cout << payload;
  else
    write_text_file(out_path, payload);
}

void report_warnings(const Provenance& p) {
  for (const std::string& w : p.warnings) std::cerr << "warning: " << w << "\n";
}

// Dashed reference for figures: the ATE on the absolute scale, RoM - 1 on the
// relative scale (what the curve converges to under a pure mean effect).
PlotOptions make_plot(const TrialDataset& ds, const EstimatorConfig& cfg, Scale scale,
                      bool mixed_scales) {
  PlotOptions plot;
  plot.title = ds.trial_id;
  if (mixed_scales) return plot;
  const SummaryEffects s = summarize(ds, cfg);
  plot.reference = scale == Scale::absolute ? s.ate.estimate : s.rom.estimate - 1.0;
  return plot;
}

int run_estimate(const CommonOpts& o) {
  const TrialDataset ds = load_inputs(o);
  const EstimatorConfig cfg = make_config(o);
  const OutputFormat format = output_format_from_string(o.format);

  const EffectCurve absolute = estimate_bqte(ds, cfg);
  report_warnings(absolute.provenance);

  std::vector<EffectCurve> curves;
  if (o.scale == "absolute")
    curves = {absolute};
  else if (o.scale == "relative")
    curves = {relative_curve(absolute)};
  else if (o.scale == "both")
    curves = {absolute, relative_curve(absolute)};
  else
    throw ConfigError("unknown scale '" + o.scale + "' (use absolute, relative or both)");

  PlotOptions plot;
  if (format == OutputFormat::svg)
    plot = make_plot(ds, cfg, curves.front().scale, curves.size() > 1);

  emit(curves.size() == 1 ? serialize_curve(curves.front(), format, plot)
                          : serialize_curves(curves, format, plot),
       o.out);
  return 0;
}

int run_tails(const CommonOpts& o) {
  const TrialDataset ds = load_inputs(o);
  const EstimatorConfig cfg = make_config(o);
  const OutputFormat format = output_format_from_string(o.format);

  const TailCurves tails = estimate_tail_curves(ds, cfg);
  report_warnings(tails.upper.provenance);

  std::vector<EffectCurve> curves;
  if (o.scale == "absolute") {
    curves = {tails.upper, tails.lower};
  } else if (o.scale == "relative") {
    curves = {relative_curve(tails.upper), relative_curve(tails.lower)};
  } else if (o.scale == "both") {
    curves = {tails.upper, tails.lower, relative_curve(tails.upper),
              relative_curve(tails.lower)};
  } else {
    throw ConfigError("unknown scale '" + o.scale + "' (use absolute, relative or both)");
  }

  PlotOptions plot;
  if (format == OutputFormat::svg)
    plot = make_plot(ds, cfg, curves.front().scale, o.scale == "both");

  emit(serialize_curves(curves, format, plot), o.out);
  return 0;
}

int run_summary(const CommonOpts& o) {
  const TrialDataset ds = load_inputs(o);
  const EstimatorConfig cfg = make_config(o);
  const SummaryEffects s = summarize(ds, cfg);
  report_warnings(s.provenance);
  emit(serialize_summary(s, output_format_from_string(o.format)), o.out);
  return 0;
}

struct SimulateOpts {
  std::string scenario_path;
  std::string out;
  std::string format = "json";
  unsigned threads = 0;  // 0: keep the scenario's worker count
};

int run_simulate(const SimulateOpts& o) {
  SimulationScenario sc = load_scenario(o.scenario_path);
  if (o.threads > 0) sc.workers = o.threads;
  const SimulationReport report = run_scenario(sc);
  emit(serialize_report(report, output_format_from_string(o.format)), o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Back-transformed quantile treatment effect estimation for two-group trials"};
  app.set_version_flag("--version", "bqte 1.0.0");
  app.require_subcommand(1);

  CommonOpts est_opts, tail_opts, sum_opts;
  SimulateOpts sim_opts;

  CLI::App* estimate =
      app.add_subcommand("estimate", "BQTE curve with bootstrap confidence intervals");
  add_common(estimate, est_opts, true);

  CLI::App* tails =
      app.add_subcommand("tails", "Tail-average bound curves (UTBQTE and LTBQTE)");
  add_common(tails, tail_opts, true);

  CLI::App* summary =
      app.add_subcommand("summary", "ATE, ratio of means and relative reduction");
  add_common(summary, sum_opts, false);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo calibration harness");
  simulate->add_option("--scenario", sim_opts.scenario_path, "Scenario file")->required();
  simulate->add_option("--out", sim_opts.out, "Output path (default: stdout)");
  simulate->add_option("--format", sim_opts.format, "csv | json")->capture_default_str();
  simulate->add_option("--threads", sim_opts.threads,
                       "Override the scenario's worker count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (estimate->parsed()) return run_estimate(est_opts);
    if (tails->parsed()) return run_tails(tail_opts);
    if (summary->parsed()) return run_summary(sum_opts);
    if (simulate->parsed()) return run_simulate(sim_opts);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
