#ifndef BQTE_SIMULATION_HPP
#define BQTE_SIMULATION_HPP

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bqte/estimator.hpp"

namespace bqte {

// Standard normal quantile function (Wichura's AS 241, double precision).
double normal_quantile(double p);

// Named one-dimensional law with closed-form CDF and quantile function.
// Sampling is always inverse-CDF on a uniform stream, so the same stream
// drives every scenario arm (common random numbers).
struct Law {
  enum class Kind { normal, lognormal, exponential, uniform };
  Kind kind = Kind::normal;
  double a = 0.0;  // normal/lognormal: mu; exponential: rate; uniform: lower
  double b = 1.0;  // normal/lognormal: sigma; uniform: upper; exponential: unused

  double quantile(double p) const;
  double cdf(double x) const;
  std::pair<double, double> support() const;
  std::string describe() const;
  void validate() const;

  static Law normal(double mu, double sigma) { return {Kind::normal, mu, sigma}; }
  static Law lognormal(double mu, double sigma) { return {Kind::lognormal, mu, sigma}; }
  static Law exponential(double rate) { return {Kind::exponential, rate, 0.0}; }
  static Law uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }
  // Parses "normal(0,1)", "lognormal(0.5, 0.8)", "exponential(2)",
  // "uniform(1, 10)".  ConfigError on anything else.
  static Law parse(const std::string& text);
};

// How the treatment population relates to the control law.  For shift, scale
// and monotone maps the true BQTE is m(x) - x; for an independent law it is
// G^-1(F(x)) - x through the closed forms.
struct TreatmentMap {
  enum class Kind { shift, scale, monotone_custom, independent };
  Kind kind = Kind::shift;
  double param = 0.0;                     // shift offset or scale factor
  Law law;                                // independent only
  std::function<double(double)> custom;   // monotone_custom only (library-level)
  std::string custom_name;

  double apply(double x) const;  // the map m (not defined for independent)
  std::string describe() const;

  static TreatmentMap shift(double c);
  static TreatmentMap scale(double a);
  static TreatmentMap monotone(std::function<double(double)> m, std::string name);
  static TreatmentMap independent(Law g);
};

struct SimulationScenario {
  std::string name = "scenario";
  Law control_law;
  TreatmentMap treatment;
  std::size_t n_control = 100;
  std::size_t n_treatment = 100;
  std::size_t replications = 500;
  EstimatorConfig estimator;           // nested; its seed is ignored (derived below)
  std::vector<EstimatorKind> arms;     // estimators to compare; empty = {estimator.kind}
  std::vector<double> grid_levels;     // quantile levels of the control law
  std::uint64_t seed = 1;              // drives data draws and nested bootstrap seeds
  unsigned workers = 1;                // parallelism across replications

  void validate() const;
};

// Closed-form BQTE of the scenario at control-outcome x (interior of the
// control support).
double true_bqte(const SimulationScenario& scenario, double x);

struct GridPointStats {
  double level = 0.0;
  double x = 0.0;
  double truth = 0.0;
  double mean_estimate = 0.0;
  double bias = 0.0;      // mean_estimate - truth
  double rmse = 0.0;      // sqrt(mean squared error); always >= |bias|
  double coverage = 0.0;  // fraction of replications whose CI contains truth
};

struct ArmReport {
  EstimatorKind kind = EstimatorKind::bagging;
  std::vector<GridPointStats> points;
};

struct SimulationReport {
  std::string scenario_name;
  std::string control_law;
  std::string treatment;
  std::size_t n_control = 0;
  std::size_t n_treatment = 0;
  std::size_t replications = 0;
  std::size_t bootstrap_count = 0;
  std::size_t cutpoint_count = 0;  // 0 = control sample size
  double alpha = 0.05;
  std::uint64_t seed = 0;
  bool enforce_valid_range = true;
  std::vector<ArmReport> arms;
  double runtime_seconds = 0.0;  // informational; everything else is seed-determined
};

// Draws n values from the law by inverse CDF on the engine's uniform stream.
std::vector<double> draw_from_law(const Law& law, std::size_t n, std::mt19937_64& rng);

// R independent dataset draws, each analyzed by every arm on the fixed grid
// x_j = F^-1(level_j); reports bias, RMSE and CI coverage per grid point.
// All arms see identical datasets and bootstrap seeds.
SimulationReport run_scenario(const SimulationScenario& scenario);

}  // namespace bqte

#endif  // BQTE_SIMULATION_HPP
