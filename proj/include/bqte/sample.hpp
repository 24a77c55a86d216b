#ifndef BQTE_SAMPLE_HPP
#define BQTE_SAMPLE_HPP

#include <span>
#include <string>
#include <vector>

namespace bqte {

// One group's outcome observations.  `censor_flags` marks right-censored
// values (true = observed only as a lower bound); it is either empty or the
// same length as `values`.  Estimation never looks at the flags: censored
// datasets must pass through impute_censored() first.
struct Sample {
  std::vector<double> values;
  std::vector<bool> censor_flags;
  std::string label;

  std::size_t size() const { return values.size(); }
  bool has_censored() const;

  // DataError unless non-empty, finite, and flags match values in length.
  void validate() const;
};

// Nondecreasing copy of the values.  DataError on an empty sample.
std::vector<double> sorted_values(const Sample& s);

// Empirical quantile with linear interpolation between adjacent order
// statistics: for sorted v[1..n] and level p, h = p*(n-1) + 1 and the result
// is v[floor(h)] + (h - floor(h)) * (v[floor(h)+1] - v[floor(h)]).
// Continuous and nondecreasing in p.  RangeError unless 0 < p < 1.
double quantile(const Sample& s, double p);

// Fraction of values <= x; right-continuous, 0 below the minimum and 1 at or
// above the maximum.
double ecdf(const Sample& s, double x);

// Left-continuous generalized inverse: the smallest order statistic whose
// ECDF reaches p.  RangeError unless 0 < p <= 1.
double generalized_inverse(const Sample& s, double p);

// Mean accumulated over the sorted values.  Summation order is pinned so that
// algebraically equal quantities computed in different modules (e.g. a tail
// mean over the whole sample vs. the group mean) agree bit for bit.
double sample_mean(const Sample& s);

// Sorted-view variants used on hot paths (bootstrap replicates are sorted
// once and queried many times).  Preconditions are the caller's problem
// except for the level checks, which still throw.
namespace sorted {
double quantile(std::span<const double> v, double p);
double ecdf(std::span<const double> v, double x);
double generalized_inverse(std::span<const double> v, double p);
double mean(std::span<const double> v);
}  // namespace sorted

}  // namespace bqte

#endif  // BQTE_SAMPLE_HPP
