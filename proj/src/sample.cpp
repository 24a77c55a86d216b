#include "bqte/sample.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "bqte/errors.hpp"

namespace bqte {

bool Sample::has_censored() const {
  for (bool f : censor_flags)
    if (f) return true;
  return false;
}

void Sample::validate() const {
  if (values.empty())
    throw DataError("empty sample" + (label.empty() ? "" : " '" + label + "'"));
  if (!censor_flags.empty() && censor_flags.size() != values.size())
    throw DataError("censor flags do not match values in sample '" + label + "'");
  for (double v : values)
    if (!std::isfinite(v))
      throw DataError("non-finite value in sample" +
                      (label.empty() ? "" : " '" + label + "'"));
}

std::vector<double> sorted_values(const Sample& s) {
  if (s.values.empty()) throw DataError("empty sample");
  std::vector<double> out = s.values;
  std::sort(out.begin(), out.end());
  return out;
}

namespace sorted {

double quantile(std::span<const double> v, double p) {
  if (!(p > 0.0 && p < 1.0)) throw RangeError("quantile level out of range");
  const std::size_t n = v.size();
  if (n == 1) return v[0];
  const double h = p * static_cast<double>(n - 1);  // 0-based position
  std::size_t j = static_cast<std::size_t>(h);
  if (j >= n - 1) j = n - 2;
  const double g = h - static_cast<double>(j);
  return v[j] + g * (v[j + 1] - v[j]);
}

double ecdf(std::span<const double> v, double x) {
  const auto it = std::upper_bound(v.begin(), v.end(), x);
  return static_cast<double>(it - v.begin()) / static_cast<double>(v.size());
}

double generalized_inverse(std::span<const double> v, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw RangeError("inverse level out of range (0,1]");
  const std::size_t n = v.size();
  // Smallest rank r (1-based) with r/n >= p.  The comparison is done on the
  // same r/n ratios ecdf() produces, so inverse(ecdf(x)) is consistent even
  // when p is not exactly representable.
  std::size_t lo = 1, hi = n;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (static_cast<double>(mid) / static_cast<double>(n) >= p)
      hi = mid;
    else
      lo = mid + 1;
  }
  return v[lo - 1];
}

double mean(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

}  // namespace sorted

double quantile(const Sample& s, double p) {
  const std::vector<double> v = sorted_values(s);
  return sorted::quantile(v, p);
}

double ecdf(const Sample& s, double x) {
  const std::vector<double> v = sorted_values(s);
  return sorted::ecdf(v, x);
}

double generalized_inverse(const Sample& s, double p) {
  const std::vector<double> v = sorted_values(s);
  return sorted::generalized_inverse(v, p);
}

double sample_mean(const Sample& s) {
  const std::vector<double> v = sorted_values(s);
  return sorted::mean(v);
}

}  // namespace bqte
