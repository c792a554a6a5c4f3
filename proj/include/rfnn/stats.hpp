#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rfnn {

/// Arithmetic mean. Throws on empty input.
double mean(std::span<const double> values);

/// Sample standard deviation (n - 1 divisor); 0 for a single value.
double sample_stddev(std::span<const double> values);

/// Linear-interpolation percentile (q in [0, 100]) between closest ranks,
/// i.e. position q/100 * (n - 1) in the sorted sample.
double percentile(std::span<const double> values, double q);

double median(std::span<const double> values);

/// Fisher-Pearson skewness g1.
double skewness(std::span<const double> values);

struct WilcoxonResult {
  /// Sum of ranks of positive differences a - b.
  double statistic = 0.0;
  double p_value = 1.0;
  /// Pairs left after dropping zero differences.
  std::size_t effective_n = 0;
  bool exact = false;
};

/// Largest effective sample size evaluated with the exact null distribution.
inline constexpr std::size_t kWilcoxonExactLimit = 25;

/// Two-sided Wilcoxon signed-rank test on paired samples.
///
/// Zero differences are dropped and tied magnitudes share average ranks.
/// Up to kWilcoxonExactLimit remaining pairs the p-value is
/// min(1, 2 min(P(W <= w), P(W >= w))) under the exact sign-flip
/// distribution of the given ranks; beyond it a normal approximation with
/// tie correction and 0.5 continuity correction is used. When every
/// difference is zero the result is p = 1.
///
/// Throws InvalidInputError unless both samples have the same length >= 6.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b);

struct Histogram {
  std::vector<double> edges;  // bins + 1 edges
  std::vector<std::size_t> counts;
};

/// Equal-width histogram over [min, max] of `values`; the last bin is closed.
/// A sample with a single distinct value is binned over a unit-wide range
/// centred on it.
Histogram make_histogram(std::span<const double> values, std::size_t bins);

}  // namespace rfnn
