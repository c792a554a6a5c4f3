#include "rfnn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "rfnn/error.hpp"

namespace rfnn {
namespace {

void require_nonempty(std::span<const double> values, const char* what) {
  if (values.empty()) throw InvalidInputError(std::string(what) + ": empty sample");
}

}  // namespace

double mean(std::span<const double> values) {
  require_nonempty(values, "mean");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
  require_nonempty(values, "sample_stddev");
  if (values.size() == 1) return 0.0;
  const double mu = mean(values);
  double s = 0.0;
  for (double v : values) s += (v - mu) * (v - mu);
  return std::sqrt(s / static_cast<double>(values.size() - 1));
}

double percentile(std::span<const double> values, double q) {
  require_nonempty(values, "percentile");
  if (!(q >= 0.0 && q <= 100.0)) throw InvalidInputError("percentile: q outside [0, 100]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> values) { return percentile(values, 50.0); }

double skewness(std::span<const double> values) {
  require_nonempty(values, "skewness");
  const double mu = mean(values);
  double m2 = 0.0;
  double m3 = 0.0;
  for (double v : values) {
    const double d = v - mu;
    m2 += d * d;
    m3 += d * d * d;
  }
  const double n = static_cast<double>(values.size());
  m2 /= n;
  m3 /= n;
  if (m2 == 0.0) return 0.0;
  return m3 / std::pow(m2, 1.5);
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidInputError("wilcoxon: samples differ in length");
  }
  if (a.size() < 6) throw InvalidInputError("wilcoxon: need at least 6 pairs");

  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  WilcoxonResult result;
  result.effective_n = diffs.size();
  if (diffs.empty()) return result;

  // Doubled average ranks are integers: positions i..j share rank i + j + 2.
  const std::size_t n = diffs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(diffs[x]) < std::abs(diffs[y]);
  });
  std::vector<std::uint64_t> rank2(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) ++j;
    for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = i + j + 2;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }

  std::uint64_t w2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (diffs[i] > 0.0) w2 += rank2[i];
  }
  result.statistic = static_cast<double>(w2) / 2.0;

  if (n <= kWilcoxonExactLimit) {
    const std::uint64_t total2 = static_cast<std::uint64_t>(n) * (n + 1);
    std::vector<std::uint64_t> ways(total2 + 1, 0);
    ways[0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::uint64_t s = total2; s + 1 > rank2[i]; --s) ways[s] += ways[s - rank2[i]];
    }
    std::uint64_t below = 0;
    std::uint64_t above = 0;
    for (std::uint64_t s = 0; s <= total2; ++s) {
      if (s <= w2) below += ways[s];
      if (s >= w2) above += ways[s];
    }
    const double tail = 2.0 * static_cast<double>(std::min(below, above)) /
                        std::ldexp(1.0, static_cast<int>(n));
    result.p_value = std::min(1.0, tail);
    result.exact = true;
    return result;
  }

  const double nn = static_cast<double>(n);
  const double mu = nn * (nn + 1.0) / 4.0;
  const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
  if (!(var > 0.0)) return result;
  const double dev = std::max(0.0, std::abs(result.statistic - mu) - 0.5);
  const double z = dev / std::sqrt(var);
  result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return result;
}

Histogram make_histogram(std::span<const double> values, std::size_t bins) {
  require_nonempty(values, "histogram");
  if (bins == 0) throw InvalidInputError("histogram: bin count must be positive");
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  Histogram h;
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t k = 0; k <= bins; ++k) h.edges[k] = lo + width * static_cast<double>(k);
  h.edges.back() = hi;
  h.counts.assign(bins, 0);
  for (double v : values) {
    auto k = static_cast<std::size_t>((v - lo) / width);
    if (k >= bins) k = bins - 1;
    ++h.counts[k];
  }
  return h;
}

}  // namespace rfnn
