#include "plantrace/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "plantrace/error.h"

namespace plantrace {

double normal_two_sided_p(double z) { return std::erfc(std::fabs(z) / std::sqrt(2.0)); }

namespace {

struct Ranked {
  std::vector<std::int64_t> doubled_ranks;  // 2 * mid-rank, always an integer
  double tie_term = 0.0;                    // sum of t^3 - t over tie groups
};

Ranked rank_combined(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  Ranked out;
  out.doubled_ranks.assign(n, 0);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 share ranks i+1..j; twice their mean is i+1+j.
    const auto doubled = static_cast<std::int64_t>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) out.doubled_ranks[order[k]] = doubled;
    const double t = static_cast<double>(j - i);
    out.tie_term += t * t * t - t;
    i = j;
  }
  return out;
}

// Two-sided p from the exact permutation distribution of the rank sum of a
// subset of size `na`, via subset-sum counting over doubled ranks.
double exact_rank_sum_p(const std::vector<std::int64_t>& doubled_ranks, std::size_t na,
                        std::int64_t observed_doubled_sum) {
  const std::size_t n = doubled_ranks.size();
  const std::int64_t max_sum =
      std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), std::int64_t{0});
  // ways[k][s]: subsets of size k with doubled rank sum s.
  std::vector<std::vector<double>> ways(na + 1, std::vector<double>(max_sum + 1, 0.0));
  ways[0][0] = 1.0;
  for (std::size_t item = 0; item < n; ++item) {
    const std::int64_t r = doubled_ranks[item];
    for (std::size_t k = std::min(na, item + 1); k >= 1; --k) {
      for (std::int64_t s = max_sum; s >= r; --s) ways[k][s] += ways[k - 1][s - r];
    }
  }
  const std::int64_t center = static_cast<std::int64_t>(na * (n + 1));  // 2 * E[rank sum]
  const std::int64_t observed_dev = std::llabs(observed_doubled_sum - center);
  double extreme = 0.0;
  double total = 0.0;
  for (std::int64_t s = 0; s <= max_sum; ++s) {
    total += ways[na][s];
    if (std::llabs(s - center) >= observed_dev) extreme += ways[na][s];
  }
  return std::min(1.0, extreme / total);
}

}  // namespace

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                                 const StatsConfig& config) {
  if (a.empty() || b.empty()) throw InvalidArgument("Mann-Whitney U needs two non-empty samples");
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na + nb;
  std::vector<double> combined(a.begin(), a.end());
  combined.insert(combined.end(), b.begin(), b.end());
  const Ranked ranked = rank_combined(combined);

  std::int64_t doubled_sum_a = 0;
  for (std::size_t i = 0; i < na; ++i) doubled_sum_a += ranked.doubled_ranks[i];

  MannWhitneyResult result;
  const double nad = static_cast<double>(na);
  const double nbd = static_cast<double>(nb);
  result.u = static_cast<double>(doubled_sum_a) / 2.0 - nad * (nad + 1.0) / 2.0;
  result.u_b = nad * nbd - result.u;

  if (n <= config.mann_whitney_exact_max_total) {
    result.exact = true;
    result.p_value = exact_rank_sum_p(ranked.doubled_ranks, na, doubled_sum_a);
    return result;
  }

  const double nd = static_cast<double>(n);
  const double mean = nad * nbd / 2.0;
  const double variance = nad * nbd / 12.0 * ((nd + 1.0) - ranked.tie_term / (nd * (nd - 1.0)));
  if (variance <= 0.0) {
    result.p_value = 1.0;
    return result;
  }
  const double diff = result.u - mean;
  const double corrected = std::max(0.0, std::fabs(diff) - 0.5);
  result.z = std::copysign(corrected / std::sqrt(variance), diff);
  result.p_value = std::min(1.0, normal_two_sided_p(result.z));
  return result;
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("Pearson r needs samples of equal length");
  if (x.size() < 2) throw InvalidArgument("Pearson r needs at least two pairs");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw InvalidArgument("Pearson r is undefined for a constant sample");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

McNemarResult mcnemar_from_counts(std::size_t b, std::size_t c, const StatsConfig& config) {
  McNemarResult result;
  result.b = b;
  result.c = c;
  const std::size_t n = b + c;
  if (n == 0) return result;

  if (n < config.mcnemar_exact_below) {
    result.exact = true;
    const std::size_t k = std::min(b, c);
    result.statistic = static_cast<double>(k);
    // Two-sided exact binomial with p = 1/2: twice the smaller tail.
    double coefficient = 1.0;  // C(n, i)
    double tail = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
      tail += coefficient;
      coefficient = coefficient * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    result.p_value = std::min(1.0, 2.0 * tail * std::pow(0.5, static_cast<double>(n)));
    return result;
  }

  result.exact = false;
  const double diff = std::fabs(static_cast<double>(b) - static_cast<double>(c));
  const double corrected = std::max(0.0, diff - 1.0);
  result.statistic = corrected * corrected / static_cast<double>(n);
  // Chi-square with one degree of freedom: P(X > s) = erfc(sqrt(s / 2)).
  result.p_value = std::min(1.0, std::erfc(std::sqrt(result.statistic / 2.0)));
  return result;
}

McNemarResult mcnemar(std::span<const std::pair<bool, bool>> paired_outcomes,
                      const StatsConfig& config) {
  std::size_t b = 0, c = 0;
  for (const auto& [first, second] : paired_outcomes) {
    if (first && !second) ++b;
    if (!first && second) ++c;
  }
  return mcnemar_from_counts(b, c, config);
}

}  // namespace plantrace
