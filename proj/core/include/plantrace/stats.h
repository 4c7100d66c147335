#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace plantrace {

struct StatsConfig {
  // Mann-Whitney uses the exact permutation distribution when
  // n_a + n_b <= this, and the tie-corrected normal approximation otherwise.
  std::size_t mann_whitney_exact_max_total = 20;
  // McNemar uses the exact binomial test when b + c < this, and chi-square
  // with continuity correction otherwise.
  std::size_t mcnemar_exact_below = 25;
};

struct MannWhitneyResult {
  double u = 0.0;    // U for sample a
  double u_b = 0.0;  // U for sample b; u + u_b = n_a * n_b
  double z = 0.0;    // normal score, 0 for the exact path
  double p_value = 1.0;  // two-sided
  bool exact = false;
};

// Mid-ranks for ties. Throws InvalidArgument on an empty sample.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                                 const StatsConfig& config = {});

// Throws InvalidArgument on length mismatch, n < 2, or zero variance.
double pearson_r(std::span<const double> x, std::span<const double> y);

struct McNemarResult {
  std::size_t b = 0;  // (true, false) pairs
  std::size_t c = 0;  // (false, true) pairs
  double statistic = 0.0;  // min(b, c) when exact, chi-square otherwise
  double p_value = 1.0;    // two-sided
  bool exact = true;
};

McNemarResult mcnemar(std::span<const std::pair<bool, bool>> paired_outcomes,
                      const StatsConfig& config = {});
McNemarResult mcnemar_from_counts(std::size_t b, std::size_t c,
                                  const StatsConfig& config = {});

// Two-sided tail of the standard normal, P(|Z| >= |z|).
double normal_two_sided_p(double z);

}  // namespace plantrace
