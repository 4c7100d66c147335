#include <random>

#include "doctest.h"
#include "oracles.h"
#include "plantrace/lis.h"

using plantrace::longest_increasing_subsequence;

namespace {
std::size_t lis(std::vector<std::int64_t> v) { return longest_increasing_subsequence(v); }
}  // namespace

TEST_CASE("known values") {
  CHECK(lis({5, 1, 8, 10}) == 3);
  CHECK(lis({}) == 0);
  CHECK(lis({7}) == 1);
  CHECK(lis({3, 1, 4, 1, 5, 9, 2, 6}) == plantrace::oracle::brute_lis({3, 1, 4, 1, 5, 9, 2, 6}));
  CHECK(lis({3, 1, 4, 1, 5, 9, 2, 6}) == 4);
  CHECK(lis({2, 2, 2}) == 1);  // strictly increasing
  CHECK(lis({4, 3, 2, 1}) == 1);
}

TEST_CASE("agrees with brute-force enumeration") {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<int> len(0, 10), val(-5, 12);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(len(rng)));
    for (auto& x : v) x = val(rng);
    if (lis(v) != plantrace::oracle::brute_lis(v)) ++mismatches;
  }
  CHECK(mismatches == 0);
}
