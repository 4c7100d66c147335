#include "plantrace/lis.h"

#include <algorithm>
#include <vector>

namespace plantrace {

std::size_t longest_increasing_subsequence(std::span<const std::int64_t> values) {
  // tails[k] is the smallest tail of any strictly increasing run of length k+1.
  std::vector<std::int64_t> tails;
  tails.reserve(values.size());
  for (std::int64_t v : values) {
    auto it = std::lower_bound(tails.begin(), tails.end(), v);
    if (it == tails.end()) {
      tails.push_back(v);
    } else {
      *it = v;
    }
  }
  return tails.size();
}

}  // namespace plantrace
