#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace plantrace {

// Length of the longest strictly increasing subsequence, O(k log k).
std::size_t longest_increasing_subsequence(std::span<const std::int64_t> values);

}  // namespace plantrace
