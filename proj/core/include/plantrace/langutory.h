#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plantrace/classifier.h"
#include "plantrace/phase.h"
#include "plantrace/plan.h"

namespace plantrace {

// Phase string of a trajectory: one letter per scored step.
struct Langutory {
  std::vector<PhaseLetter> letters;
  std::vector<std::size_t> step_refs;  // parallel to letters
  std::string compressed;              // e.g. "N R2 P V3 P V"

  std::size_t size() const { return letters.size(); }
  bool operator==(const Langutory&) const = default;
};

// Throws InvalidArgument when `classified` is empty.
Langutory build_langutory(const std::vector<ClassifiedStep>& classified);

std::string compress_letters(const std::vector<PhaseLetter>& letters);
// Inverse of compress_letters. Throws ParseError on malformed text.
std::vector<PhaseLetter> expand_compressed(std::string_view compressed);

struct FirstOccurrence {
  PhaseLetter letter;
  std::optional<std::size_t> index;  // 1-based position in letters

  bool operator==(const FirstOccurrence&) const = default;
};

// One entry per plan letter, in expected_sequence order.
std::vector<FirstOccurrence> first_occurrences(const Langutory& langutory,
                                               const PlanSpec& plan);

}  // namespace plantrace
