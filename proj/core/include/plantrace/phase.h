#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace plantrace {

// Plan phase letters. O marks a step outside every known phase.
enum class PhaseLetter : std::uint8_t {
  N,   // navigation
  R,   // reproduction
  P,   // patch
  V,   // validation
  RG,  // regression tests before patching
  VG,  // regression tests after patching
  S,   // summary of changes
  O,   // out of plan
};

inline constexpr std::array<PhaseLetter, 8> kAllPhaseLetters = {
    PhaseLetter::N,  PhaseLetter::R,  PhaseLetter::P, PhaseLetter::V,
    PhaseLetter::RG, PhaseLetter::VG, PhaseLetter::S, PhaseLetter::O};

std::string_view to_string(PhaseLetter letter);
std::optional<PhaseLetter> parse_phase_letter(std::string_view text);
std::string_view phase_name(PhaseLetter letter);

}  // namespace plantrace
