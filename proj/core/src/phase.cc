#include "plantrace/phase.h"

namespace plantrace {

std::string_view to_string(PhaseLetter letter) {
  switch (letter) {
    case PhaseLetter::N: return "N";
    case PhaseLetter::R: return "R";
    case PhaseLetter::P: return "P";
    case PhaseLetter::V: return "V";
    case PhaseLetter::RG: return "RG";
    case PhaseLetter::VG: return "VG";
    case PhaseLetter::S: return "S";
    case PhaseLetter::O: return "O";
  }
  return "O";
}

std::optional<PhaseLetter> parse_phase_letter(std::string_view text) {
  for (PhaseLetter letter : kAllPhaseLetters) {
    if (to_string(letter) == text) return letter;
  }
  return std::nullopt;
}

std::string_view phase_name(PhaseLetter letter) {
  switch (letter) {
    case PhaseLetter::N: return "Navigation";
    case PhaseLetter::R: return "Reproduction";
    case PhaseLetter::P: return "Patch";
    case PhaseLetter::V: return "Validation";
    case PhaseLetter::RG: return "Regression (pre-patch)";
    case PhaseLetter::VG: return "Regression (post-patch)";
    case PhaseLetter::S: return "Summary";
    case PhaseLetter::O: return "Other";
  }
  return "Other";
}

}  // namespace plantrace
