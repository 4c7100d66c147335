#include <iostream>

#include "plantrace/compliance.h"
#include "plantrace/langutory.h"
#include "plantrace/plan.h"

int main() {
  using plantrace::PhaseLetter;
  const auto plan = plantrace::find_plan("standard").value();
  const auto lang = plantrace::build_langutory(
      {{1, PhaseLetter::N}, {2, PhaseLetter::P}, {3, PhaseLetter::V}});
  const auto scores = plantrace::score_langutory(lang, plan).value();
  std::cout << lang.compressed << " ppc=" << scores.ppc << "\n";
  return scores.ppc == 0.75 ? 0 : 1;
}
