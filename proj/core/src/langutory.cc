#include "plantrace/langutory.h"

#include <cctype>

#include "plantrace/error.h"

namespace plantrace {

std::string compress_letters(const std::vector<PhaseLetter>& letters) {
  std::string out;
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    if (!out.empty()) out += ' ';
    out += to_string(letters[i]);
    if (j - i > 1) out += std::to_string(j - i);
    i = j;
  }
  return out;
}

std::vector<PhaseLetter> expand_compressed(std::string_view compressed) {
  std::vector<PhaseLetter> out;
  std::size_t pos = 0;
  while (pos < compressed.size()) {
    if (compressed[pos] == ' ') {
      ++pos;
      continue;
    }
    std::size_t end = compressed.find(' ', pos);
    if (end == std::string_view::npos) end = compressed.size();
    std::string_view token = compressed.substr(pos, end - pos);
    std::size_t digits = token.size();
    while (digits > 0 && std::isdigit(static_cast<unsigned char>(token[digits - 1]))) --digits;
    auto letter = parse_phase_letter(token.substr(0, digits));
    if (!letter) {
      throw ParseError("<langutory>", 0, "bad run '" + std::string(token) + "'");
    }
    std::size_t count = 1;
    if (digits < token.size()) {
      count = std::stoul(std::string(token.substr(digits)));
      if (count < 2) throw ParseError("<langutory>", 0, "run count below 2 in '" + std::string(token) + "'");
    }
    out.insert(out.end(), count, *letter);
    pos = end;
  }
  return out;
}

Langutory build_langutory(const std::vector<ClassifiedStep>& classified) {
  if (classified.empty()) throw InvalidArgument("cannot build a langutory from zero steps");
  Langutory lang;
  lang.letters.reserve(classified.size());
  lang.step_refs.reserve(classified.size());
  for (const auto& c : classified) {
    lang.letters.push_back(c.letter);
    lang.step_refs.push_back(c.step_index);
  }
  lang.compressed = compress_letters(lang.letters);
  return lang;
}

std::vector<FirstOccurrence> first_occurrences(const Langutory& langutory, const PlanSpec& plan) {
  std::vector<FirstOccurrence> out;
  out.reserve(plan.size());
  for (PhaseLetter letter : plan.expected_sequence()) {
    FirstOccurrence occ{letter, std::nullopt};
    for (std::size_t i = 0; i < langutory.letters.size(); ++i) {
      if (langutory.letters[i] == letter) {
        occ.index = i + 1;
        break;
      }
    }
    out.push_back(occ);
  }
  return out;
}

}  // namespace plantrace
