#include "plantrace/plan_variants.h"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "plantrace/error.h"

namespace plantrace {

using json = nlohmann::json;

std::string_view to_string(VariationKind kind) {
  switch (kind) {
    case VariationKind::kBaseline: return "baseline";
    case VariationKind::kReduction: return "reduction";
    case VariationKind::kAugmentation: return "augmentation";
    case VariationKind::kReordering: return "reordering";
    case VariationKind::kRepeating: return "repeating";
  }
  return "baseline";
}

const std::vector<PlanSetting>& plan_settings() {
  static const std::vector<PlanSetting> settings = [] {
    auto spec = [](const char* name) { return find_plan(name); };
    return std::vector<PlanSetting>{
        {"standard", spec("standard"), VariationKind::kBaseline,
         "Standard Navigation-Reproduction-Patch-Validation plan", false},
        {"no_plan", std::nullopt, VariationKind::kReduction,
         "Plan removed from the system prompt", false},
        {"no_reproduction", spec("no_reproduction"), VariationKind::kReduction,
         "Reproduction phase removed", false},
        {"no_validation", spec("no_validation"), VariationKind::kReduction,
         "Validation (after patching) phase removed", false},
        {"regression", spec("regression"), VariationKind::kAugmentation,
         "Regression test execution phases added", false},
        {"summary", spec("summary"), VariationKind::kAugmentation,
         "Summary of changes before submission added", false},
        {"reordered", spec("reordered"), VariationKind::kReordering,
         "Patching moved before Reproduction", false},
        {"reminded", spec("reminded"), VariationKind::kRepeating,
         "Standard plan re-injected every five trajectory steps", true},
    };
  }();
  return settings;
}

const PlanSetting& find_setting(std::string_view name) {
  for (const auto& s : plan_settings()) {
    if (s.name == name) return s;
  }
  throw InvalidArgument("unknown plan setting '" + std::string(name) + "'");
}

PhaseInstructions default_phase_instructions() {
  PhaseInstructions ins;
  ins.blocks = {
      {PhaseLetter::RG,
       "Before changing anything, run the repository's existing test suite for the affected "
       "module so you know which tests already pass."},
      {PhaseLetter::N,
       "Find and read the code relevant to the issue description. Search for, open, and read "
       "the files involved until you know where the bug lives."},
      {PhaseLetter::R,
       "Create a script that reproduces the error and run it with `python <filename.py>` to "
       "confirm the bug. The script should fail on the current code."},
      {PhaseLetter::P, "Edit the source code of the repository to fix the bug."},
      {PhaseLetter::V,
       "Rerun your reproduction script and confirm the error is fixed. Write additional tests "
       "for edge cases and make sure your fix handles them."},
      {PhaseLetter::VG,
       "Run the repository's existing tests again and make sure your change did not break "
       "anything."},
      {PhaseLetter::S,
       "Before submitting, write a short summary of the changes you made and why they fix the "
       "issue."},
  };
  return ins;
}

PhaseInstructions parse_phase_instructions(const std::string& json_text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, std::string("malformed instructions: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError(source, 0, "instructions must be a JSON object");
  PhaseInstructions ins = default_phase_instructions();
  if (auto it = doc.find("header"); it != doc.end()) {
    if (!it->is_string()) throw ParseError(source, 0, "header must be a string");
    ins.header = it->get<std::string>();
  }
  if (auto it = doc.find("blocks"); it != doc.end()) {
    if (!it->is_object()) throw ParseError(source, 0, "blocks must be an object");
    for (const auto& [key, value] : it->items()) {
      auto letter = parse_phase_letter(key);
      if (!letter || *letter == PhaseLetter::O || !value.is_string()) {
        throw ParseError(source, 0, "bad instruction block '" + key + "'");
      }
      ins.blocks[*letter] = value.get<std::string>();
    }
  }
  return ins;
}

PhaseInstructions load_phase_instructions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_phase_instructions(buf.str(), path.string());
}

std::string render_plan_block(const PlanSetting& setting, const PhaseInstructions& instructions) {
  if (!setting.spec || setting.spec->empty()) return {};
  std::string out = instructions.header + "\n";
  std::size_t n = 0;
  for (PhaseLetter letter : setting.spec->expected_sequence()) {
    auto it = instructions.blocks.find(letter);
    if (it == instructions.blocks.end()) {
      throw InvalidArgument("no instruction text for phase " + std::string(to_string(letter)));
    }
    out += std::to_string(++n) + ". " + it->second + "\n";
  }
  return out;
}

std::string render_prompt(const PlanSetting& setting, std::string_view base_prompt,
                          const PhaseInstructions& instructions) {
  const auto at = base_prompt.find(kPlanMarker);
  if (at == std::string_view::npos) {
    throw InvalidArgument("base prompt has no plan marker " + std::string(kPlanMarker));
  }
  if (base_prompt.find(kPlanMarker, at + kPlanMarker.size()) != std::string_view::npos) {
    throw InvalidArgument("base prompt has more than one plan marker");
  }
  std::string block = render_plan_block(setting, instructions);
  std::size_t tail = at + kPlanMarker.size();
  if (block.empty()) {
    if (tail < base_prompt.size() && base_prompt[tail] == '\n') ++tail;
  } else if (tail < base_prompt.size() && base_prompt[tail] == '\n') {
    block.pop_back();  // the marker line already ends in a newline
  }
  std::string out;
  out.reserve(base_prompt.size() + block.size());
  out.append(base_prompt.substr(0, at));
  out.append(block);
  out.append(base_prompt.substr(tail));
  return out;
}

ReminderSchedule::ReminderSchedule(std::size_t period_steps, std::string reminder_text)
    : period_steps_(period_steps), reminder_text_(std::move(reminder_text)) {
  if (period_steps_ == 0) throw InvalidArgument("reminder period must be at least one step");
}

ReminderSchedule default_reminder_schedule(const PhaseInstructions& instructions) {
  return ReminderSchedule(kDefaultReminderPeriod,
                          render_plan_block(find_setting("standard"), instructions));
}

std::vector<std::size_t> reminder_positions(const ReminderSchedule& schedule,
                                            std::size_t trajectory_length) {
  std::vector<std::size_t> out;
  for (std::size_t step = schedule.period_steps(); step <= trajectory_length;
       step += schedule.period_steps()) {
    out.push_back(step);
  }
  return out;
}

}  // namespace plantrace
