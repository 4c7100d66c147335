#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plantrace/phase.h"
#include "plantrace/plan.h"

namespace plantrace {

enum class VariationKind { kBaseline, kReduction, kAugmentation, kReordering, kRepeating };

std::string_view to_string(VariationKind kind);

struct PlanSetting {
  std::string name;
  std::optional<PlanSpec> spec;  // absent for no_plan
  VariationKind variation_kind = VariationKind::kBaseline;
  std::string description;
  // Re-inject the plan every few steps while the agent runs.
  bool reminded = false;
};

const std::vector<PlanSetting>& plan_settings();
// Throws InvalidArgument for an unknown name.
const PlanSetting& find_setting(std::string_view name);

// Instruction text per phase, wrapped by a header line. Each block is one
// numbered list item once rendered.
struct PhaseInstructions {
  std::string header = "Follow these steps to resolve the issue:";
  std::map<PhaseLetter, std::string> blocks;
};

PhaseInstructions default_phase_instructions();
// JSON {"header": "...", "blocks": {"N": "...", ...}} layered over the defaults.
PhaseInstructions parse_phase_instructions(const std::string& json_text,
                                           const std::string& source = "<instructions>");
PhaseInstructions load_phase_instructions(const std::filesystem::path& path);

inline constexpr std::string_view kPlanMarker = "{{PLAN}}";

// Numbered instruction list in the setting's phase order; empty for no_plan.
std::string render_plan_block(const PlanSetting& setting,
                              const PhaseInstructions& instructions = default_phase_instructions());

// Replaces the single plan marker in base_prompt with the setting's plan
// block (for no_plan the marker and one following newline are removed).
// Throws InvalidArgument when the marker is missing or appears more than once.
std::string render_prompt(const PlanSetting& setting, std::string_view base_prompt,
                          const PhaseInstructions& instructions = default_phase_instructions());

inline constexpr std::size_t kDefaultReminderPeriod = 5;

class ReminderSchedule {
 public:
  // Throws InvalidArgument when period_steps == 0.
  explicit ReminderSchedule(std::size_t period_steps = kDefaultReminderPeriod,
                            std::string reminder_text = {});

  std::size_t period_steps() const { return period_steps_; }
  const std::string& reminder_text() const { return reminder_text_; }

 private:
  std::size_t period_steps_;
  std::string reminder_text_;
};

// Schedule carrying the standard plan block as its reminder text.
ReminderSchedule default_reminder_schedule(
    const PhaseInstructions& instructions = default_phase_instructions());

// Steps after which the reminder is injected: period, 2*period, ... <= length.
std::vector<std::size_t> reminder_positions(const ReminderSchedule& schedule,
                                            std::size_t trajectory_length);

}  // namespace plantrace
