#include "plantrace/trajectory.h"

#include <array>
#include <utility>

#include "plantrace/error.h"

namespace plantrace {

ParseError::ParseError(std::string source, std::size_t line, const std::string& what)
    : Error(line > 0 ? source + ":" + std::to_string(line) + ": " + what
                     : source + ": " + what),
      source_(std::move(source)),
      line_(line) {}

DuplicateIdError::DuplicateIdError(const std::string& id, const std::string& first_source,
                                   const std::string& second_source)
    : Error("duplicate trajectory_id '" + id + "' in " + first_source + " and " +
            second_source) {}

namespace {

constexpr std::array<std::pair<ActionKind, std::string_view>, 8> kActionNames = {{
    {ActionKind::kFileView, "file_view"},
    {ActionKind::kFileSearch, "file_search"},
    {ActionKind::kFileCreate, "file_create"},
    {ActionKind::kFileEdit, "file_edit"},
    {ActionKind::kShellExec, "shell_exec"},
    {ActionKind::kSubmit, "submit"},
    {ActionKind::kMessage, "message"},
    {ActionKind::kOther, "other"},
}};

}  // namespace

std::string_view to_string(ActionKind kind) {
  for (const auto& [k, name] : kActionNames) {
    if (k == kind) return name;
  }
  return "other";
}

std::optional<ActionKind> try_parse_action_kind(std::string_view text) {
  for (const auto& [k, name] : kActionNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

ActionKind parse_action_kind(std::string_view text) {
  return try_parse_action_kind(text).value_or(ActionKind::kOther);
}

std::string_view to_string(Difficulty difficulty) {
  switch (difficulty) {
    case Difficulty::kEasy: return "easy";
    case Difficulty::kMedium: return "medium";
    case Difficulty::kHard: return "hard";
    case Difficulty::kUnknown: return "unknown";
  }
  return "unknown";
}

Difficulty parse_difficulty(std::string_view text) {
  if (text == "easy") return Difficulty::kEasy;
  if (text == "medium") return Difficulty::kMedium;
  if (text == "hard") return Difficulty::kHard;
  return Difficulty::kUnknown;
}

void validate(const TrajectoryRecord& record, const std::string& source) {
  const std::string where = source.empty() ? record.trajectory_id : source;
  if (record.steps.empty()) {
    throw EmptyTrajectoryError(where + ": trajectory '" + record.trajectory_id +
                               "' has no steps");
  }
  if (record.trajectory_id.empty()) {
    throw ParseError(where, 0, "trajectory_id must not be empty");
  }
  for (std::size_t i = 0; i < record.steps.size(); ++i) {
    const StepRecord& step = record.steps[i];
    if (step.index != i + 1) {
      throw ParseError(where, 0,
                       "step indices must be contiguous from 1; expected " +
                           std::to_string(i + 1) + ", found " + std::to_string(step.index));
    }
    if (step.action_kind == ActionKind::kSubmit && i + 1 != record.steps.size()) {
      throw ParseError(where, 0,
                       "submit may only be the final step (found at step " +
                           std::to_string(step.index) + ")");
    }
  }
}

}  // namespace plantrace
