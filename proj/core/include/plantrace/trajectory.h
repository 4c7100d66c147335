#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plantrace {

enum class ActionKind : std::uint8_t {
  kFileView,
  kFileSearch,
  kFileCreate,
  kFileEdit,
  kShellExec,
  kSubmit,
  kMessage,
  kOther,
};

enum class Difficulty : std::uint8_t { kEasy, kMedium, kHard, kUnknown };

std::string_view to_string(ActionKind kind);
// Unknown tags map to kOther.
ActionKind parse_action_kind(std::string_view text);
std::optional<ActionKind> try_parse_action_kind(std::string_view text);

std::string_view to_string(Difficulty difficulty);
// Unrecognized or empty text maps to kUnknown.
Difficulty parse_difficulty(std::string_view text);

struct StepRecord {
  std::size_t index = 0;  // 1-based
  ActionKind action_kind = ActionKind::kOther;
  std::optional<std::string> target_path;
  std::string command_text;
  std::string output_excerpt;
  bool is_error = false;

  bool operator==(const StepRecord&) const = default;
};

struct TrajectoryRecord {
  std::string trajectory_id;
  std::string instance_id;
  std::string model_name;
  std::string plan_setting_name;
  Difficulty difficulty = Difficulty::kUnknown;
  std::optional<bool> resolved;
  std::vector<StepRecord> steps;

  bool operator==(const TrajectoryRecord&) const = default;
};

// Checks the record invariants: non-empty, contiguous 1-based indices, and at
// most one submit which must be the final step. Throws ParseError.
void validate(const TrajectoryRecord& record, const std::string& source = {});

struct Corpus {
  std::vector<TrajectoryRecord> trajectories;  // sorted by trajectory_id
  std::string provenance;

  std::size_t size() const { return trajectories.size(); }
  bool empty() const { return trajectories.empty(); }
};

}  // namespace plantrace
