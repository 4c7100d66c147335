#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "plantrace/classifier.h"
#include "plantrace/compliance.h"
#include "plantrace/graphectory.h"
#include "plantrace/plan.h"
#include "plantrace/trajectory.h"

namespace plantrace {

// Per-trajectory analysis result, one line of a score file.
struct ScoreRecord {
  std::string trajectory_id;
  std::string instance_id;
  std::string model_name;
  std::string plan_setting_name;
  Difficulty difficulty = Difficulty::kUnknown;
  std::optional<bool> resolved;
  std::string plan_name;                   // plan the metrics were computed against
  std::optional<ComplianceScores> scores;  // nullopt under no_plan
  std::string langutory;                   // compressed phase string
  GraphectoryStats graph;
  std::size_t steps = 0;
};

ScoreRecord analyze_trajectory(const TrajectoryRecord& trajectory, const PlanSpec& plan,
                               const ClassifierConfig& config = {});

// Result order follows the corpus and is independent of `jobs`.
std::vector<ScoreRecord> score_corpus(const Corpus& corpus, const PlanSpec& plan,
                                      const ClassifierConfig& config = {},
                                      unsigned jobs = 1);

// JSON Lines; doubles at full round-trip precision.
std::string scores_to_jsonl(const std::vector<ScoreRecord>& records);
std::vector<ScoreRecord> scores_from_jsonl(const std::string& text,
                                           const std::string& source = "<scores>");
std::vector<ScoreRecord> read_scores_file(const std::filesystem::path& path);

// One row per trajectory; metric cells are empty under no_plan.
std::string scores_to_csv(const std::vector<ScoreRecord>& records);

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
// Fixed two decimals, for human-facing tables.
std::string format_2dp(double value);

void write_text_file(const std::filesystem::path& path, const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace plantrace
