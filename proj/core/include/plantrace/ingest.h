#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plantrace/trajectory.h"

namespace plantrace {

// canonical: JSON Lines, one "trajectory" header record followed by its
// "step" records; a file may hold several trajectories.
// swe-agent: a single SWE-agent `.traj` JSON dump.
enum class TrajectoryFormat { kCanonical, kSweAgent };

TrajectoryFormat parse_trajectory_format(std::string_view text);
std::string_view to_string(TrajectoryFormat format);

inline constexpr std::size_t kDefaultExcerptBudget = 4096;

struct IngestOptions {
  std::size_t excerpt_budget = kDefaultExcerptBudget;
  // Name used in error messages.
  std::string source_name = "<input>";
  // Prefix stripped from absolute paths reported by the agent's sandbox.
  std::string repo_root = "/testbed";
  // Metadata for formats that do not carry it (swe-agent). Empty fields fall
  // back to values found in the dump, then to the source file stem.
  std::string trajectory_id;
  std::string instance_id;
  std::string model_name;
  std::string plan_setting_name;
};

// Truncates to at most `budget` bytes without splitting a UTF-8 sequence.
std::string truncate_utf8(std::string_view text, std::size_t budget);

// Parses every trajectory in `raw_log`. Steps keep source order; unmappable
// entries become ActionKind::kOther. Throws ParseError (with line number for
// the canonical format) or EmptyTrajectoryError.
std::vector<TrajectoryRecord> parse_trajectories(std::string_view raw_log,
                                                 TrajectoryFormat format,
                                                 const IngestOptions& options = {});

// Like parse_trajectories but requires exactly one trajectory.
TrajectoryRecord parse_trajectory(std::string_view raw_log,
                                  TrajectoryFormat format,
                                  const IngestOptions& options = {});

// Canonical serialization; parse_trajectory(to_canonical(t)) == t whenever
// every excerpt fits the budget.
std::string to_canonical(const TrajectoryRecord& record);
std::string to_canonical(const Corpus& corpus);

// Directories expand (recursively, sorted) to files ending in .jsonl, .ndjson
// or .traj; plain file paths pass through unchanged.
std::vector<std::filesystem::path> expand_inputs(
    std::span<const std::filesystem::path> paths);

std::vector<TrajectoryRecord> read_trajectory_file(const std::filesystem::path& path,
                                                   TrajectoryFormat format,
                                                   IngestOptions options = {});

// Strict loader: any I/O or parse failure throws; a trajectory_id seen twice
// throws DuplicateIdError naming both files. Result is sorted by id.
Corpus load_corpus(std::span<const std::filesystem::path> paths,
                   TrajectoryFormat format = TrajectoryFormat::kCanonical,
                   const IngestOptions& options = {}, unsigned jobs = 1);

struct LoadFailure {
  std::filesystem::path path;
  std::string message;
};

struct LoadReport {
  Corpus corpus;
  std::vector<LoadFailure> failures;  // in input order
};

// Tolerant loader: unreadable or malformed files are reported and skipped.
// Duplicate ids still throw.
LoadReport load_corpus_lenient(std::span<const std::filesystem::path> paths,
                               TrajectoryFormat format = TrajectoryFormat::kCanonical,
                               const IngestOptions& options = {}, unsigned jobs = 1);

}  // namespace plantrace
