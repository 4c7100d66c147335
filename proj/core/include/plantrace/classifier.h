#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plantrace/phase.h"
#include "plantrace/trajectory.h"

namespace plantrace {

// Predicate over a single step. Unset fields match anything; all set fields
// must match.
struct StepPredicate {
  std::optional<ActionKind> action_kind;
  std::optional<std::string> path_glob;      // via path_matches on target_path
  std::optional<std::string> command_regex;  // ECMAScript, searched in command_text
  std::optional<bool> is_error;
  // Compiled form of command_regex; filled by compile().
  std::shared_ptr<const std::regex> compiled;

  // Throws InvalidArgument on a bad regex.
  void compile();
  bool matches(const StepRecord& step) const;
};

struct ClassificationRule {
  StepPredicate when;
  PhaseLetter letter = PhaseLetter::O;
};

struct ClassifierConfig {
  std::vector<std::string> test_path_patterns = {"test_*", "*_test.*", "tests/**",
                                                 "reproduce*", "repro*"};
  // Consulted before the default rulebook, in order; first match wins.
  std::vector<ClassificationRule> rule_overrides;
  // Case-insensitive phrases that flag a summary message.
  std::vector<std::string> summary_markers = {"summary of changes",
                                              "summary of the changes",
                                              "here is a summary", "## summary",
                                              "to summarize", "in summary"};
  // Command heads that run an existing test suite even without a test path.
  std::vector<std::string> test_runner_heads = {"pytest", "py.test", "tox",
                                                "nosetests", "runtests.py"};

  bool is_test_path(const std::string& path) const;
};

ClassifierConfig default_classifier_config();

// JSON object with optional keys test_path_patterns, summary_markers,
// test_runner_heads and rule_overrides ([{"when": {...}, "letter": "O"}]).
ClassifierConfig parse_classifier_config(const std::string& json_text,
                                         const std::string& source = "<config>");
ClassifierConfig load_classifier_config(const std::filesystem::path& path);

// Temporal state threaded through one forward pass.
struct ClassificationContext {
  bool application_edited = false;    // any application-code edit so far
  bool any_edit = false;              // any file edit or creation so far
  std::set<std::string> created_files;  // normalized paths created by the agent

  // Folds `step`, classified as `letter`, into the state.
  void observe(const StepRecord& step, PhaseLetter letter);
};

PhaseLetter classify_step(const StepRecord& step, const ClassificationContext& context,
                          const ClassifierConfig& config = {});

struct ClassifiedStep {
  std::size_t step_index = 0;
  PhaseLetter letter = PhaseLetter::O;

  bool operator==(const ClassifiedStep&) const = default;
};

std::vector<ClassifiedStep> classify_trajectory(const TrajectoryRecord& trajectory,
                                                const ClassifierConfig& config = {});

}  // namespace plantrace
