#include "synthetic.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>

#include "plantrace/ingest.h"

namespace plantrace::testsupport {

namespace {

constexpr std::array kModels = {"deepseek-r1", "deepseek-v3", "gpt-5-mini", "qwen3-coder"};
constexpr std::array kSettings = {"standard", "no_plan", "no_reproduction", "no_validation",
                                  "regression", "summary", "reordered", "reminded"};
constexpr std::array kModules = {"pkg/core.py", "pkg/io/readers.py", "pkg/utils.py",
                                 "pkg/models/base.py", "pkg/cli.py"};

enum class Intent { kNavigate, kReproduce, kPatch, kValidate, kRegression, kChatter };

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

Intent next_intent(std::mt19937_64& rng, int progress) {
  // Weights drift from navigation towards validation as `progress` grows.
  std::array<double, 6> w{};
  switch (progress) {
    case 0: w = {6, 3, 1, 0.2, 0.4, 0.4}; break;
    case 1: w = {2, 4, 3, 0.5, 0.5, 0.3}; break;
    case 2: w = {1, 1, 4, 3, 0.8, 0.3}; break;
    default: w = {0.7, 0.5, 2, 5, 1, 0.6}; break;
  }
  std::discrete_distribution<int> d(w.begin(), w.end());
  return static_cast<Intent>(d(rng));
}

}  // namespace

TrajectoryRecord synthetic_trajectory(std::mt19937_64& rng, std::size_t ordinal) {
  TrajectoryRecord t;
  char id[32];
  std::snprintf(id, sizeof id, "syn-%06zu", ordinal);
  t.trajectory_id = id;
  t.instance_id = "synth__case-" + std::to_string(ordinal);
  t.model_name = kModels[pick(rng, kModels.size())];
  t.plan_setting_name = kSettings[pick(rng, kSettings.size())];
  t.difficulty = static_cast<Difficulty>(pick(rng, 4));
  switch (pick(rng, 5)) {
    case 0: t.resolved = std::nullopt; break;
    case 1:
    case 2: t.resolved = true; break;
    default: t.resolved = false; break;
  }

  const std::size_t length = 2 + pick(rng, 39);
  std::set<std::string> created;
  int progress = 0;
  auto add = [&](ActionKind kind, std::optional<std::string> path, std::string cmd,
                 std::string out = {}) {
    StepRecord s;
    s.index = t.steps.size() + 1;
    s.action_kind = kind;
    s.target_path = std::move(path);
    s.command_text = std::move(cmd);
    s.output_excerpt = std::move(out);
    s.is_error = pick(rng, 12) == 0;
    t.steps.push_back(std::move(s));
  };

  while (t.steps.size() < length) {
    const std::string module = kModules[pick(rng, kModules.size())];
    switch (next_intent(rng, progress)) {
      case Intent::kNavigate:
        if (pick(rng, 3) == 0) {
          add(ActionKind::kFileSearch, std::nullopt, "search_dir parse_header pkg",
              "Found 4 matches");
        } else {
          add(ActionKind::kFileView, module, "open " + module);
        }
        break;
      case Intent::kReproduce: {
        const std::string script = pick(rng, 2) ? "reproduce.py" : "repro_issue.py";
        if (!created.contains(script)) {
          created.insert(script);
          add(ActionKind::kFileCreate, script, "create " + script);
        } else {
          add(ActionKind::kShellExec, script, "python " + script, "Traceback (most recent call last)");
        }
        progress = std::max(progress, 1);
        break;
      }
      case Intent::kPatch:
        add(ActionKind::kFileEdit, module, "edit 10:14", "File updated.");
        progress = std::max(progress, 2);
        break;
      case Intent::kValidate: {
        const std::string test = "test_fix.py";
        if (!created.contains(test)) {
          created.insert(test);
          add(ActionKind::kFileCreate, test, "create " + test);
        } else {
          add(ActionKind::kShellExec, test, "python " + test, "OK");
        }
        progress = 3;
        break;
      }
      case Intent::kRegression:
        add(ActionKind::kShellExec, std::nullopt, "pytest tests/test_core.py -q", "5 passed");
        break;
      case Intent::kChatter:
        switch (pick(rng, 3)) {
          case 0: add(ActionKind::kShellExec, std::nullopt, "pip install -e ."); break;
          case 1: add(ActionKind::kMessage, std::nullopt, "Summary of changes: fixed the parser"); break;
          default: add(ActionKind::kOther, std::nullopt, "scroll_down"); break;
        }
        break;
    }
  }
  if (pick(rng, 5) != 0) add(ActionKind::kSubmit, std::nullopt, "submit");
  return t;
}

Corpus synthetic_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Corpus corpus;
  corpus.provenance = "synthetic(seed=" + std::to_string(seed) + ")";
  corpus.trajectories.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    corpus.trajectories.push_back(synthetic_trajectory(rng, i));
  }
  return corpus;
}

std::vector<PhaseLetter> random_letters(std::mt19937_64& rng, std::size_t length,
                                        const std::vector<PhaseLetter>& alphabet) {
  std::vector<PhaseLetter> out(length);
  for (auto& l : out) l = alphabet[pick(rng, alphabet.size())];
  return out;
}

std::vector<PhaseLetter> compliant_letters(std::mt19937_64& rng, const PlanSpec& plan) {
  std::vector<PhaseLetter> out;
  for (PhaseLetter l : plan.expected_sequence()) {
    out.insert(out.end(), 1 + pick(rng, 3), l);
  }
  const std::size_t tail = pick(rng, 6);
  for (std::size_t i = 0; i < tail; ++i) {
    out.push_back(plan.expected_sequence()[pick(rng, plan.size())]);
  }
  return out;
}

}  // namespace plantrace::testsupport
