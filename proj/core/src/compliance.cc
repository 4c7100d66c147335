#include "plantrace/compliance.h"

#include <cmath>
#include <cstdint>

#include "plantrace/lis.h"

namespace plantrace {

namespace {

std::set<PhaseLetter> distinct(const Langutory& langutory) {
  return {langutory.letters.begin(), langutory.letters.end()};
}

}  // namespace

std::optional<double> compute_ppc(const Langutory& langutory, const PlanSpec& plan) {
  if (plan.empty()) return std::nullopt;
  const auto seen = distinct(langutory);
  std::size_t covered = 0;
  for (PhaseLetter letter : plan.expected_sequence()) covered += seen.count(letter);
  return static_cast<double>(covered) / static_cast<double>(plan.size());
}

std::optional<double> compute_poc(const Langutory& langutory, const PlanSpec& plan) {
  if (plan.empty()) return std::nullopt;
  std::vector<std::int64_t> indices;
  for (const auto& occ : first_occurrences(langutory, plan)) {
    if (occ.index) indices.push_back(static_cast<std::int64_t>(*occ.index));
  }
  return static_cast<double>(longest_increasing_subsequence(indices)) /
         static_cast<double>(plan.size());
}

std::optional<double> compute_ppf(const Langutory& langutory, const PlanSpec& plan) {
  if (plan.empty()) return std::nullopt;
  auto united = distinct(langutory);
  united.insert(plan.expected_sequence().begin(), plan.expected_sequence().end());
  return static_cast<double>(plan.size()) / static_cast<double>(united.size());
}

double compute_pc(double ppc, double poc, double ppf) {
  const double product = ppc * poc * ppf;
  if (product == 0.0) return 0.0;
  return std::cbrt(product);
}

std::optional<ComplianceScores> score_langutory(const Langutory& langutory, const PlanSpec& plan) {
  if (plan.empty()) return std::nullopt;
  ComplianceScores s;
  s.ppc = *compute_ppc(langutory, plan);
  s.poc = *compute_poc(langutory, plan);
  s.ppf = *compute_ppf(langutory, plan);
  s.pc = compute_pc(s.ppc, s.poc, s.ppf);

  const auto seen = distinct(langutory);
  for (PhaseLetter letter : plan.expected_sequence()) {
    if (!seen.contains(letter)) s.missing_phases.insert(letter);
  }
  for (PhaseLetter letter : seen) {
    if (!plan.contains(letter)) s.extra_phases.insert(letter);
  }
  s.first_occurrence_indices = first_occurrences(langutory, plan);
  std::vector<std::int64_t> indices;
  for (const auto& occ : s.first_occurrence_indices) {
    if (occ.index) indices.push_back(static_cast<std::int64_t>(*occ.index));
  }
  s.order_lis_length = longest_increasing_subsequence(indices);
  return s;
}

Langutory scoring_langutory(const TrajectoryRecord& trajectory, const ClassifierConfig& config) {
  auto classified = classify_trajectory(trajectory, config);
  if (classified.size() > 1 && trajectory.steps.back().action_kind == ActionKind::kSubmit) {
    classified.pop_back();
  }
  return build_langutory(classified);
}

std::optional<ComplianceScores> score_trajectory(const TrajectoryRecord& trajectory,
                                                 const PlanSpec& plan,
                                                 const ClassifierConfig& config) {
  validate(trajectory);
  if (plan.empty()) return std::nullopt;
  auto scores = score_langutory(scoring_langutory(trajectory, config), plan);
  if (scores) scores->unobservable_phases = unobservable_phases(plan, config);
  return scores;
}

std::set<PhaseLetter> unobservable_phases(const PlanSpec& plan, const ClassifierConfig& config) {
  std::set<PhaseLetter> emitted_by_rule;
  for (const auto& rule : config.rule_overrides) emitted_by_rule.insert(rule.letter);
  std::set<PhaseLetter> out;
  for (PhaseLetter letter : plan.expected_sequence()) {
    if (emitted_by_rule.contains(letter)) continue;
    bool observable = true;
    switch (letter) {
      case PhaseLetter::R:
      case PhaseLetter::V:
        observable = !config.test_path_patterns.empty();
        break;
      case PhaseLetter::RG:
      case PhaseLetter::VG:
        observable = !config.test_path_patterns.empty() || !config.test_runner_heads.empty();
        break;
      case PhaseLetter::S:
        observable = !config.summary_markers.empty();
        break;
      default:
        break;
    }
    if (!observable) out.insert(letter);
  }
  return out;
}

}  // namespace plantrace
