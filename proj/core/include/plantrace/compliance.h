#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "plantrace/classifier.h"
#include "plantrace/langutory.h"
#include "plantrace/plan.h"
#include "plantrace/trajectory.h"

namespace plantrace {

struct ComplianceScores {
  double ppc = 0.0;  // plan phase compliance
  double poc = 0.0;  // plan order compliance
  double ppf = 0.0;  // plan phase fidelity
  double pc = 0.0;   // geometric mean of the three

  std::set<PhaseLetter> missing_phases;  // plan letters never observed
  std::set<PhaseLetter> extra_phases;    // observed letters outside the plan
  std::vector<FirstOccurrence> first_occurrence_indices;
  std::size_t order_lis_length = 0;
  // Plan letters the classifier config can never emit.
  std::set<PhaseLetter> unobservable_phases;

  bool operator==(const ComplianceScores&) const = default;
};

// All four metrics return nullopt for an empty plan (the no-plan setting).
std::optional<double> compute_ppc(const Langutory& langutory, const PlanSpec& plan);
// Absent phases add nothing to the LIS input; the denominator stays |plan|.
std::optional<double> compute_poc(const Langutory& langutory, const PlanSpec& plan);
std::optional<double> compute_ppf(const Langutory& langutory, const PlanSpec& plan);
double compute_pc(double ppc, double poc, double ppf);

std::optional<ComplianceScores> score_langutory(const Langutory& langutory,
                                                const PlanSpec& plan);

// Langutory used for scoring and flow analysis: the terminal submit step is
// left out, since handing in the patch ends every run and is not a phase.
Langutory scoring_langutory(const TrajectoryRecord& trajectory,
                            const ClassifierConfig& config = {});

std::optional<ComplianceScores> score_trajectory(const TrajectoryRecord& trajectory,
                                                 const PlanSpec& plan,
                                                 const ClassifierConfig& config = {});

std::set<PhaseLetter> unobservable_phases(const PlanSpec& plan,
                                          const ClassifierConfig& config);

}  // namespace plantrace
