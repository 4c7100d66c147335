#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "plantrace/compliance.h"
#include "plantrace/scores_io.h"
#include "plantrace/trajectory.h"

namespace plantrace {

struct MetricSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;

  bool operator==(const MetricSummary&) const = default;
};

MetricSummary summarize(std::span<const double> values);

enum class GroupField { kModel, kSetting, kDifficulty, kResolved };

// Group key values; fields not grouped on hold "*".
struct GroupKey {
  std::string model = "*";
  std::string setting = "*";
  std::string difficulty = "*";
  std::string resolved = "*";

  auto operator<=>(const GroupKey&) const = default;
};

enum Metric : std::size_t { kPpc = 0, kPoc = 1, kPpf = 2, kPc = 3 };
inline constexpr std::array<const char*, 4> kMetricNames = {"ppc", "poc", "ppf", "pc"};

struct GroupedScores {
  GroupKey key;
  std::size_t trajectories = 0;
  std::vector<ComplianceScores> values;  // trajectories with a plan
  std::array<MetricSummary, 4> summary;  // indexed by Metric
  std::size_t labelled = 0;              // trajectories with a resolved label
  std::size_t resolved = 0;
  double mean_nc = 0.0;
  double mean_tec = 0.0;
  double mean_lc = 0.0;

  std::optional<double> success_rate() const;
};

std::array<MetricSummary, 4> summarize_scores(std::span<const ComplianceScores> values);

// Groups sorted by key.
std::vector<GroupedScores> group_scores(std::span<const ScoreRecord> records,
                                        std::span<const GroupField> fields);

// Resolved label per instance for one run or setting.
using Outcomes = std::map<std::string, std::optional<bool>>;

// Throws InvalidArgument if an instance appears twice with different labels.
Outcomes outcomes_of(const Corpus& corpus);
Outcomes outcomes_of(std::span<const ScoreRecord> records);

// Instances labelled identically in every run. Unlabelled instances are never
// deterministic. Throws InvalidArgument for fewer than two runs and
// MismatchError when the runs cover different (or no) instances.
std::set<std::string> deterministic_subset(std::span<const Outcomes> runs);
std::set<std::string> deterministic_subset(std::span<const Corpus> runs);

struct IntersectionTable {
  std::vector<std::string> settings;  // sorted
  // Per instance, the settings that resolve it.
  std::map<std::string, std::set<std::string>> memberships;
  // Exclusive intersections: each resolved instance counts once, under the
  // exact set of settings resolving it.
  std::map<std::set<std::string>, std::size_t> intersection_counts;
  std::size_t instances = 0;
  std::size_t unresolved_everywhere = 0;

  // Instances resolved under `setting` (the set-size bars).
  std::size_t set_size(const std::string& setting) const;
};

// Throws MismatchError when the settings cover different instance sets.
IntersectionTable intersection_table(const std::map<std::string, Outcomes>& outcomes);
IntersectionTable intersection_table(const std::map<std::string, Corpus>& corpora);

// Header: one column per setting (1/0), then "count"; rows sorted by
// descending count, then by membership.
std::string intersection_to_csv(const IntersectionTable& table);

}  // namespace plantrace
