#include "plantrace/aggregate.h"

#include <algorithm>
#include <numeric>

#include "plantrace/error.h"

namespace plantrace {

MetricSummary summarize(std::span<const double> values) {
  MetricSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
  const std::size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
  s.min = sorted.front();
  s.max = sorted.back();
  return s;
}

std::array<MetricSummary, 4> summarize_scores(std::span<const ComplianceScores> values) {
  std::array<std::vector<double>, 4> columns;
  for (const auto& v : values) {
    columns[kPpc].push_back(v.ppc);
    columns[kPoc].push_back(v.poc);
    columns[kPpf].push_back(v.ppf);
    columns[kPc].push_back(v.pc);
  }
  std::array<MetricSummary, 4> out;
  for (std::size_t m = 0; m < 4; ++m) out[m] = summarize(columns[m]);
  return out;
}

std::optional<double> GroupedScores::success_rate() const {
  if (labelled == 0) return std::nullopt;
  return static_cast<double>(resolved) / static_cast<double>(labelled);
}

namespace {

std::string resolved_key(const std::optional<bool>& resolved) {
  if (!resolved) return "unknown";
  return *resolved ? "resolved" : "unresolved";
}

GroupKey key_for(const ScoreRecord& r, std::span<const GroupField> fields) {
  GroupKey key;
  for (GroupField f : fields) {
    switch (f) {
      case GroupField::kModel: key.model = r.model_name; break;
      case GroupField::kSetting: key.setting = r.plan_setting_name; break;
      case GroupField::kDifficulty: key.difficulty = std::string(to_string(r.difficulty)); break;
      case GroupField::kResolved: key.resolved = resolved_key(r.resolved); break;
    }
  }
  return key;
}

}  // namespace

std::vector<GroupedScores> group_scores(std::span<const ScoreRecord> records,
                                        std::span<const GroupField> fields) {
  struct Acc {
    GroupedScores group;
    double nc = 0, tec = 0, lc = 0;
  };
  std::map<GroupKey, Acc> groups;
  for (const auto& r : records) {
    const GroupKey key = key_for(r, fields);
    Acc& acc = groups[key];
    acc.group.key = key;
    ++acc.group.trajectories;
    if (r.scores) acc.group.values.push_back(*r.scores);
    if (r.resolved) {
      ++acc.group.labelled;
      if (*r.resolved) ++acc.group.resolved;
    }
    acc.nc += static_cast<double>(r.graph.nc);
    acc.tec += static_cast<double>(r.graph.tec);
    acc.lc += static_cast<double>(r.graph.lc);
  }
  std::vector<GroupedScores> out;
  out.reserve(groups.size());
  for (auto& [key, acc] : groups) {
    GroupedScores g = std::move(acc.group);
    g.summary = summarize_scores(g.values);
    const double n = static_cast<double>(g.trajectories);
    g.mean_nc = acc.nc / n;
    g.mean_tec = acc.tec / n;
    g.mean_lc = acc.lc / n;
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

template <typename Range, typename Get>
Outcomes collect_outcomes(const Range& items, Get get) {
  Outcomes out;
  for (const auto& item : items) {
    const auto [instance, resolved] = get(item);
    auto [it, inserted] = out.emplace(instance, resolved);
    if (!inserted && it->second != resolved) {
      throw InvalidArgument("instance '" + instance + "' has conflicting resolved labels");
    }
  }
  return out;
}

std::set<std::string> instance_set(const Outcomes& o) {
  std::set<std::string> out;
  for (const auto& [id, _] : o) out.insert(id);
  return out;
}

}  // namespace

Outcomes outcomes_of(const Corpus& corpus) {
  return collect_outcomes(corpus.trajectories, [](const TrajectoryRecord& t) {
    return std::pair<std::string, std::optional<bool>>(t.instance_id, t.resolved);
  });
}

Outcomes outcomes_of(std::span<const ScoreRecord> records) {
  return collect_outcomes(records, [](const ScoreRecord& r) {
    return std::pair<std::string, std::optional<bool>>(r.instance_id, r.resolved);
  });
}

std::set<std::string> deterministic_subset(std::span<const Outcomes> runs) {
  if (runs.size() < 2) throw InvalidArgument("deterministic subset needs at least two runs");
  const auto instances = instance_set(runs.front());
  if (instances.empty()) throw MismatchError("runs share no instances");
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (instance_set(runs[i]) != instances) {
      throw MismatchError("run " + std::to_string(i + 1) +
                          " covers a different instance set than run 1");
    }
  }
  std::set<std::string> out;
  for (const auto& id : instances) {
    const std::optional<bool> first = runs.front().at(id);
    if (!first) continue;
    bool same = true;
    for (const auto& run : runs) same = same && run.at(id) == first;
    if (same) out.insert(id);
  }
  return out;
}

std::set<std::string> deterministic_subset(std::span<const Corpus> runs) {
  std::vector<Outcomes> outcomes;
  outcomes.reserve(runs.size());
  for (const auto& c : runs) outcomes.push_back(outcomes_of(c));
  return deterministic_subset(outcomes);
}

std::size_t IntersectionTable::set_size(const std::string& setting) const {
  std::size_t n = 0;
  for (const auto& [_, settings] : memberships) n += settings.count(setting);
  return n;
}

IntersectionTable intersection_table(const std::map<std::string, Outcomes>& outcomes) {
  IntersectionTable table;
  if (outcomes.empty()) return table;
  const auto instances = instance_set(outcomes.begin()->second);
  for (const auto& [setting, o] : outcomes) {
    if (instance_set(o) != instances) {
      throw MismatchError("setting '" + setting + "' covers a different instance set than '" +
                          outcomes.begin()->first + "'");
    }
    table.settings.push_back(setting);
  }
  table.instances = instances.size();
  for (const auto& id : instances) {
    std::set<std::string> resolved_by;
    for (const auto& [setting, o] : outcomes) {
      if (o.at(id).value_or(false)) resolved_by.insert(setting);
    }
    if (resolved_by.empty()) {
      ++table.unresolved_everywhere;
    } else {
      ++table.intersection_counts[resolved_by];
    }
    table.memberships.emplace(id, std::move(resolved_by));
  }
  return table;
}

IntersectionTable intersection_table(const std::map<std::string, Corpus>& corpora) {
  std::map<std::string, Outcomes> outcomes;
  for (const auto& [setting, corpus] : corpora) outcomes.emplace(setting, outcomes_of(corpus));
  return intersection_table(outcomes);
}

std::string intersection_to_csv(const IntersectionTable& table) {
  std::vector<std::pair<std::set<std::string>, std::size_t>> rows(table.intersection_counts.begin(),
                                                                   table.intersection_counts.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::string out;
  for (const auto& s : table.settings) out += s + ",";
  out += "count\n";
  for (const auto& [members, count] : rows) {
    for (const auto& s : table.settings) out += members.contains(s) ? "1," : "0,";
    out += std::to_string(count) + "\n";
  }
  return out;
}

}  // namespace plantrace
