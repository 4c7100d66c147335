#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plantrace/langutory.h"
#include "plantrace/phase.h"
#include "plantrace/plan.h"

namespace plantrace {

inline constexpr std::size_t kDefaultMaxStages = 8;

// Drops adjacent repeats: N,R,R,P -> N,R,P. Idempotent.
std::vector<PhaseLetter> collapse_runs(const std::vector<PhaseLetter>& letters);
std::vector<PhaseLetter> collapse_runs(const Langutory& langutory);

struct FlowKey {
  std::size_t stage = 1;
  PhaseLetter from = PhaseLetter::O;
  std::optional<PhaseLetter> to;  // nullopt is the terminal sink

  auto operator<=>(const FlowKey&) const = default;
};

struct FlowCount {
  std::size_t count = 0;
  // Part of `count` that was cut off by the stage horizon and folded into the
  // terminal sink.
  std::size_t truncated = 0;

  bool operator==(const FlowCount&) const = default;
};

// Stage k carries each trajectory from its k-th collapsed phase to its next
// one, or to the terminal sink. A trajectory still running at the last stage
// is folded into the sink there and counted as truncated.
struct FlowTable {
  std::size_t max_stages = kDefaultMaxStages;
  std::size_t population = 0;
  std::map<FlowKey, FlowCount> flows;

  // Trajectories present at `stage` (stage 1: the population).
  std::size_t entering(std::size_t stage) const;
  std::size_t continuing(std::size_t stage) const;
  std::size_t terminating(std::size_t stage) const;
  std::size_t outflow(std::size_t stage) const {
    return continuing(stage) + terminating(stage);
  }

  bool operator==(const FlowTable&) const = default;
};

// Throws InvalidArgument if max_stages == 0 or `collapsed` is empty.
void add_sequence(FlowTable& table, const std::vector<PhaseLetter>& collapsed);
FlowTable build_flow(std::span<const Langutory> langutories,
                     std::size_t max_stages = kDefaultMaxStages);
// Sum of two tables with the same horizon; commutative and associative.
FlowTable merge_flows(const FlowTable& a, const FlowTable& b);

// Flow per stratum key; `keys` is parallel to `langutories`.
std::map<std::string, FlowTable> build_stratified_flow(
    std::span<const Langutory> langutories, std::span<const std::string> keys,
    std::size_t max_stages = kDefaultMaxStages);

// {"population", "max_stages", "flows": [{"stage","from","to","count","truncated"}]}
std::string flow_to_json(const FlowTable& table);
FlowTable flow_from_json(const std::string& json_text, const std::string& source = "<flow>");
// stage,from,to,count,truncated
std::string flow_to_csv(const FlowTable& table);

struct StyleConfig {
  // Letters that get their own lane; everything else shares the gray
  // "other" lane.
  std::vector<PhaseLetter> lanes = {PhaseLetter::N, PhaseLetter::R, PhaseLetter::P,
                                    PhaseLetter::V};
  double width = 960.0;
  double height = 480.0;
  double node_width = 14.0;
  double margin = 40.0;
  std::string title;

  // Lanes for a plan's letters (the standard letters for an empty plan).
  static StyleConfig for_plan(const PlanSpec& plan);
};

std::string lane_color(std::optional<PhaseLetter> lane);

// Static SVG. Every nonzero (stage, from-lane, to-lane) pair becomes one
// <path class="ribbon">; stage columns are <rect class="node">; sinks are
// black <rect class="terminal">.
std::string render_sankey_svg(const FlowTable& table, const StyleConfig& style);

// Writes the JSON flow data and the SVG. Throws IoError.
void emit_sankey(const FlowTable& table, const StyleConfig& style,
                 const std::filesystem::path& data_path,
                 const std::filesystem::path& svg_path);

}  // namespace plantrace
