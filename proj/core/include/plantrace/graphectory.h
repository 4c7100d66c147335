#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plantrace/trajectory.h"

namespace plantrace {

// A distinct action. Identity is (kind, normalized target path, lowercased
// first token of the command).
struct ActionNode {
  ActionKind kind = ActionKind::kOther;
  std::string target_path;
  std::string command_head;

  std::string signature() const;
  auto operator<=>(const ActionNode&) const = default;
};

ActionNode action_node_for(const StepRecord& step);

struct GraphectoryGraph {
  std::vector<ActionNode> nodes;                           // first-seen order
  std::set<std::pair<std::size_t, std::size_t>> edges;    // node ids
  std::vector<std::size_t> step_walk;                      // node id per step
};

struct GraphectoryStats {
  std::size_t nc = 0;   // distinct actions
  std::size_t tec = 0;  // distinct temporal edges
  std::size_t lc = 0;   // walk positions that re-enter a visited node

  bool operator==(const GraphectoryStats&) const = default;
};

// Throws EmptyTrajectoryError for a trajectory without steps.
GraphectoryGraph build_graphectory(const TrajectoryRecord& trajectory);
GraphectoryStats graphectory_stats(const GraphectoryGraph& graph);

// Graphviz DOT: one node statement per action, one edge statement per
// distinct temporal edge in (source, target) order.
std::string to_dot(const GraphectoryGraph& graph, std::string_view graph_name = "graphectory");

}  // namespace plantrace
