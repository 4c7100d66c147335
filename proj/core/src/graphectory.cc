#include "plantrace/graphectory.h"

#include <algorithm>
#include <cctype>
#include <map>

#include "plantrace/error.h"
#include "plantrace/glob.h"

namespace plantrace {

std::string ActionNode::signature() const {
  std::string out(to_string(kind));
  out += '|';
  out += target_path;
  out += '|';
  out += command_head;
  return out;
}

ActionNode action_node_for(const StepRecord& step) {
  ActionNode node;
  node.kind = step.action_kind;
  if (step.target_path) node.target_path = normalize_path(*step.target_path);
  const auto begin = step.command_text.find_first_not_of(" \t\r\n");
  if (begin != std::string::npos) {
    const auto end = step.command_text.find_first_of(" \t\r\n", begin);
    node.command_head = step.command_text.substr(
        begin, end == std::string::npos ? std::string::npos : end - begin);
    std::transform(node.command_head.begin(), node.command_head.end(), node.command_head.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  }
  return node;
}

GraphectoryGraph build_graphectory(const TrajectoryRecord& trajectory) {
  if (trajectory.steps.empty()) {
    throw EmptyTrajectoryError("trajectory '" + trajectory.trajectory_id + "' has no steps");
  }
  GraphectoryGraph graph;
  std::map<ActionNode, std::size_t> ids;
  graph.step_walk.reserve(trajectory.steps.size());
  for (const StepRecord& step : trajectory.steps) {
    ActionNode node = action_node_for(step);
    auto [it, inserted] = ids.emplace(node, graph.nodes.size());
    if (inserted) graph.nodes.push_back(std::move(node));
    if (!graph.step_walk.empty()) graph.edges.emplace(graph.step_walk.back(), it->second);
    graph.step_walk.push_back(it->second);
  }
  return graph;
}

GraphectoryStats graphectory_stats(const GraphectoryGraph& graph) {
  GraphectoryStats stats;
  stats.nc = graph.nodes.size();
  stats.tec = graph.edges.size();
  std::vector<bool> visited(graph.nodes.size(), false);
  for (std::size_t id : graph.step_walk) {
    if (visited[id]) ++stats.lc;
    visited[id] = true;
  }
  return stats;
}

namespace {

std::string dot_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const GraphectoryGraph& graph, std::string_view graph_name) {
  std::string out = "digraph \"" + dot_escape(std::string(graph_name)) + "\" {\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const ActionNode& n = graph.nodes[i];
    std::string label(to_string(n.kind));
    if (!n.command_head.empty()) label += "\\n" + dot_escape(n.command_head);
    if (!n.target_path.empty()) label += "\\n" + dot_escape(n.target_path);
    out += "  n" + std::to_string(i) + " [label=\"" + label + "\"];\n";
  }
  for (const auto& [from, to] : graph.edges) {
    out += "  n" + std::to_string(from) + " -> n" + std::to_string(to) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace plantrace
