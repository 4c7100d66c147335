#include "doctest.h"
#include "fixtures.h"
#include "plantrace/error.h"
#include "plantrace/graphectory.h"

using namespace plantrace;
using testsupport::make_step;
using testsupport::make_trajectory;

namespace {

StepRecord view(const std::string& path) { return make_step(0, ActionKind::kFileView, path, "open " + path); }

GraphectoryStats stats_of(std::vector<StepRecord> steps) {
  return graphectory_stats(build_graphectory(make_trajectory("g", std::move(steps))));
}

}  // namespace

TEST_CASE("dedup of identical actions") {
  const auto g = build_graphectory(make_trajectory("g", {view("a.py"), view("a.py"), view("a.py")}));
  CHECK(g.nodes.size() == 1);
  CHECK(g.edges == std::set<std::pair<std::size_t, std::size_t>>{{0, 0}});
  CHECK(g.step_walk.size() == 3);
  CHECK(graphectory_stats(g) == GraphectoryStats{1, 1, 2});
}

TEST_CASE("distinct files stay distinct") {
  const auto g = build_graphectory(make_trajectory("g", {view("a.py"), view("b.py"), view("c.py")}));
  CHECK(g.nodes.size() == 3);
  CHECK(g.edges.size() == 2);
}

TEST_CASE("stats on small walks") {
  CHECK(stats_of({view("a"), view("b"), view("c"), view("d")}) == GraphectoryStats{4, 3, 0});
  CHECK(stats_of({view("a"), view("b"), view("a")}) == GraphectoryStats{2, 2, 1});
  CHECK(stats_of({view("a"), view("a"), view("a")}) == GraphectoryStats{1, 1, 2});
}

TEST_CASE("node identity") {
  // Path normalization and command-head case folding merge these two.
  const auto a = action_node_for(make_step(1, ActionKind::kShellExec, "./scripts//repro.py", "Python repro.py"));
  const auto b = action_node_for(make_step(2, ActionKind::kShellExec, "scripts/repro.py", "python repro.py --v"));
  CHECK(a == b);
  const auto c = action_node_for(make_step(3, ActionKind::kFileView, "scripts/repro.py", "python"));
  CHECK(a != c);
}

TEST_CASE("worked example a") {
  // Hand-built: view nanops, create repro, run repro, edit nanops, create test,
  // run test, then revisits of run repro, edit nanops, run test.
  const auto g = build_graphectory(testsupport::load_fixture("fig1a"));
  CHECK(g.step_walk == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 2, 3, 5});
  CHECK(g.nodes.size() < 9);
  CHECK(graphectory_stats(g) == GraphectoryStats{6, 7, 3});
}

TEST_CASE("DOT output") {
  const auto g = build_graphectory(make_trajectory("g", {view("a.py"), view("b.py"), view("a.py")}));
  const std::string dot = to_dot(g, "demo");
  CHECK(dot.rfind("digraph \"demo\"", 0) == 0);
  std::size_t arrows = 0;
  for (auto pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 2)) ++arrows;
  CHECK(arrows == 2);
}

TEST_CASE("empty trajectory is rejected") {
  CHECK_THROWS_AS((void)build_graphectory(TrajectoryRecord{}), EmptyTrajectoryError);
}
