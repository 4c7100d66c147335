#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "plantrace/ingest.h"
#include "plantrace/phase_flow.h"

namespace plantrace::cli {

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  std::string plan = "standard";
  std::optional<std::filesystem::path> classifier_config;
  std::filesystem::path out = ".";
  TrajectoryFormat format = TrajectoryFormat::kCanonical;
  std::vector<std::string> by;  // difficulty | resolved | model
  std::size_t stages = kDefaultMaxStages;
  unsigned jobs = 1;
};

// Streams for user-facing output; commands never touch std::cout directly.
struct Console {
  std::ostream& out;
  std::ostream& err;
};

// Each command returns the process exit status: 0 when its primary artifact
// was written, 1 otherwise.
int cmd_ingest(const RunConfig& cfg, Console io);
int cmd_score(const RunConfig& cfg, Console io);
int cmd_flow(const RunConfig& cfg, Console io);
int cmd_graph(const RunConfig& cfg, Console io);

int cmd_variants_list(Console io);
struct EmitOptions {
  std::string setting;
  std::filesystem::path base;
  std::optional<std::filesystem::path> instructions;
  std::optional<std::filesystem::path> output;  // stdout when absent
};
int cmd_variants_emit(const EmitOptions& opts, Console io);
int cmd_variants_schedule(std::size_t length, std::size_t period, Console io);

struct CompareOptions {
  std::filesystem::path a;
  std::optional<std::filesystem::path> b;
  std::string test = "mannwhitney";  // mannwhitney | mcnemar | pearson
  std::string metric = "pc";         // for mannwhitney
  std::optional<std::string> split;  // "resolved": compare within --a
  std::string x = "pc";              // for pearson
  std::string y = "nc";
  std::string label;
};
int cmd_compare(const CompareOptions& opts, const RunConfig& cfg, Console io);

struct IntersectOptions {
  std::vector<std::filesystem::path> settings;       // score files, one per setting
  std::vector<std::filesystem::path> deterministic;  // optional repeated runs
};
int cmd_intersect(const IntersectOptions& opts, const RunConfig& cfg, Console io);

struct ReportOptions {
  std::filesystem::path scores;
  std::vector<std::filesystem::path> stats;  // compare *.json, intersect *.csv
};
int cmd_report(const ReportOptions& opts, const RunConfig& cfg, Console io);

// Parses argv and dispatches; used by main() and the CLI tests.
int run(int argc, const char* const* argv, Console io);

}  // namespace plantrace::cli
