#include "fixtures.h"

#include <atomic>
#include <chrono>
#include <system_error>

#include "plantrace/ingest.h"

namespace plantrace::testsupport {

std::filesystem::path data_dir() { return PLANTRACE_TEST_DATA_DIR; }

TrajectoryRecord load_fixture(std::string_view stem) {
  const auto path = data_dir() / (std::string(stem) + ".jsonl");
  auto records = read_trajectory_file(path, TrajectoryFormat::kCanonical);
  return std::move(records.at(0));
}

StepRecord make_step(std::size_t index, ActionKind kind, std::optional<std::string> path,
                     std::string command, bool is_error) {
  StepRecord s;
  s.index = index;
  s.action_kind = kind;
  s.target_path = std::move(path);
  s.command_text = std::move(command);
  s.is_error = is_error;
  return s;
}

TrajectoryRecord make_trajectory(std::string id, std::vector<StepRecord> steps) {
  TrajectoryRecord t;
  t.trajectory_id = id;
  t.instance_id = std::move(id);
  t.model_name = "test-model";
  t.plan_setting_name = "standard";
  for (std::size_t i = 0; i < steps.size(); ++i) steps[i].index = i + 1;
  t.steps = std::move(steps);
  return t;
}

TempDir::TempDir(std::string_view tag) {
  static std::atomic<unsigned> counter{0};
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  path_ = std::filesystem::temp_directory_path() /
          ("plantrace-" + std::string(tag) + "-" + std::to_string(stamp) + "-" +
           std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace plantrace::testsupport
