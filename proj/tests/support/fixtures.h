#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plantrace/trajectory.h"

namespace plantrace::testsupport {

std::filesystem::path data_dir();

// The three worked-example trajectories shipped under tests/data.
TrajectoryRecord load_fixture(std::string_view stem);

StepRecord make_step(std::size_t index, ActionKind kind, std::optional<std::string> path,
                     std::string command = {}, bool is_error = false);

// Renumbers steps 1..n and wraps them in a trajectory with id `id`.
TrajectoryRecord make_trajectory(std::string id, std::vector<StepRecord> steps);

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view child) const { return path_ / child; }

 private:
  std::filesystem::path path_;
};

}  // namespace plantrace::testsupport
