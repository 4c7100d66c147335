#include "plantrace/plan.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "plantrace/error.h"

namespace plantrace {

using json = nlohmann::json;

PlanSpec::PlanSpec(std::string name, std::vector<PhaseLetter> expected_sequence)
    : name_(std::move(name)), sequence_(std::move(expected_sequence)) {
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    if (sequence_[i] == PhaseLetter::O) {
      throw InvalidArgument("plan '" + name_ + "' may not contain the out-of-plan letter O");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (sequence_[j] == sequence_[i]) {
        throw InvalidArgument("plan '" + name_ + "' repeats letter " +
                              std::string(to_string(sequence_[i])));
      }
    }
  }
}

bool PlanSpec::contains(PhaseLetter letter) const {
  return std::find(sequence_.begin(), sequence_.end(), letter) != sequence_.end();
}

std::string PlanSpec::formulation() const {
  if (sequence_.empty()) return "---";
  std::string out = "<";
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    if (i) out += ",";
    out += to_string(sequence_[i]);
  }
  return out + ">";
}

const std::vector<PlanSpec>& plan_catalogue() {
  using L = PhaseLetter;
  static const std::vector<PlanSpec> catalogue = {
      PlanSpec("standard", {L::N, L::R, L::P, L::V}),
      PlanSpec("no_plan", {}),
      PlanSpec("no_reproduction", {L::N, L::P, L::V}),
      PlanSpec("no_validation", {L::N, L::R, L::P}),
      PlanSpec("regression", {L::RG, L::N, L::R, L::P, L::V, L::VG}),
      PlanSpec("summary", {L::N, L::R, L::P, L::V, L::S}),
      PlanSpec("reordered", {L::N, L::P, L::R, L::V}),
      PlanSpec("reminded", {L::N, L::R, L::P, L::V}),
  };
  return catalogue;
}

std::optional<PlanSpec> find_plan(std::string_view name) {
  for (const auto& plan : plan_catalogue()) {
    if (plan.name() == name) return plan;
  }
  return std::nullopt;
}

PlanSpec parse_plan_spec(const std::string& json_text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, std::string("malformed plan spec: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("name") || !doc["name"].is_string() ||
      !doc.contains("sequence") || !doc["sequence"].is_array()) {
    throw ParseError(source, 0, "plan spec needs a string 'name' and an array 'sequence'");
  }
  std::vector<PhaseLetter> sequence;
  for (const auto& v : doc["sequence"]) {
    auto letter = v.is_string() ? parse_phase_letter(v.get<std::string>()) : std::nullopt;
    if (!letter) throw ParseError(source, 0, "unknown phase letter in sequence: " + v.dump());
    sequence.push_back(*letter);
  }
  try {
    return PlanSpec(doc["name"].get<std::string>(), std::move(sequence));
  } catch (const InvalidArgument& e) {
    throw ParseError(source, 0, e.what());
  }
}

PlanSpec resolve_plan(const std::string& name_or_path) {
  if (auto plan = find_plan(name_or_path)) return *plan;
  std::error_code ec;
  if (std::filesystem::is_regular_file(name_or_path, ec)) {
    std::ifstream in(name_or_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_plan_spec(buf.str(), name_or_path);
  }
  std::string names;
  for (const auto& plan : plan_catalogue()) names += (names.empty() ? "" : ", ") + plan.name();
  throw InvalidArgument("unknown plan '" + name_or_path + "' (catalogue: " + names +
                        "; or pass a plan-spec JSON file)");
}

}  // namespace plantrace
