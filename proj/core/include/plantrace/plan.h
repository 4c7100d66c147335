#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plantrace/phase.h"

namespace plantrace {

// A plan setting's phase alphabet and its expected order. The alphabet is the
// set of letters in expected_sequence; each letter appears exactly once.
// An empty sequence is the "no plan" sentinel.
class PlanSpec {
 public:
  PlanSpec() = default;
  // Throws InvalidArgument on repeated letters or on O.
  PlanSpec(std::string name, std::vector<PhaseLetter> expected_sequence);

  const std::string& name() const { return name_; }
  const std::vector<PhaseLetter>& expected_sequence() const { return sequence_; }
  std::size_t size() const { return sequence_.size(); }
  bool empty() const { return sequence_.empty(); }
  bool contains(PhaseLetter letter) const;
  // e.g. "<N,R,P,V>"; "---" when empty.
  std::string formulation() const;

  bool operator==(const PlanSpec&) const = default;

 private:
  std::string name_;
  std::vector<PhaseLetter> sequence_;
};

// The eight built-in plan settings, in catalogue order.
const std::vector<PlanSpec>& plan_catalogue();
std::optional<PlanSpec> find_plan(std::string_view name);

// JSON {"name": "...", "sequence": ["N", "P", ...]}.
PlanSpec parse_plan_spec(const std::string& json_text,
                         const std::string& source = "<plan>");
// Catalogue name, or else a path to a plan-spec JSON file.
PlanSpec resolve_plan(const std::string& name_or_path);

}  // namespace plantrace
