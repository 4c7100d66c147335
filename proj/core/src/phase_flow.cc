#include "plantrace/phase_flow.h"

#include <fstream>

#include <json.hpp>

#include "plantrace/error.h"

namespace plantrace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {
constexpr std::string_view kTerminal = "TERMINAL";
}

std::vector<PhaseLetter> collapse_runs(const std::vector<PhaseLetter>& letters) {
  std::vector<PhaseLetter> out;
  for (PhaseLetter l : letters) {
    if (out.empty() || out.back() != l) out.push_back(l);
  }
  return out;
}

std::vector<PhaseLetter> collapse_runs(const Langutory& langutory) {
  return collapse_runs(langutory.letters);
}

std::size_t FlowTable::entering(std::size_t stage) const {
  if (stage == 1) return population;
  return stage == 0 ? 0 : continuing(stage - 1);
}

std::size_t FlowTable::continuing(std::size_t stage) const {
  std::size_t total = 0;
  for (const auto& [key, c] : flows) {
    if (key.stage == stage && key.to) total += c.count;
  }
  return total;
}

std::size_t FlowTable::terminating(std::size_t stage) const {
  std::size_t total = 0;
  for (const auto& [key, c] : flows) {
    if (key.stage == stage && !key.to) total += c.count;
  }
  return total;
}

void add_sequence(FlowTable& table, const std::vector<PhaseLetter>& collapsed) {
  if (table.max_stages == 0) throw InvalidArgument("flow horizon must be at least 1 stage");
  if (collapsed.empty()) throw InvalidArgument("cannot add an empty phase sequence to a flow");
  ++table.population;
  const std::size_t length = collapsed.size();
  for (std::size_t stage = 1; stage <= table.max_stages && stage <= length; ++stage) {
    const PhaseLetter from = collapsed[stage - 1];
    if (stage == length) {
      ++table.flows[{stage, from, std::nullopt}].count;
    } else if (stage == table.max_stages) {
      FlowCount& c = table.flows[{stage, from, std::nullopt}];
      ++c.count;
      ++c.truncated;
    } else {
      ++table.flows[{stage, from, collapsed[stage]}].count;
    }
  }
}

FlowTable build_flow(std::span<const Langutory> langutories, std::size_t max_stages) {
  if (max_stages == 0) throw InvalidArgument("flow horizon must be at least 1 stage");
  FlowTable table;
  table.max_stages = max_stages;
  for (const auto& lang : langutories) add_sequence(table, collapse_runs(lang));
  return table;
}

FlowTable merge_flows(const FlowTable& a, const FlowTable& b) {
  if (a.max_stages != b.max_stages) {
    throw InvalidArgument("cannot merge flows with different horizons");
  }
  FlowTable out = a;
  out.population += b.population;
  for (const auto& [key, c] : b.flows) {
    FlowCount& dst = out.flows[key];
    dst.count += c.count;
    dst.truncated += c.truncated;
  }
  return out;
}

std::map<std::string, FlowTable> build_stratified_flow(std::span<const Langutory> langutories,
                                                       std::span<const std::string> keys,
                                                       std::size_t max_stages) {
  if (langutories.size() != keys.size()) {
    throw InvalidArgument("stratification keys must be parallel to the langutories");
  }
  if (max_stages == 0) throw InvalidArgument("flow horizon must be at least 1 stage");
  std::map<std::string, FlowTable> out;
  for (std::size_t i = 0; i < langutories.size(); ++i) {
    auto [it, inserted] = out.try_emplace(keys[i]);
    if (inserted) it->second.max_stages = max_stages;
    add_sequence(it->second, collapse_runs(langutories[i]));
  }
  return out;
}

std::string flow_to_json(const FlowTable& table) {
  ordered_json doc;
  doc["population"] = table.population;
  doc["max_stages"] = table.max_stages;
  std::size_t truncated = 0;
  ordered_json flows = ordered_json::array();
  for (const auto& [key, c] : table.flows) {
    ordered_json f;
    f["stage"] = key.stage;
    f["from"] = std::string(to_string(key.from));
    f["to"] = key.to ? std::string(to_string(*key.to)) : std::string(kTerminal);
    f["count"] = c.count;
    f["truncated"] = c.truncated;
    truncated += c.truncated;
    flows.push_back(std::move(f));
  }
  doc["truncated_total"] = truncated;
  doc["flows"] = std::move(flows);
  return doc.dump(2) + "\n";
}

FlowTable flow_from_json(const std::string& json_text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
    FlowTable table;
    table.population = doc.at("population").get<std::size_t>();
    table.max_stages = doc.at("max_stages").get<std::size_t>();
    for (const auto& f : doc.at("flows")) {
      FlowKey key;
      key.stage = f.at("stage").get<std::size_t>();
      auto from = parse_phase_letter(f.at("from").get<std::string>());
      if (!from) throw ParseError(source, 0, "bad 'from' letter");
      key.from = *from;
      const std::string to = f.at("to").get<std::string>();
      if (to != kTerminal) {
        auto letter = parse_phase_letter(to);
        if (!letter) throw ParseError(source, 0, "bad 'to' letter");
        key.to = *letter;
      }
      table.flows[key] = {f.at("count").get<std::size_t>(), f.value("truncated", std::size_t{0})};
    }
    return table;
  } catch (const json::exception& e) {
    throw ParseError(source, 0, std::string("malformed flow data: ") + e.what());
  }
}

std::string flow_to_csv(const FlowTable& table) {
  std::string out = "stage,from,to,count,truncated\n";
  for (const auto& [key, c] : table.flows) {
    out += std::to_string(key.stage) + "," + std::string(to_string(key.from)) + "," +
           (key.to ? std::string(to_string(*key.to)) : std::string(kTerminal)) + "," +
           std::to_string(c.count) + "," + std::to_string(c.truncated) + "\n";
  }
  return out;
}

StyleConfig StyleConfig::for_plan(const PlanSpec& plan) {
  StyleConfig style;
  if (!plan.empty()) style.lanes = plan.expected_sequence();
  style.title = plan.name();
  return style;
}

}  // namespace plantrace
