#include "plantrace/scores_io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "plantrace/error.h"
#include "plantrace/parallel.h"

namespace plantrace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ScoreRecord analyze_trajectory(const TrajectoryRecord& trajectory, const PlanSpec& plan,
                               const ClassifierConfig& config) {
  validate(trajectory);
  ScoreRecord rec;
  rec.trajectory_id = trajectory.trajectory_id;
  rec.instance_id = trajectory.instance_id;
  rec.model_name = trajectory.model_name;
  rec.plan_setting_name = trajectory.plan_setting_name;
  rec.difficulty = trajectory.difficulty;
  rec.resolved = trajectory.resolved;
  rec.plan_name = plan.name();
  const Langutory lang = scoring_langutory(trajectory, config);
  rec.langutory = lang.compressed;
  rec.scores = score_langutory(lang, plan);
  if (rec.scores) rec.scores->unobservable_phases = unobservable_phases(plan, config);
  rec.graph = graphectory_stats(build_graphectory(trajectory));
  rec.steps = trajectory.steps.size();
  return rec;
}

std::vector<ScoreRecord> score_corpus(const Corpus& corpus, const PlanSpec& plan,
                                      const ClassifierConfig& config, unsigned jobs) {
  return parallel_map(corpus.trajectories.size(), jobs, [&](std::size_t i) {
    return analyze_trajectory(corpus.trajectories[i], plan, config);
  });
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

std::string format_2dp(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

namespace {

ordered_json letter_array(const std::set<PhaseLetter>& letters) {
  ordered_json arr = ordered_json::array();
  for (PhaseLetter l : letters) arr.push_back(std::string(to_string(l)));
  return arr;
}

std::set<PhaseLetter> letters_from(const json& arr, const std::string& source, std::size_t line) {
  std::set<PhaseLetter> out;
  if (arr.is_null()) return out;
  for (const auto& v : arr) {
    auto l = v.is_string() ? parse_phase_letter(v.get<std::string>()) : std::nullopt;
    if (!l) throw ParseError(source, line, "bad phase letter " + v.dump());
    out.insert(*l);
  }
  return out;
}

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string joined(const std::set<PhaseLetter>& letters) {
  std::string out;
  for (PhaseLetter l : letters) {
    if (!out.empty()) out += ' ';
    out += to_string(l);
  }
  return out;
}

}  // namespace

std::string scores_to_jsonl(const std::vector<ScoreRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    ordered_json j;
    j["trajectory_id"] = r.trajectory_id;
    j["instance_id"] = r.instance_id;
    j["model_name"] = r.model_name;
    j["plan_setting_name"] = r.plan_setting_name;
    j["difficulty"] = std::string(to_string(r.difficulty));
    j["resolved"] = r.resolved ? ordered_json(*r.resolved) : ordered_json(nullptr);
    j["plan"] = r.plan_name;
    j["steps"] = r.steps;
    j["langutory"] = r.langutory;
    if (r.scores) {
      const ComplianceScores& s = *r.scores;
      j["ppc"] = s.ppc;
      j["poc"] = s.poc;
      j["ppf"] = s.ppf;
      j["pc"] = s.pc;
      j["missing_phases"] = letter_array(s.missing_phases);
      j["extra_phases"] = letter_array(s.extra_phases);
      ordered_json firsts = ordered_json::array();
      for (const auto& occ : s.first_occurrence_indices) {
        ordered_json o;
        o["phase"] = std::string(to_string(occ.letter));
        o["index"] = occ.index ? ordered_json(*occ.index) : ordered_json(nullptr);
        firsts.push_back(std::move(o));
      }
      j["first_occurrence_indices"] = std::move(firsts);
      j["order_lis_length"] = s.order_lis_length;
      j["unobservable_phases"] = letter_array(s.unobservable_phases);
    } else {
      for (const char* key : {"ppc", "poc", "ppf", "pc"}) j[key] = nullptr;
    }
    j["nc"] = r.graph.nc;
    j["tec"] = r.graph.tec;
    j["lc"] = r.graph.lc;
    out += j.dump(-1, ' ', false, json::error_handler_t::replace) + "\n";
  }
  return out;
}

std::vector<ScoreRecord> scores_from_jsonl(const std::string& text, const std::string& source) {
  std::vector<ScoreRecord> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      ScoreRecord r;
      r.trajectory_id = j.at("trajectory_id").get<std::string>();
      r.instance_id = j.value("instance_id", r.trajectory_id);
      r.model_name = j.value("model_name", "unknown");
      r.plan_setting_name = j.value("plan_setting_name", "unknown");
      r.difficulty = parse_difficulty(j.value("difficulty", "unknown"));
      if (j.contains("resolved") && !j["resolved"].is_null()) r.resolved = j["resolved"].get<bool>();
      r.plan_name = j.value("plan", "");
      r.steps = j.value("steps", std::size_t{0});
      r.langutory = j.value("langutory", "");
      if (j.contains("ppc") && !j["ppc"].is_null()) {
        ComplianceScores s;
        s.ppc = j.at("ppc").get<double>();
        s.poc = j.at("poc").get<double>();
        s.ppf = j.at("ppf").get<double>();
        s.pc = j.at("pc").get<double>();
        s.missing_phases = letters_from(j.value("missing_phases", json::array()), source, line_no);
        s.extra_phases = letters_from(j.value("extra_phases", json::array()), source, line_no);
        s.unobservable_phases =
            letters_from(j.value("unobservable_phases", json::array()), source, line_no);
        for (const auto& o : j.value("first_occurrence_indices", json::array())) {
          auto l = parse_phase_letter(o.at("phase").get<std::string>());
          if (!l) throw ParseError(source, line_no, "bad phase letter in first_occurrence_indices");
          FirstOccurrence occ{*l, std::nullopt};
          if (!o.at("index").is_null()) occ.index = o["index"].get<std::size_t>();
          s.first_occurrence_indices.push_back(occ);
        }
        s.order_lis_length = j.value("order_lis_length", std::size_t{0});
        r.scores = std::move(s);
      }
      r.graph.nc = j.value("nc", std::size_t{0});
      r.graph.tec = j.value("tec", std::size_t{0});
      r.graph.lc = j.value("lc", std::size_t{0});
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, std::string("malformed score record: ") + e.what());
    }
  }
  return out;
}

std::vector<ScoreRecord> read_scores_file(const std::filesystem::path& path) {
  return scores_from_jsonl(read_text_file(path), path.string());
}

std::string scores_to_csv(const std::vector<ScoreRecord>& records) {
  std::string out =
      "trajectory_id,instance_id,model_name,plan_setting_name,difficulty,resolved,plan,steps,"
      "langutory,ppc,poc,ppf,pc,missing_phases,extra_phases,nc,tec,lc\n";
  for (const auto& r : records) {
    out += csv_cell(r.trajectory_id) + "," + csv_cell(r.instance_id) + "," +
           csv_cell(r.model_name) + "," + csv_cell(r.plan_setting_name) + "," +
           std::string(to_string(r.difficulty)) + "," +
           (r.resolved ? (*r.resolved ? "true" : "false") : "") + "," + csv_cell(r.plan_name) +
           "," + std::to_string(r.steps) + "," + csv_cell(r.langutory) + ",";
    if (r.scores) {
      out += format_double(r.scores->ppc) + "," + format_double(r.scores->poc) + "," +
             format_double(r.scores->ppf) + "," + format_double(r.scores->pc) + "," +
             joined(r.scores->missing_phases) + "," + joined(r.scores->extra_phases) + ",";
    } else {
      out += ",,,,,,";
    }
    out += std::to_string(r.graph.nc) + "," + std::to_string(r.graph.tec) + "," +
           std::to_string(r.graph.lc) + "\n";
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("error while writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace plantrace
