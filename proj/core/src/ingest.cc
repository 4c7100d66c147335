#include "plantrace/ingest.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "plantrace/error.h"
#include "plantrace/parallel.h"

namespace plantrace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

TrajectoryFormat parse_trajectory_format(std::string_view text) {
  if (text == "canonical") return TrajectoryFormat::kCanonical;
  if (text == "swe-agent" || text == "swe_agent") return TrajectoryFormat::kSweAgent;
  throw InvalidArgument("unknown trajectory format '" + std::string(text) +
                        "' (expected canonical or swe-agent)");
}

std::string_view to_string(TrajectoryFormat format) {
  return format == TrajectoryFormat::kCanonical ? "canonical" : "swe-agent";
}

std::string truncate_utf8(std::string_view text, std::size_t budget) {
  if (text.size() <= budget) return std::string(text);
  std::size_t cut = budget;
  // Back up over continuation bytes so a multi-byte sequence is never split.
  while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
  return std::string(text.substr(0, cut));
}

namespace {

std::string strip_root(std::string path, const std::string& root) {
  if (!root.empty() && path.starts_with(root)) {
    path.erase(0, root.size());
    while (path.starts_with("/")) path.erase(0, 1);
  }
  return path;
}

// ---------------------------------------------------------------- canonical

std::string get_string(const json& obj, const char* key, const std::string& fallback,
                       const std::string& source, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_string()) {
    throw ParseError(source, line, std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::vector<TrajectoryRecord> parse_canonical(std::string_view raw,
                                              const IngestOptions& options) {
  const std::string& source = options.source_name;
  std::vector<TrajectoryRecord> out;
  std::size_t line_no = 0;
  std::size_t header_line = 0;
  std::size_t pos = 0;

  auto finish = [&] {
    if (!out.empty()) validate(out.back(), source + ":" + std::to_string(header_line));
  };

  while (pos <= raw.size()) {
    auto nl = raw.find('\n', pos);
    std::string_view line =
        raw.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? raw.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c) != 0; })) {
      continue;
    }

    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(source, line_no, std::string("malformed record: ") + e.what());
    }
    if (!rec.is_object()) throw ParseError(source, line_no, "record must be a JSON object");
    const std::string kind = get_string(rec, "record", "", source, line_no);

    if (kind == "trajectory") {
      finish();
      TrajectoryRecord t;
      t.trajectory_id = get_string(rec, "trajectory_id", "", source, line_no);
      if (t.trajectory_id.empty()) {
        throw ParseError(source, line_no, "trajectory header lacks trajectory_id");
      }
      t.instance_id = get_string(rec, "instance_id", t.trajectory_id, source, line_no);
      t.model_name = get_string(rec, "model_name", "unknown", source, line_no);
      t.plan_setting_name = get_string(rec, "plan_setting_name", "unknown", source, line_no);
      t.difficulty = parse_difficulty(get_string(rec, "difficulty", "unknown", source, line_no));
      if (auto it = rec.find("resolved"); it != rec.end() && !it->is_null()) {
        if (!it->is_boolean()) throw ParseError(source, line_no, "resolved must be a boolean");
        t.resolved = it->get<bool>();
      }
      out.push_back(std::move(t));
      header_line = line_no;
    } else if (kind == "step") {
      if (out.empty()) throw ParseError(source, line_no, "step record before any trajectory header");
      TrajectoryRecord& t = out.back();
      StepRecord s;
      auto idx = rec.find("index");
      if (idx == rec.end() || !idx->is_number_unsigned()) {
        throw ParseError(source, line_no, "step lacks a positive integer index");
      }
      s.index = idx->get<std::size_t>();
      if (s.index != t.steps.size() + 1) {
        throw ParseError(source, line_no,
                         "step index " + std::to_string(s.index) + " out of sequence (expected " +
                             std::to_string(t.steps.size() + 1) + ")");
      }
      s.action_kind = parse_action_kind(get_string(rec, "action_kind", "other", source, line_no));
      if (auto it = rec.find("target_path"); it != rec.end() && !it->is_null()) {
        if (!it->is_string()) throw ParseError(source, line_no, "target_path must be a string");
        s.target_path = it->get<std::string>();
      }
      s.command_text = get_string(rec, "command_text", "", source, line_no);
      s.output_excerpt =
          truncate_utf8(get_string(rec, "output_excerpt", "", source, line_no), options.excerpt_budget);
      if (auto it = rec.find("is_error"); it != rec.end() && !it->is_null()) {
        if (!it->is_boolean()) throw ParseError(source, line_no, "is_error must be a boolean");
        s.is_error = it->get<bool>();
      }
      if (!t.steps.empty() && t.steps.back().action_kind == ActionKind::kSubmit) {
        throw ParseError(source, line_no, "step after submit");
      }
      t.steps.push_back(std::move(s));
    } else {
      throw ParseError(source, line_no, "unknown record type '" + kind + "'");
    }
  }
  finish();
  if (out.empty()) throw EmptyTrajectoryError(source + ": no trajectory records");
  return out;
}

// ---------------------------------------------------------------- swe-agent

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  char quote = 0;
  for (char c : text) {
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else {
        current.push_back(c);
      }
    } else if (c == '\'' || c == '"') {
      quote = c;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) words.push_back(std::move(current)), current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::string first_line(std::string_view text) {
  auto nl = text.find('\n');
  return std::string(text.substr(0, nl));
}

// First segment of a compound shell command that is not a `cd`.
std::string main_segment(const std::string& line) {
  std::vector<std::string> segments;
  std::string current;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if ((line.compare(i, 2, "&&") == 0) || (line.compare(i, 2, "||") == 0)) {
      segments.push_back(current), current.clear(), ++i;
    } else if (line[i] == ';') {
      segments.push_back(current), current.clear();
    } else {
      current.push_back(line[i]);
    }
  }
  segments.push_back(current);
  for (const auto& seg : segments) {
    auto words = split_words(seg);
    if (!words.empty() && words[0] != "cd") return seg;
  }
  return line;
}

bool looks_like_path(const std::string& word) {
  return !word.empty() && word[0] != '-' &&
         (word.find('/') != std::string::npos || word.find('.') != std::string::npos);
}

struct SweAction {
  ActionKind kind = ActionKind::kOther;
  std::optional<std::string> target;
};

SweAction map_swe_action(const std::string& action, std::optional<std::string>& open_file,
                         const std::string& root) {
  static const std::vector<std::string> kView = {"open", "goto", "scroll_up", "scroll_down",
                                                 "cat", "head", "tail", "less", "nl"};
  static const std::vector<std::string> kSearch = {"find_file", "search_dir", "search_file",
                                                   "grep", "find", "ls", "rg", "tree"};
  static const std::vector<std::string> kShell = {
      "python", "python3", "pytest", "py.test", "bash", "sh", "pip", "pip3", "git",
      "make", "tox", "nosetests", "conda", "echo", "mkdir", "rm", "mv", "cp",
      "export", "sed", "chmod", "touch", "node", "npm", "go", "cargo"};
  auto in = [](const std::vector<std::string>& v, const std::string& w) {
    return std::find(v.begin(), v.end(), w) != v.end();
  };

  const std::string line = main_segment(first_line(action));
  const auto words = split_words(line);
  SweAction out;
  if (words.empty()) return out;
  const std::string& head = words[0];
  auto arg_path = [&](std::size_t from) -> std::optional<std::string> {
    for (std::size_t i = from; i < words.size(); ++i) {
      if (looks_like_path(words[i])) return strip_root(words[i], root);
    }
    return std::nullopt;
  };

  if (head == "str_replace_editor" || head == "edit_anthropic") {
    const std::string sub = words.size() > 1 ? words[1] : "";
    out.target = words.size() > 2 ? std::optional(strip_root(words[2], root)) : std::nullopt;
    if (sub == "view") {
      out.kind = ActionKind::kFileView;
    } else if (sub == "create") {
      out.kind = ActionKind::kFileCreate;
    } else if (sub == "str_replace" || sub == "insert" || sub == "undo_edit") {
      out.kind = ActionKind::kFileEdit;
    }
    if (out.target) open_file = out.target;
    return out;
  }
  if (head == "open" || head == "create") {
    out.kind = head == "open" ? ActionKind::kFileView : ActionKind::kFileCreate;
    out.target = arg_path(1);
    if (!out.target && words.size() > 1) out.target = strip_root(words[1], root);
    if (out.target) open_file = out.target;
    return out;
  }
  if (head == "edit" || head == "append" || head == "insert") {
    out.kind = ActionKind::kFileEdit;
    out.target = open_file;
    return out;
  }
  if (head == "goto" || head == "scroll_up" || head == "scroll_down") {
    out.kind = ActionKind::kFileView;
    out.target = open_file;
    return out;
  }
  if (in(kView, head)) {
    out.kind = ActionKind::kFileView;
    out.target = arg_path(1);
    return out;
  }
  if (in(kSearch, head)) {
    out.kind = ActionKind::kFileSearch;
    out.target = head == "search_file" && words.size() < 3 ? open_file : arg_path(2);
    return out;
  }
  if (in(kShell, head) || head.starts_with("./") || head.ends_with(".py") ||
      head.ends_with(".sh")) {
    out.kind = ActionKind::kShellExec;
    out.target = head.ends_with(".py") || head.ends_with(".sh")
                     ? std::optional(strip_root(head, root))
                     : arg_path(1);
    return out;
  }
  if (head == "submit") {
    out.kind = ActionKind::kSubmit;
    return out;
  }
  return out;
}

bool observation_is_error(const json& entry, const std::string& observation) {
  if (auto it = entry.find("is_error"); it != entry.end() && it->is_boolean()) {
    return it->get<bool>();
  }
  static const std::vector<std::string> kMarkers = {
      "command not found", "Your proposed edit has introduced new syntax error",
      "No such file or directory", "Usage: "};
  if (observation.starts_with("Error")) return true;
  return std::any_of(kMarkers.begin(), kMarkers.end(), [&](const std::string& m) {
    return observation.find(m) != std::string::npos;
  });
}

std::string json_string_or(const json& obj, const char* key, std::string fallback) {
  if (!obj.is_object()) return fallback;
  auto it = obj.find(key);
  if (it != obj.end() && it->is_string() && !it->get<std::string>().empty()) {
    return it->get<std::string>();
  }
  return fallback;
}

std::string swe_model_name(const json& dump) {
  std::string name = json_string_or(dump, "model_name", "");
  if (!name.empty()) return name;
  if (auto info = dump.find("info"); info != dump.end()) {
    name = json_string_or(*info, "model_name", "");
    if (!name.empty()) return name;
  }
  if (auto rc = dump.find("replay_config"); rc != dump.end()) {
    json cfg = *rc;
    if (cfg.is_string()) cfg = json::parse(cfg.get<std::string>(), nullptr, false);
    if (cfg.is_object()) {
      const json* node = &cfg;
      for (const char* key : {"agent", "model"}) {
        if (!node->contains(key)) {
          node = nullptr;
          break;
        }
        node = &(*node)[key];
      }
      if (node) {
        name = json_string_or(*node, "name", json_string_or(*node, "model_name", ""));
        if (!name.empty()) return name;
      }
    }
  }
  return "unknown";
}

std::vector<TrajectoryRecord> parse_swe_agent(std::string_view raw, const IngestOptions& options) {
  const std::string& source = options.source_name;
  json dump;
  try {
    dump = json::parse(raw);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, std::string("malformed swe-agent dump: ") + e.what());
  }
  if (!dump.is_object()) throw ParseError(source, 0, "swe-agent dump must be a JSON object");
  const json* entries = nullptr;
  if (auto it = dump.find("trajectory"); it != dump.end() && it->is_array()) entries = &*it;
  if (!entries) throw ParseError(source, 0, "swe-agent dump lacks a 'trajectory' array");

  const std::string stem = fs::path(source).stem().string();
  TrajectoryRecord t;
  t.instance_id = !options.instance_id.empty()
                      ? options.instance_id
                      : json_string_or(dump, "instance_id", stem);
  t.trajectory_id = !options.trajectory_id.empty()
                        ? options.trajectory_id
                        : json_string_or(dump, "trajectory_id", stem);
  t.model_name = !options.model_name.empty() ? options.model_name : swe_model_name(dump);
  t.plan_setting_name = !options.plan_setting_name.empty()
                            ? options.plan_setting_name
                            : json_string_or(dump, "plan_setting_name", "unknown");
  t.difficulty = parse_difficulty(json_string_or(dump, "difficulty", "unknown"));
  if (auto it = dump.find("resolved"); it != dump.end() && it->is_boolean()) {
    t.resolved = it->get<bool>();
  } else if (auto info = dump.find("info"); info != dump.end() && info->is_object()) {
    if (auto r = info->find("resolved"); r != info->end() && r->is_boolean()) {
      t.resolved = r->get<bool>();
    }
  }

  std::optional<std::string> open_file;
  for (std::size_t i = 0; i < entries->size(); ++i) {
    const json& entry = (*entries)[i];
    if (!entry.is_object()) {
      throw ParseError(source, 0, "trajectory entry " + std::to_string(i + 1) + " is not an object");
    }
    StepRecord s;
    s.index = i + 1;
    const std::string action = json_string_or(entry, "action", "");
    const std::string observation = json_string_or(entry, "observation", "");
    std::string trimmed = action;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    if (trimmed.empty()) {
      s.action_kind = ActionKind::kMessage;
      s.command_text = json_string_or(entry, "response", json_string_or(entry, "thought", ""));
    } else {
      SweAction mapped = map_swe_action(trimmed, open_file, options.repo_root);
      s.action_kind = mapped.kind;
      s.target_path = mapped.target;
      s.command_text = action;
    }
    s.output_excerpt = truncate_utf8(observation, options.excerpt_budget);
    s.is_error = observation_is_error(entry, observation);
    t.steps.push_back(std::move(s));
  }
  // A submit that is not final (a failed submission) is kept as `other`.
  for (std::size_t i = 0; i + 1 < t.steps.size(); ++i) {
    if (t.steps[i].action_kind == ActionKind::kSubmit) t.steps[i].action_kind = ActionKind::kOther;
  }
  validate(t, source);
  return {std::move(t)};
}

}  // namespace

std::vector<TrajectoryRecord> parse_trajectories(std::string_view raw_log,
                                                 TrajectoryFormat format,
                                                 const IngestOptions& options) {
  return format == TrajectoryFormat::kCanonical ? parse_canonical(raw_log, options)
                                                : parse_swe_agent(raw_log, options);
}

TrajectoryRecord parse_trajectory(std::string_view raw_log, TrajectoryFormat format,
                                  const IngestOptions& options) {
  auto all = parse_trajectories(raw_log, format, options);
  if (all.size() != 1) {
    throw ParseError(options.source_name, 0,
                     "expected exactly one trajectory, found " + std::to_string(all.size()));
  }
  return std::move(all.front());
}

std::string to_canonical(const TrajectoryRecord& record) {
  std::string out;
  ordered_json header;
  header["record"] = "trajectory";
  header["trajectory_id"] = record.trajectory_id;
  header["instance_id"] = record.instance_id;
  header["model_name"] = record.model_name;
  header["plan_setting_name"] = record.plan_setting_name;
  header["difficulty"] = std::string(to_string(record.difficulty));
  header["resolved"] = record.resolved ? ordered_json(*record.resolved) : ordered_json(nullptr);
  out += header.dump(-1, ' ', false, json::error_handler_t::replace) + "\n";
  for (const StepRecord& s : record.steps) {
    ordered_json step;
    step["record"] = "step";
    step["index"] = s.index;
    step["action_kind"] = std::string(to_string(s.action_kind));
    step["target_path"] = s.target_path ? ordered_json(*s.target_path) : ordered_json(nullptr);
    step["command_text"] = s.command_text;
    step["output_excerpt"] = s.output_excerpt;
    step["is_error"] = s.is_error;
    out += step.dump(-1, ' ', false, json::error_handler_t::replace) + "\n";
  }
  return out;
}

std::string to_canonical(const Corpus& corpus) {
  std::string out;
  for (const auto& t : corpus.trajectories) out += to_canonical(t);
  return out;
}

std::vector<fs::path> expand_inputs(std::span<const fs::path> paths) {
  std::vector<fs::path> out;
  for (const fs::path& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> found;
      for (auto it = fs::recursive_directory_iterator(p, ec); !ec && it != fs::end(it);
           it.increment(ec)) {
        if (!it->is_regular_file()) continue;
        const auto ext = it->path().extension();
        if (ext == ".jsonl" || ext == ".ndjson" || ext == ".traj") found.push_back(it->path());
      }
      if (ec) throw IoError("cannot list directory " + p.string() + ": " + ec.message());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<TrajectoryRecord> read_trajectory_file(const fs::path& path,
                                                   TrajectoryFormat format,
                                                   IngestOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  options.source_name = path.string();
  return parse_trajectories(buf.str(), format, options);
}

namespace {

struct FileResult {
  std::vector<TrajectoryRecord> records;
  std::string error;
  bool ok = false;
};

Corpus merge_results(std::span<const fs::path> files, std::vector<FileResult>& results,
                     std::vector<LoadFailure>* failures) {
  Corpus corpus;
  std::map<std::string, std::string> seen;  // id -> source
  std::string provenance;
  std::size_t loaded_files = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    FileResult& r = results[i];
    if (!r.ok) {
      if (failures) failures->push_back({files[i], r.error});
      continue;
    }
    ++loaded_files;
    for (auto& t : r.records) {
      auto [it, inserted] = seen.emplace(t.trajectory_id, files[i].string());
      if (!inserted) throw DuplicateIdError(t.trajectory_id, it->second, files[i].string());
      corpus.trajectories.push_back(std::move(t));
    }
  }
  std::sort(corpus.trajectories.begin(), corpus.trajectories.end(),
            [](const TrajectoryRecord& a, const TrajectoryRecord& b) {
              return a.trajectory_id < b.trajectory_id;
            });
  corpus.provenance = std::to_string(corpus.trajectories.size()) + " trajectories from " +
                      std::to_string(loaded_files) + " file(s)";
  return corpus;
}

}  // namespace

Corpus load_corpus(std::span<const fs::path> paths, TrajectoryFormat format,
                   const IngestOptions& options, unsigned jobs) {
  const auto files = expand_inputs(paths);
  auto results = parallel_map(files.size(), jobs, [&](std::size_t i) {
    FileResult r;
    r.records = read_trajectory_file(files[i], format, options);
    r.ok = true;
    return r;
  });
  return merge_results(files, results, nullptr);
}

LoadReport load_corpus_lenient(std::span<const fs::path> paths, TrajectoryFormat format,
                               const IngestOptions& options, unsigned jobs) {
  const auto files = expand_inputs(paths);
  auto results = parallel_map(files.size(), jobs, [&](std::size_t i) {
    FileResult r;
    try {
      r.records = read_trajectory_file(files[i], format, options);
      r.ok = true;
    } catch (const Error& e) {
      r.error = e.what();
    }
    return r;
  });
  LoadReport report;
  report.corpus = merge_results(files, results, &report.failures);
  return report;
}

}  // namespace plantrace
