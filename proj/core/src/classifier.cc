#include "plantrace/classifier.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "plantrace/error.h"
#include "plantrace/glob.h"

namespace plantrace {

using json = nlohmann::json;

void StepPredicate::compile() {
  if (!command_regex) return;
  try {
    compiled = std::make_shared<const std::regex>(*command_regex, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw InvalidArgument("bad command_regex '" + *command_regex + "': " + e.what());
  }
}

bool StepPredicate::matches(const StepRecord& step) const {
  if (action_kind && step.action_kind != *action_kind) return false;
  if (is_error && step.is_error != *is_error) return false;
  if (path_glob && (!step.target_path || !path_matches(*path_glob, *step.target_path))) {
    return false;
  }
  if (command_regex) {
    if (compiled) return std::regex_search(step.command_text, *compiled);
    return std::regex_search(step.command_text, std::regex(*command_regex));
  }
  return true;
}

bool ClassifierConfig::is_test_path(const std::string& path) const {
  return std::any_of(test_path_patterns.begin(), test_path_patterns.end(),
                     [&](const std::string& p) { return path_matches(p, path); });
}

ClassifierConfig default_classifier_config() { return ClassifierConfig{}; }

namespace {

std::vector<std::string> string_list(const json& obj, const char* key,
                                     std::vector<std::string> fallback, const std::string& source) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_array()) throw ParseError(source, 0, std::string(key) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) throw ParseError(source, 0, std::string(key) + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string> shell_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '\'' || c == '"' || c == '(' ||
        c == ')') {
      if (!current.empty()) words.push_back(std::move(current)), current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

// Splits a command line on &&, ||, | and ; into word lists.
std::vector<std::vector<std::string>> command_segments(std::string_view text) {
  std::vector<std::vector<std::string>> segments;
  std::vector<std::string> current;
  for (auto& w : shell_words(text)) {
    if (w == "&&" || w == "||" || w == "|" || w == ";") {
      if (!current.empty()) segments.push_back(std::move(current)), current.clear();
      continue;
    }
    bool trailing_semicolon = w.size() > 1 && w.back() == ';';
    if (trailing_semicolon) w.pop_back();
    current.push_back(std::move(w));
    if (trailing_semicolon) segments.push_back(std::move(current)), current.clear();
  }
  if (!current.empty()) segments.push_back(std::move(current));
  return segments;
}

std::string clean_token(std::string token) {
  if (auto pos = token.find("::"); pos != std::string::npos) token.erase(pos);
  return normalize_path(token);
}

bool same_file(const std::string& a, const std::string& b) {
  if (a.empty() || b.empty()) return false;
  if (a == b) return true;
  auto suffix_of = [](const std::string& longer, const std::string& shorter) {
    return longer.size() > shorter.size() && longer.ends_with(shorter) &&
           longer[longer.size() - shorter.size() - 1] == '/';
  };
  return suffix_of(a, b) || suffix_of(b, a);
}

bool is_created(const ClassificationContext& context, const std::string& path) {
  if (context.created_files.contains(path)) return true;
  return std::any_of(context.created_files.begin(), context.created_files.end(),
                     [&](const std::string& created) { return same_file(created, path); });
}

std::string basename_of(const std::string& path) {
  auto slash = path.rfind('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

enum class TestRun { kNone, kAgentCreated, kExisting };

TestRun classify_test_run(const StepRecord& step, const ClassificationContext& context,
                          const ClassifierConfig& config) {
  std::vector<std::string> candidates;
  if (step.target_path) candidates.push_back(normalize_path(*step.target_path));
  bool runner = false;
  for (const auto& seg : command_segments(step.command_text)) {
    std::size_t head_at = 0;
    while (head_at < seg.size() && seg[head_at].find('=') != std::string::npos &&
           seg[head_at][0] != '-') {
      ++head_at;  // skip VAR=value prefixes
    }
    if (head_at >= seg.size()) continue;
    std::string head = basename_of(seg[head_at]);
    std::size_t arg_at = head_at + 1;
    if (head.starts_with("python") && arg_at + 1 < seg.size() && seg[arg_at] == "-m") {
      head = seg[arg_at + 1];
      arg_at += 2;
    }
    if (std::find(config.test_runner_heads.begin(), config.test_runner_heads.end(),
                  lowercase(head)) != config.test_runner_heads.end()) {
      runner = true;
    }
    for (std::size_t i = head_at; i < seg.size(); ++i) {
      if (!seg[i].empty() && seg[i][0] != '-') candidates.push_back(clean_token(seg[i]));
    }
  }

  bool existing_test = false;
  for (const auto& c : candidates) {
    if (c.empty()) continue;
    const bool created = is_created(context, c);
    if (created && config.is_test_path(c)) return TestRun::kAgentCreated;
    if (!created && config.is_test_path(c) &&
        (c.ends_with(".py") || c.find('/') != std::string::npos || runner)) {
      existing_test = true;
    }
  }
  if (runner || existing_test) return TestRun::kExisting;
  return TestRun::kNone;
}

bool has_summary_marker(const StepRecord& step, const ClassifierConfig& config) {
  const std::string text = lowercase(step.command_text);
  return std::any_of(config.summary_markers.begin(), config.summary_markers.end(),
                     [&](const std::string& m) { return !m.empty() && text.find(lowercase(m)) != std::string::npos; });
}

}  // namespace

ClassifierConfig parse_classifier_config(const std::string& json_text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, std::string("malformed classifier config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError(source, 0, "classifier config must be a JSON object");
  ClassifierConfig defaults;
  ClassifierConfig cfg;
  cfg.test_path_patterns = string_list(doc, "test_path_patterns", defaults.test_path_patterns, source);
  cfg.summary_markers = string_list(doc, "summary_markers", defaults.summary_markers, source);
  cfg.test_runner_heads = string_list(doc, "test_runner_heads", defaults.test_runner_heads, source);
  if (auto it = doc.find("rule_overrides"); it != doc.end()) {
    if (!it->is_array()) throw ParseError(source, 0, "rule_overrides must be an array");
    std::size_t n = 0;
    for (const auto& r : *it) {
      ++n;
      const std::string where = "rule_overrides[" + std::to_string(n - 1) + "]";
      if (!r.is_object() || !r.contains("letter") || !r["letter"].is_string()) {
        throw ParseError(source, 0, where + " needs a string 'letter'");
      }
      ClassificationRule rule;
      auto letter = parse_phase_letter(r["letter"].get<std::string>());
      if (!letter) throw ParseError(source, 0, where + ": unknown letter");
      rule.letter = *letter;
      if (auto w = r.find("when"); w != r.end()) {
        if (!w->is_object()) throw ParseError(source, 0, where + ".when must be an object");
        if (w->contains("action_kind")) {
          auto kind = try_parse_action_kind((*w)["action_kind"].get<std::string>());
          if (!kind) throw ParseError(source, 0, where + ": unknown action_kind");
          rule.when.action_kind = kind;
        }
        if (w->contains("path_glob")) rule.when.path_glob = (*w)["path_glob"].get<std::string>();
        if (w->contains("command_regex")) rule.when.command_regex = (*w)["command_regex"].get<std::string>();
        if (w->contains("is_error")) rule.when.is_error = (*w)["is_error"].get<bool>();
      }
      try {
        rule.when.compile();
      } catch (const InvalidArgument& e) {
        throw ParseError(source, 0, where + ": " + e.what());
      }
      cfg.rule_overrides.push_back(std::move(rule));
    }
  }
  for (auto& head : cfg.test_runner_heads) head = lowercase(head);
  return cfg;
}

ClassifierConfig load_classifier_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read classifier config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_classifier_config(buf.str(), path.string());
}

void ClassificationContext::observe(const StepRecord& step, PhaseLetter letter) {
  if (letter == PhaseLetter::P) application_edited = true;
  if (step.action_kind == ActionKind::kFileCreate || step.action_kind == ActionKind::kFileEdit) {
    any_edit = true;
  }
  if (step.action_kind == ActionKind::kFileCreate && step.target_path) {
    created_files.insert(normalize_path(*step.target_path));
  }
}

PhaseLetter classify_step(const StepRecord& step, const ClassificationContext& context,
                          const ClassifierConfig& config) {
  for (const auto& rule : config.rule_overrides) {
    if (rule.when.matches(step)) return rule.letter;
  }
  const PhaseLetter before_after_reproduce =
      context.application_edited ? PhaseLetter::V : PhaseLetter::R;

  switch (step.action_kind) {
    case ActionKind::kFileView:
    case ActionKind::kFileSearch:
      return PhaseLetter::N;

    case ActionKind::kFileCreate:
    case ActionKind::kFileEdit: {
      if (!step.target_path) return PhaseLetter::P;
      const std::string path = normalize_path(*step.target_path);
      if (!config.is_test_path(path)) return PhaseLetter::P;
      const bool created = step.action_kind == ActionKind::kFileCreate || is_created(context, path);
      // Editing a test file the repository already had is not a plan phase.
      return created ? before_after_reproduce : PhaseLetter::O;
    }

    case ActionKind::kShellExec:
      switch (classify_test_run(step, context, config)) {
        case TestRun::kAgentCreated:
          return before_after_reproduce;
        case TestRun::kExisting:
          return context.application_edited ? PhaseLetter::VG : PhaseLetter::RG;
        case TestRun::kNone:
          return PhaseLetter::O;
      }
      return PhaseLetter::O;

    case ActionKind::kMessage:
      return context.any_edit && has_summary_marker(step, config) ? PhaseLetter::S : PhaseLetter::O;

    case ActionKind::kSubmit:
    case ActionKind::kOther:
      return PhaseLetter::O;
  }
  return PhaseLetter::O;
}

std::vector<ClassifiedStep> classify_trajectory(const TrajectoryRecord& trajectory,
                                                const ClassifierConfig& config) {
  std::vector<ClassifiedStep> out;
  out.reserve(trajectory.steps.size());
  ClassificationContext context;
  for (const StepRecord& step : trajectory.steps) {
    const PhaseLetter letter = classify_step(step, context, config);
    out.push_back({step.index, letter});
    context.observe(step, letter);
  }
  return out;
}

}  // namespace plantrace
