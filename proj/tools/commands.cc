#include "commands.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "plantrace/aggregate.h"
#include "plantrace/classifier.h"
#include "plantrace/compliance.h"
#include "plantrace/error.h"
#include "plantrace/graphectory.h"
#include "plantrace/parallel.h"
#include "plantrace/plan_variants.h"
#include "plantrace/scores_io.h"
#include "plantrace/stats.h"

namespace plantrace::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

ClassifierConfig classifier_for(const RunConfig& cfg) {
  return cfg.classifier_config ? load_classifier_config(*cfg.classifier_config)
                               : default_classifier_config();
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() +
                  (ec ? ": " + ec.message() : ""));
  }
}

// Loads inputs tolerantly. Returns nullopt (after reporting) when inputs
// were given but none of them could be read.
std::optional<LoadReport> load_inputs(const RunConfig& cfg, Console io) {
  LoadReport report = load_corpus_lenient(cfg.inputs, cfg.format, {}, cfg.jobs);
  for (const auto& f : report.failures) {
    io.err << "warning: skipped " << f.path.string() << ": " << f.message << "\n";
  }
  if (report.corpus.empty() && !report.failures.empty()) {
    io.err << "error: none of the " << report.failures.size() << " input file(s) could be loaded\n";
    return std::nullopt;
  }
  if (report.corpus.empty()) io.err << "warning: no trajectories found in the given inputs\n";
  return report;
}

std::string failures_text(const std::vector<LoadFailure>& failures) {
  std::string out;
  for (const auto& f : failures) out += f.path.string() + "\t" + f.message + "\n";
  return out;
}

std::string sanitize(std::string text) {
  for (char& c : text) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
  }
  return text.empty() ? "_" : text;
}

std::string stratum_of(const TrajectoryRecord& t, const std::string& by) {
  if (by == "difficulty") return std::string(to_string(t.difficulty));
  if (by == "resolved") return !t.resolved ? "unknown" : (*t.resolved ? "resolved" : "unresolved");
  if (by == "model") return t.model_name;
  throw InvalidArgument("unknown stratification key '" + by + "' (difficulty, resolved, model)");
}

std::string summary_csv(const std::vector<ScoreRecord>& records) {
  const GroupField detailed[] = {GroupField::kModel, GroupField::kSetting, GroupField::kDifficulty};
  const GroupField overall[] = {GroupField::kModel, GroupField::kSetting};
  auto groups = group_scores(records, detailed);
  auto totals = group_scores(records, overall);
  auto everything = group_scores(records, std::span<const GroupField>{});
  groups.insert(groups.end(), totals.begin(), totals.end());
  groups.insert(groups.end(), everything.begin(), everything.end());
  std::sort(groups.begin(), groups.end(),
            [](const GroupedScores& a, const GroupedScores& b) { return a.key < b.key; });

  std::string out = "model,setting,difficulty,trajectories,scored";
  for (const char* m : kMetricNames) {
    for (const char* stat : {"mean", "median", "min", "max"}) out += std::string(",") + m + "_" + stat;
  }
  out += ",labelled,resolved,success_rate,mean_nc,mean_tec,mean_lc\n";
  for (const auto& g : groups) {
    out += g.key.model + "," + g.key.setting + "," + g.key.difficulty + "," +
           std::to_string(g.trajectories) + "," + std::to_string(g.values.size());
    for (const auto& s : g.summary) {
      if (s.count == 0) {
        out += ",,,,";
      } else {
        out += "," + format_double(s.mean) + "," + format_double(s.median) + "," +
               format_double(s.min) + "," + format_double(s.max);
      }
    }
    const auto rate = g.success_rate();
    out += "," + std::to_string(g.labelled) + "," + std::to_string(g.resolved) + "," +
           (rate ? format_double(*rate) : "") + "," + format_double(g.mean_nc) + "," +
           format_double(g.mean_tec) + "," + format_double(g.mean_lc) + "\n";
  }
  return out;
}

std::optional<double> metric_value(const ScoreRecord& r, const std::string& metric) {
  if (metric == "nc") return static_cast<double>(r.graph.nc);
  if (metric == "tec") return static_cast<double>(r.graph.tec);
  if (metric == "lc") return static_cast<double>(r.graph.lc);
  if (metric == "steps") return static_cast<double>(r.steps);
  if (metric != "ppc" && metric != "poc" && metric != "ppf" && metric != "pc") {
    throw InvalidArgument("unknown metric '" + metric + "' (ppc, poc, ppf, pc, nc, tec, lc, steps)");
  }
  if (!r.scores) return std::nullopt;
  if (metric == "ppc") return r.scores->ppc;
  if (metric == "poc") return r.scores->poc;
  if (metric == "ppf") return r.scores->ppf;
  return r.scores->pc;
}

std::vector<double> metric_column(const std::vector<ScoreRecord>& records, const std::string& metric) {
  std::vector<double> out;
  for (const auto& r : records) {
    if (auto v = metric_value(r, metric)) out.push_back(*v);
  }
  return out;
}

std::string setting_of(const std::vector<ScoreRecord>& records, const fs::path& path) {
  std::set<std::string> names;
  for (const auto& r : records) names.insert(r.plan_setting_name);
  if (names.size() == 1 && *names.begin() != "unknown") return *names.begin();
  return path.stem().string();
}

Outcomes outcomes_from_file(const fs::path& path) {
  const auto records = read_scores_file(path);
  return outcomes_of(records);
}

}  // namespace

int cmd_ingest(const RunConfig& cfg, Console io) {
  auto report = load_inputs(cfg, io);
  if (!report) return 1;
  ensure_dir(cfg.out);
  write_text_file(cfg.out / "corpus.jsonl", to_canonical(report->corpus));
  io.out << "ingested " << report->corpus.size() << " trajectories into "
         << (cfg.out / "corpus.jsonl").string() << " (" << report->failures.size()
         << " file(s) skipped)\n";
  return 0;
}

int cmd_score(const RunConfig& cfg, Console io) {
  const PlanSpec plan = resolve_plan(cfg.plan);
  const ClassifierConfig classifier = classifier_for(cfg);
  auto report = load_inputs(cfg, io);
  if (!report) return 1;
  const auto records = score_corpus(report->corpus, plan, classifier, cfg.jobs);

  ensure_dir(cfg.out);
  write_text_file(cfg.out / "scores.jsonl", scores_to_jsonl(records));
  write_text_file(cfg.out / "scores.csv", scores_to_csv(records));
  write_text_file(cfg.out / "summary.csv", summary_csv(records));
  write_text_file(cfg.out / "failures.txt", failures_text(report->failures));
  if (plan.empty()) {
    io.err << "note: plan '" << plan.name()
           << "' has no phases; compliance metrics are not applicable and left empty\n";
  }
  io.out << "scored " << records.size() << " trajectories against plan " << plan.name() << " "
         << plan.formulation() << "; " << report->failures.size() << " file(s) failed; wrote "
         << (cfg.out / "scores.jsonl").string() << "\n";
  return 0;
}

int cmd_flow(const RunConfig& cfg, Console io) {
  const PlanSpec plan = resolve_plan(cfg.plan);
  const ClassifierConfig classifier = classifier_for(cfg);
  if (cfg.stages == 0) throw InvalidArgument("--stages must be at least 1");
  for (const auto& key : cfg.by) (void)stratum_of(TrajectoryRecord{}, key);
  auto report = load_inputs(cfg, io);
  if (!report) return 1;
  const auto& trajectories = report->corpus.trajectories;
  const auto langs = parallel_map(trajectories.size(), cfg.jobs, [&](std::size_t i) {
    return scoring_langutory(trajectories[i], classifier);
  });

  ensure_dir(cfg.out);
  StyleConfig style = StyleConfig::for_plan(plan);
  const FlowTable flow = build_flow(langs, cfg.stages);
  emit_sankey(flow, style, cfg.out / "flow.json", cfg.out / "flow.svg");
  write_text_file(cfg.out / "flow.csv", flow_to_csv(flow));

  for (const auto& key : cfg.by) {
    std::vector<std::string> keys;
    keys.reserve(trajectories.size());
    for (const auto& t : trajectories) keys.push_back(stratum_of(t, key));
    for (const auto& [value, table] : build_stratified_flow(langs, keys, cfg.stages)) {
      const std::string stem = "flow_" + key + "_" + sanitize(value);
      StyleConfig s = style;
      s.title = style.title + " / " + key + "=" + value;
      emit_sankey(table, s, cfg.out / (stem + ".json"), cfg.out / (stem + ".svg"));
      write_text_file(cfg.out / (stem + ".csv"), flow_to_csv(table));
    }
  }
  io.out << "phase flow over " << flow.population << " trajectories, " << cfg.stages
         << " stage horizon; wrote " << (cfg.out / "flow.svg").string() << "\n";
  return 0;
}

int cmd_graph(const RunConfig& cfg, Console io) {
  auto report = load_inputs(cfg, io);
  if (!report) return 1;
  const auto& trajectories = report->corpus.trajectories;
  const auto graphs = parallel_map(trajectories.size(), cfg.jobs,
                                   [&](std::size_t i) { return build_graphectory(trajectories[i]); });
  ensure_dir(cfg.out / "graphs");
  std::string stats = "trajectory_id,steps,nc,tec,lc\n";
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const auto& t = trajectories[i];
    write_text_file(cfg.out / "graphs" / (sanitize(t.trajectory_id) + ".dot"),
                    to_dot(graphs[i], t.trajectory_id));
    const auto s = graphectory_stats(graphs[i]);
    stats += t.trajectory_id + "," + std::to_string(t.steps.size()) + "," + std::to_string(s.nc) +
             "," + std::to_string(s.tec) + "," + std::to_string(s.lc) + "\n";
  }
  write_text_file(cfg.out / "graph_stats.csv", stats);
  io.out << "wrote " << trajectories.size() << " graph(s) to " << (cfg.out / "graphs").string()
         << "\n";
  return 0;
}

int cmd_variants_list(Console io) {
  for (const auto& s : plan_settings()) {
    const std::string formulation = s.spec ? s.spec->formulation() : "---";
    io.out << s.name << "\t" << formulation << "\t" << to_string(s.variation_kind) << "\t"
           << s.description << "\n";
  }
  return 0;
}

int cmd_variants_emit(const EmitOptions& opts, Console io) {
  const PlanSetting& setting = find_setting(opts.setting);
  const PhaseInstructions instructions =
      opts.instructions ? load_phase_instructions(*opts.instructions) : default_phase_instructions();
  const std::string rendered = render_prompt(setting, read_text_file(opts.base), instructions);
  if (opts.output) {
    write_text_file(*opts.output, rendered);
    io.out << "wrote " << setting.name << " prompt to " << opts.output->string() << "\n";
  } else {
    io.out << rendered;
  }
  if (setting.reminded) {
    io.err << "note: setting '" << setting.name << "' re-injects the standard plan every "
           << kDefaultReminderPeriod << " steps; see `variants schedule`\n";
  }
  return 0;
}

int cmd_variants_schedule(std::size_t length, std::size_t period, Console io) {
  const ReminderSchedule schedule(period, default_reminder_schedule().reminder_text());
  ordered_json doc;
  doc["period_steps"] = schedule.period_steps();
  doc["trajectory_length"] = length;
  doc["positions"] = reminder_positions(schedule, length);
  doc["reminder_text"] = schedule.reminder_text();
  io.out << doc.dump(2) << "\n";
  return 0;
}

int cmd_compare(const CompareOptions& opts, const RunConfig& cfg, Console io) {
  const auto a = read_scores_file(opts.a);
  std::optional<std::vector<ScoreRecord>> b;
  if (opts.b) b = read_scores_file(*opts.b);

  ordered_json doc;
  doc["test"] = opts.test;
  doc["label"] = opts.label.empty() ? opts.test : opts.label;
  doc["a"] = opts.a.string();
  doc["b"] = opts.b ? ordered_json(opts.b->string()) : ordered_json(nullptr);

  if (opts.test == "mannwhitney") {
    std::vector<double> xs, ys;
    if (opts.split) {
      if (*opts.split != "resolved") throw InvalidArgument("--split supports only 'resolved'");
      for (const auto& r : a) {
        auto v = metric_value(r, opts.metric);
        if (!v || !r.resolved) continue;
        (*r.resolved ? xs : ys).push_back(*v);
      }
      doc["groups"] = {"resolved", "unresolved"};
    } else {
      if (!b) throw InvalidArgument("mannwhitney needs --b or --split resolved");
      xs = metric_column(a, opts.metric);
      ys = metric_column(*b, opts.metric);
    }
    const auto res = mann_whitney_u(xs, ys);
    doc["metric"] = opts.metric;
    doc["n_a"] = xs.size();
    doc["n_b"] = ys.size();
    doc["statistic"] = res.u;
    doc["u_b"] = res.u_b;
    doc["z"] = res.z;
    doc["p_value"] = res.p_value;
    doc["exact"] = res.exact;
  } else if (opts.test == "mcnemar") {
    if (!b) throw InvalidArgument("mcnemar needs --b");
    const Outcomes oa = outcomes_of(a);
    const Outcomes ob = outcomes_of(*b);
    std::vector<std::pair<bool, bool>> pairs;
    for (const auto& [id, label] : oa) {
      auto it = ob.find(id);
      if (label && it != ob.end() && it->second) pairs.emplace_back(*label, *it->second);
    }
    const auto res = mcnemar(pairs);
    doc["pairs"] = pairs.size();
    doc["b_count"] = res.b;
    doc["c_count"] = res.c;
    doc["statistic"] = res.statistic;
    doc["p_value"] = res.p_value;
    doc["exact"] = res.exact;
  } else if (opts.test == "pearson") {
    std::vector<double> xs, ys;
    for (const auto& r : a) {
      auto x = metric_value(r, opts.x);
      auto y = metric_value(r, opts.y);
      if (x && y) xs.push_back(*x), ys.push_back(*y);
    }
    doc["x"] = opts.x;
    doc["y"] = opts.y;
    doc["n"] = xs.size();
    doc["statistic"] = pearson_r(xs, ys);
  } else {
    throw InvalidArgument("unknown test '" + opts.test + "' (mannwhitney, mcnemar, pearson)");
  }

  const std::string text = doc.dump(2) + "\n";
  ensure_dir(cfg.out);
  const fs::path path = cfg.out / ("compare_" + sanitize(doc["label"].get<std::string>()) + ".json");
  write_text_file(path, text);
  io.out << text;
  return 0;
}

int cmd_intersect(const IntersectOptions& opts, const RunConfig& cfg, Console io) {
  if (opts.settings.empty()) throw InvalidArgument("intersect needs at least one --settings file");
  std::map<std::string, Outcomes> outcomes;
  for (const auto& path : opts.settings) {
    const auto records = read_scores_file(path);
    const std::string name = setting_of(records, path);
    if (!outcomes.emplace(name, outcomes_of(records)).second) {
      throw InvalidArgument("setting '" + name + "' given twice (" + path.string() + ")");
    }
  }
  if (!opts.deterministic.empty()) {
    std::vector<Outcomes> runs;
    for (const auto& p : opts.deterministic) runs.push_back(outcomes_from_file(p));
    const auto keep = deterministic_subset(runs);
    for (auto& [_, o] : outcomes) std::erase_if(o, [&](const auto& kv) { return !keep.contains(kv.first); });
    io.err << "note: restricted to " << keep.size() << " deterministic instance(s)\n";
  }
  const IntersectionTable table = intersection_table(outcomes);
  const std::string csv = intersection_to_csv(table);
  ensure_dir(cfg.out);
  write_text_file(cfg.out / "intersection.csv", csv);
  io.out << csv;
  for (const auto& s : table.settings) io.out << "# resolved under " << s << ": " << table.set_size(s) << "\n";
  io.out << "# unresolved under every setting: " << table.unresolved_everywhere << " of "
         << table.instances << "\n";
  return 0;
}

namespace {

std::string pad(const std::string& text, std::size_t width) {
  return text.size() >= width ? text + " " : text + std::string(width - text.size(), ' ');
}

std::string cell_2dp(const MetricSummary& s) { return s.count ? format_2dp(s.mean) : "-"; }

}  // namespace

int cmd_report(const ReportOptions& opts, const RunConfig& cfg, Console io) {
  std::error_code ec;
  if (!fs::is_regular_file(opts.scores, ec)) {
    throw IoError("missing input: score file " + opts.scores.string() +
                  " not found (run `plantrace score` first)");
  }
  for (const auto& p : opts.stats) {
    if (!fs::is_regular_file(p, ec)) throw IoError("missing input: stats file " + p.string() + " not found");
  }
  const auto records = read_scores_file(opts.scores);

  std::string txt = "Plan compliance report\n======================\n";
  std::string csv = "section,key,model,difficulty,n,ppc,poc,ppf,pc,success_rate,p_value\n";
  std::size_t scored = 0;
  for (const auto& r : records) scored += r.scores.has_value();
  txt += "scores: " + opts.scores.string() + " (" + std::to_string(records.size()) +
         " trajectories, " + std::to_string(scored) + " with a plan)\n\n";

  // Model x difficulty table, followed by per-model totals.
  const GroupField by_md[] = {GroupField::kModel, GroupField::kDifficulty};
  const GroupField by_m[] = {GroupField::kModel};
  auto groups = group_scores(records, by_md);
  auto totals = group_scores(records, by_m);
  for (auto& g : totals) g.key.difficulty = "all";
  groups.insert(groups.end(), totals.begin(), totals.end());
  std::stable_sort(groups.begin(), groups.end(), [](const GroupedScores& x, const GroupedScores& y) {
    return x.key.model < y.key.model;
  });

  txt += "Compliance by model x difficulty (means)\n";
  txt += pad("model", 24) + pad("difficulty", 11) + pad("n", 6) + pad("PPC", 6) + pad("POC", 6) +
         pad("PPF", 6) + pad("PC", 6) + "success\n";
  for (const auto& g : groups) {
    const auto rate = g.success_rate();
    txt += pad(g.key.model, 24) + pad(g.key.difficulty, 11) + pad(std::to_string(g.trajectories), 6) +
           pad(cell_2dp(g.summary[kPpc]), 6) + pad(cell_2dp(g.summary[kPoc]), 6) +
           pad(cell_2dp(g.summary[kPpf]), 6) + pad(cell_2dp(g.summary[kPc]), 6) +
           (rate ? format_2dp(*rate) : "-") + "\n";
    csv += "group,," + g.key.model + "," + g.key.difficulty + "," + std::to_string(g.trajectories) +
           "," + cell_2dp(g.summary[kPpc]) + "," + cell_2dp(g.summary[kPoc]) + "," +
           cell_2dp(g.summary[kPpf]) + "," + cell_2dp(g.summary[kPc]) + "," +
           (rate ? format_2dp(*rate) : "-") + ",\n";
  }

  txt += "\nPer-trajectory scores\n";
  txt += pad("trajectory", 28) + pad("langutory", 28) + pad("PPC", 6) + pad("POC", 6) + pad("PPF", 6) +
         "PC\n";
  for (const auto& r : records) {
    auto m = [&](double ComplianceScores::*field) {
      return r.scores ? format_2dp((*r.scores).*field) : std::string("-");
    };
    txt += pad(r.trajectory_id, 28) + pad(r.langutory, 28) + pad(m(&ComplianceScores::ppc), 6) +
           pad(m(&ComplianceScores::poc), 6) + pad(m(&ComplianceScores::ppf), 6) +
           m(&ComplianceScores::pc) + "\n";
    csv += "trajectory," + r.trajectory_id + "," + r.model_name + "," +
           std::string(to_string(r.difficulty)) + ",1," + m(&ComplianceScores::ppc) + "," +
           m(&ComplianceScores::poc) + "," + m(&ComplianceScores::ppf) + "," +
           m(&ComplianceScores::pc) + "," +
           (r.resolved ? (*r.resolved ? "1.00" : "0.00") : "-") + ",\n";
  }

  std::string intersections;
  std::string tests;
  for (const auto& p : opts.stats) {
    const std::string text = read_text_file(p);
    if (p.extension() == ".csv") {
      intersections += "(" + p.string() + ")\n" + text;
      continue;
    }
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(p.string(), 0, std::string("malformed compare result: ") + e.what());
    }
    const std::string label = doc.value("label", doc.value("test", "test"));
    std::string line = pad(label, 24) + pad(doc.value("test", "?"), 13);
    line += "stat=" + format_2dp(doc.value("statistic", 0.0));
    if (doc.contains("p_value")) line += "  p=" + format_double(doc["p_value"].get<double>());
    if (doc.contains("exact")) line += doc["exact"].get<bool>() ? "  (exact)" : "  (approx)";
    tests += line + "\n";
    csv += "test," + label + ",,,,,,,,," +
           (doc.contains("p_value") ? format_double(doc["p_value"].get<double>()) : "") + "\n";
  }
  txt += "\nResolved-instance intersections\n";
  txt += intersections.empty() ? "(no intersection table given; section omitted)\n" : intersections;
  txt += "\nStatistical tests\n";
  txt += tests.empty() ? "(no statistical test inputs given; section omitted)\n" : tests;

  ensure_dir(cfg.out);
  write_text_file(cfg.out / "report.txt", txt);
  write_text_file(cfg.out / "report.csv", csv);
  io.out << txt;
  return 0;
}

int run(int argc, const char* const* argv, Console io) {
  CLI::App app{"plantrace: plan compliance analytics for programming-agent trajectories",
               "plantrace"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "canonical";
  std::string classifier_path;
  app.add_option("--plan", cfg.plan, "Plan setting name or plan-spec JSON file")
      ->capture_default_str();
  app.add_option("--classifier-config", classifier_path, "Classifier config JSON");
  app.add_option("--out", cfg.out, "Output directory")->capture_default_str();
  app.add_option("--format", format, "Trajectory format: canonical | swe-agent")
      ->capture_default_str();
  app.add_option("--by", cfg.by, "Stratify flows by difficulty | resolved | model");
  app.add_option("--stages", cfg.stages, "Phase-flow stage horizon")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  auto* ingest = app.add_subcommand("ingest", "Convert trajectories to the canonical format");
  auto* score = app.add_subcommand("score", "Compute PPC, POC, PPF and PC per trajectory");
  auto* flow = app.add_subcommand("flow", "Aggregate phase flows and draw a Sankey diagram");
  auto* graph = app.add_subcommand("graph", "Export action graphs and NC/TEC/LC counts");
  for (auto* sub : {ingest, score, flow, graph}) {
    sub->add_option("inputs", cfg.inputs, "Trajectory files or directories");
  }

  auto* variants = app.add_subcommand("variants", "Plan-setting prompt variants");
  variants->require_subcommand(1);
  auto* v_list = variants->add_subcommand("list", "Print the plan-setting catalogue");
  EmitOptions emit;
  auto* v_emit = variants->add_subcommand("emit", "Render a setting's prompt from a base prompt");
  v_emit->add_option("--setting", emit.setting, "Setting name")->required();
  v_emit->add_option("--base", emit.base, "Base prompt containing {{PLAN}}")->required();
  v_emit->add_option("--instructions", emit.instructions, "Phase instruction overrides JSON");
  v_emit->add_option("-o,--output", emit.output, "Write the prompt here instead of stdout");
  std::size_t sched_length = 0;
  std::size_t sched_period = kDefaultReminderPeriod;
  auto* v_sched = variants->add_subcommand("schedule", "Reminder injection steps");
  v_sched->add_option("--length", sched_length, "Trajectory length in steps")->required();
  v_sched->add_option("--period", sched_period, "Steps between reminders")->capture_default_str();

  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "Statistical comparison of score files");
  compare->add_option("--a", cmp.a, "Score file (scores.jsonl)")->required();
  compare->add_option("--b", cmp.b, "Second score file");
  compare->add_option("--test", cmp.test, "mannwhitney | mcnemar | pearson")->capture_default_str();
  compare->add_option("--metric", cmp.metric, "Metric for mannwhitney")->capture_default_str();
  compare->add_option("--split", cmp.split, "Compare within --a by 'resolved'");
  compare->add_option("--x", cmp.x, "Pearson x metric")->capture_default_str();
  compare->add_option("--y", cmp.y, "Pearson y metric")->capture_default_str();
  compare->add_option("--label", cmp.label, "Name for the result file");

  IntersectOptions inter;
  auto* intersect = app.add_subcommand("intersect", "Resolved-instance set intersections");
  intersect->add_option("--settings", inter.settings, "One score file per plan setting")->required();
  intersect->add_option("--deterministic-runs", inter.deterministic,
                        "Repeated-run score files; keep only consistently labelled instances");

  ReportOptions rep;
  auto* report = app.add_subcommand("report", "Consolidated text and CSV report");
  report->add_option("--scores", rep.scores, "Score file from `score`")->required();
  report->add_option("--stats", rep.stats, "compare_*.json and intersection.csv files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, io.out, io.err);
  }

  try {
    cfg.format = parse_trajectory_format(format);
    if (!classifier_path.empty()) cfg.classifier_config = classifier_path;
    if (*ingest) return cmd_ingest(cfg, io);
    if (*score) return cmd_score(cfg, io);
    if (*flow) return cmd_flow(cfg, io);
    if (*graph) return cmd_graph(cfg, io);
    if (*v_list) return cmd_variants_list(io);
    if (*v_emit) return cmd_variants_emit(emit, io);
    if (*v_sched) return cmd_variants_schedule(sched_length, sched_period, io);
    if (*compare) return cmd_compare(cmp, cfg, io);
    if (*intersect) return cmd_intersect(inter, cfg, io);
    if (*report) return cmd_report(rep, cfg, io);
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace plantrace::cli
