#include <fstream>
#include <sstream>

#include "commands.h"
#include "doctest.h"
#include "fixtures.h"
#include "plantrace/ingest.h"
#include "plantrace/phase_flow.h"
#include "plantrace/scores_io.h"
#include "synthetic.h"

using namespace plantrace;
using testsupport::TempDir;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "plantrace");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), {out, err});
  return {status, out.str(), err.str()};
}

std::vector<std::string> csv_row(const std::string& csv, const std::string& prefix) {
  std::istringstream lines(csv);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind(prefix, 0) != 0) continue;
    std::vector<std::string> cells;
    std::istringstream cs(line);
    for (std::string cell; std::getline(cs, cell, ',');) cells.push_back(cell);
    return cells;
  }
  return {};
}

std::size_t column(const std::string& csv, const std::string& name) {
  const auto header = csv_row(csv, "model,");
  return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
}

}  // namespace

TEST_CASE("score over the three worked examples") {
  TempDir out("cli-score");
  const auto r = run_cli({"score", testsupport::data_dir().string(), "--out", out.path().string()});
  REQUIRE(r.status == 0);
  const auto summary = read_text_file(out / "summary.csv");
  const auto row = csv_row(summary, "*,*,*,");
  REQUIRE(!row.empty());
  CHECK(row[3] == "3");
  CHECK(std::stod(row[column(summary, "ppc_mean")]) == doctest::Approx((1 + 1 + 0.5) / 3.0));
  const auto records = read_scores_file(out / "scores.jsonl");
  REQUIRE(records.size() == 3);
  CHECK(records[0].trajectory_id == "fig1a");
  CHECK(read_text_file(out / "failures.txt").empty());
}

TEST_CASE("score on an empty directory succeeds with a warning") {
  TempDir in("cli-empty"), out("cli-empty-out");
  const auto r = run_cli({"score", in.path().string(), "--out", out.path().string()});
  CHECK(r.status == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(read_text_file(out / "scores.jsonl").empty());
}

TEST_CASE("one unreadable file among three") {
  TempDir in("cli-bad"), out("cli-bad-out");
  std::filesystem::copy_file(testsupport::data_dir() / "fig1a.jsonl", in / "a.jsonl");
  std::filesystem::copy_file(testsupport::data_dir() / "fig1b.jsonl", in / "b.jsonl");
  std::ofstream(in / "c.jsonl") << "\x01\x02 this is not a trajectory\n";
  const auto r = run_cli({"score", in.path().string(), "--out", out.path().string()});
  CHECK(r.status == 0);
  CHECK(read_scores_file(out / "scores.jsonl").size() == 2);
  const auto failures = read_text_file(out / "failures.txt");
  CHECK(failures.find("c.jsonl") != std::string::npos);
  CHECK(r.err.find("c.jsonl") != std::string::npos);

  std::filesystem::remove(in / "a.jsonl");
  std::filesystem::remove(in / "b.jsonl");
  CHECK(run_cli({"score", in.path().string(), "--out", out.path().string()}).status == 1);
}

TEST_CASE("flow stratified by resolution sums to the whole") {
  TempDir in("cli-flow"), out("cli-flow-out");
  std::ofstream(in / "corpus.jsonl") << to_canonical(testsupport::synthetic_corpus(80, 77));
  REQUIRE(run_cli({"flow", in.path().string(), "--out", out.path().string(), "--by", "resolved"})
              .status == 0);
  const auto whole = flow_from_json(read_text_file(out / "flow.json"));
  FlowTable sum;
  sum.max_stages = whole.max_stages;
  for (const char* value : {"resolved", "unresolved", "unknown"}) {
    const auto p = out / ("flow_resolved_" + std::string(value) + ".json");
    REQUIRE(std::filesystem::exists(p));
    sum = merge_flows(sum, flow_from_json(read_text_file(p)));
  }
  CHECK(sum == whole);
  CHECK(std::filesystem::exists(out / "flow.svg"));
}

TEST_CASE("flow with a short horizon") {
  TempDir out("cli-horizon");
  const auto r = run_cli({"flow", (testsupport::data_dir() / "fig1a.jsonl").string(), "--stages",
                          "2", "--out", out.path().string()});
  REQUIRE(r.status == 0);
  const auto t = flow_from_json(read_text_file(out / "flow.json"));
  CHECK(t.max_stages == 2);
  CHECK(t.flows.size() == 2);
  const auto& sink = t.flows.at(FlowKey{2, PhaseLetter::R, std::nullopt});
  CHECK(sink.count == 1);
  CHECK(sink.truncated == 1);
}

TEST_CASE("graph export") {
  TempDir out("cli-graph");
  REQUIRE(run_cli({"graph", testsupport::data_dir().string(), "--out", out.path().string()})
              .status == 0);
  CHECK(std::filesystem::exists(out / "graphs" / "fig1a.dot"));
  CHECK(read_text_file(out / "graph_stats.csv").find("fig1a,9,6,7,3") != std::string::npos);
}

TEST_CASE("variants") {
  TempDir dir("cli-variants");
  std::ofstream(dir / "base.txt") << "Intro\n{{PLAN}}\nEnd\n";
  const auto list = run_cli({"variants", "list"});
  CHECK(list.status == 0);
  CHECK(list.out.find("<RG,N,R,P,V,VG>") != std::string::npos);
  const auto none = run_cli({"variants", "emit", "--setting", "no_plan", "--base", (dir / "base.txt").string()});
  CHECK(none.out == "Intro\nEnd\n");
  const auto sched = run_cli({"variants", "schedule", "--length", "12"});
  CHECK(sched.out.find("\"positions\": [\n    5,\n    10\n  ]") != std::string::npos);
  CHECK(run_cli({"variants", "emit", "--setting", "bogus", "--base", (dir / "base.txt").string()})
            .status == 1);
}

TEST_CASE("compare, intersect and report") {
  TempDir in("cli-rep"), out("cli-rep-out");
  std::ofstream(in / "corpus.jsonl") << to_canonical(testsupport::synthetic_corpus(40, 5));
  REQUIRE(run_cli({"score", in.path().string(), "--out", out.path().string()}).status == 0);
  const auto scores = (out / "scores.jsonl").string();

  REQUIRE(run_cli({"compare", "--a", scores, "--split", "resolved", "--label", "pc_by_outcome",
                   "--out", out.path().string()})
              .status == 0);
  REQUIRE(run_cli({"compare", "--a", scores, "--b", scores, "--test", "mcnemar", "--label", "self",
                   "--out", out.path().string()})
              .status == 0);
  REQUIRE(run_cli({"compare", "--a", scores, "--test", "pearson", "--label", "pc_nc", "--out",
                   out.path().string()})
              .status == 0);
  REQUIRE(run_cli({"intersect", "--settings", scores, "--out", out.path().string()}).status == 0);

  const auto bare = run_cli({"report", "--scores", scores, "--out", (out / "r0").string()});
  REQUIRE(bare.status == 0);
  CHECK(bare.out.find("section omitted") != std::string::npos);

  const std::vector<std::string> args = {
      "report", "--scores", scores, "--stats", (out / "compare_pc_by_outcome.json").string(),
      "--stats", (out / "compare_self.json").string(), "--stats",
      (out / "compare_pc_nc.json").string(), "--stats", (out / "intersection.csv").string()};
  auto first = args, second = args;
  first.insert(first.end(), {"--out", (out / "r1").string()});
  second.insert(second.end(), {"--out", (out / "r2").string()});
  REQUIRE(run_cli(first).status == 0);
  REQUIRE(run_cli(second).status == 0);
  const auto txt = read_text_file(out / "r1" / "report.txt");
  CHECK(txt == read_text_file(out / "r2" / "report.txt"));
  CHECK(read_text_file(out / "r1" / "report.csv") == read_text_file(out / "r2" / "report.csv"));
  CHECK(txt.find("section omitted") == std::string::npos);
  CHECK(txt.find("mcnemar") != std::string::npos);

  CHECK(run_cli({"report", "--scores", (out / "missing.jsonl").string(), "--out", out.path().string()})
            .status == 1);
}

TEST_CASE("bad invocations") {
  CHECK(run_cli({}).status != 0);
  CHECK(run_cli({"score", "--jobs", "0"}).status != 0);
  CHECK(run_cli({"score", "--plan", "nonexistent_plan"}).status == 1);
}
