#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "plantrace/classifier.h"
#include "plantrace/error.h"
#include "synthetic.h"

using namespace plantrace;
using testsupport::make_step;
using testsupport::make_trajectory;
using L = PhaseLetter;

namespace {

std::vector<PhaseLetter> letters_of(const TrajectoryRecord& t, const ClassifierConfig& cfg = {}) {
  std::vector<PhaseLetter> out;
  for (const auto& c : classify_trajectory(t, cfg)) out.push_back(c.letter);
  return out;
}

}  // namespace

TEST_CASE("navigation is N with no prior patch") {
  ClassificationContext ctx;
  CHECK(classify_step(make_step(1, ActionKind::kFileView, "src/nanops.py"), ctx) == L::N);
  CHECK(classify_step(make_step(1, ActionKind::kFileSearch, std::nullopt, "find_file x"), ctx) ==
        L::N);
}

TEST_CASE("running an agent-created reproduction script before any patch is R") {
  ClassificationContext ctx;
  const auto create = make_step(1, ActionKind::kFileCreate, "reproduce.py");
  ctx.observe(create, classify_step(create, ctx));
  CHECK(classify_step(make_step(2, ActionKind::kShellExec, "reproduce.py", "python reproduce.py"),
                      ctx) == L::R);
}

TEST_CASE("worked example a: N,R,R,P,V,V,V,P,V") {
  const auto t = testsupport::load_fixture("fig1a");
  CHECK(letters_of(t) == std::vector{L::N, L::R, L::R, L::P, L::V, L::V, L::V, L::P, L::V});
}

TEST_CASE("worked example b and c letters") {
  CHECK(letters_of(testsupport::load_fixture("fig1b")) ==
        std::vector{L::R, L::R, L::R, L::R, L::N, L::N, L::N, L::P, L::P, L::V, L::O});
  CHECK(letters_of(testsupport::load_fixture("fig1c")) ==
        std::vector{L::N, L::N, L::N, L::P, L::O});
}

TEST_CASE("pre-existing test suite after a patch is VG, before is RG") {
  // Hand-applied rulebook: view -> N; edit app -> P; pytest (repo suite) after
  // the first P -> VG; submit -> O.
  const auto t = make_trajectory(
      "vg", {make_step(1, ActionKind::kFileView, "pkg/core.py"),
             make_step(2, ActionKind::kFileEdit, "pkg/core.py", "edit 3:4"),
             make_step(3, ActionKind::kShellExec, std::nullopt, "pytest tests/test_core.py"),
             make_step(4, ActionKind::kSubmit, std::nullopt, "submit")});
  CHECK(letters_of(t) == std::vector{L::N, L::P, L::VG, L::O});

  const auto before = make_trajectory(
      "rg", {make_step(1, ActionKind::kShellExec, "tests/test_core.py", "python -m pytest tests/test_core.py"),
             make_step(2, ActionKind::kFileEdit, "pkg/core.py")});
  CHECK(letters_of(before) == std::vector{L::RG, L::P});
}

TEST_CASE("only navigation gives all N") {
  std::vector<StepRecord> steps;
  for (std::size_t i = 1; i <= 6; ++i) steps.push_back(make_step(i, ActionKind::kFileView, "a.py"));
  CHECK(letters_of(make_trajectory("n", steps)) == std::vector<L>(6, L::N));
}

TEST_CASE("agent-created test executed after the first patch is validation") {
  const auto t = make_trajectory(
      "npv", {make_step(1, ActionKind::kFileView, "pkg/core.py"),
              make_step(2, ActionKind::kFileEdit, "pkg/core.py"),
              make_step(3, ActionKind::kFileCreate, "test_fix.py"),
              make_step(4, ActionKind::kShellExec, "test_fix.py", "python test_fix.py")});
  CHECK(letters_of(t) == std::vector{L::N, L::P, L::V, L::V});
}

TEST_CASE("edge cases of the rulebook") {
  SUBCASE("editing a test file the repository already had is O") {
    const auto t = make_trajectory("o", {make_step(1, ActionKind::kFileEdit, "tests/test_io.py")});
    CHECK(letters_of(t) == std::vector{L::O});
  }
  SUBCASE("edit without a path is a patch") {
    const auto t = make_trajectory("p", {make_step(1, ActionKind::kFileEdit, std::nullopt)});
    CHECK(letters_of(t) == std::vector{L::P});
  }
  SUBCASE("summary message after an edit is S, before any edit is O") {
    const auto t = make_trajectory(
        "s", {make_step(1, ActionKind::kMessage, std::nullopt, "Here is a summary of my plan"),
              make_step(2, ActionKind::kFileEdit, "pkg/a.py"),
              make_step(3, ActionKind::kMessage, std::nullopt, "## Summary\nFixed it.")});
    CHECK(letters_of(t) == std::vector{L::O, L::P, L::S});
  }
  SUBCASE("installs and unknown tools are O") {
    const auto t = make_trajectory(
        "env", {make_step(1, ActionKind::kShellExec, std::nullopt, "pip install -e ."),
                make_step(2, ActionKind::kOther, std::nullopt, "scroll_down")});
    CHECK(letters_of(t) == std::vector{L::O, L::O});
  }
}

TEST_CASE("overrides and configuration") {
  const auto cfg = parse_classifier_config(R"({
      "test_path_patterns": ["check_*.py"],
      "rule_overrides": [
        {"when": {"action_kind": "shell_exec", "command_regex": "^pip "}, "letter": "N"}
      ]})");
  const auto t = make_trajectory(
      "cfg", {make_step(1, ActionKind::kShellExec, std::nullopt, "pip install numpy"),
              make_step(2, ActionKind::kFileCreate, "check_bug.py"),
              make_step(3, ActionKind::kFileCreate, "reproduce.py")});
  CHECK(letters_of(t, cfg) == std::vector{L::N, L::R, L::P});
  CHECK_THROWS_AS((void)parse_classifier_config(
                      R"({"rule_overrides":[{"when":{"command_regex":"("},"letter":"N"}]})"),
                  Error);
  CHECK_THROWS_AS((void)parse_classifier_config(R"({"rule_overrides":[{"letter":"Q"}]})"), Error);
  CHECK_THROWS_AS((void)parse_classifier_config("[]"), Error);
}

TEST_CASE("temporal consistency on synthetic trajectories") {
  std::mt19937_64 rng(5);
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto t = testsupport::synthetic_trajectory(rng, i);
    const auto letters = letters_of(t);
    REQUIRE(letters.size() == t.steps.size());
    bool patched = false;
    for (L l : letters) {
      if (patched) {
        CHECK(l != L::R);
        CHECK(l != L::RG);
      } else {
        CHECK(l != L::V);
        CHECK(l != L::VG);
      }
      if (l == L::P) patched = true;
    }
    // Classification is a pure function of the trajectory.
    CHECK(letters_of(t) == letters);
  }
}
