#include "doctest.h"
#include "plantrace/error.h"
#include "plantrace/plan.h"
#include "plantrace/plan_variants.h"

using namespace plantrace;
using L = PhaseLetter;

namespace {

const std::string kBase = "You are a software engineer.\n{{PLAN}}\nSubmit when done.\n";

std::size_t pos_of(const std::string& text, L letter) {
  const auto ins = default_phase_instructions();
  return text.find(ins.blocks.at(letter));
}

}  // namespace

TEST_CASE("catalogue formulations") {
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"standard", "<N,R,P,V>"},     {"no_plan", "---"},
      {"no_reproduction", "<N,P,V>"}, {"no_validation", "<N,R,P>"},
      {"regression", "<RG,N,R,P,V,VG>"}, {"summary", "<N,R,P,V,S>"},
      {"reordered", "<N,P,R,V>"},    {"reminded", "<N,R,P,V>"}};
  const auto& cat = plan_catalogue();
  REQUIRE(cat.size() == expected.size());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(cat[i].name() == expected[i].first);
    CHECK(cat[i].formulation() == expected[i].second);
  }
  CHECK(find_setting("reminded").reminded);
  CHECK_FALSE(find_setting("standard").reminded);
  CHECK_FALSE(find_setting("no_plan").spec);
  CHECK(find_setting("reordered").variation_kind == VariationKind::kReordering);
  CHECK_THROWS_AS((void)find_setting("nope"), InvalidArgument);
}

TEST_CASE("plan spec validation") {
  CHECK_THROWS_AS(PlanSpec("dup", {L::N, L::N}), InvalidArgument);
  CHECK_THROWS_AS(PlanSpec("o", {L::O}), InvalidArgument);
  const auto p = parse_plan_spec(R"({"name":"mine","sequence":["P","V"]})");
  CHECK(p.formulation() == "<P,V>");
  CHECK_THROWS_AS((void)parse_plan_spec(R"({"name":"bad","sequence":["Q"]})"), Error);
  CHECK_THROWS_AS((void)resolve_plan("/definitely/not/a/plan.json"), Error);
}

TEST_CASE("standard prompt lists N,R,P,V in order") {
  const auto text = render_prompt(find_setting("standard"), kBase);
  CHECK(text.find("{{PLAN}}") == std::string::npos);
  CHECK(text.find("1. ") != std::string::npos);
  CHECK(text.find("4. ") != std::string::npos);
  CHECK(text.find("5. ") == std::string::npos);
  CHECK(pos_of(text, L::N) < pos_of(text, L::R));
  CHECK(pos_of(text, L::R) < pos_of(text, L::P));
  CHECK(pos_of(text, L::P) < pos_of(text, L::V));
  CHECK(text.rfind("Submit when done.\n") == text.size() - 18);
}

TEST_CASE("no_plan removes the block and leaves the rest untouched") {
  CHECK(render_prompt(find_setting("no_plan"), kBase) ==
        "You are a software engineer.\nSubmit when done.\n");
}

TEST_CASE("reordered puts the patch before reproduction") {
  const auto text = render_prompt(find_setting("reordered"), kBase);
  CHECK(pos_of(text, L::P) < pos_of(text, L::R));
}

TEST_CASE("reduced and augmented variants") {
  const auto nr = render_prompt(find_setting("no_reproduction"), kBase);
  CHECK(pos_of(nr, L::R) == std::string::npos);
  const auto rg = render_prompt(find_setting("regression"), kBase);
  CHECK(pos_of(rg, L::RG) < pos_of(rg, L::N));
  CHECK(pos_of(rg, L::V) < pos_of(rg, L::VG));
}

TEST_CASE("marker errors") {
  CHECK_THROWS_AS((void)render_prompt(find_setting("standard"), "no marker"), InvalidArgument);
  CHECK_THROWS_AS((void)render_prompt(find_setting("standard"), "{{PLAN}} {{PLAN}}"),
                  InvalidArgument);
}

TEST_CASE("custom instructions layer over the defaults") {
  const auto ins = parse_phase_instructions(R"({"header":"Plan:","blocks":{"P":"Fix it."}})");
  const auto block = render_plan_block(find_setting("no_validation"), ins);
  CHECK(block.rfind("Plan:\n", 0) == 0);
  CHECK(block.find("3. Fix it.\n") != std::string::npos);
}

TEST_CASE("reminder schedule") {
  const ReminderSchedule every5(5);
  CHECK(reminder_positions(every5, 12) == std::vector<std::size_t>{5, 10});
  CHECK(reminder_positions(every5, 4).empty());
  CHECK(reminder_positions(every5, 25) == std::vector<std::size_t>{5, 10, 15, 20, 25});
  CHECK(default_reminder_schedule().period_steps() == 5);
  CHECK(default_reminder_schedule().reminder_text() ==
        render_plan_block(find_setting("standard")));
  CHECK_THROWS_AS(ReminderSchedule(0), InvalidArgument);
}
