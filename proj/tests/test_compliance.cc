#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "oracles.h"
#include "plantrace/compliance.h"
#include "plantrace/error.h"
#include "synthetic.h"

using namespace plantrace;
using L = PhaseLetter;

namespace {

constexpr double kTol = 1e-12;

Langutory lang_of(const std::vector<L>& letters) {
  std::vector<ClassifiedStep> steps;
  for (std::size_t i = 0; i < letters.size(); ++i) steps.push_back({i + 1, letters[i]});
  return build_langutory(steps);
}

const PlanSpec& plan(std::string_view name) {
  static std::map<std::string, PlanSpec, std::less<>> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(std::string(name), *find_plan(name)).first;
  return it->second;
}

std::vector<PlanSpec> non_empty_plans() {
  std::vector<PlanSpec> out;
  for (const auto& p : plan_catalogue()) {
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("worked example a is fully compliant") {
  const auto s = score_trajectory(testsupport::load_fixture("fig1a"), plan("standard"));
  REQUIRE(s);
  CHECK(std::fabs(s->ppc - 1.0) <= kTol);
  CHECK(std::fabs(s->poc - 1.0) <= kTol);
  CHECK(std::fabs(s->ppf - 1.0) <= kTol);
  CHECK(std::fabs(s->pc - 1.0) <= kTol);
  CHECK(s->missing_phases.empty());
  CHECK(s->extra_phases.empty());
}

TEST_CASE("worked example b orders three of four phases") {
  const auto s = score_trajectory(testsupport::load_fixture("fig1b"), plan("standard"));
  REQUIRE(s);
  CHECK(s->order_lis_length == 3);
  CHECK(s->poc == 0.75);
  CHECK(s->ppc == 1.0);
  CHECK(s->ppf == 1.0);
}

TEST_CASE("worked example c covers half the plan") {
  const auto s = score_trajectory(testsupport::load_fixture("fig1c"), plan("standard"));
  REQUIRE(s);
  CHECK(s->ppc == 0.5);
  CHECK(s->poc == 0.5);  // N at 1, P at 4; R and V absent
  CHECK(s->missing_phases == std::set{L::R, L::V});
}

TEST_CASE("PPC") {
  CHECK(*compute_ppc(lang_of({L::O, L::O}), plan("standard")) == 0.0);
  CHECK_FALSE(compute_ppc(lang_of({L::N}), plan("no_plan")));
}

TEST_CASE("PPF") {
  CHECK(*compute_ppf(lang_of({L::N, L::R, L::P, L::V}), plan("standard")) == 1.0);
  CHECK(std::fabs(*compute_ppf(lang_of({L::N, L::O, L::P}), plan("standard")) - 0.8) <= kTol);
  // |plan| = 6; S and O fall outside it: 6 / 8.
  CHECK(std::fabs(*compute_ppf(lang_of({L::RG, L::N, L::S, L::P, L::O}), plan("regression")) -
                  0.75) <= kTol);
}

TEST_CASE("PC") {
  CHECK(compute_pc(1, 1, 1) == 1.0);
  CHECK(compute_pc(0, 0.5, 1) == 0.0);
  const double expected = static_cast<double>(oracle::newton_cbrt(0.25L));
  CHECK(std::fabs(compute_pc(0.5, 0.5, 1.0) - expected) <= kTol);
  CHECK(std::fabs(compute_pc(0.5, 0.5, 1.0) - 0.6299605249474366) <= kTol);
}

TEST_CASE("single all-O step") {
  const auto t = testsupport::make_trajectory(
      "o", {testsupport::make_step(1, ActionKind::kOther, std::nullopt, "scroll_down")});
  const auto s = score_trajectory(t, plan("standard"));
  REQUIRE(s);
  CHECK(s->ppc == 0.0);
  CHECK(s->poc == 0.0);
  CHECK(std::fabs(s->ppf - 0.8) <= kTol);
  CHECK(s->pc == 0.0);
}

TEST_CASE("no_plan yields no scores") {
  CHECK_FALSE(score_trajectory(testsupport::load_fixture("fig1a"), plan("no_plan")));
}

TEST_CASE("unobservable phases") {
  CHECK(unobservable_phases(plan("summary"), {}).empty());
  ClassifierConfig cfg;
  cfg.summary_markers.clear();
  cfg.test_path_patterns.clear();
  CHECK(unobservable_phases(plan("summary"), cfg) == std::set{L::R, L::V, L::S});
}

TEST_CASE("metric properties over random strings and every plan") {
  std::mt19937_64 rng(99);
  const std::vector<L> alphabet(kAllPhaseLetters.begin(), kAllPhaseLetters.end());
  const auto plans = non_empty_plans();
  REQUIRE(plans.size() == 7);
  for (int i = 0; i < 1500; ++i) {
    const auto letters = testsupport::random_letters(rng, 1 + rng() % 25, alphabet);
    const auto lang = lang_of(letters);
    for (const auto& p : plans) {
      const auto s = score_langutory(lang, p);
      REQUIRE(s);
      const auto o = oracle::brute_metrics(letters, p);
      CHECK(std::fabs(s->ppc - o.ppc) <= kTol);
      CHECK(std::fabs(s->poc - o.poc) <= kTol);
      CHECK(std::fabs(s->ppf - o.ppf) <= kTol);
      CHECK(std::fabs(s->pc - o.pc) <= kTol);
      CHECK(s->ppc >= 0.0);
      CHECK(s->ppc <= 1.0);
      CHECK(s->poc >= 0.0);
      CHECK(s->poc <= s->ppc + kTol);
      CHECK(s->ppf > 0.0);
      CHECK(s->ppf <= 1.0);
      CHECK(std::fabs(s->pc - std::cbrt(s->ppc * s->poc * s->ppf)) <= kTol);
      if (s->ppc == 1.0) CHECK(s->poc >= 1.0 / static_cast<double>(p.size()));
    }
  }
}

TEST_CASE("perfectly compliant strings score exactly 1") {
  std::mt19937_64 rng(7);
  for (const auto& p : non_empty_plans()) {
    for (int i = 0; i < 200; ++i) {
      const auto s = score_langutory(lang_of(testsupport::compliant_letters(rng, p)), p);
      REQUIRE(s);
      CHECK(s->pc == 1.0);
    }
  }
}

TEST_CASE("a new out-of-plan letter strictly lowers PPF") {
  std::mt19937_64 rng(8);
  for (const auto& p : non_empty_plans()) {
    const auto& seq = p.expected_sequence();
    for (int i = 0; i < 200; ++i) {
      auto letters = testsupport::random_letters(rng, 1 + rng() % 12, seq);
      const double before = *compute_ppf(lang_of(letters), p);
      for (L extra : kAllPhaseLetters) {
        if (p.contains(extra)) continue;
        if (std::find(letters.begin(), letters.end(), extra) != letters.end()) continue;
        auto more = letters;
        more.insert(more.begin() + static_cast<std::ptrdiff_t>(rng() % (more.size() + 1)), extra);
        CHECK(*compute_ppf(lang_of(more), p) < before);
        letters = more;
        break;
      }
    }
  }
}
