#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "plantrace/phase.h"
#include "plantrace/plan.h"
#include "plantrace/trajectory.h"

namespace plantrace::testsupport {

// Agent-like trajectory: navigation, reproduction scripts, patches, test runs
// and chatter in a loosely phase-ordered random walk.
TrajectoryRecord synthetic_trajectory(std::mt19937_64& rng, std::size_t ordinal);

// `count` trajectories from a fixed seed; ids sort in generation order.
Corpus synthetic_corpus(std::size_t count, std::uint64_t seed);

// Uniform letters drawn from `alphabet`.
std::vector<PhaseLetter> random_letters(std::mt19937_64& rng, std::size_t length,
                                        const std::vector<PhaseLetter>& alphabet);

// A string that scores PC = 1 against `plan`: plan letters in order, each
// possibly repeated, followed by revisits of plan letters.
std::vector<PhaseLetter> compliant_letters(std::mt19937_64& rng, const PlanSpec& plan);

}  // namespace plantrace::testsupport
