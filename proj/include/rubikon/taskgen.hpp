#pragma once

// Practice-task generation: legal cube states that present a chosen
// knowledge component at a uniformly drawn template, with the remaining
// pieces and the target's colors randomized.

#include <cstdint>
#include <optional>
#include <vector>

#include "rubikon/task_model.hpp"
#include "rubikon/tracing.hpp"

namespace rubikon {

struct GeneratedTask {
  KcId kc;
  CubeState state;  // normalized frame
  TargetPiece piece;
  int template_index;
  std::uint64_t seed;
};

inline constexpr int kGenerationRetries = 32;

// Deterministic in (kc, seed, context). With a context, pieces the learner
// has already placed for the KC's stage (petals for the flower, seated
// cross edges afterwards, seated corners) are kept where they are. Throws UnsatisfiableContext when no
// template is compatible with the context or 32 draws all fail, and
// IllegalState for an unreachable context.
GeneratedTask generate_task(KcId kc, std::uint64_t seed, const std::optional<CubeState>& context = std::nullopt);

// Indices of the KC's templates that can be instantiated around the context.
std::vector<int> compatible_templates(KcId kc, const std::optional<CubeState>& context);

// Lowest-star unmastered KC of the earliest stage that still has one;
// nullopt (done) when everything is mastered.
std::optional<KcId> pick_next_kc(const std::vector<SkillRow>& rows);

}  // namespace rubikon
