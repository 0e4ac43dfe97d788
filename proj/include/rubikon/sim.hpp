#pragma once

// Scripted learners that drive a session through the NDJSON wire protocol,
// standing in for human participants in end-to-end runs.

#include <optional>
#include <string>
#include <vector>

#include "rubikon/analytics.hpp"

namespace rubikon {

enum class PolicyKind : std::uint8_t { Perfect, Noisy, RandomWalk, HintSeeker };
std::string_view to_string(PolicyKind k);
std::optional<PolicyKind> policy_from_string(std::string_view s);

struct SimConfig {
  PolicyKind policy = PolicyKind::Perfect;
  double p = 0.7;       // Noisy: probability of playing the planned move
  int hint_level = 1;   // HintSeeker: level requested at the start of each task
  std::uint64_t seed = 0;
  int max_attempts = 200;  // stop after this many closed attempts
  int max_moves = 100000;
  // Moves per task after which a Noisy learner stops erring.
  int wander_budget = 40;
  std::int64_t step_ms = 800;
  TracingParams params;

  void validate() const;  // throws InvalidArgument
  // Absent fields keep their defaults; throws InvalidArgument on bad types
  // or values.
  static SimConfig from_json(const Json& j);
};

struct SkillPoint {
  int attempt_id;
  KcId kc;
  double score;
  bool mastered;
};

struct SimResult {
  std::vector<SessionEvent> events;
  std::vector<std::string> transcript;  // every wire line, client and server, in order
  std::vector<SkillPoint> trajectory;   // one point per graded attempt
  std::vector<SkillRow> skillometer;
  int closed_attempts = 0;
  bool done = false;  // the session reported every KC mastered

  int mastered_count() const;
};

SimResult simulate(const SimConfig& config);

Json to_json(const SimResult& r, const SimConfig& c);

}  // namespace rubikon
