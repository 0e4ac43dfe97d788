#pragma once

// Model tracing (move inference, attempt segmentation) and knowledge tracing
// (attempt grading, windowed mastery, skillometer).

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "rubikon/cube.hpp"
#include "rubikon/solver.hpp"
#include "rubikon/task_model.hpp"

namespace rubikon {

// Hint levels are 0 (none) to 3.
inline constexpr int kNoHint = 0;
inline constexpr int kMaxHintLevel = 3;

struct TracingParams {
  enum class Denominator : std::uint8_t { Transitions, States };

  double t1 = 0.8;
  double t2 = 2.4;
  int n = 3;
  std::array<double, 4> weights = {1.0, 0.8, 0.5, 0.0};  // by hint level
  int cap = kDefaultDistanceCap;
  Denominator denominator = Denominator::Transitions;

  // Throws InvalidArgument unless thresholds are in range, n and cap are
  // positive and weights are non-increasing in hint level.
  void validate() const;
};

struct Observation {
  CubeState state;
  std::int64_t ts = 0;
};

// NoChange is nullopt. Throws NotOneMove when no single move (of the 27)
// maps prev onto next.
std::optional<Move> infer_move(const CubeState& prev, const CubeState& next);

// Face turns of at most `max_quarter_turns` connecting two legal states up to
// whole-cube orientation, expressed in prev's orientation; nullopt if none.
std::optional<std::vector<Move>> reconcile(const CubeState& prev, const CubeState& next,
                                           int max_quarter_turns = 2);

enum class AttemptOutcome : std::uint8_t { Open, Completed, Abandoned, Discontinuity };
std::string_view to_string(AttemptOutcome o);

struct Attempt {
  int id = 0;
  KcId kc = KcId::Side;
  TargetPiece piece;
  int template_index = -1;
  std::vector<Observation> states;  // S_1..S_k; reorient-only steps merged
  int hint_level = kNoHint;
  AttemptOutcome outcome = AttemptOutcome::Open;
  double ratio = 0.0;
  bool success = false;
  std::int64_t start_ts = 0;
  std::int64_t end_ts = 0;

  bool graded() const { return outcome == AttemptOutcome::Completed; }
};

struct Grade {
  double ratio;
  bool success;
  std::vector<DistanceResult> distances;  // MinSteps(S_i, S_k)
};

// Fraction of adjacent state pairs whose distance to S_k strictly drops; a
// transition out of an ExceedsCap state never counts. Throws OpenAttempt if
// the attempt has not reached its goal.
Grade grade_attempt(const Attempt& attempt, const TracingParams& params);

struct SkillRecord {
  struct Entry {
    int attempt_id;
    bool success;
    int hint_level;
  };
  KcId kc = KcId::Side;
  std::deque<Entry> recent;  // newest at the back, at most params.n
  double score = 0.0;
  bool mastered = false;
  int attempts_seen = 0;
};

SkillRecord update_skill(const SkillRecord& record, const Attempt& attempt, const TracingParams& params);

struct SkillRow {
  KcId kc;
  double score;
  bool mastered;
  int attempts_seen;
};

using SkillRecords = std::map<KcId, SkillRecord>;

// One row per KC in catalog order; unseen KCs report zeros.
std::vector<SkillRow> skillometer(const SkillRecords& records);

struct Focus {
  KcId kc;
  TargetPiece piece;
  bool operator==(const Focus&) const = default;
};

// Streaming attempt segmentation for one session. A piece's KC is fixed when
// the piece is first seen matching a pattern of the active stage and stays
// fixed until the piece moves; that move opens the attempt with S_1 = the
// state just before it. With a focus set (a practice task), only the focus
// piece may open attempts and S_1 is the state the task started from, so
// moves made before touching the piece count toward the attempt.
class Tracer {
 public:
  struct AttemptEvent {
    bool opened;  // else closed
    Attempt attempt;
  };
  struct Step {
    std::vector<Move> moves;
    bool reconciled = false;     // moves were recovered, not observed one by one
    bool discontinuity = false;  // no short connection; open attempt dropped
    std::vector<AttemptEvent> events;
  };

  Tracer(const Observation& start, Stage stage, std::optional<Focus> focus = std::nullopt);

  // The observation must be legal (checked by the caller).
  Step observe(const Observation& obs);

  // Replaces the current state (scramble, generated task). Any open attempt
  // is returned closed as Abandoned.
  std::optional<Attempt> reset(const Observation& start, Stage stage, std::optional<Focus> focus);

  void set_stage(Stage stage);

  // Applies a hint to the open attempt (max rule) or keeps it pending for the
  // next attempt on the same KC and piece.
  void note_hint(const Focus& target, int level);

  const std::optional<Attempt>& open_attempt() const { return open_; }
  const Observation& last() const { return last_; }
  Stage stage() const { return stage_; }
  const std::optional<Focus>& focus() const { return focus_; }
  int attempts_opened() const { return next_id_ - 1; }
  // The KC and piece the next attempt would open on, in pending order.
  std::optional<Focus> next_pending() const;

 private:
  struct Pending {
    KcId kc;
    int template_index;
    int white_sticker;  // normalized frame
  };

  void refresh_pending();
  void advance(const Observation& obs, bool reorient_only, std::vector<AttemptEvent>& events);

  Observation last_;
  CubeState last_norm_;
  Stage stage_;
  std::optional<Focus> focus_;
  std::optional<Attempt> open_;
  std::vector<std::pair<TargetPiece, Pending>> pending_;
  std::optional<std::pair<Focus, int>> pending_hint_;
  std::vector<Observation> lead_;  // focus mode: states since the task began
  int next_id_ = 1;
};

// Offline segmentation of a full history in exploration style (no focus).
std::vector<Attempt> segment_attempts(const std::vector<Observation>& history, Stage stage);

}  // namespace rubikon
