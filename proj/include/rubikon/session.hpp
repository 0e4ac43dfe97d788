#pragma once

// One tutoring session: the wire-protocol state machine over exploration and
// practice modes, with every input and effect appended to an event log.
// A session is not thread-safe; callers serialize its messages.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rubikon/protocol.hpp"

namespace rubikon {

enum class Mode : std::uint8_t { Exploration, Practice };
std::string_view to_string(Mode m);
std::optional<Mode> mode_from_string(std::string_view s);

struct SessionEvent {
  std::int64_t seq = 0;
  std::int64_t ts = 0;
  std::string kind;
  Json payload;

  Json to_json() const;
  static SessionEvent from_json(const Json& j);  // throws SchemaError
};

struct SessionConfig {
  std::string id = "session";
  std::uint64_t seed = 0;
  TracingParams params;
  std::optional<CubeState> start;  // scramble(seed) when absent
  std::int64_t start_ts = 0;

  Json to_json() const;
  static SessionConfig from_json(const Json& j);
};

// Block-placed feedback: pieces newly in their stage position (petal, seated
// cross edge, seated corner) in `next` that were not in `prev`.
std::vector<TargetPiece> positive_feedback_check(const CubeState& prev, const CubeState& next, Stage stage);

class Session {
 public:
  using Clock = std::function<std::int64_t()>;
  using Sink = std::function<void(const SessionEvent&)>;

  // The clock supplies receipt timestamps for messages without a client
  // timestamp; the sink sees every event as it is appended.
  explicit Session(SessionConfig config, Clock clock = nullptr, Sink sink = nullptr);

  // Processes one client message and returns the server messages. Schema
  // violations yield a single Error message and leave the session unchanged.
  std::vector<Json> handle(const Json& message);
  // NDJSON convenience: one line in, server lines out.
  std::vector<std::string> handle_line(std::string_view line);

  // Re-feeds a logged client message at its logged receipt time.
  std::vector<Json> handle_at(const Json& message, std::int64_t receipt_ts);

  const SessionConfig& config() const { return config_; }
  const std::vector<SessionEvent>& events() const { return events_; }
  Mode mode() const { return mode_; }
  Stage stage() const { return tracer_.stage(); }
  const CubeState& state() const { return state_; }
  const std::optional<GeneratedTask>& task() const { return task_; }
  bool done() const { return done_; }
  const SkillRecords& skills() const { return skills_; }
  const Tracer& tracer() const { return tracer_; }

 private:
  std::vector<Json> dispatch(const Json& message, std::int64_t receipt_ts);

  void log(std::int64_t ts, std::string kind, Json payload);
  void send(std::vector<Json>& out, std::string_view type, Json payload);
  void error(std::vector<Json>& out, ErrorCode code, const std::string& message, const Json& ref);

  void on_hello(std::vector<Json>& out);
  void on_observe(const CubeState& next, std::int64_t ts, std::vector<Json>& out);
  void on_hint(int level, std::int64_t ts, std::vector<Json>& out);
  void on_set_mode(Mode m, std::int64_t ts, std::vector<Json>& out);
  void on_scramble(std::optional<std::uint64_t> seed, std::int64_t ts, std::vector<Json>& out);
  void on_advance_stage(std::int64_t ts, std::vector<Json>& out);

  // Applies tracer attempt events: logs them, grades closed attempts and
  // updates skills. Returns whether any skill changed.
  bool record_attempts(std::vector<Tracer::AttemptEvent>& events, std::int64_t ts);
  void reset_tracer(std::int64_t ts, Stage stage, std::optional<Focus> focus);
  void change_mode(Mode m, const char* reason, std::int64_t ts, std::vector<Json>& out);
  void change_stage(Stage s, const char* reason, std::int64_t ts);
  void issue_task(std::int64_t ts, std::vector<Json>& out, std::optional<KcId> kc = std::nullopt,
                  std::optional<std::uint64_t> seed = std::nullopt, bool use_context = true);
  Json rendered() const;
  Json task_payload() const;

  SessionConfig config_;
  Clock clock_;
  Sink sink_;
  std::vector<SessionEvent> events_;
  std::int64_t out_seq_ = 0;

  Mode mode_ = Mode::Exploration;
  CubeState state_;
  Tracer tracer_;
  SkillRecords skills_;
  std::optional<GeneratedTask> task_;
  bool done_ = false;
};

}  // namespace rubikon
