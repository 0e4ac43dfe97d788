#include "rubikon/session.hpp"

#include <algorithm>
#include <chrono>

namespace rubikon {

std::string_view to_string(Mode m) { return m == Mode::Exploration ? "exploration" : "practice"; }

std::optional<Mode> mode_from_string(std::string_view s) {
  if (s == "exploration") return Mode::Exploration;
  if (s == "practice") return Mode::Practice;
  return std::nullopt;
}

Json SessionEvent::to_json() const { return {{"seq", seq}, {"ts", ts}, {"kind", kind}, {"payload", payload}}; }

SessionEvent SessionEvent::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("seq") || !j["seq"].is_number_integer() || !j.contains("ts") ||
      !j["ts"].is_number_integer() || !j.contains("kind") || !j["kind"].is_string() || !j.contains("payload") ||
      !j["payload"].is_object())
    throw Error(ErrorCode::SchemaError, "event needs integer seq and ts, string kind and object payload");
  return {j["seq"].get<std::int64_t>(), j["ts"].get<std::int64_t>(), j["kind"].get<std::string>(), j["payload"]};
}

Json SessionConfig::to_json() const {
  return {{"id", id},
          {"seed", seed},
          {"params", rubikon::to_json(params)},
          {"start", start ? Json(start->to_string()) : Json(nullptr)},
          {"start_ts", start_ts}};
}

SessionConfig SessionConfig::from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::SchemaError, "session config must be an object");
  SessionConfig c;
  try {
    if (j.contains("id")) c.id = j.at("id").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("start_ts")) c.start_ts = j.at("start_ts").get<std::int64_t>();
    if (j.contains("start") && !j.at("start").is_null()) c.start = CubeState::parse(j.at("start").get<std::string>());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("session config: ") + e.what());
  }
  if (j.contains("params")) c.params = params_from_json(j.at("params"));
  return c;
}

std::vector<TargetPiece> positive_feedback_check(const CubeState& prev, const CubeState& next, Stage stage) {
  const auto before = placed_pieces(prev, stage);
  std::vector<TargetPiece> out;
  for (const TargetPiece& p : placed_pieces(next, stage))
    if (std::find(before.begin(), before.end(), p) == before.end()) out.push_back(p);
  return out;
}

namespace {

std::int64_t wall_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

CubeState start_state(const SessionConfig& c) {
  if (!c.start) return scramble(c.seed).state;
  if (!is_legal(*c.start)) throw Error(ErrorCode::IllegalState, "start state is not a reachable cube");
  return *c.start;
}

Json distances_json(const std::vector<DistanceResult>& ds) {
  Json out = Json::array();
  for (const DistanceResult& d : ds) out.push_back(d.finite() ? Json(d.value()) : Json(nullptr));
  return out;
}

Json attempt_json(const Attempt& a) {
  return {{"attempt_id", a.id},
          {"kc_id", to_string(a.kc)},
          {"piece", to_json(a.piece)},
          {"template_index", a.template_index},
          {"hint_level", a.hint_level},
          {"start_ts", a.start_ts}};
}

// Rejected messages carry the reason; nothing is logged for them.
struct Rejected {
  ErrorCode code;
  std::string message;
};

const Json& payload_of(const Json& message) {
  static const Json empty = Json::object();
  auto it = message.find("payload");
  return it == message.end() ? empty : *it;
}

}  // namespace

Session::Session(SessionConfig config, Clock clock, Sink sink)
    : config_(std::move(config)),
      clock_(clock ? std::move(clock) : Clock(wall_clock_ms)),
      sink_(std::move(sink)),
      state_(start_state(config_)),
      tracer_(Observation{state_, config_.start_ts}, Stage::WhiteFlower) {
  config_.params.validate();
  Json started = config_.to_json();
  started["start"] = state_.to_string();
  started["protocol_version"] = kProtocolVersion;
  log(config_.start_ts, "SessionStarted", std::move(started));
}

void Session::log(std::int64_t ts, std::string kind, Json payload) {
  events_.push_back({static_cast<std::int64_t>(events_.size()), ts, std::move(kind), std::move(payload)});
  if (sink_) sink_(events_.back());
}

void Session::send(std::vector<Json>& out, std::string_view type, Json payload) {
  out.push_back(envelope(++out_seq_, type, std::move(payload)));
}

void Session::error(std::vector<Json>& out, ErrorCode code, const std::string& message, const Json& ref) {
  send(out, "Error", {{"code", to_string(code)}, {"message", message}, {"ref_seq", ref}});
}

std::vector<Json> Session::handle(const Json& message) { return dispatch(message, clock_()); }

std::vector<Json> Session::handle_at(const Json& message, std::int64_t receipt_ts) {
  return dispatch(message, receipt_ts);
}

std::vector<std::string> Session::handle_line(std::string_view line) {
  std::vector<Json> replies;
  Json message = Json::parse(line, nullptr, false);
  if (message.is_discarded())
    error(replies, ErrorCode::SchemaError, "message is not valid JSON", nullptr);
  else
    replies = handle(message);
  std::vector<std::string> out;
  out.reserve(replies.size());
  for (const Json& r : replies) out.push_back(r.dump());
  return out;
}

std::vector<Json> Session::dispatch(const Json& message, std::int64_t receipt_ts) {
  std::vector<Json> out;
  const Json ref = message.is_object() && message.contains("seq") ? message["seq"] : Json(nullptr);
  try {
    if (!message.is_object()) throw Rejected{ErrorCode::SchemaError, "message must be a JSON object"};
    if (!message.contains("seq") || !message["seq"].is_number_integer())
      throw Rejected{ErrorCode::SchemaError, "seq must be an integer"};
    if (!message.contains("type") || !message["type"].is_string())
      throw Rejected{ErrorCode::SchemaError, "type must be a string"};
    const Json& payload = payload_of(message);
    if (!payload.is_object()) throw Rejected{ErrorCode::SchemaError, "payload must be an object"};
    const std::string type = message["type"].get<std::string>();

    // Validate everything before logging so rejected messages leave no trace.
    std::optional<CubeState> observed;
    std::int64_t ts = receipt_ts;
    int level = 0;
    std::optional<Mode> mode;
    std::optional<std::uint64_t> seed;
    if (type == "Observe") {
      if (!payload.contains("facelet") || !payload["facelet"].is_string())
        throw Rejected{ErrorCode::SchemaError, "Observe needs a facelet string"};
      try {
        observed = CubeState::parse(payload["facelet"].get<std::string>());
      } catch (const Error& e) {
        throw Rejected{ErrorCode::SchemaError, e.what()};
      }
      if (payload.contains("ts")) {
        if (!payload["ts"].is_number_integer()) throw Rejected{ErrorCode::SchemaError, "ts must be an integer"};
        ts = payload["ts"].get<std::int64_t>();
      }
    } else if (type == "RequestHint") {
      if (!payload.contains("level") || !payload["level"].is_number_integer())
        throw Rejected{ErrorCode::SchemaError, "RequestHint needs an integer level"};
      level = payload["level"].get<int>();
      if (level < 1 || level > kMaxHintLevel) throw Rejected{ErrorCode::BadLevel, "hint level must be 1, 2 or 3"};
    } else if (type == "SetMode") {
      if (payload.contains("mode") && payload["mode"].is_string()) mode = mode_from_string(payload["mode"].get<std::string>());
      if (!mode) throw Rejected{ErrorCode::SchemaError, "mode must be \"exploration\" or \"practice\""};
    } else if (type == "Scramble") {
      if (payload.contains("seed") && !payload["seed"].is_null()) {
        const Json& j = payload["seed"];
        if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) throw Rejected{ErrorCode::SchemaError, "seed must be a non-negative integer"};
        seed = payload["seed"].get<std::uint64_t>();
      }
    } else if (type != "Hello" && type != "RequestTask" && type != "AdvanceStage") {
      throw Rejected{ErrorCode::SchemaError, "unknown message type " + type};
    }

    log(receipt_ts, "MessageReceived", {{"type", type}, {"payload", payload}});
    if (type == "Hello")
      on_hello(out);
    else if (type == "Observe")
      on_observe(*observed, ts, out);
    else if (type == "RequestHint")
      on_hint(level, ts, out);
    else if (type == "RequestTask") {
      if (mode_ != Mode::Practice) change_mode(Mode::Practice, "request", ts, out);
      issue_task(ts, out);
    } else if (type == "SetMode")
      on_set_mode(*mode, ts, out);
    else if (type == "Scramble")
      on_scramble(seed, ts, out);
    else
      on_advance_stage(ts, out);
  } catch (const Rejected& r) {
    error(out, r.code, r.message, ref);
  }
  return out;
}

void Session::on_hello(std::vector<Json>& out) {
  send(out, "Welcome",
       {{"session_id", config_.id},
        {"protocol_version", kProtocolVersion},
        {"kc_catalog", kc_catalog_json()},
        {"mode", to_string(mode_)},
        {"stage", to_string(stage())},
        {"params", to_json(config_.params)}});
  send(out, "Rendered", rendered());
  send(out, "Skillometer", {{"rows", to_json(skillometer(skills_))}});
  if (mode_ == Mode::Practice) send(out, "Task", task_payload());
}

void Session::on_observe(const CubeState& next, std::int64_t ts, std::vector<Json>& out) {
  if (!is_legal(next)) {
    log(ts, "Discontinuity", {{"reason", "illegal_state"}, {"facelet", next.to_string()}});
    error(out, ErrorCode::IllegalState, "observed cube is not reachable; observation ignored", nullptr);
    return;
  }
  const CubeState prev = state_;
  Tracer::Step step = tracer_.observe({next, ts});
  state_ = next;
  log(ts, "StateObserved", {{"facelet", next.to_string()}, {"ts", ts}});
  if (step.discontinuity)
    log(ts, "Discontinuity", {{"reason", "unexplained_change"}});
  else if (!step.moves.empty())
    log(ts, "MoveInferred", {{"moves", moves_json(step.moves)}, {"reconciled", step.reconciled}});
  const bool closed = std::any_of(step.events.begin(), step.events.end(), [](const auto& e) { return !e.opened; });
  const bool skills_changed = record_attempts(step.events, ts);
  send(out, "Rendered", rendered());
  for (const TargetPiece& p : positive_feedback_check(prev, next, stage())) {
    Json fb = {{"kind", "block_placed"}, {"piece", to_json(p)}, {"stage", to_string(stage())}};
    log(ts, "FeedbackEmitted", fb);
    send(out, "Feedback", std::move(fb));
  }
  if (skills_changed) send(out, "Skillometer", {{"rows", to_json(skillometer(skills_))}});

  if (mode_ == Mode::Practice) {
    if (!done_ && (closed || step.discontinuity)) issue_task(ts, out);
  } else if (stage_goal_met(state_, stage())) {
    change_mode(Mode::Practice, "stage_complete", ts, out);
    issue_task(ts, out);
  }
}

bool Session::record_attempts(std::vector<Tracer::AttemptEvent>& events, std::int64_t ts) {
  bool changed = false;
  for (auto& e : events) {
    Attempt& a = e.attempt;
    if (e.opened) {
      log(ts, "AttemptOpened", attempt_json(a));
      continue;
    }
    Json closed = attempt_json(a);
    closed["outcome"] = to_string(a.outcome);
    closed["end_ts"] = a.end_ts;
    closed["k"] = a.states.size();
    if (a.graded()) {
      const Grade g = grade_attempt(a, config_.params);
      a.ratio = g.ratio;
      a.success = g.success;
      closed["ratio"] = g.ratio;
      closed["success"] = g.success;
      closed["distances"] = distances_json(g.distances);
    }
    log(ts, "AttemptClosed", std::move(closed));
    if (!a.graded()) continue;
    auto [it, fresh] = skills_.try_emplace(a.kc);
    if (fresh) it->second.kc = a.kc;
    it->second = update_skill(it->second, a, config_.params);
    Json window = Json::array();
    for (const auto& w : it->second.recent)
      window.push_back({{"attempt_id", w.attempt_id}, {"success", w.success}, {"hint_level", w.hint_level}});
    log(ts, "SkillUpdated",
        {{"kc_id", to_string(a.kc)},
         {"score", it->second.score},
         {"mastered", it->second.mastered},
         {"attempts", it->second.attempts_seen},
         {"window", window}});
    changed = true;
  }
  return changed;
}

void Session::reset_tracer(std::int64_t ts, Stage stage, std::optional<Focus> focus) {
  std::vector<Tracer::AttemptEvent> events;
  if (auto abandoned = tracer_.reset({state_, ts}, stage, std::move(focus))) events.push_back({false, *abandoned});
  record_attempts(events, ts);
}

void Session::change_mode(Mode m, const char* reason, std::int64_t ts, std::vector<Json>& out) {
  mode_ = m;
  Json p = {{"mode", to_string(m)}, {"reason", reason}};
  log(ts, "ModeChanged", p);
  send(out, "ModeChanged", std::move(p));
}

void Session::change_stage(Stage s, const char* reason, std::int64_t ts) {
  log(ts, "StageAdvanced", {{"from", to_string(stage())}, {"to", to_string(s)}, {"reason", reason}});
}

Json Session::rendered() const {
  return {{"facelet", state_.to_string()}, {"mode", to_string(mode_)}, {"stage", to_string(stage())}};
}

Json Session::task_payload() const {
  if (!task_) return {{"done", done_}};
  Json p = to_json(*task_);
  p["done"] = false;
  return p;
}

void Session::issue_task(std::int64_t ts, std::vector<Json>& out, std::optional<KcId> kc,
                         std::optional<std::uint64_t> seed, bool use_context) {
  if (!kc) kc = pick_next_kc(skillometer(skills_));
  if (!kc) {
    done_ = true;
    task_.reset();
    reset_tracer(ts, stage(), std::nullopt);
    log(ts, "TaskGenerated", {{"done", true}});
    send(out, "Task", task_payload());
    return;
  }
  const std::uint64_t s = seed.value_or(mix_seed(config_.seed, events_.size()));
  GeneratedTask t;
  try {
    t = use_context ? generate_task(*kc, s, state_) : generate_task(*kc, s);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsatisfiableContext) throw;
    t = generate_task(*kc, s);
  }
  const Stage target_stage = kc_info(t.kc).stage;
  state_ = t.state;
  done_ = false;
  task_ = t;
  if (stage() != target_stage) change_stage(target_stage, "task", ts);
  reset_tracer(ts, target_stage, Focus{t.kc, t.piece});
  log(ts, "TaskGenerated", to_json(t));
  log(ts, "TaskAccepted", {{"facelet", t.state.to_string()}});
  send(out, "Task", task_payload());
}

void Session::on_hint(int level, std::int64_t ts, std::vector<Json>& out) {
  const auto& open = tracer_.open_attempt();
  const std::optional<Focus> target = open ? std::optional<Focus>(Focus{open->kc, open->piece}) : tracer_.next_pending();
  if (!target) {
    error(out, ErrorCode::NoActiveSkill, "no knowledge component is active", nullptr);
    return;
  }
  // The hint shows the piece's current situation, which may have moved on
  // from the KC the attempt opened with.
  std::optional<KcId> kc;
  for (const KcMatch& m : match_kc(state_)) {
    if (!(m.piece == target->piece) || kc_info(m.kc).stage != stage()) continue;
    if (!kc || m.kc == target->kc) kc = m.kc;
  }
  if (!kc) {
    error(out, ErrorCode::NoActiveSkill, "no knowledge component applies to the piece where it is now", nullptr);
    return;
  }
  const HintPayload h = make_hint(state_, *kc, target->piece, level);
  tracer_.note_hint(*target, level);
  log(ts, "HintRequested",
      {{"level", level},
       {"kc_id", to_string(target->kc)},
       {"piece", to_json(target->piece)},
       {"attempt_id", open ? Json(open->id) : Json(nullptr)}});
  Json payload = to_json(h);
  log(ts, "HintServed", payload);
  send(out, "Hint", {{"payload", std::move(payload)}});
}

void Session::on_set_mode(Mode m, std::int64_t ts, std::vector<Json>& out) {
  if (m == mode_) {
    send(out, "ModeChanged", {{"mode", to_string(m)}, {"reason", "unchanged"}});
    return;
  }
  change_mode(m, "request", ts, out);
  if (m == Mode::Practice) {
    issue_task(ts, out);
  } else {
    task_.reset();
    done_ = false;
    reset_tracer(ts, stage(), std::nullopt);
  }
}

void Session::on_scramble(std::optional<std::uint64_t> seed, std::int64_t ts, std::vector<Json>& out) {
  const std::uint64_t s = seed.value_or(mix_seed(config_.seed, events_.size()));
  if (mode_ == Mode::Practice && task_) {
    // Practice keeps its KC: the scramble draws a fresh configuration of it.
    log(ts, "Scrambled", {{"seed", s}, {"mode", to_string(mode_)}});
    issue_task(ts, out, task_->kc, s, false);
    return;
  }
  state_ = scramble(s).state;
  log(ts, "Scrambled", {{"seed", s}, {"mode", to_string(mode_)}, {"facelet", state_.to_string()}});
  if (stage() != Stage::WhiteFlower) change_stage(Stage::WhiteFlower, "scramble", ts);
  reset_tracer(ts, Stage::WhiteFlower, std::nullopt);
  send(out, "Rendered", rendered());
}

void Session::on_advance_stage(std::int64_t ts, std::vector<Json>& out) {
  if (stage() == Stage::FourCorners) {
    error(out, ErrorCode::InvalidArgument, "four_corners is the last stage", nullptr);
    return;
  }
  const Stage next = static_cast<Stage>(static_cast<int>(stage()) + 1);
  if (mode_ == Mode::Practice) {
    change_mode(Mode::Exploration, "stage_advance", ts, out);
    task_.reset();
    done_ = false;
  }
  change_stage(next, "request", ts);
  reset_tracer(ts, next, std::nullopt);
  send(out, "Rendered", rendered());
}

}  // namespace rubikon
