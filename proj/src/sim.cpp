#include "rubikon/sim.hpp"

#include <algorithm>

namespace rubikon {

std::string_view to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::Perfect: return "perfect";
    case PolicyKind::Noisy: return "noisy";
    case PolicyKind::RandomWalk: return "random_walk";
    case PolicyKind::HintSeeker: return "hint_seeker";
  }
  return "unknown";
}

std::optional<PolicyKind> policy_from_string(std::string_view s) {
  for (PolicyKind k : {PolicyKind::Perfect, PolicyKind::Noisy, PolicyKind::RandomWalk, PolicyKind::HintSeeker})
    if (to_string(k) == s) return k;
  if (s == "random-walk") return PolicyKind::RandomWalk;
  if (s == "hint-seeker") return PolicyKind::HintSeeker;
  return std::nullopt;
}

void SimConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must lie in [0, 1]");
  if (hint_level < 1 || hint_level > kMaxHintLevel) throw Error(ErrorCode::InvalidArgument, "hint level must be 1, 2 or 3");
  if (max_attempts <= 0 || max_moves <= 0 || wander_budget <= 0 || step_ms <= 0)
    throw Error(ErrorCode::InvalidArgument, "limits must be positive");
  params.validate();
}

SimConfig SimConfig::from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "simulation config must be a JSON object");
  SimConfig c;
  try {
    if (j.contains("policy")) {
      const auto k = policy_from_string(j.at("policy").get<std::string>());
      if (!k) throw Error(ErrorCode::InvalidArgument, "unknown policy " + j.at("policy").get<std::string>());
      c.policy = *k;
    }
    if (j.contains("p")) c.p = j.at("p").get<double>();
    if (j.contains("hint_level")) c.hint_level = j.at("hint_level").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("max_attempts")) c.max_attempts = j.at("max_attempts").get<int>();
    if (j.contains("max_moves")) c.max_moves = j.at("max_moves").get<int>();
    if (j.contains("wander_budget")) c.wander_budget = j.at("wander_budget").get<int>();
    if (j.contains("step_ms")) c.step_ms = j.at("step_ms").get<std::int64_t>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("simulation config: ") + e.what());
  }
  if (j.contains("params")) c.params = params_from_json(j.at("params"));
  c.validate();
  return c;
}

int SimResult::mastered_count() const {
  return static_cast<int>(std::count_if(skillometer.begin(), skillometer.end(), [](const SkillRow& r) { return r.mastered; }));
}

namespace {

// Safety valve for a walk that never reaches its goal.
constexpr int kWalkLimit = 5000;

struct CurrentTask {
  KcId kc;
  TargetPiece piece;
};

// A macro for the piece from where it is now, preferring the task's KC.
std::optional<std::vector<Move>> plan_for(const CubeState& s, const CurrentTask& t) {
  std::optional<KcMatch> best;
  for (const KcMatch& m : match_kc(s))
    if (m.piece == t.piece && (!best || m.kc == t.kc)) best = m;
  if (!best) return std::nullopt;
  return canonical_macro(best->kc, best->piece, s);
}

class Driver {
 public:
  explicit Driver(const SimConfig& c)
      : config_(c),
        rng_(mix_seed(c.seed, 0x5EED)),
        session_(SessionConfig{"sim-" + std::to_string(c.seed), c.seed, c.params, std::nullopt, 0},
                 [this] { return now_; }) {}

  SimResult run() {
    send("Hello", Json::object());
    send("SetMode", {{"mode", "practice"}});
    int moves = 0;
    while (!done_ && closed_ < config_.max_attempts && moves < config_.max_moves) {
      if (fresh_task_) start_task();
      const std::optional<Move> m = choose();
      if (!m) {
        send("RequestTask", Json::object());
        continue;
      }
      ++moves;
      ++task_moves_;
      state_ = apply_move(state_, *m);
      send("Observe", {{"facelet", state_.to_string()}, {"ts", now_}});
    }
    SimResult r;
    r.events = session_.events();
    r.transcript = std::move(transcript_);
    r.trajectory = std::move(trajectory_);
    r.skillometer = skillometer(session_.skills());
    r.closed_attempts = closed_;
    r.done = done_;
    return r;
  }

 private:
  void start_task() {
    fresh_task_ = false;
    task_moves_ = 0;
    deviated_ = false;
    plan_ = canonical_macro(task_->kc, task_->piece, state_);
    next_ = 0;
    if (config_.policy == PolicyKind::HintSeeker) send("RequestHint", {{"level", config_.hint_level}});
  }

  Move random_turn() { return Move::quarter_turns()[static_cast<std::size_t>(rng_.uniform(12))]; }

  // nullopt asks for a new task.
  std::optional<Move> choose() {
    switch (config_.policy) {
      case PolicyKind::Perfect:
      case PolicyKind::HintSeeker:
        if (next_ < plan_.size()) return plan_[next_++];
        return std::nullopt;
      case PolicyKind::RandomWalk:
        // No early give-up: abandoned attempts are never graded, so quitting
        // long walks would hide exactly the failures.
        if (task_moves_ >= kWalkLimit) return std::nullopt;
        return random_turn();
      case PolicyKind::Noisy: {
        if (task_moves_ >= 4 * config_.wander_budget) return std::nullopt;
        const bool careful = task_moves_ >= config_.wander_budget || rng_.unit() < config_.p;
        if (!careful) {
          deviated_ = true;
          return random_turn();
        }
        if (deviated_ || next_ >= plan_.size()) {
          if (!deviated_) return std::nullopt;
          auto plan = plan_for(state_, *task_);
          if (!plan || plan->empty()) return std::nullopt;
          plan_ = std::move(*plan);
          next_ = 0;
          deviated_ = false;
        }
        return plan_[next_++];
      }
    }
    return std::nullopt;
  }

  void send(std::string_view type, Json payload) {
    const std::string line = envelope(++client_seq_, type, std::move(payload)).dump();
    transcript_.push_back(line);
    const std::size_t before = session_.events().size();
    for (const std::string& reply : session_.handle_line(line)) {
      transcript_.push_back(reply);
      receive(Json::parse(reply));
    }
    const auto& events = session_.events();
    for (std::size_t i = before; i < events.size(); ++i) {
      if (events[i].kind == "AttemptClosed") ++closed_;
      if (events[i].kind == "SkillUpdated") {
        const Json& p = events[i].payload;
        const Json& window = p["window"];
        trajectory_.push_back({window.back()["attempt_id"].get<int>(), *kc_from_string(p["kc_id"].get<std::string>()),
                               p["score"].get<double>(), p["mastered"].get<bool>()});
      }
    }
    now_ += config_.step_ms;
  }

  void receive(const Json& msg) {
    const std::string type = msg["type"].get<std::string>();
    const Json& p = msg["payload"];
    if (type == "Rendered") {
      state_ = CubeState::parse(p["facelet"].get<std::string>());
    } else if (type == "Task") {
      if (p["done"].get<bool>()) {
        done_ = true;
        task_.reset();
        return;
      }
      state_ = CubeState::parse(p["facelet"].get<std::string>());
      task_ = CurrentTask{*kc_from_string(p["kc_id"].get<std::string>()), TargetPiece::parse(p["piece"].get<std::string>())};
      fresh_task_ = true;
    }
  }

  const SimConfig& config_;
  Rng rng_;
  std::int64_t now_ = 0;
  Session session_;
  std::int64_t client_seq_ = 0;
  std::vector<std::string> transcript_;
  std::vector<SkillPoint> trajectory_;
  CubeState state_;
  std::optional<CurrentTask> task_;
  bool fresh_task_ = false;
  bool done_ = false;
  bool deviated_ = false;
  int closed_ = 0;
  int task_moves_ = 0;
  std::vector<Move> plan_;
  std::size_t next_ = 0;
};

}  // namespace

SimResult simulate(const SimConfig& config) {
  config.validate();
  return Driver(config).run();
}

Json to_json(const SimResult& r, const SimConfig& c) {
  Json traj = Json::array();
  for (const SkillPoint& s : r.trajectory)
    traj.push_back({{"attempt_id", s.attempt_id}, {"kc_id", to_string(s.kc)}, {"score", s.score}, {"mastered", s.mastered}});
  Json out = {{"policy", to_string(c.policy)},
              {"seed", c.seed},
              {"closed_attempts", r.closed_attempts},
              {"mastered", r.mastered_count()},
              {"done", r.done},
              {"trajectory", traj},
              {"skillometer", to_json(r.skillometer)}};
  const ProcessMetrics m = compute_metrics(r.events);
  out["metrics"] = to_json(m);
  return out;
}

}  // namespace rubikon
