#include "rubikon/tracing.hpp"

#include <algorithm>

namespace rubikon {

void TracingParams::validate() const {
  auto bad = [](const char* what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (!(t1 >= 0.0 && t1 <= 1.0)) bad("t1 must lie in [0, 1]");
  if (!(t2 >= 0.0)) bad("t2 must be non-negative");
  if (n <= 0) bad("n must be positive");
  if (cap <= 0) bad("cap must be positive");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0 && weights[i] <= 1.0)) bad("weights must lie in [0, 1]");
    if (i > 0 && weights[i] > weights[i - 1]) bad("weights must not increase with hint level");
  }
}

std::optional<Move> infer_move(const CubeState& prev, const CubeState& next) {
  if (prev == next) return std::nullopt;
  for (Move m : Move::all())
    if (apply_move(prev, m) == next) return m;
  throw Error(ErrorCode::NotOneMove, "no single move maps the previous state onto the next");
}

std::optional<std::vector<Move>> reconcile(const CubeState& prev, const CubeState& next, int max_quarter_turns) {
  const CubeState a = normalize_orientation(prev).state;
  const CubeState b = normalize_orientation(next).state;
  // Iterative deepening over quarter turns; adjacent equal quarter turns
  // fold into a half turn.
  std::vector<Move> path;
  auto dfs = [&](auto&& self, const CubeState& s, int depth) -> bool {
    if (depth == 0) return s == b;
    for (Move m : Move::quarter_turns()) {
      path.push_back(m);
      if (self(self, apply_move(s, m), depth - 1)) return true;
      path.pop_back();
    }
    return false;
  };
  for (int d = 0; d <= max_quarter_turns; ++d) {
    path.clear();
    if (!dfs(dfs, a, d)) continue;
    std::vector<Move> folded;
    for (Move m : path) {
      if (!folded.empty() && folded.back() == m && m.amount() != Amount::Half)
        folded.back() = Move::turn(m.face(), Amount::Half);
      else
        folded.push_back(m);
    }
    for (Move& m : folded) m = Move::turn(*prev.face_with_center(a.center(m.face())), m.amount());
    return folded;
  }
  return std::nullopt;
}

std::string_view to_string(AttemptOutcome o) {
  switch (o) {
    case AttemptOutcome::Open: return "open";
    case AttemptOutcome::Completed: return "completed";
    case AttemptOutcome::Abandoned: return "abandoned";
    case AttemptOutcome::Discontinuity: return "discontinuity";
  }
  return "unknown";
}

Grade grade_attempt(const Attempt& attempt, const TracingParams& params) {
  if (attempt.outcome != AttemptOutcome::Completed || attempt.states.size() < 2)
    throw Error(ErrorCode::OpenAttempt, "attempt has not reached its goal");
  DistanceTable table(attempt.states.back().state, params.cap);
  Grade g{0.0, false, {}};
  g.distances.reserve(attempt.states.size());
  for (const Observation& o : attempt.states) g.distances.push_back(table.distance_from(o.state));
  int dropping = 0;
  for (std::size_t i = 0; i + 1 < g.distances.size(); ++i)
    if (g.distances[i].finite() && g.distances[i + 1] < g.distances[i]) ++dropping;
  const std::size_t k = attempt.states.size();
  const std::size_t denom = params.denominator == TracingParams::Denominator::Transitions ? k - 1 : k;
  g.ratio = static_cast<double>(dropping) / static_cast<double>(denom);
  g.success = g.ratio > params.t1;
  return g;
}

namespace {

// Sums of tenths such as 0.8 * 3 land a hair above 2.4 in binary floating
// point; mastery compares with a tolerance so that such a score is not
// counted as exceeding the threshold.
constexpr double kScoreTolerance = 1e-9;

}  // namespace

SkillRecord update_skill(const SkillRecord& record, const Attempt& attempt, const TracingParams& params) {
  if (!attempt.graded()) throw Error(ErrorCode::OpenAttempt, "only graded attempts update skills");
  SkillRecord r = record;
  r.kc = attempt.kc;
  r.recent.push_back({attempt.id, attempt.success, std::clamp(attempt.hint_level, 0, kMaxHintLevel)});
  while (static_cast<int>(r.recent.size()) > params.n) r.recent.pop_front();
  r.score = 0.0;
  for (const auto& e : r.recent)
    if (e.success) r.score += params.weights[static_cast<std::size_t>(e.hint_level)];
  r.mastered = r.score > params.t2 + kScoreTolerance;
  ++r.attempts_seen;
  return r;
}

std::vector<SkillRow> skillometer(const SkillRecords& records) {
  std::vector<SkillRow> rows;
  for (const KcInfo& k : kc_catalog()) {
    auto it = records.find(k.id);
    if (it == records.end())
      rows.push_back({k.id, 0.0, false, 0});
    else
      rows.push_back({k.id, it->second.score, it->second.mastered, it->second.attempts_seen});
  }
  return rows;
}

namespace {

int white_sticker(const TargetPiece& p, const CubeState& norm) {
  const auto st = piece_stickers(p, norm);
  return st.empty() ? -1 : st[0];
}

}  // namespace

Tracer::Tracer(const Observation& start, Stage stage, std::optional<Focus> focus)
    : last_(start), last_norm_(normalize_orientation(start.state).state), stage_(stage), focus_(std::move(focus)) {
  if (focus_) lead_ = {start};
  refresh_pending();
}

void Tracer::refresh_pending() {
  if (open_) {
    pending_.clear();
    return;
  }
  std::vector<std::pair<TargetPiece, Pending>> next;
  // Entries whose piece has not moved keep the KC they were first seen with.
  for (const auto& [piece, p] : pending_)
    if (white_sticker(piece, last_norm_) == p.white_sticker) next.emplace_back(piece, p);
  for (const KcMatch& m : match_kc(last_norm_)) {
    if (kc_info(m.kc).stage != stage_) continue;
    if (focus_ && !(m.piece == focus_->piece)) continue;
    const bool known = std::any_of(next.begin(), next.end(), [&](const auto& e) { return e.first == m.piece; });
    if (!known) next.emplace_back(m.piece, Pending{m.kc, m.template_index, white_sticker(m.piece, last_norm_)});
  }
  std::stable_sort(next.begin(), next.end(), [](const auto& x, const auto& y) {
    const int sx = kc_info(x.second.kc).stars;
    const int sy = kc_info(y.second.kc).stars;
    if (sx != sy) return sx > sy;
    if (x.second.kc != y.second.kc) return x.second.kc < y.second.kc;
    return std::tuple(x.first.corner, x.first.a, x.first.b) < std::tuple(y.first.corner, y.first.a, y.first.b);
  });
  pending_ = std::move(next);
}

void Tracer::advance(const Observation& obs, bool reorient_only, std::vector<AttemptEvent>& events) {
  const CubeState norm = normalize_orientation(obs.state).state;
  if (!reorient_only) {
    if (!open_) {
      for (const auto& [piece, p] : pending_) {
        if (white_sticker(piece, norm) == p.white_sticker) continue;
        Attempt a;
        a.id = next_id_++;
        a.kc = p.kc;
        a.piece = piece;
        a.template_index = p.template_index;
        a.states = focus_ && !lead_.empty() ? lead_ : std::vector<Observation>{last_};
        a.start_ts = a.states.front().ts;
        if (pending_hint_ && pending_hint_->first == Focus{p.kc, piece}) a.hint_level = pending_hint_->second;
        pending_hint_.reset();
        open_ = std::move(a);
        break;
      }
      if (open_) {
        open_->states.push_back(obs);
        events.push_back({true, *open_});
        lead_.clear();
      } else if (focus_) {
        lead_.push_back(obs);
      }
    } else {
      open_->states.push_back(obs);
    }
    if (open_ && kc_goal_met(open_->kc, open_->piece, norm)) {
      open_->outcome = AttemptOutcome::Completed;
      open_->end_ts = obs.ts;
      events.push_back({false, std::move(*open_)});
      open_.reset();
      if (focus_) lead_ = {obs};
    }
  }
  last_ = obs;
  last_norm_ = norm;
  refresh_pending();
}

Tracer::Step Tracer::observe(const Observation& obs) {
  Step step;
  if (obs.state == last_.state) {
    last_.ts = obs.ts;
    return step;
  }
  std::optional<Move> m;
  try {
    m = infer_move(last_.state, obs.state);
  } catch (const Error&) {
    auto path = reconcile(last_.state, obs.state);
    if (!path) {
      step.discontinuity = true;
      if (open_) {
        open_->outcome = AttemptOutcome::Discontinuity;
        open_->end_ts = obs.ts;
        step.events.push_back({false, std::move(*open_)});
        open_.reset();
      }
      pending_.clear();
      last_ = obs;
      last_norm_ = normalize_orientation(obs.state).state;
      if (focus_) lead_ = {obs};
      refresh_pending();
      return step;
    }
    step.moves = *path;
    step.reconciled = true;
    CubeState s = last_.state;
    for (std::size_t i = 0; i + 1 < path->size(); ++i) {
      s = apply_move(s, (*path)[i]);
      advance({s, obs.ts}, false, step.events);
    }
    advance(obs, false, step.events);
    return step;
  }
  step.moves = {*m};
  advance(obs, !m->is_turn(), step.events);
  return step;
}

std::optional<Attempt> Tracer::reset(const Observation& start, Stage stage, std::optional<Focus> focus) {
  std::optional<Attempt> abandoned;
  if (open_) {
    open_->outcome = AttemptOutcome::Abandoned;
    open_->end_ts = start.ts;
    abandoned = std::move(open_);
    open_.reset();
  }
  last_ = start;
  last_norm_ = normalize_orientation(start.state).state;
  stage_ = stage;
  focus_ = std::move(focus);
  lead_.clear();
  if (focus_) lead_ = {start};
  pending_.clear();
  pending_hint_.reset();
  refresh_pending();
  return abandoned;
}

void Tracer::set_stage(Stage stage) {
  if (stage == stage_) return;
  stage_ = stage;
  pending_.clear();
  refresh_pending();
}

std::optional<Focus> Tracer::next_pending() const {
  if (pending_.empty()) return std::nullopt;
  return Focus{pending_.front().second.kc, pending_.front().first};
}

void Tracer::note_hint(const Focus& target, int level) {
  if (open_) {
    open_->hint_level = std::max(open_->hint_level, level);
    return;
  }
  if (pending_hint_ && pending_hint_->first == target)
    pending_hint_->second = std::max(pending_hint_->second, level);
  else
    pending_hint_ = {target, level};
}

std::vector<Attempt> segment_attempts(const std::vector<Observation>& history, Stage stage) {
  std::vector<Attempt> out;
  if (history.empty()) return out;
  Tracer t(history.front(), stage);
  for (std::size_t i = 1; i < history.size(); ++i)
    for (auto& e : t.observe(history[i]).events)
      if (!e.opened) out.push_back(std::move(e.attempt));
  if (t.open_attempt()) out.push_back(*t.open_attempt());
  return out;
}

}  // namespace rubikon
