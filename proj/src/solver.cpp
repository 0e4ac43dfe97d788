#include "rubikon/solver.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "frame.hpp"
#include "rubikon/task_model.hpp"

namespace rubikon {

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::WhiteFlower: return "white_flower";
    case Stage::WhiteCross: return "white_cross";
    case Stage::FourCorners: return "four_corners";
  }
  return "unknown";
}

std::optional<Stage> stage_from_string(std::string_view s) {
  for (Stage st : kStages)
    if (to_string(st) == s) return st;
  return std::nullopt;
}

namespace {

CubeState legal_normalized(const CubeState& s, const char* what) {
  if (!is_legal(s)) throw Error(ErrorCode::IllegalState, std::string(what) + " is not a reachable cube");
  return normalize_orientation(s).state;
}

using Layer = std::vector<CubeState>;
using Seen = std::unordered_map<StateKey, int, StateKeyHash>;

// Expands one full BFS layer; returns the new frontier.
Layer expand(const Layer& frontier, Seen& seen, int depth) {
  Layer next;
  for (const CubeState& s : frontier) {
    for (Move m : Move::quarter_turns()) {
      CubeState t = apply_move(s, m);
      if (seen.try_emplace(pack(t), depth).second) next.push_back(std::move(t));
    }
  }
  return next;
}

}  // namespace

DistanceResult min_steps(const CubeState& from, const CubeState& to, int cap) {
  if (cap < 0) throw Error(ErrorCode::InvalidArgument, "cap must be non-negative");
  const CubeState a = legal_normalized(from, "source");
  const CubeState b = legal_normalized(to, "target");
  if (a == b) return DistanceResult::exact(0, cap);

  Seen seen_a{{pack(a), 0}};
  Seen seen_b{{pack(b), 0}};
  Layer front_a{a};
  Layer front_b{b};
  int da = 0;
  int db = 0;
  while (da + db < cap && !front_a.empty() && !front_b.empty()) {
    const bool grow_a = front_a.size() <= front_b.size();
    Seen& mine = grow_a ? seen_a : seen_b;
    const Seen& other = grow_a ? seen_b : seen_a;
    Layer& front = grow_a ? front_a : front_b;
    int& depth = grow_a ? da : db;
    ++depth;
    front = expand(front, mine, depth);
    int best = -1;
    for (const CubeState& s : front) {
      auto it = other.find(pack(s));
      if (it != other.end() && (best < 0 || it->second < best)) best = it->second;
    }
    if (best >= 0) return DistanceResult::exact(depth + best, cap);
  }
  return DistanceResult::exceeds(cap);
}

namespace {

using CubieSeen = std::unordered_map<cubie::CubieKey, int, cubie::CubieKeyHash>;
using CubieLayer = std::vector<cubie::CubieState>;

CubieLayer expand(const CubieLayer& frontier, CubieSeen& seen, int depth) {
  CubieLayer next;
  next.reserve(frontier.size() * 10);
  for (const cubie::CubieState& s : frontier) {
    for (Move m : Move::quarter_turns()) {
      cubie::CubieState t = cubie::apply_move(s, m);
      if (seen.try_emplace(cubie::key(t), depth).second) next.push_back(t);
    }
  }
  return next;
}

// Balls around the identity, shared by every table: distances are measured
// on states relabeled so the target reads as the identity.
const CubieSeen& reference_ball(int radius) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CubieSeen>> balls;
  std::lock_guard lock(mu);
  auto& ball = balls[radius];
  if (!ball) {
    ball = std::make_unique<CubieSeen>();
    const cubie::CubieState id = cubie::CubieState::identity();
    ball->emplace(cubie::key(id), 0);
    CubieLayer front{id};
    for (int d = 1; d <= radius && !front.empty(); ++d) front = expand(front, *ball, d);
  }
  return *ball;
}

cubie::CubieState pieces_of(const CubeState& normalized) { return *cubie::from_facelets(normalized); }

// Visits every non-backtracking path of exactly `left` more quarter turns and
// scores its endpoint against the ball. Revisits only add longer candidates.
void probe(const cubie::CubieState& s, int depth, int left, int last, int& best, const CubieSeen& ball) {
  if (left == 0) {
    auto it = ball.find(cubie::key(s));
    if (it != ball.end() && (best < 0 || depth + it->second < best)) best = depth + it->second;
    return;
  }
  const auto& turns = Move::quarter_turns();
  static const std::array<int, 12> undo = [&turns] {
    std::array<int, 12> u{};
    for (std::size_t i = 0; i < turns.size(); ++i)
      u[i] = static_cast<int>(std::find(turns.begin(), turns.end(), inverse(turns[i])) - turns.begin());
    return u;
  }();
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (last >= 0 && static_cast<int>(i) == undo[static_cast<std::size_t>(last)]) continue;
    probe(cubie::apply_move(s, turns[i]), depth, left - 1, static_cast<int>(i), best, ball);
  }
}

}  // namespace

DistanceTable::DistanceTable(const CubeState& target, int cap) : cap_(cap), forward_radius_(0), ball_(nullptr) {
  if (cap < 0) throw Error(ErrorCode::InvalidArgument, "cap must be non-negative");
  target_ = pieces_of(legal_normalized(target, "target"));
  const int back_radius = (cap + 1) / 2;
  forward_radius_ = cap - back_radius;
  ball_ = &reference_ball(back_radius);
}

DistanceResult DistanceTable::distance_from(const CubeState& state) {
  const cubie::CubieState s = cubie::relative_to(pieces_of(legal_normalized(state, "state")), target_);
  const cubie::CubieKey k = cubie::key(s);
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;

  // A path of length L <= cap passes a node at forward depth min(L, f) whose
  // remaining distance is at most the ball radius, so scanning every forward
  // layer against the ball finds the exact minimum.
  int best = -1;
  for (int d = 0;; ++d) {
    probe(s, d, d, -1, best, *ball_);
    if ((best >= 0 && best <= d + 1) || d == forward_radius_) break;
  }
  const DistanceResult r = best >= 0 && best <= cap_ ? DistanceResult::exact(best, cap_)
                                                     : DistanceResult::exceeds(cap_);
  memo_.emplace(k, r);
  return r;
}

namespace {

bool sides_match(const CubeState& s, std::initializer_list<int> rows_cols) {
  for (Face x : frame::kRing)
    for (int i : rows_cols)
      if (s[sticker(x, i)] != s.center(x)) return false;
  return true;
}

}  // namespace

bool stage_goal_met(const CubeState& state, Stage stage) {
  const CubeState s = normalize_orientation(state).state;
  switch (stage) {
    case Stage::WhiteFlower:
      for (Face x : frame::kRing)
        if (!frame::petal_at(s, x)) return false;
      return true;
    case Stage::WhiteCross:
      for (int i : {1, 3, 5, 7})
        if (s[sticker(Face::D, i)] != Color::White) return false;
      return sides_match(s, {7});
    case Stage::FourCorners:
      for (int i = 0; i < 9; ++i)
        if (s[sticker(Face::D, i)] != Color::White) return false;
      return sides_match(s, {6, 7, 8});
  }
  return false;
}

StickerMask stage_mask(Stage stage) {
  StickerMask m;
  switch (stage) {
    case Stage::WhiteFlower:
      for (int i : {1, 3, 4, 5, 7}) m.set(sticker(Face::U, i));
      break;
    case Stage::WhiteCross:
      for (int i : {1, 3, 4, 5, 7}) m.set(sticker(Face::D, i));
      for (Face x : frame::kRing)
        for (int i : {4, 7}) m.set(sticker(x, i));
      break;
    case Stage::FourCorners:
      for (int i = 0; i < 9; ++i) m.set(sticker(Face::D, i));
      for (Face x : frame::kRing)
        for (int i : {4, 6, 7, 8}) m.set(sticker(x, i));
      break;
  }
  return m;
}

namespace {

int cost(std::span<const Move> ms) {
  int c = 0;
  for (Move m : ms) c += m.quarter_turns_cost();
  return c;
}

bool in_stage(KcId kc, Stage st) { return kc_info(kc).stage == st; }

// Shortest macro among matches of the stage, ties by match order.
std::optional<std::vector<Move>> pick(const CubeState& s, Stage st, bool allow_underneath) {
  std::optional<std::vector<Move>> best;
  for (const KcMatch& m : match_kc(s)) {
    if (!in_stage(m.kc, st)) continue;
    if (!allow_underneath && m.kc == KcId::Underneath) continue;
    std::vector<Move> macro = canonical_macro(m.kc, m.piece, s);
    if (!best || cost(macro) < cost(*best)) best = std::move(macro);
  }
  return best;
}

}  // namespace

std::vector<Move> solve_first_layer(const CubeState& state) {
  if (!is_legal(state)) throw Error(ErrorCode::IllegalState, "state is not a reachable cube");
  std::vector<Move> out;
  CubeState s = state;
  auto play = [&](const std::vector<Move>& ms) {
    s = apply_moves(s, ms);
    out.insert(out.end(), ms.begin(), ms.end());
  };
  // Each flower macro adds a petal and keeps the others, each cross macro
  // seats one edge, each corner macro seats or lifts one corner.
  while (auto ms = pick(s, Stage::WhiteFlower, true)) play(*ms);
  while (auto ms = pick(s, Stage::WhiteCross, true)) play(*ms);
  for (int guard = 0; guard < 64 && !stage_goal_met(s, Stage::FourCorners); ++guard) {
    if (auto ms = pick(s, Stage::FourCorners, false)) {
      play(*ms);
    } else if (auto under = pick(s, Stage::FourCorners, true)) {
      play(*under);
    } else {
      // Only white-up corners away from home remain: rotate the top layer.
      const Face up = *s.face_with_center(opposite(Color::White));
      play({Move::turn(up, Amount::CW)});
    }
  }
  return out;
}

}  // namespace rubikon
