#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "rubikon/tracing.hpp"

using namespace rubikon;

namespace {

CubeState reference() { return normalize_orientation(CubeState::solved()).state; }

// Naive BFS distances from `target` (normalized strings), up to `radius`.
std::map<std::string, int> oracle(const CubeState& target, int radius) {
  std::map<std::string, int> depth;
  std::vector<CubeState> frontier{normalize_orientation(target).state};
  depth[frontier[0].to_string()] = 0;
  for (int d = 1; d <= radius; ++d) {
    std::vector<CubeState> next;
    for (const CubeState& s : frontier)
      for (Move m : Move::quarter_turns()) {
        CubeState t = apply_move(s, m);
        if (depth.emplace(t.to_string(), d).second) next.push_back(t);
      }
    frontier = std::move(next);
  }
  return depth;
}

Attempt closed_attempt(const CubeState& start, const std::vector<Move>& moves) {
  Attempt a;
  a.kc = KcId::Side;
  a.outcome = AttemptOutcome::Completed;
  CubeState s = start;
  std::int64_t ts = 0;
  a.states.push_back({s, ts});
  for (Move m : moves) {
    s = apply_move(s, m);
    a.states.push_back({s, ts += 1000});
  }
  a.end_ts = ts;
  return a;
}

Attempt graded(bool success, int hint) {
  Attempt a;
  a.outcome = AttemptOutcome::Completed;
  a.success = success;
  a.hint_level = hint;
  return a;
}

double score_of(std::initializer_list<int> hints) {
  SkillRecord r;
  for (int h : hints) r = update_skill(r, graded(true, h), TracingParams{});
  return r.score;
}

bool mastered_of(std::initializer_list<int> hints) {
  SkillRecord r;
  for (int h : hints) r = update_skill(r, graded(true, h), TracingParams{});
  return r.mastered;
}

std::vector<Observation> play(const CubeState& start, const std::vector<Move>& moves) {
  std::vector<Observation> h{{start, 0}};
  CubeState s = start;
  std::int64_t ts = 0;
  for (Move m : moves) {
    s = apply_move(s, m);
    h.push_back({s, ts += 500});
  }
  return h;
}

}  // namespace

TEST_CASE("infer_move inverts apply_move") {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    const CubeState s = scramble(rng.next()).state;
    CHECK_FALSE(infer_move(s, s).has_value());
    for (Move m : Move::all()) {
      const auto got = infer_move(s, apply_move(s, m));
      REQUIRE(got.has_value());
      CHECK(*got == m);
    }
  }
}

TEST_CASE("two face turns are not one move") {
  const CubeState s = scramble(4).state;
  const CubeState t = apply_moves(s, parse_moves("R U"));
  try {
    infer_move(s, t);
    FAIL("expected NotOneMove");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotOneMove);
  }
  const auto path = reconcile(s, t);
  REQUIRE(path.has_value());
  CHECK(apply_moves(s, *path) == t);
  // Orientation differences are absorbed; R R folds into a half turn.
  const CubeState u = apply_moves(s, parse_moves("R R y"));
  const auto folded = reconcile(s, u);
  REQUIRE(folded.has_value());
  CHECK(folded->size() == 1);
  CHECK(folded->front().amount() == Amount::Half);
  CHECK_FALSE(reconcile(s, apply_moves(s, parse_moves("R U F"))).has_value());
}

TEST_CASE("perfect descent grades 1.0, states denominator grades 0.8") {
  const CubeState target = scramble(17).state;
  const auto seq = parse_moves("R U F L");
  const CubeState start = apply_moves(target, inverse(seq));
  const Attempt a = closed_attempt(start, seq);
  const auto dist = oracle(target, 4);
  std::vector<int> expected;
  for (const auto& o : a.states) expected.push_back(dist.at(normalize_orientation(o.state).state.to_string()));
  CHECK(expected == std::vector<int>{4, 3, 2, 1, 0});

  const Grade g = grade_attempt(a, TracingParams{});
  REQUIRE(g.distances.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(g.distances[i].value() == expected[i]);
  CHECK(g.ratio == 1.0);
  CHECK(g.success);

  TracingParams literal;
  literal.denominator = TracingParams::Denominator::States;
  const Grade l = grade_attempt(a, literal);
  CHECK(l.ratio == 4.0 / 5.0);
  CHECK_FALSE(l.success);
}

TEST_CASE("wandering attempt fails") {
  const CubeState target = scramble(23).state;
  const auto wander = parse_moves("F F' L L' B B' D D' L L' U' R'");
  const CubeState start = apply_moves(target, parse_moves("R U"));
  const Attempt a = closed_attempt(start, wander);
  REQUIRE(a.states.back().state == target);
  const auto dist = oracle(target, 4);
  int dropping = 0;
  for (std::size_t i = 0; i + 1 < a.states.size(); ++i) {
    const int x = dist.at(normalize_orientation(a.states[i].state).state.to_string());
    const int y = dist.at(normalize_orientation(a.states[i + 1].state).state.to_string());
    if (y < x) ++dropping;
  }
  CHECK(dropping * 10 <= 6 * 12);
  const Grade g = grade_attempt(a, TracingParams{});
  CHECK(g.ratio == doctest::Approx(static_cast<double>(dropping) / 12));
  CHECK_FALSE(g.success);
}

TEST_CASE("ExceedsCap transitions never count as dropping") {
  const CubeState target = reference();
  const auto far = scramble(8).state;
  Attempt a;
  a.outcome = AttemptOutcome::Completed;
  a.states = {{far, 0}, {apply_move(target, Move::parse("R")), 1}, {target, 2}};
  TracingParams p;
  const Grade g = grade_attempt(a, p);
  CHECK_FALSE(g.distances[0].finite());
  CHECK(g.ratio == 0.5);
}

TEST_CASE("grading open attempts is an error") {
  Attempt a;
  a.states = {{reference(), 0}, {reference(), 1}};
  CHECK_THROWS_AS(grade_attempt(a, TracingParams{}), Error);
}

TEST_CASE("prepending approaching states never lowers the ratio") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const CubeState target = scramble(rng.next()).state;
    std::vector<Move> tail;
    for (int i = 0; i < 3; ++i) tail.push_back(Move::quarter_turns()[rng.uniform(12)]);
    const CubeState mid = apply_moves(target, inverse(tail));
    Attempt a = closed_attempt(mid, tail);
    const auto base = grade_attempt(a, TracingParams{});
    if (!base.distances[0].finite() || base.distances[0].value() >= 5) continue;
    // Prepend a state one quarter turn further away.
    for (Move m : Move::quarter_turns()) {
      const CubeState before = apply_move(mid, inverse(m));
      if (min_steps(before, target, 7).value() != base.distances[0].value() + 1) continue;
      Attempt b = a;
      b.states.insert(b.states.begin(), Observation{before, -1});
      CHECK(grade_attempt(b, TracingParams{}).ratio >= base.ratio);
      break;
    }
  }
}

TEST_CASE("mastery triples") {
  CHECK(score_of({0, 0, 0}) == 3.0);
  CHECK(mastered_of({0, 0, 0}));
  CHECK(score_of({0, 2, 0}) == 2.5);
  CHECK(mastered_of({0, 2, 0}));
  CHECK(score_of({0, 3, 0}) == 2.0);
  CHECK_FALSE(mastered_of({0, 3, 0}));
  // Exactly the threshold is not above it.
  CHECK(score_of({1, 1, 1}) == doctest::Approx(2.4));
  CHECK_FALSE(mastered_of({1, 1, 1}));
}

TEST_CASE("window eviction drops mastery after one failure") {
  TracingParams p;
  SkillRecord r;
  for (int i = 0; i < 3; ++i) r = update_skill(r, graded(true, 0), p);
  CHECK(r.mastered);
  r = update_skill(r, graded(false, 0), p);
  CHECK(r.score == 2.0);
  CHECK_FALSE(r.mastered);
  CHECK(r.recent.size() == 3);
  CHECK(r.attempts_seen == 4);
}

TEST_CASE("raising a hint level never raises the score") {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<bool, int>> xs;
    for (int i = 0; i < 3; ++i) xs.push_back({rng.uniform(2) == 1, static_cast<int>(rng.uniform(4))});
    auto score = [](const auto& v) {
      SkillRecord r;
      for (auto [s, h] : v) r = update_skill(r, graded(s, h), TracingParams{});
      return r.score;
    };
    const double base = score(xs);
    const std::size_t i = rng.uniform(3);
    if (xs[i].second == 3) continue;
    auto raised = xs;
    raised[i].second++;
    CHECK(score(raised) <= base);
  }
}

TEST_CASE("parameter validation") {
  TracingParams p;
  CHECK_NOTHROW(p.validate());
  p.weights = {1.0, 0.5, 0.8, 0.0};
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.n = 0;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("skillometer rows") {
  const auto fresh = skillometer({});
  REQUIRE(fresh.size() == 11);
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    CHECK(fresh[i].kc == kc_catalog()[i].id);
    CHECK(fresh[i].score == 0.0);
    CHECK_FALSE(fresh[i].mastered);
    CHECK(fresh[i].attempts_seen == 0);
  }
  SkillRecords recs;
  for (int i = 0; i < 3; ++i) {
    Attempt a = graded(true, 0);
    a.kc = KcId::Side;
    recs[KcId::Side] = update_skill(recs[KcId::Side], a, TracingParams{});
  }
  const auto rows = skillometer(recs);
  int mastered = 0;
  for (const auto& r : rows) mastered += r.mastered;
  CHECK(rows[0].mastered);
  CHECK(mastered == 1);
}

TEST_CASE("Side macro replay is one Side attempt") {
  const CubeState s = apply_move(reference(), Move::parse("F"));
  const TargetPiece wg = TargetPiece::edge(Color::Green);
  const auto macro = canonical_macro(KcId::Side, wg, s);
  const auto attempts = segment_attempts(play(s, macro), Stage::WhiteFlower);
  REQUIRE(attempts.size() == 1);
  CHECK(attempts[0].kc == KcId::Side);
  CHECK(attempts[0].piece == wg);
  CHECK(attempts[0].outcome == AttemptOutcome::Completed);
  CHECK(grade_attempt(attempts[0], TracingParams{}).success);
}

TEST_CASE("two sequential petal insertions are two disjoint attempts") {
  // F and R each drop a cross edge into the middle layer.
  const CubeState s = apply_moves(reference(), parse_moves("F R"));
  std::vector<Move> moves;
  CubeState cur = s;
  for (int i = 0; i < 2; ++i) {
    const auto ms = match_kc(cur);
    const auto it = std::find_if(ms.begin(), ms.end(),
                                 [](const KcMatch& m) { return kc_info(m.kc).stage == Stage::WhiteFlower; });
    REQUIRE(it != ms.end());
    const auto macro = canonical_macro(it->kc, it->piece, cur);
    cur = apply_moves(cur, macro);
    moves.insert(moves.end(), macro.begin(), macro.end());
  }
  const auto attempts = segment_attempts(play(s, moves), Stage::WhiteFlower);
  REQUIRE(attempts.size() == 2);
  CHECK(attempts[0].end_ts <= attempts[1].start_ts);
  CHECK_FALSE(attempts[0].piece == attempts[1].piece);
}

TEST_CASE("history without pattern matches yields no attempts") {
  CHECK(segment_attempts(play(reference(), parse_moves("U U U' U2")), Stage::WhiteFlower).empty());
  CHECK(segment_attempts({}, Stage::WhiteFlower).empty());
}

TEST_CASE("reorientations are merged out of attempts") {
  const CubeState s = apply_move(reference(), Move::parse("F"));
  const TargetPiece wg = TargetPiece::edge(Color::Green);
  Tracer t({s, 0}, Stage::WhiteFlower);
  const CubeState r = apply_move(s, Move::parse("y"));
  auto step = t.observe({r, 10});
  CHECK(step.events.empty());
  const auto macro = canonical_macro(KcId::Side, wg, r);
  step = t.observe({apply_moves(r, macro), 20});
  REQUIRE(step.events.size() == 2);
  CHECK(step.events[1].attempt.states.size() == 2);
}

TEST_CASE("focus restricts attempts to the task piece") {
  const CubeState s = apply_moves(reference(), parse_moves("F R"));
  const auto ms = match_kc(s);
  REQUIRE(ms.size() >= 2);
  const Focus f{ms.back().kc, ms.back().piece};
  Tracer t({s, 0}, kc_info(f.kc).stage, f);
  // Moving any other matched piece opens nothing.
  for (const auto& m : ms) {
    if (m.piece == f.piece) continue;
    const auto macro = canonical_macro(m.kc, m.piece, s);
    Tracer probe({s, 0}, kc_info(f.kc).stage, f);
    CubeState cur = s;
    for (Move mv : macro) {
      cur = apply_move(cur, mv);
      const auto step = probe.observe({cur, 1});
      for (const auto& e : step.events) CHECK(e.attempt.piece == f.piece);
    }
  }
}

TEST_CASE("hint accounting") {
  const CubeState s = apply_move(reference(), Move::parse("F"));
  const TargetPiece wg = TargetPiece::edge(Color::Green);
  Tracer t({s, 0}, Stage::WhiteFlower);
  t.note_hint({KcId::Side, wg}, 2);
  t.note_hint({KcId::Side, wg}, 1);
  const auto macro = canonical_macro(KcId::Side, wg, s);
  const auto step = t.observe({apply_moves(s, macro), 5});
  REQUIRE(step.events.size() == 2);
  CHECK(step.events[1].attempt.hint_level == 2);
}

TEST_CASE("dropped frames are reconciled, long gaps are discontinuities") {
  const CubeState s = apply_move(reference(), Move::parse("F"));
  Tracer t({s, 0}, Stage::WhiteFlower);
  const auto step = t.observe({apply_moves(s, parse_moves("U R")), 1});
  CHECK(step.reconciled);
  CHECK(step.moves.size() == 2);
  const auto gap = t.observe({apply_moves(t.last().state, parse_moves("R U F L")), 2});
  CHECK(gap.discontinuity);
}

TEST_CASE("reset abandons an open attempt") {
  const CubeState s = apply_moves(reference(), parse_moves("F"));
  Tracer t({s, 0}, Stage::WhiteFlower);
  // Moving the piece the wrong way opens the attempt without finishing it.
  const TargetPiece wg = TargetPiece::edge(Color::Green);
  const Move lift = canonical_macro(KcId::Side, wg, s)[0];
  t.observe({apply_move(s, inverse(lift)), 1});
  REQUIRE(t.open_attempt().has_value());
  const auto abandoned = t.reset({reference(), 2}, Stage::WhiteFlower, std::nullopt);
  REQUIRE(abandoned.has_value());
  CHECK(abandoned->outcome == AttemptOutcome::Abandoned);
  CHECK_FALSE(t.open_attempt().has_value());
}
