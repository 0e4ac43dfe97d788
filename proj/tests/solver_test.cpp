#include <doctest.h>

#include <map>
#include <string>

#include "rubikon/solver.hpp"
#include "rubikon/task_model.hpp"

using namespace rubikon;

namespace {

CubeState canon(const CubeState& s) { return normalize_orientation(s).state; }

// Plain forward BFS from solved over the 12 quarter turns, keyed by the
// normalized facelet string.
std::map<std::string, int> oracle_ball(int radius) {
  std::map<std::string, int> depth;
  std::vector<CubeState> frontier{canon(CubeState::solved())};
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

CubeState random_walk(const CubeState& from, Rng& rng, int n) {
  CubeState s = from;
  for (int i = 0; i < n; ++i) s = apply_move(s, Move::all()[rng.uniform(27)]);
  return s;
}

}  // namespace

TEST_CASE("min_steps agrees with a plain BFS oracle on the radius-4 ball") {
  const auto ball = oracle_ball(4);
  CHECK(ball.size() == 1 + 12 + 114 + 1068 + 10011);
  for (const auto& [text, d] : ball) {
    const DistanceResult r = min_steps(CubeState::parse(text), CubeState::solved(), 7);
    REQUIRE(r.finite());
    CHECK(r.value() == d);
  }
}

TEST_CASE("min_steps basics") {
  const CubeState s = CubeState::solved();
  CHECK(min_steps(s, s, 0) == DistanceResult::exact(0, 0));
  const CubeState r = apply_move(s, Move::parse("R"));
  CHECK(min_steps(r, s, 4).value() == 1);
  CHECK(min_steps(apply_move(s, Move::parse("R2")), s, 4).value() == 2);
  CHECK(min_steps(apply_moves(s, parse_moves("R U R' U'")), s, 7).value() == 4);
  CHECK_FALSE(min_steps(apply_moves(s, parse_moves("R U R' U'")), s, 3).finite());
  // Reorientations are free.
  CHECK(min_steps(apply_moves(s, parse_moves("x y2 z'")), s, 0).value() == 0);
  CHECK_THROWS_AS(min_steps(s.with_sticker(0, Color::Yellow), s, 3), Error);
  try {
    min_steps(s, s.with_sticker(0, Color::Yellow), 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllegalState);
  }
}

TEST_CASE("ExceedsCap ordering") {
  const auto inf = DistanceResult::exceeds(7);
  CHECK(DistanceResult::exact(7, 7) < inf);
  CHECK(inf == DistanceResult::exceeds(3));
  CHECK(DistanceResult::exact(2, 7) < DistanceResult::exact(3, 7));
}

TEST_CASE("a single face turn is one or two quarter turns away") {
  Rng rng(11);
  for (int i = 0; i < 30; ++i) {
    const CubeState s = scramble(rng.next()).state;
    for (Move m : Move::all()) {
      if (!m.is_turn()) continue;
      CHECK(min_steps(s, apply_move(s, m), 2).value() == m.quarter_turns_cost());
    }
  }
}

TEST_CASE("symmetry and triangle inequality") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const CubeState a = scramble(rng.next()).state;
    const CubeState b = random_walk(a, rng, 1 + static_cast<int>(rng.uniform(4)));
    const CubeState c = random_walk(b, rng, 1 + static_cast<int>(rng.uniform(3)));
    const auto ab = min_steps(a, b, 7);
    CHECK(ab == min_steps(b, a, 7));
    const auto bc = min_steps(b, c, 7);
    const auto ac = min_steps(a, c, 7);
    if (ab.finite() && bc.finite() && ac.finite()) CHECK(ac.value() <= ab.value() + bc.value());
  }
}

TEST_CASE("scrambles are beyond a small cap") {
  int exceeded = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto sc = scramble(seed, 25);
    const auto r = min_steps(sc.state, CubeState::solved(), 5);
    if (!r.finite()) {
      ++exceeded;
    } else {
      // Any finite answer must be witnessed by an actual path.
      CHECK(oracle_ball(r.value()).count(canon(sc.state).to_string()) == 1);
    }
  }
  CHECK(exceeded >= 99);
}

TEST_CASE("DistanceTable matches min_steps") {
  Rng rng(21);
  for (int cap : {0, 1, 4, 7}) {
    const CubeState target = scramble(rng.next()).state;
    DistanceTable table(target, cap);
    for (int i = 0; i < 60; ++i) {
      const CubeState s = random_walk(target, rng, static_cast<int>(rng.uniform(9)));
      CHECK(table.distance_from(s) == min_steps(s, target, cap));
      CHECK(table.distance_from(s) == min_steps(s, target, cap));  // memoized path
    }
  }
}

TEST_CASE("stage predicates") {
  const CubeState s = CubeState::solved();
  CHECK(stage_goal_met(s, Stage::FourCorners));
  CHECK(stage_goal_met(s, Stage::WhiteCross));
  CHECK_FALSE(stage_goal_met(s, Stage::WhiteFlower));
  // Turning the top layer keeps the first layer.
  CHECK(stage_goal_met(apply_move(s, Move::parse("D")), Stage::FourCorners));
  CHECK_FALSE(stage_goal_met(apply_move(s, Move::parse("R")), Stage::WhiteCross));
  // Lifting all four cross edges with half turns builds the flower.
  const CubeState ref = canon(s);
  const CubeState daisy = apply_moves(ref, parse_moves("F2 R2 B2 L2"));
  CHECK(stage_goal_met(daisy, Stage::WhiteFlower));
  CHECK_FALSE(stage_goal_met(daisy, Stage::WhiteCross));
  CHECK(stage_goal_met(apply_moves(daisy, parse_moves("x y")), Stage::WhiteFlower));
}

TEST_CASE("stage masks") {
  CHECK(stage_mask(Stage::WhiteFlower).count() == 5);
  CHECK(stage_mask(Stage::WhiteCross).count() == 5 + 8);
  CHECK(stage_mask(Stage::FourCorners).count() == 9 + 16);
  // Predicates depend only on masked stickers: the reference satisfies cross
  // and corners, and so does anything agreeing with it on the mask.
  const CubeState ref = canon(CubeState::solved());
  const CubeState top_scrambled = apply_moves(ref, parse_moves("U R U R' U' R' F R F' U2"));
  for (Stage st : {Stage::WhiteCross, Stage::FourCorners})
    CHECK(stage_mask(st).equal_on(ref, top_scrambled) == stage_goal_met(top_scrambled, st));
}

TEST_CASE("solve_first_layer reaches the first layer within budget") {
  CHECK(solve_first_layer(CubeState::solved()).empty());
  CHECK(solve_first_layer(apply_move(CubeState::solved(), Move::parse("D"))).empty());
  std::size_t longest = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const CubeState s = scramble(seed).state;
    const auto moves = solve_first_layer(s);
    REQUIRE(stage_goal_met(apply_moves(s, moves), Stage::FourCorners));
    longest = std::max(longest, moves.size());
    if (seed < 200) CHECK(moves.size() <= 60);
  }
  MESSAGE("longest first-layer solution: " << longest);
}

TEST_CASE("a cross-ready corner is solved by its trigger") {
  const CubeState ref = canon(CubeState::solved());
  // Lift the front-right corner with R U R', then the trigger puts it back.
  const CubeState s = apply_moves(ref, parse_moves("R U R' U'"));
  const auto moves = solve_first_layer(s);
  CHECK(stage_goal_met(apply_moves(s, moves), Stage::FourCorners));
  CHECK(moves.size() <= 4);
}
