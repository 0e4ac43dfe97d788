#include <doctest.h>

#include <set>

#include "rubikon/hints.hpp"
#include "rubikon/solver.hpp"
#include "rubikon/taskgen.hpp"
#include "rubikon/tracing.hpp"

using namespace rubikon;

namespace {

const CubeState& reference() {
  static const CubeState r = normalize_orientation(CubeState::solved()).state;
  return r;
}

// Single Side instance: F from the reference lays the green-white edge on the
// front face's middle row.
CubeState side_state() { return apply_moves(reference(), parse_moves("F")); }

// F also unseats two corners, so the Side match is picked out by KC.
KcMatch side_match(const CubeState& s) {
  for (const KcMatch& m : match_kc(s))
    if (m.kc == KcId::Side) return m;
  FAIL("no Side match");
  return {};
}

bool expect_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("Side hint levels") {
  const CubeState s = side_state();
  const KcMatch m = side_match(s);

  const HintPayload h1 = make_hint(s, m.kc, m.piece, 1);
  CHECK(h1.highlight.count() == 4);
  CHECK(h1.grayout.empty());
  CHECK(h1.steps.empty());

  const HintPayload h3 = make_hint(s, m.kc, m.piece, 3);
  REQUIRE(h3.steps.size() == 1);
  CHECK(kc_goal_met(m.kc, m.piece, apply_move(s, h3.steps[0].move)));
  CHECK(h3.steps[0].annotation.find("face") != std::string::npos);
}

TEST_CASE("bad level and mismatched pairs are rejected") {
  const CubeState s = side_state();
  const KcMatch m = side_match(s);
  CHECK(expect_code(ErrorCode::BadLevel, [&] { make_hint(s, m.kc, m.piece, 0); }));
  CHECK(expect_code(ErrorCode::BadLevel, [&] { make_hint(s, m.kc, m.piece, 4); }));
  CHECK(expect_code(ErrorCode::PatternMismatch, [&] { make_hint(s, KcId::Back, m.piece, 1); }));
  CHECK(expect_code(ErrorCode::PatternMismatch, [&] { make_hint(reference(), KcId::Side, m.piece, 1); }));
}

TEST_CASE("annotations name faces in the normalized frame") {
  // Solved has White up; its D face is the normalized up face.
  CHECK(step_annotation(CubeState::solved(), Move::parse("D")) == "up face clockwise x1");
  CHECK(step_annotation(CubeState::solved(), Move::parse("F'")) == "front face counter-clockwise x1");
  CHECK(step_annotation(CubeState::solved(), Move::parse("R2")) == "left face x2");
}

TEST_CASE("monotone disclosure and level-3 soundness for every template") {
  const std::array<const char*, 4> frames = {"", "x2", "y z", "x' y2"};
  for (const KcInfo& k : kc_catalog()) {
    std::set<int> seen;
    for (std::uint64_t seed = 0; seen.size() < kc_templates(k.id).size() && seed < 5000; ++seed) {
      const GeneratedTask t = generate_task(k.id, seed);
      if (!seen.insert(t.template_index).second) continue;
      for (const char* f : frames) {
        const CubeState s = apply_moves(t.state, parse_moves(f));
        const HintPayload h1 = make_hint(s, t.kc, t.piece, 1);
        const HintPayload h2 = make_hint(s, t.kc, t.piece, 2);
        const HintPayload h3 = make_hint(s, t.kc, t.piece, 3);
        CHECK_FALSE(h1.highlight.empty());
        CHECK(h1.highlight == h2.highlight);
        CHECK(h2.highlight == h3.highlight);
        CHECK(h1.grayout.empty());
        CHECK(h2.grayout == h3.grayout);
        CHECK((h2.grayout & h2.highlight).empty());
        CHECK_FALSE(h2.grayout.empty());
        CHECK(h1.steps.empty());
        CHECK(h2.steps.empty());
        REQUIRE_FALSE(h3.steps.empty());

        CubeState end = s;
        for (const HintStep& st : h3.steps) end = apply_move(end, st.move);
        CHECK(kc_goal_met(t.kc, t.piece, end));
        // Destination stickers are where the piece sits after the macro.
        for (int i : piece_stickers(t.piece, end)) CHECK(h1.highlight.test(i));
        for (int i : piece_stickers(t.piece, s)) CHECK(h1.highlight.test(i));
      }
    }
    CHECK(seen.size() == kc_templates(k.id).size());
  }
}

TEST_CASE("placed stickers follow the stage") {
  CHECK(placed_stickers(reference(), Stage::WhiteFlower).count() == 6);
  CHECK(placed_stickers(reference(), Stage::WhiteCross).count() == 6 + 8);
  CHECK(placed_stickers(reference(), Stage::FourCorners).count() == 6 + 8 + 12);
  const CubeState daisy = apply_moves(reference(), parse_moves("F2 R2 B2 L2"));
  CHECK(placed_stickers(daisy, Stage::WhiteFlower).count() == 6 + 8);
  CHECK(placed_stickers(daisy, Stage::WhiteCross).count() == 6);
}

TEST_CASE("a level-2 hint on one of three successes scores 2.5") {
  const TracingParams params;
  SkillRecord rec;
  int served = 0;
  for (std::uint64_t seed = 0; served < 3; ++seed) {
    const GeneratedTask t = generate_task(KcId::Side, seed);
    Tracer tracer({t.state, 0}, Stage::WhiteFlower, Focus{t.kc, t.piece});
    if (served == 1) tracer.note_hint(Focus{t.kc, t.piece}, make_hint(t.state, t.kc, t.piece, 2).level);
    std::optional<Attempt> done;
    CubeState s = t.state;
    std::int64_t ts = 0;
    for (Move m : canonical_macro(t.kc, t.piece, t.state)) {
      s = apply_move(s, m);
      for (auto& e : tracer.observe({s, ts += 500}).events)
        if (!e.opened) done = e.attempt;
    }
    REQUIRE(done.has_value());
    const Grade g = grade_attempt(*done, params);
    done->ratio = g.ratio;
    done->success = g.success;
    REQUIRE(done->success);
    CHECK(done->hint_level == (served == 1 ? 2 : 0));
    rec = update_skill(rec, *done, params);
    ++served;
  }
  CHECK(rec.score == doctest::Approx(2.5));
  CHECK(rec.mastered);
}
