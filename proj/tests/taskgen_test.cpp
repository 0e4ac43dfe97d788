#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "rubikon/solver.hpp"
#include "rubikon/taskgen.hpp"
#include "rubikon/tracing.hpp"

using namespace rubikon;

namespace {

bool matched(const GeneratedTask& t) {
  for (const KcMatch& m : match_kc(t.state))
    if (m.kc == t.kc && m.piece == t.piece && m.template_index == t.template_index) return true;
  return false;
}

std::vector<SkillRow> rows_with(std::initializer_list<KcId> mastered) {
  auto rows = skillometer({});
  for (auto& r : rows)
    for (KcId k : mastered)
      if (r.kc == k) r.mastered = true;
  return rows;
}

// Stickers of the first-layer progress a context holds for a stage, found by
// scanning the facelets directly.
std::vector<int> placed_stickers(const CubeState& norm, Stage stage) {
  std::vector<int> out;
  static constexpr std::array<std::pair<int, int>, 4> petals = {{{1, 46}, {3, 37}, {5, 10}, {7, 19}}};
  static constexpr std::array<std::pair<int, int>, 4> cross = {{{28, 25}, {32, 16}, {34, 52}, {30, 43}}};
  static constexpr std::array<std::array<int, 3>, 4> corners = {{{29, 26, 15}, {27, 44, 24}, {33, 53, 42}, {35, 17, 51}}};
  auto centered = [&](int s) { return norm[s] == norm.center(face_of(s)); };
  if (stage == Stage::WhiteFlower)
    for (auto [u, side] : petals)
      if (norm[u] == Color::White) out.insert(out.end(), {u, side});
  if (stage != Stage::WhiteFlower)
    for (auto [d, side] : cross)
      if (norm[d] == Color::White && centered(side)) out.insert(out.end(), {d, side});
  if (stage == Stage::FourCorners)
    for (auto c : corners)
      if (norm[c[0]] == Color::White && centered(c[1]) && centered(c[2])) out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace

TEST_CASE("generated tasks are legal, matched, fresh and deterministic") {
  for (const KcInfo& k : kc_catalog()) {
    const std::size_t nt = kc_templates(k.id).size();
    std::map<int, int> counts;
    const int draws = static_cast<int>(std::max<std::size_t>(1000, 100 * nt));
    for (int seed = 0; seed < draws; ++seed) {
      const GeneratedTask t = generate_task(k.id, static_cast<std::uint64_t>(seed));
      REQUIRE(is_legal(t.state));
      REQUIRE(matched(t));
      CHECK_FALSE(kc_goal_met(t.kc, t.piece, t.state));
      counts[t.template_index]++;
      if (seed < 20) CHECK(generate_task(k.id, static_cast<std::uint64_t>(seed)).state == t.state);
    }
    CHECK(counts.size() == nt);
    const double expect = static_cast<double>(draws) / static_cast<double>(nt);
    for (auto [ti, n] : counts) {
      CHECK(n >= expect * 0.5);
      CHECK(n <= expect * 1.5);
    }
  }
}

TEST_CASE("Side and BackHarder cover their templates") {
  std::set<int> side, bh;
  for (std::uint64_t seed = 0; seed < 800; ++seed) side.insert(generate_task(KcId::Side, seed).template_index);
  for (std::uint64_t seed = 0; seed < 400; ++seed) bh.insert(generate_task(KcId::BackHarder, seed).template_index);
  CHECK(side.size() == 8);
  CHECK(bh.size() == 4);
}

TEST_CASE("target colors are randomized") {
  std::set<std::string> pieces;
  for (std::uint64_t seed = 0; seed < 200; ++seed) pieces.insert(generate_task(KcId::Side, seed).piece.to_string());
  CHECK(pieces.size() == 4);
}

TEST_CASE("every template's macro reaches the goal and grades as a success") {
  for (const KcInfo& k : kc_catalog()) {
    std::set<int> seen;
    for (std::uint64_t seed = 0; seen.size() < kc_templates(k.id).size() && seed < 5000; ++seed) {
      const GeneratedTask t = generate_task(k.id, seed);
      if (!seen.insert(t.template_index).second) continue;
      const auto macro = canonical_macro(t.kc, t.piece, t.state);
      CHECK(kc_goal_met(t.kc, t.piece, apply_moves(t.state, macro)));

      Tracer tracer({t.state, 0}, k.stage, Focus{t.kc, t.piece});
      CubeState s = t.state;
      std::optional<Attempt> done;
      std::int64_t ts = 0;
      for (Move m : macro) {
        s = apply_move(s, m);
        for (auto& e : tracer.observe({s, ts += 400}).events)
          if (!e.opened) done = e.attempt;
        if (done) break;
      }
      REQUIRE(done.has_value());
      CHECK(done->kc == t.kc);
      const Grade g = grade_attempt(*done, TracingParams{});
      CHECK(g.success);
    }
    CHECK(seen.size() == kc_templates(k.id).size());
  }
}

TEST_CASE("context: placed pieces are kept") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const CubeState s = scramble(seed).state;
    const auto sol = solve_first_layer(s);
    const CubeState ctx = apply_moves(s, std::span<const Move>(sol.data(), sol.size() * (seed % 4) / 4));
    const CubeState ctx_norm = normalize_orientation(ctx).state;
    for (const KcInfo& k : kc_catalog()) {
      if (compatible_templates(k.id, ctx).empty()) {
        CHECK_THROWS_AS(generate_task(k.id, seed, ctx), Error);
        continue;
      }
      GeneratedTask t{};
      try {
        t = generate_task(k.id, seed, ctx);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsatisfiableContext);
        continue;
      }
      REQUIRE(matched(t));
      for (int i : placed_stickers(ctx_norm, k.stage)) CHECK(t.state[i] == ctx_norm[i]);
    }
  }
}

TEST_CASE("a full daisy leaves no flower task") {
  const CubeState ref = normalize_orientation(CubeState::solved()).state;
  const CubeState daisy = apply_moves(ref, parse_moves("F2 R2 B2 L2"));
  for (KcId k : {KcId::Side, KcId::Back, KcId::FrontHarder, KcId::BackHarder, KcId::Maintain}) {
    CHECK(compatible_templates(k, daisy).empty());
    try {
      generate_task(k, 1, daisy);
      FAIL("expected UnsatisfiableContext");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnsatisfiableContext);
    }
  }
  CHECK_FALSE(compatible_templates(KcId::Match, daisy).empty());
}

TEST_CASE("illegal context is rejected") {
  const CubeState bad = CubeState::solved().with_sticker(0, Color::Red).with_sticker(9, Color::White);
  CHECK_THROWS_AS(generate_task(KcId::Side, 1, bad), Error);
}

TEST_CASE("pick_next_kc") {
  CHECK(pick_next_kc(skillometer({})) == KcId::Side);
  CHECK(pick_next_kc(rows_with({KcId::Side})) == KcId::Back);
  CHECK(pick_next_kc(rows_with({KcId::Side, KcId::Back, KcId::FrontHarder, KcId::BackHarder, KcId::Maintain})) ==
        KcId::Match);
  CHECK(pick_next_kc(rows_with({KcId::Side, KcId::Back, KcId::FrontHarder, KcId::BackHarder, KcId::Maintain,
                                KcId::Match})) == KcId::LeftCorner);
  // Equal stars go by catalog order.
  CHECK(pick_next_kc(rows_with({KcId::Side, KcId::Back})) == KcId::FrontHarder);
  auto rows = skillometer({});
  for (auto& r : rows) r.mastered = true;
  CHECK_FALSE(pick_next_kc(rows).has_value());
}
