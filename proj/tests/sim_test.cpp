#include <doctest.h>

#include "rubikon/sim.hpp"

using namespace rubikon;

namespace {

SimConfig config(PolicyKind k, std::uint64_t seed) {
  SimConfig c;
  c.policy = k;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("Perfect learner masters every KC in exactly three attempts each") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const SimResult r = simulate(config(PolicyKind::Perfect, seed));
    CHECK(r.done);
    CHECK(r.mastered_count() == kKcCount);
    CHECK(r.closed_attempts == 3 * kKcCount);
    const ProcessMetrics m = compute_metrics(r.events);
    for (const auto& [kc, n] : m.exercise_counts) CHECK_MESSAGE(n == 3, to_string(kc));
    for (const SkillPoint& p : r.trajectory) CHECK(p.score == doctest::Approx(1.0 * std::min(3, 1 + static_cast<int>(&p - &r.trajectory.front()) % 3)));
  }
}

TEST_CASE("RandomWalk masters at most two KCs") {
  int total = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SimResult r = simulate(config(PolicyKind::RandomWalk, seed));
    CHECK(r.closed_attempts == 200);
    CHECK(r.mastered_count() <= 2);
    total += r.mastered_count();
  }
  MESSAGE("random walk mastered total " << total);
}

TEST_CASE("Noisy with p = 1 plays the Perfect transcript") {
  SimConfig noisy = config(PolicyKind::Noisy, 7);
  noisy.p = 1.0;
  CHECK(simulate(noisy).transcript == simulate(config(PolicyKind::Perfect, 7)).transcript);
}

TEST_CASE("simulation is deterministic") {
  for (PolicyKind k : {PolicyKind::Noisy, PolicyKind::RandomWalk, PolicyKind::HintSeeker}) {
    SimConfig c = config(k, 11);
    c.max_attempts = 40;
    const SimResult a = simulate(c);
    const SimResult b = simulate(c);
    CHECK(a.transcript == b.transcript);
    CHECK(a.events.size() == b.events.size());
  }
}

TEST_CASE("discrimination: Perfect > Noisy(0.7) > RandomWalk on mean mastery") {
  double perfect = 0, noisy = 0, walk = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SimConfig c = config(PolicyKind::Perfect, seed);
    c.max_attempts = 60;
    perfect += simulate(c).mastered_count();
    c.policy = PolicyKind::Noisy;
    c.p = 0.7;
    noisy += simulate(c).mastered_count();
    c.policy = PolicyKind::RandomWalk;
    walk += simulate(c).mastered_count();
  }
  MESSAGE("perfect " << perfect / 20 << " noisy " << noisy / 20 << " walk " << walk / 20);
  CHECK(perfect > noisy);
  CHECK(noisy > walk);
}

TEST_CASE("hint seekers are graded with hint weights") {
  SimConfig c = config(PolicyKind::HintSeeker, 5);
  c.hint_level = 1;
  c.max_attempts = 12;
  const SimResult r = simulate(c);
  // 3 x 0.8 = 2.4 is not above the threshold.
  CHECK(r.mastered_count() == 0);
  REQUIRE_FALSE(r.trajectory.empty());
  CHECK(r.trajectory.back().score == doctest::Approx(2.4));
  c.hint_level = 2;
  CHECK(simulate(c).mastered_count() == 0);
}

TEST_CASE("invalid configurations are rejected") {
  SimConfig c;
  c.p = 1.5;
  CHECK_THROWS_AS(simulate(c), Error);
  c = SimConfig{};
  c.hint_level = 0;
  CHECK_THROWS_AS(simulate(c), Error);
  CHECK(policy_from_string("random-walk") == PolicyKind::RandomWalk);
  CHECK_FALSE(policy_from_string("lazy").has_value());
}
