#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rubikon/cube.hpp"
#include "rubikon/cubie.hpp"

namespace rubikon {

enum class Stage : std::uint8_t { WhiteFlower, WhiteCross, FourCorners };
inline constexpr std::array<Stage, 3> kStages = {Stage::WhiteFlower, Stage::WhiteCross,
                                                 Stage::FourCorners};

std::string_view to_string(Stage s);
std::optional<Stage> stage_from_string(std::string_view s);

// Quarter-turn distance bounded by a cap. ExceedsCap orders above every
// finite value and equal to itself.
class DistanceResult {
 public:
  static DistanceResult exact(int value, int cap) { return DistanceResult(value, cap); }
  static DistanceResult exceeds(int cap) { return DistanceResult(-1, cap); }

  bool finite() const { return value_ >= 0; }
  int value() const { return value_; }  // -1 when ExceedsCap
  int cap() const { return cap_; }

  std::strong_ordering operator<=>(const DistanceResult& o) const {
    if (finite() != o.finite()) return finite() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (!finite()) return std::strong_ordering::equal;
    return value_ <=> o.value_;
  }
  bool operator==(const DistanceResult& o) const { return (*this <=> o) == 0; }

 private:
  DistanceResult(int v, int c) : value_(v), cap_(c) {}
  int value_;
  int cap_;
};

inline constexpr int kDefaultDistanceCap = 7;

// Exact quarter-turn distance between the two states with whole-cube
// reorientations free, by bidirectional breadth-first search. Throws
// IllegalState if either input is not a reachable cube.
DistanceResult min_steps(const CubeState& from, const CubeState& to, int cap);

// Distances from arbitrary states to one fixed target, memoized. A ball of
// radius ceil(cap/2) around the target is built once; each query searches
// forward the remaining depth. Confined to one attempt evaluation.
class DistanceTable {
 public:
  DistanceTable(const CubeState& target, int cap);

  DistanceResult distance_from(const CubeState& state);
  int cap() const { return cap_; }

 private:
  int cap_;
  int forward_radius_;
  cubie::CubieState target_;
  const std::unordered_map<cubie::CubieKey, int, cubie::CubieKeyHash>* ball_;
  std::unordered_map<cubie::CubieKey, DistanceResult, cubie::CubieKeyHash> memo_;
};

// Stage predicates; the state may be in any orientation.
bool stage_goal_met(const CubeState& state, Stage stage);

// Goal-image mask for a stage in the normalized frame (Yellow up, Green front).
StickerMask stage_mask(Stage stage);

// Greedy first-layer solution built from knowledge-component macros.
std::vector<Move> solve_first_layer(const CubeState& state);

}  // namespace rubikon
