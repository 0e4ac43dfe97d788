#pragma once

// Knowledge components of the first layer: which piece situations they
// cover, the macro that resolves each situation, and the goal it reaches.
// Patterns and macros are defined in the normalized frame; the public
// functions accept states in any orientation.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rubikon/cube.hpp"
#include "rubikon/solver.hpp"

namespace rubikon {

enum class KcId : std::uint8_t {
  Side,
  Back,
  FrontHarder,
  BackHarder,
  Maintain,
  Match,
  LeftCorner,
  RightCorner,
  TopLayer,
  Underneath,
  Mismatch,
};
inline constexpr int kKcCount = 11;

struct KcInfo {
  KcId id;
  std::string_view key;  // wire identifier, e.g. "back_harder"
  std::string_view name;
  Stage stage;
  int stars;
  std::string_view summary;
};

const std::array<KcInfo, kKcCount>& kc_catalog();
const KcInfo& kc_info(KcId id);
std::string_view to_string(KcId id);
std::optional<KcId> kc_from_string(std::string_view key);

// A white first-layer piece identified by its colors, independent of where
// it currently sits. `a`/`b` are its non-white colors in ascending order; an
// edge has a == b.
struct TargetPiece {
  bool corner = false;
  Color a = Color::Yellow;
  Color b = Color::Yellow;

  static TargetPiece edge(Color other);
  static TargetPiece corner_of(Color x, Color y);
  // "WG" for an edge, "WGR" for a corner. Throws InvalidArgument.
  static TargetPiece parse(std::string_view text);
  std::string to_string() const;
  bool operator==(const TargetPiece&) const = default;
};

// A template fixes where the piece's white sticker sits (normalized frame)
// and, where relevant, the ring offset from the current slot to the piece's
// home. `free`/`occupied` list petal stickers (U face) that must be non-white
// or white for the template to be instantiated as stated.
struct PatternTemplate {
  int white_sticker = -1;
  int offset = -1;  // -1 when the template does not constrain it
  std::vector<int> free;
  std::vector<int> occupied;
  std::string label;
};

const std::vector<PatternTemplate>& kc_templates(KcId id);

struct KcMatch {
  KcId kc;
  TargetPiece piece;
  int template_index;
};

// Every (KC, piece) pair applicable to the state, highest difficulty first,
// then catalog order, then piece order. Pieces already solved in the first
// layer never match.
std::vector<KcMatch> match_kc(const CubeState& state);

// Macro resolving the KC for that piece, in the input state's orientation.
// Throws PatternMismatch if the pair does not match the state.
std::vector<Move> canonical_macro(KcId kc, const TargetPiece& piece, const CubeState& state);

// Whether the KC's goal holds for the piece.
bool kc_goal_met(KcId kc, const TargetPiece& piece, const CubeState& state);

// Stickers carrying the piece in the state (for highlighting).
std::vector<int> piece_stickers(const TargetPiece& piece, const CubeState& state);

// Where the piece belongs when the goal holds, in the state's orientation.
std::vector<int> goal_stickers(KcId kc, const TargetPiece& piece, const CubeState& state);

}  // namespace rubikon
