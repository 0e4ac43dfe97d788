#pragma once

// Piece-level view of a cube, derived from facelets. Used for the legality
// check and for constructing generated practice states.

#include <array>
#include <cstdint>
#include <optional>

#include "rubikon/cube.hpp"

namespace rubikon::cubie {

enum Corner : std::uint8_t { URF, UFL, ULB, UBR, DFR, DLF, DBL, DRB };
enum Edge : std::uint8_t { UR, UF, UL, UB, DR, DF, DL, DB, FR, FL, BL, BR };

inline constexpr int kCorners = 8;
inline constexpr int kEdges = 12;

// Corner stickers listed clockwise, starting with the U/D sticker.
inline constexpr std::array<std::array<int, 3>, kCorners> kCornerStickers = {{
    {8, 9, 20},    // URF
    {6, 18, 38},   // UFL
    {0, 36, 47},   // ULB
    {2, 45, 11},   // UBR
    {29, 26, 15},  // DFR
    {27, 44, 24},  // DLF
    {33, 53, 42},  // DBL
    {35, 17, 51},  // DRB
}};

// Edge stickers; the first is the reference sticker (U/D, else F/B).
inline constexpr std::array<std::array<int, 2>, kEdges> kEdgeStickers = {{
    {5, 10},   // UR
    {7, 19},   // UF
    {3, 37},   // UL
    {1, 46},   // UB
    {32, 16},  // DR
    {28, 25},  // DF
    {30, 43},  // DL
    {34, 52},  // DB
    {23, 12},  // FR
    {21, 41},  // FL
    {50, 39},  // BL
    {48, 14},  // BR
}};

// slot -> piece (home slot index) and orientation.
struct CubieState {
  std::array<std::uint8_t, kCorners> cp{};
  std::array<std::uint8_t, kCorners> co{};
  std::array<std::uint8_t, kEdges> ep{};
  std::array<std::uint8_t, kEdges> eo{};

  static CubieState identity();
  bool operator==(const CubieState&) const = default;
};

// Color of sticker `j` of a piece in its home slot, under the color scheme
// given by `scheme`'s centers.
Color corner_color(const CubeState& scheme, int piece, int j);
Color edge_color(const CubeState& scheme, int piece, int j);

// Reads pieces using the state's own centers as the color scheme. Returns
// nullopt if a sticker group is not a valid piece or a piece appears twice.
std::optional<CubieState> from_facelets(const CubeState& state);

// Paints pieces onto the centers of `scheme`.
CubeState to_facelets(const CubieState& cubies, const CubeState& scheme);

// Relabels pieces so that `target` reads as the identity. Face turns act on
// slots, so a move sequence takes `x` to `target` exactly when it takes the
// result to the identity.
CubieState relative_to(const CubieState& x, const CubieState& target);

// Face turn acting on slots, matching rubikon::apply_move on facelets in the
// frame whose centers defined the pieces.
CubieState apply_move(const CubieState& c, Move m);

// Injective 128-bit encoding of a cubie state.
struct CubieKey {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  bool operator==(const CubieKey&) const = default;
};
CubieKey key(const CubieState& c);

struct CubieKeyHash {
  std::size_t operator()(const CubieKey& k) const noexcept {
    std::uint64_t h = k.lo * 0x9E3779B97F4A7C15ull;
    h ^= k.hi + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

int corner_twist_sum(const CubieState& c);
int edge_flip_sum(const CubieState& c);
int permutation_parity(std::span<const std::uint8_t> perm);
bool solvable(const CubieState& c);

// Slot and orientation of the piece owning sticker index `s`.
struct StickerLocation {
  bool corner = false;
  int slot = -1;
  int position = -1;  // index within kCornerStickers/kEdgeStickers row
};
StickerLocation locate(int sticker_index);

}  // namespace rubikon::cubie
