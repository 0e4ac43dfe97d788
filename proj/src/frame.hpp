#pragma once

// Slot geometry of the normalized frame (Yellow up, White down, Green front)
// shared by the task model and the task generator.

#include <array>

#include "rubikon/cube.hpp"
#include "rubikon/cubie.hpp"

namespace rubikon::frame {

// Side faces in the order each one's right-hand neighbour follows it.
inline constexpr std::array<Face, 4> kRing = {Face::F, Face::R, Face::B, Face::L};

inline int ring_index(Face f) {
  switch (f) {
    case Face::F: return 0;
    case Face::R: return 1;
    case Face::B: return 2;
    case Face::L: return 3;
    default: return -1;
  }
}
inline Face ring_at(int i) { return kRing[static_cast<std::size_t>(((i % 4) + 4) % 4)]; }
inline Face right_of(Face f) { return ring_at(ring_index(f) + 1); }
inline Face left_of(Face f) { return ring_at(ring_index(f) + 3); }

inline constexpr std::array<int, 4> kUpEdge = {cubie::UF, cubie::UR, cubie::UB, cubie::UL};
inline constexpr std::array<int, 4> kDownEdge = {cubie::DF, cubie::DR, cubie::DB, cubie::DL};
// Middle-layer edge between ring[k] and ring[k+1].
inline constexpr std::array<int, 4> kMidEdge = {cubie::FR, cubie::BR, cubie::BL, cubie::FL};
// Corner slot k sits between A = ring[k] (left) and B = ring[k+1] (right).
inline constexpr std::array<int, 4> kUpCorner = {cubie::URF, cubie::UBR, cubie::ULB, cubie::UFL};
inline constexpr std::array<int, 4> kDownCorner = {cubie::DFR, cubie::DRB, cubie::DBL, cubie::DLF};

// U-face sticker of the up edge over side face X.
inline int petal_sticker(Face x) {
  return cubie::kEdgeStickers[static_cast<std::size_t>(kUpEdge[static_cast<std::size_t>(ring_index(x))])][0];
}

inline int edge_sticker_on(int slot, Face f) {
  for (int s : cubie::kEdgeStickers[static_cast<std::size_t>(slot)])
    if (face_of(s) == f) return s;
  return -1;
}

inline int corner_sticker_on(int slot, Face f) {
  for (int s : cubie::kCornerStickers[static_cast<std::size_t>(slot)])
    if (face_of(s) == f) return s;
  return -1;
}

inline int track(int s, Move m) { return permutation(m)[static_cast<std::size_t>(s)]; }

inline bool petal_at(const CubeState& s, Face x) { return s[petal_sticker(x)] == Color::White; }

// The normalized-frame reference: Yellow up, Orange right, Green front,
// White down, Red left, Blue back.
const CubeState& reference();

}  // namespace rubikon::frame
