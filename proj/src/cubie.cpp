#include "rubikon/cubie.hpp"

#include <numeric>

namespace rubikon::cubie {

CubieState CubieState::identity() {
  CubieState c;
  std::iota(c.cp.begin(), c.cp.end(), std::uint8_t{0});
  std::iota(c.ep.begin(), c.ep.end(), std::uint8_t{0});
  return c;
}

Color corner_color(const CubeState& scheme, int piece, int j) {
  return scheme.center(face_of(kCornerStickers[static_cast<std::size_t>(piece)][static_cast<std::size_t>(j)]));
}

Color edge_color(const CubeState& scheme, int piece, int j) {
  return scheme.center(face_of(kEdgeStickers[static_cast<std::size_t>(piece)][static_cast<std::size_t>(j)]));
}

std::optional<CubieState> from_facelets(const CubeState& s) {
  const Color ud_a = s.center(Face::U);
  const Color ud_b = s.center(Face::D);
  CubieState out;
  std::array<bool, kCorners> corner_seen{};
  for (int slot = 0; slot < kCorners; ++slot) {
    const auto& st = kCornerStickers[static_cast<std::size_t>(slot)];
    int twist = -1;
    for (int j = 0; j < 3; ++j) {
      const Color c = s[st[static_cast<std::size_t>(j)]];
      if (c == ud_a || c == ud_b) {
        twist = j;
        break;
      }
    }
    if (twist < 0) return std::nullopt;
    const Color c0 = s[st[static_cast<std::size_t>(twist)]];
    const Color c1 = s[st[static_cast<std::size_t>((twist + 1) % 3)]];
    const Color c2 = s[st[static_cast<std::size_t>((twist + 2) % 3)]];
    int piece = -1;
    for (int p = 0; p < kCorners; ++p) {
      if (corner_color(s, p, 0) == c0 && corner_color(s, p, 1) == c1 &&
          corner_color(s, p, 2) == c2) {
        piece = p;
        break;
      }
    }
    if (piece < 0 || corner_seen[static_cast<std::size_t>(piece)]) return std::nullopt;
    corner_seen[static_cast<std::size_t>(piece)] = true;
    out.cp[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(piece);
    out.co[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(twist);
  }
  std::array<bool, kEdges> edge_seen{};
  for (int slot = 0; slot < kEdges; ++slot) {
    const auto& st = kEdgeStickers[static_cast<std::size_t>(slot)];
    const Color a = s[st[0]];
    const Color b = s[st[1]];
    int piece = -1;
    int flip = 0;
    for (int p = 0; p < kEdges; ++p) {
      const Color p0 = edge_color(s, p, 0);
      const Color p1 = edge_color(s, p, 1);
      if (a == p0 && b == p1) {
        piece = p;
        flip = 0;
        break;
      }
      if (a == p1 && b == p0) {
        piece = p;
        flip = 1;
        break;
      }
    }
    if (piece < 0 || edge_seen[static_cast<std::size_t>(piece)]) return std::nullopt;
    edge_seen[static_cast<std::size_t>(piece)] = true;
    out.ep[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(piece);
    out.eo[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(flip);
  }
  return out;
}

CubeState to_facelets(const CubieState& c, const CubeState& scheme) {
  std::array<Color, kStickers> st = scheme.stickers();
  for (int slot = 0; slot < kCorners; ++slot) {
    const int piece = c.cp[static_cast<std::size_t>(slot)];
    const int twist = c.co[static_cast<std::size_t>(slot)];
    for (int k = 0; k < 3; ++k) {
      const int at = kCornerStickers[static_cast<std::size_t>(slot)][static_cast<std::size_t>((k + twist) % 3)];
      st[static_cast<std::size_t>(at)] = corner_color(scheme, piece, k);
    }
  }
  for (int slot = 0; slot < kEdges; ++slot) {
    const int piece = c.ep[static_cast<std::size_t>(slot)];
    const int flip = c.eo[static_cast<std::size_t>(slot)];
    for (int k = 0; k < 2; ++k) {
      const int at = kEdgeStickers[static_cast<std::size_t>(slot)][static_cast<std::size_t>((k + flip) % 2)];
      st[static_cast<std::size_t>(at)] = edge_color(scheme, piece, k);
    }
  }
  return CubeState(st);
}

namespace {

// Each face turn applied to the identity: slot -> origin slot and acquired twist.
const std::array<CubieState, 18>& move_table() {
  static const std::array<CubieState, 18> table = [] {
    std::array<CubieState, 18> t{};
    const CubeState solved = CubeState::solved();
    for (Move m : Move::all())
      if (m.is_turn()) t[static_cast<std::size_t>(m.index())] = *from_facelets(rubikon::apply_move(solved, m));
    return t;
  }();
  return table;
}

}  // namespace

CubieState apply_move(const CubieState& c, Move m) {
  if (!m.is_turn()) throw Error(ErrorCode::InvalidArgument, "reorientations do not act on slots");
  const CubieState& t = move_table()[static_cast<std::size_t>(m.index())];
  CubieState out;
  for (std::size_t s = 0; s < kCorners; ++s) {
    out.cp[s] = c.cp[t.cp[s]];
    out.co[s] = static_cast<std::uint8_t>((c.co[t.cp[s]] + t.co[s]) % 3);
  }
  for (std::size_t s = 0; s < kEdges; ++s) {
    out.ep[s] = c.ep[t.ep[s]];
    out.eo[s] = static_cast<std::uint8_t>((c.eo[t.ep[s]] + t.eo[s]) % 2);
  }
  return out;
}

CubieKey key(const CubieState& c) {
  CubieKey k;
  for (std::size_t s = 0; s < kCorners; ++s) k.lo = (k.lo << 5) | (std::uint64_t{c.cp[s]} << 2) | c.co[s];
  for (std::size_t s = 0; s < kEdges; ++s) k.hi = (k.hi << 5) | (std::uint64_t{c.ep[s]} << 1) | c.eo[s];
  return k;
}

CubieState relative_to(const CubieState& x, const CubieState& target) {
  std::array<std::uint8_t, kCorners> corner_home{};
  std::array<std::uint8_t, kEdges> edge_home{};
  for (std::size_t s = 0; s < kCorners; ++s) corner_home[target.cp[s]] = static_cast<std::uint8_t>(s);
  for (std::size_t s = 0; s < kEdges; ++s) edge_home[target.ep[s]] = static_cast<std::uint8_t>(s);
  CubieState out;
  // Piece p sits at q with twist c in the target; its sticker at slot
  // position 0 there becomes the new reference sticker, so twists subtract.
  for (std::size_t s = 0; s < kCorners; ++s) {
    const std::uint8_t q = corner_home[x.cp[s]];
    out.cp[s] = q;
    out.co[s] = static_cast<std::uint8_t>((x.co[s] + 3 - target.co[q]) % 3);
  }
  for (std::size_t s = 0; s < kEdges; ++s) {
    const std::uint8_t q = edge_home[x.ep[s]];
    out.ep[s] = q;
    out.eo[s] = static_cast<std::uint8_t>((x.eo[s] + 2 - target.eo[q]) % 2);
  }
  return out;
}

int corner_twist_sum(const CubieState& c) {
  return std::accumulate(c.co.begin(), c.co.end(), 0) % 3;
}

int edge_flip_sum(const CubieState& c) {
  return std::accumulate(c.eo.begin(), c.eo.end(), 0) % 2;
}

int permutation_parity(std::span<const std::uint8_t> perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2;
}

bool solvable(const CubieState& c) {
  return corner_twist_sum(c) == 0 && edge_flip_sum(c) == 0 &&
         permutation_parity(c.cp) == permutation_parity(c.ep);
}

StickerLocation locate(int s) {
  for (int slot = 0; slot < kCorners; ++slot)
    for (int j = 0; j < 3; ++j)
      if (kCornerStickers[static_cast<std::size_t>(slot)][static_cast<std::size_t>(j)] == s)
        return {true, slot, j};
  for (int slot = 0; slot < kEdges; ++slot)
    for (int j = 0; j < 2; ++j)
      if (kEdgeStickers[static_cast<std::size_t>(slot)][static_cast<std::size_t>(j)] == s)
        return {false, slot, j};
  return {};
}

}  // namespace rubikon::cubie
