#include "rubikon/hints.hpp"

#include "frame.hpp"
#include "rubikon/solver.hpp"
#include "rubikon/tracing.hpp"

namespace rubikon {

namespace {

void mark(StickerMask& m, const std::vector<int>& stickers) {
  for (int s : stickers) m.set(s);
}

bool white_edge(int p) { return p >= cubie::DR && p <= cubie::DB; }
bool white_corner(int p) { return p >= cubie::DFR; }

TargetPiece edge_piece(int p) {
  return TargetPiece::edge(cubie::edge_color(frame::reference(), p, 1));
}

TargetPiece corner_piece(int p) {
  return TargetPiece::corner_of(cubie::corner_color(frame::reference(), p, 1),
                                cubie::corner_color(frame::reference(), p, 2));
}

}  // namespace

std::vector<TargetPiece> placed_pieces(const CubeState& state, Stage stage) {
  const auto c = cubie::from_facelets(normalize_orientation(state).state);
  if (!c) throw Error(ErrorCode::IllegalState, "stickers do not form valid pieces");
  std::vector<TargetPiece> out;
  for (int s = 0; s < cubie::kEdges; ++s) {
    const int p = c->ep[static_cast<std::size_t>(s)];
    if (!white_edge(p) || c->eo[static_cast<std::size_t>(s)] != 0) continue;
    const bool petal = s <= cubie::UB;
    const bool seated = s == p;
    if (stage == Stage::WhiteFlower ? petal : seated) out.push_back(edge_piece(p));
  }
  if (stage == Stage::FourCorners)
    for (int s = 0; s < cubie::kCorners; ++s) {
      const int p = c->cp[static_cast<std::size_t>(s)];
      if (white_corner(p) && s == p && c->co[static_cast<std::size_t>(s)] == 0) out.push_back(corner_piece(p));
    }
  return out;
}

StickerMask placed_stickers(const CubeState& state, Stage stage) {
  StickerMask out;
  for (Face f : kFaces) out.set(center_of(f));
  for (const TargetPiece& p : placed_pieces(state, stage)) mark(out, piece_stickers(p, state));
  return out;
}

std::string step_annotation(const CubeState& state, Move m) {
  if (!m.is_turn()) return "reorient";
  const Color c = state.center(m.face());
  const Face shown = *frame::reference().face_with_center(c);
  std::string out(face_name(shown));
  out += " face ";
  switch (m.amount()) {
    case Amount::CW: out += "clockwise x1"; break;
    case Amount::CCW: out += "counter-clockwise x1"; break;
    case Amount::Half: out += "x2"; break;
  }
  return out;
}

HintPayload make_hint(const CubeState& state, KcId kc, const TargetPiece& piece, int level) {
  if (level < 1 || level > kMaxHintLevel) throw Error(ErrorCode::BadLevel, "hint level must be 1, 2 or 3");
  // canonical_macro validates the pair and raises PatternMismatch.
  const std::vector<Move> macro = canonical_macro(kc, piece, state);
  HintPayload h;
  h.level = level;
  h.kc = kc;
  h.piece = piece;
  mark(h.highlight, piece_stickers(piece, state));
  mark(h.highlight, goal_stickers(kc, piece, state));
  if (level >= 2) h.grayout = ~(h.highlight | placed_stickers(state, kc_info(kc).stage));
  if (level >= 3) {
    // Face turns never move centers, so one frame mapping names every step.
    for (Move m : macro) h.steps.push_back({m, step_annotation(state, m)});
  }
  return h;
}

}  // namespace rubikon
