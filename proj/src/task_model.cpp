#include "rubikon/task_model.hpp"

#include <algorithm>
#include <utility>

#include "frame.hpp"
#include "rubikon/cubie.hpp"

namespace rubikon {

namespace frame {

const CubeState& reference() {
  static const CubeState ref = normalize_orientation(CubeState::solved()).state;
  return ref;
}

}  // namespace frame

const std::array<KcInfo, kKcCount>& kc_catalog() {
  static const std::array<KcInfo, kKcCount> catalog = {{
      {KcId::Side, "side", "Side", Stage::WhiteFlower, 1,
       "White edge in the middle layer: turn the face holding its other sticker to lift it into an empty petal."},
      {KcId::Back, "back", "Back", Stage::WhiteFlower, 2,
       "White edge facing down: a half turn of its side face brings it up as a petal."},
      {KcId::FrontHarder, "front_harder", "Front-harder", Stage::WhiteFlower, 3,
       "White edge in the top layer facing sideways: drop it into the middle layer, then lift it."},
      {KcId::BackHarder, "back_harder", "Back-harder", Stage::WhiteFlower, 3,
       "White edge in the bottom layer facing sideways: raise it into the middle layer, then lift it."},
      {KcId::Maintain, "maintain", "Maintain", Stage::WhiteFlower, 3,
       "The lift would knock off an existing petal: turn the top layer first so the petals stay."},
      {KcId::Match, "match", "Match", Stage::WhiteCross, 1,
       "Turn the top until the petal's side color sits over its center, then half-turn that face."},
      {KcId::LeftCorner, "left_corner", "Left corner", Stage::FourCorners, 2,
       "Corner above its slot with white facing left: A' U' A."},
      {KcId::RightCorner, "right_corner", "Right corner", Stage::FourCorners, 2,
       "Corner above its slot with white facing right: B U B'."},
      {KcId::TopLayer, "top_layer", "Top layer", Stage::FourCorners, 3,
       "Corner above its slot with white facing up: B A B' A' U' B'."},
      {KcId::Underneath, "underneath", "Underneath", Stage::FourCorners, 3,
       "Corner stuck in the bottom layer: B U B' lifts it into the top layer."},
      {KcId::Mismatch, "mismatch", "Mismatch", Stage::FourCorners, 4,
       "Corner in the top layer away from its slot: turn the top to bring it over its slot, then insert."},
  }};
  return catalog;
}

const KcInfo& kc_info(KcId id) { return kc_catalog()[static_cast<std::size_t>(id)]; }

std::string_view to_string(KcId id) { return kc_info(id).key; }

std::optional<KcId> kc_from_string(std::string_view key) {
  for (const KcInfo& k : kc_catalog())
    if (k.key == key) return k.id;
  return std::nullopt;
}

TargetPiece TargetPiece::edge(Color other) {
  if (other == Color::White || other == Color::Yellow)
    throw Error(ErrorCode::InvalidArgument, "edge must pair white with a side color");
  return {false, other, other};
}

TargetPiece TargetPiece::corner_of(Color x, Color y) {
  if (x == Color::White || y == Color::White || x == Color::Yellow || y == Color::Yellow || x == y ||
      x == opposite(y))
    throw Error(ErrorCode::InvalidArgument, "corner must pair white with two adjacent side colors");
  if (y < x) std::swap(x, y);
  return {true, x, y};
}

TargetPiece TargetPiece::parse(std::string_view text) {
  if ((text.size() != 2 && text.size() != 3) || text[0] != 'W')
    throw Error(ErrorCode::InvalidArgument, "piece must look like WG or WGR");
  auto c1 = color_from_char(text[1]);
  if (!c1) throw Error(ErrorCode::InvalidArgument, "unknown color in piece");
  if (text.size() == 2) return edge(*c1);
  auto c2 = color_from_char(text[2]);
  if (!c2) throw Error(ErrorCode::InvalidArgument, "unknown color in piece");
  return corner_of(*c1, *c2);
}

std::string TargetPiece::to_string() const {
  std::string s = {'W', to_char(a)};
  if (corner) s.push_back(to_char(b));
  return s;
}

namespace {

using frame::kRing;
using frame::left_of;
using frame::right_of;
using frame::ring_at;
using frame::ring_index;
using frame::track;

Move turn(Face f, Amount a) { return Move::turn(f, a); }
Move cw(Face f) { return turn(f, Amount::CW); }
Move ccw(Face f) { return turn(f, Amount::CCW); }

constexpr std::array<Amount, 3> kSetups = {Amount::CW, Amount::CCW, Amount::Half};

int cost(std::span<const Move> ms) {
  int c = 0;
  for (Move m : ms) c += m.quarter_turns_cost();
  return c;
}

int ring_of_color(Color c) {
  const CubeState& ref = frame::reference();
  for (Face x : kRing)
    if (ref.center(x) == c) return ring_index(x);
  return -1;
}

// Position of a white piece in a normalized state.
struct Located {
  bool corner = false;
  int slot = -1;
  int white = -1;              // sticker holding white
  std::array<int, 2> others{};  // the other sticker(s); for edges others[1] == others[0]
};

std::vector<Located> white_pieces(const CubeState& s) {
  std::vector<Located> out;
  for (int slot = 0; slot < cubie::kEdges; ++slot) {
    const auto& st = cubie::kEdgeStickers[static_cast<std::size_t>(slot)];
    for (int j = 0; j < 2; ++j)
      if (s[st[static_cast<std::size_t>(j)]] == Color::White) {
        const int o = st[static_cast<std::size_t>(1 - j)];
        out.push_back({false, slot, st[static_cast<std::size_t>(j)], {o, o}});
      }
  }
  for (int slot = 0; slot < cubie::kCorners; ++slot) {
    const auto& st = cubie::kCornerStickers[static_cast<std::size_t>(slot)];
    for (int j = 0; j < 3; ++j)
      if (s[st[static_cast<std::size_t>(j)]] == Color::White)
        out.push_back({true, slot, st[static_cast<std::size_t>(j)],
                       {st[static_cast<std::size_t>((j + 1) % 3)], st[static_cast<std::size_t>((j + 2) % 3)]}});
  }
  return out;
}

TargetPiece piece_of(const CubeState& s, const Located& l) {
  if (!l.corner) return TargetPiece::edge(s[l.others[0]]);
  return TargetPiece::corner_of(s[l.others[0]], s[l.others[1]]);
}

std::optional<Located> find(const CubeState& s, const TargetPiece& p) {
  for (const Located& l : white_pieces(s))
    if (l.corner == p.corner && piece_of(s, l) == p) return l;
  return std::nullopt;
}

bool edge_solved(const CubeState& s, const Located& l) {
  return face_of(l.white) == Face::D && s[l.others[0]] == s.center(face_of(l.others[0]));
}

// Ring index k of the bottom slot a corner belongs to (A = ring[k], B = ring[k+1]).
int corner_home(const CubeState& s, const Located& l) {
  const int i = ring_of_color(s[l.others[0]]);
  const int j = ring_of_color(s[l.others[1]]);
  return (j - i + 4) % 4 == 1 ? i : j;
}

// Ring index of the column a corner slot occupies.
int corner_column(int slot) {
  for (int k = 0; k < 4; ++k)
    if (frame::kUpCorner[static_cast<std::size_t>(k)] == slot || frame::kDownCorner[static_cast<std::size_t>(k)] == slot)
      return k;
  return -1;
}

bool upper_corner(int slot) { return slot <= cubie::UBR; }

bool corner_solved(const CubeState& s, const Located& l) {
  return !upper_corner(l.slot) && face_of(l.white) == Face::D && corner_column(l.slot) == corner_home(s, l);
}

enum class EdgeClass { Petal, Side, Back, FrontHarder, BackHarder };

EdgeClass classify_edge(int w) {
  const Face f = face_of(w);
  if (f == Face::U) return EdgeClass::Petal;
  if (f == Face::D) return EdgeClass::Back;
  switch ((w % 9) / 3) {
    case 0: return EdgeClass::FrontHarder;
    case 1: return EdgeClass::Side;
    default: return EdgeClass::BackHarder;
  }
}

// Turn of `f` that carries sticker w onto the U face, if a quarter turn does.
std::optional<Move> lift(Face f, int w) {
  for (Amount a : {Amount::CW, Amount::CCW})
    if (face_of(track(w, turn(f, a))) == Face::U) return turn(f, a);
  return std::nullopt;
}

// Quarter turn of face x (holding white sticker w) that brings the other
// sticker o onto face y.
std::optional<Move> drop_towards(Face x, int o, Face y) {
  for (Amount a : {Amount::CW, Amount::CCW})
    if (face_of(track(o, turn(x, a))) == y) return turn(x, a);
  return std::nullopt;
}

std::vector<TargetPiece> petals(const CubeState& s) {
  std::vector<TargetPiece> out;
  for (const Located& l : white_pieces(s))
    if (!l.corner && face_of(l.white) == Face::U) out.push_back(piece_of(s, l));
  return out;
}

bool is_petal(const CubeState& s, const TargetPiece& p) {
  auto l = find(s, p);
  return l && face_of(l->white) == Face::U;
}

// Direct flower macro, or nullopt when blocked by an existing petal.
std::optional<std::vector<Move>> direct_flower(const CubeState& s, const Located& l) {
  const int w = l.white;
  const int o = l.others[0];
  switch (classify_edge(w)) {
    case EdgeClass::Side: {
      const Face y = face_of(o);
      if (frame::petal_at(s, y)) return std::nullopt;
      return std::vector<Move>{*lift(y, w)};
    }
    case EdgeClass::Back: {
      const Face x = face_of(o);
      if (frame::petal_at(s, x)) return std::nullopt;
      return std::vector<Move>{turn(x, Amount::Half)};
    }
    case EdgeClass::FrontHarder:
    case EdgeClass::BackHarder: {
      const Face x = face_of(w);
      if (classify_edge(w) == EdgeClass::BackHarder && frame::petal_at(s, x)) return std::nullopt;
      for (Face y : {right_of(x), left_of(x)}) {
        if (frame::petal_at(s, y)) continue;
        const Move drop = *drop_towards(x, o, y);
        return std::vector<Move>{drop, *lift(y, track(w, drop))};
      }
      return std::nullopt;
    }
    case EdgeClass::Petal: break;
  }
  return std::nullopt;
}

bool flower_macro_ok(const CubeState& s, const TargetPiece& target, std::span<const Move> macro) {
  const std::vector<TargetPiece> before = petals(s);
  const CubeState t = apply_moves(s, macro);
  if (!is_petal(t, target)) return false;
  for (const TargetPiece& p : before)
    if (!is_petal(t, p)) return false;
  return true;
}

// Shortest top-layer-adjusted lift that keeps every petal. Candidates are
// enumerated in a fixed order; the first of minimal quarter-turn cost wins.
std::optional<std::vector<Move>> maintain_macro(const CubeState& s, const Located& l) {
  const TargetPiece target = piece_of(s, l);
  const int w = l.white;
  const int o = l.others[0];
  std::vector<std::vector<Move>> cands;
  std::vector<std::optional<Move>> setups = {std::nullopt};
  for (Amount a : kSetups) setups.push_back(turn(Face::U, a));
  auto with = [](std::vector<Move> v, std::optional<Move> m) {
    if (m) v.push_back(*m);
    return v;
  };
  switch (classify_edge(w)) {
    case EdgeClass::Side:
      for (auto u : setups) cands.push_back(with(with({}, u), *lift(face_of(o), w)));
      break;
    case EdgeClass::Back:
      for (auto u : setups) cands.push_back(with(with({}, u), turn(face_of(o), Amount::Half)));
      break;
    case EdgeClass::FrontHarder: {
      const Face x = face_of(w);
      for (Face y : {right_of(x), left_of(x)}) {
        const Move drop = *drop_towards(x, o, y);
        for (auto u : setups) cands.push_back(with(with({drop}, u), *lift(y, track(w, drop))));
      }
      break;
    }
    case EdgeClass::BackHarder: {
      const Face x = face_of(w);
      for (auto u1 : setups)
        for (Face y : {right_of(x), left_of(x)}) {
          const Move drop = *drop_towards(x, o, y);
          for (auto u2 : setups) {
            std::vector<Move> c = with(with(with({}, u1), drop), u2);
            c.push_back(*lift(y, track(w, drop)));
            cands.push_back(std::move(c));
          }
        }
      break;
    }
    case EdgeClass::Petal: return std::nullopt;
  }
  std::optional<std::vector<Move>> best;
  for (auto& c : cands) {
    if (!flower_macro_ok(s, target, c)) continue;
    if (!best || cost(c) < cost(*best)) best = std::move(c);
  }
  return best;
}

// White-sticker face relative to a corner column: 0 = up/down, 1 = A (left), 2 = B (right).
int corner_facing(int w, int column) {
  const Face f = face_of(w);
  if (f == Face::U || f == Face::D) return 0;
  return f == ring_at(column) ? 1 : 2;
}

std::vector<Move> corner_trigger(int column, int facing) {
  const Face a = ring_at(column);
  const Face b = ring_at(column + 1);
  switch (facing) {
    case 1: return {ccw(a), ccw(Face::U), cw(a)};
    case 2: return {cw(b), cw(Face::U), ccw(b)};
    default: return {cw(b), cw(a), ccw(b), ccw(a), ccw(Face::U), ccw(b)};
  }
}

std::optional<KcId> corner_kc(const CubeState& s, const Located& l) {
  if (corner_solved(s, l)) return std::nullopt;
  if (!upper_corner(l.slot)) return KcId::Underneath;
  const int col = corner_column(l.slot);
  const int facing = corner_facing(l.white, col);
  if (col == corner_home(s, l)) {
    if (facing == 0) return KcId::TopLayer;
    return facing == 1 ? KcId::LeftCorner : KcId::RightCorner;
  }
  if (facing == 0) return std::nullopt;
  return KcId::Mismatch;
}

std::optional<KcId> edge_kc(const CubeState& s, const Located& l) {
  if (edge_solved(s, l)) return std::nullopt;
  if (classify_edge(l.white) == EdgeClass::Petal) return KcId::Match;
  if (direct_flower(s, l)) {
    switch (classify_edge(l.white)) {
      case EdgeClass::Side: return KcId::Side;
      case EdgeClass::Back: return KcId::Back;
      case EdgeClass::FrontHarder: return KcId::FrontHarder;
      default: return KcId::BackHarder;
    }
  }
  return KcId::Maintain;
}

// Ring offset from the piece's current column to its home.
int edge_offset(const CubeState& s, const Located& l) {
  return (ring_of_color(s[l.others[0]]) - ring_index(face_of(l.others[0])) + 4) % 4;
}

int corner_offset(const CubeState& s, const Located& l) {
  return (corner_home(s, l) - corner_column(l.slot) + 4) % 4;
}

std::vector<Move> macro_normalized(KcId kc, const CubeState& s, const Located& l) {
  switch (kc) {
    case KcId::Side:
    case KcId::Back:
    case KcId::FrontHarder:
    case KcId::BackHarder:
      return *direct_flower(s, l);
    case KcId::Maintain:
      return *maintain_macro(s, l);
    case KcId::Match: {
      const Color c = s[l.others[0]];
      for (std::optional<Move> u : {std::optional<Move>{}, std::optional<Move>{cw(Face::U)},
                                    std::optional<Move>{ccw(Face::U)}, std::optional<Move>{turn(Face::U, Amount::Half)}}) {
        const int o = u ? track(l.others[0], *u) : l.others[0];
        if (s.center(face_of(o)) != c) continue;
        std::vector<Move> out;
        if (u) out.push_back(*u);
        out.push_back(turn(face_of(o), Amount::Half));
        return out;
      }
      break;
    }
    case KcId::LeftCorner:
    case KcId::RightCorner:
    case KcId::TopLayer: {
      const int col = corner_column(l.slot);
      return corner_trigger(col, corner_facing(l.white, col));
    }
    case KcId::Underneath: {
      const int col = corner_column(l.slot);
      return {cw(ring_at(col + 1)), cw(Face::U), ccw(ring_at(col + 1))};
    }
    case KcId::Mismatch: {
      const int home = corner_home(s, l);
      for (Amount a : kSetups) {
        const Move u = turn(Face::U, a);
        const int w = track(l.white, u);
        const auto loc = cubie::locate(w);
        if (corner_column(loc.slot) != home) continue;
        std::vector<Move> out{u};
        for (Move m : corner_trigger(home, corner_facing(w, home))) out.push_back(m);
        return out;
      }
      break;
    }
  }
  throw Error(ErrorCode::PatternMismatch, "no macro for the piece");
}

int template_index(KcId kc, const CubeState& s, const Located& l) {
  const auto& ts = kc_templates(kc);
  int offset = -1;
  if (kc == KcId::Match) offset = edge_offset(s, l);
  if (l.corner && kc != KcId::LeftCorner && kc != KcId::RightCorner && kc != KcId::TopLayer)
    offset = corner_offset(s, l);
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i].white_sticker == l.white && (ts[i].offset < 0 || ts[i].offset == offset))
      return static_cast<int>(i);
  return -1;
}

std::optional<KcId> kc_for(const CubeState& s, const Located& l) {
  return l.corner ? corner_kc(s, l) : edge_kc(s, l);
}

struct Framed {
  CubeState state;
  std::vector<Move> reorients;
};

Framed to_frame(const CubeState& s) {
  Normalized n = normalize_orientation(s);
  return {std::move(n.state), std::move(n.reorients)};
}

// Maps a normalized-frame face turn back onto the original orientation.
std::vector<Move> from_frame(const CubeState& original, const CubeState& normalized, std::span<const Move> ms) {
  std::vector<Move> out;
  out.reserve(ms.size());
  for (Move m : ms) out.push_back(turn(*original.face_with_center(normalized.center(m.face())), m.amount()));
  return out;
}

// Maps a normalized-frame sticker index back onto the original orientation.
int sticker_from_frame(const Framed& f, int s) {
  for (auto it = f.reorients.rbegin(); it != f.reorients.rend(); ++it) s = track(s, inverse(*it));
  return s;
}

// The other sticker of the edge owning sticker w.
int partner(int w) {
  const auto& st = cubie::kEdgeStickers[static_cast<std::size_t>(cubie::locate(w).slot)];
  return st[0] == w ? st[1] : st[0];
}

std::vector<PatternTemplate> build_templates(KcId kc) {
  std::vector<PatternTemplate> out;
  auto label = [](int w, int offset) {
    std::string s = std::string(1, to_char(face_of(w))) + std::to_string(w % 9 + 1);
    if (offset >= 0) s += "+" + std::to_string(offset);
    return s;
  };
  auto petal = [](Face x) { return frame::petal_sticker(x); };
  switch (kc) {
    case KcId::Side:
    case KcId::Maintain:
      for (Face x : kRing)
        for (int i : {3, 5}) {
          const int w = sticker(x, i);
          const Face y = face_of(partner(w));
          PatternTemplate t{w, -1, {}, {}, label(w, -1)};
          (kc == KcId::Side ? t.free : t.occupied).push_back(petal(y));
          out.push_back(std::move(t));
        }
      if (kc == KcId::Side) break;
      [[fallthrough]];
    case KcId::Back:
      if (kc != KcId::Side)
        for (Face x : kRing) {
          const int w = frame::edge_sticker_on(frame::kDownEdge[static_cast<std::size_t>(ring_index(x))], Face::D);
          PatternTemplate t{w, -1, {}, {}, label(w, -1)};
          (kc == KcId::Back ? t.free : t.occupied).push_back(petal(x));
          out.push_back(std::move(t));
        }
      if (kc == KcId::Back) break;
      for (Face x : kRing) {
        const int w = sticker(x, 1);
        out.push_back({w, -1, {}, {petal(right_of(x)), petal(left_of(x))}, label(w, -1)});
      }
      for (Face x : kRing) {
        const int w = sticker(x, 7);
        out.push_back({w, -1, {}, {petal(x)}, label(w, -1)});
      }
      break;
    case KcId::FrontHarder:
      for (Face x : kRing) {
        const int w = sticker(x, 1);
        out.push_back({w, -1, {petal(right_of(x))}, {}, label(w, -1)});
      }
      break;
    case KcId::BackHarder:
      for (Face x : kRing) {
        const int w = sticker(x, 7);
        out.push_back({w, -1, {petal(x), petal(right_of(x))}, {}, label(w, -1)});
      }
      break;
    case KcId::Match:
      for (Face x : kRing)
        for (int off = 0; off < 4; ++off) {
          const int w = petal(x);
          out.push_back({w, off, {}, {}, label(w, off)});
        }
      break;
    case KcId::LeftCorner:
    case KcId::RightCorner:
    case KcId::TopLayer:
      for (int k = 0; k < 4; ++k) {
        const int slot = frame::kUpCorner[static_cast<std::size_t>(k)];
        const Face f = kc == KcId::TopLayer ? Face::U : kc == KcId::LeftCorner ? ring_at(k) : ring_at(k + 1);
        const int w = frame::corner_sticker_on(slot, f);
        out.push_back({w, -1, {}, {}, label(w, -1)});
      }
      break;
    case KcId::Underneath:
      for (int k = 0; k < 4; ++k)
        for (int w : cubie::kCornerStickers[static_cast<std::size_t>(frame::kDownCorner[static_cast<std::size_t>(k)])])
          for (int off = 0; off < 4; ++off) {
            if (face_of(w) == Face::D && off == 0) continue;
            out.push_back({w, off, {}, {}, label(w, off)});
          }
      break;
    case KcId::Mismatch:
      for (int k = 0; k < 4; ++k)
        for (int w : cubie::kCornerStickers[static_cast<std::size_t>(frame::kUpCorner[static_cast<std::size_t>(k)])]) {
          if (face_of(w) == Face::U) continue;
          for (int off = 1; off < 4; ++off) out.push_back({w, off, {}, {}, label(w, off)});
        }
      break;
  }
  return out;
}

}  // namespace

const std::vector<PatternTemplate>& kc_templates(KcId id) {
  static const std::array<std::vector<PatternTemplate>, kKcCount> all = [] {
    std::array<std::vector<PatternTemplate>, kKcCount> a;
    for (const KcInfo& k : kc_catalog()) a[static_cast<std::size_t>(k.id)] = build_templates(k.id);
    return a;
  }();
  return all[static_cast<std::size_t>(id)];
}

std::vector<KcMatch> match_kc(const CubeState& state) {
  const CubeState s = normalize_orientation(state).state;
  std::vector<KcMatch> out;
  for (const Located& l : white_pieces(s)) {
    const auto kc = kc_for(s, l);
    if (!kc) continue;
    out.push_back({*kc, piece_of(s, l), template_index(*kc, s, l)});
  }
  auto piece_rank = [](const TargetPiece& p) {
    return std::tuple(p.corner, static_cast<int>(p.a), static_cast<int>(p.b));
  };
  std::stable_sort(out.begin(), out.end(), [&](const KcMatch& x, const KcMatch& y) {
    const int sx = kc_info(x.kc).stars;
    const int sy = kc_info(y.kc).stars;
    if (sx != sy) return sx > sy;
    if (x.kc != y.kc) return x.kc < y.kc;
    return piece_rank(x.piece) < piece_rank(y.piece);
  });
  return out;
}

std::vector<Move> canonical_macro(KcId kc, const TargetPiece& piece, const CubeState& state) {
  const Framed f = to_frame(state);
  const auto l = find(f.state, piece);
  if (!l || kc_for(f.state, *l) != kc)
    throw Error(ErrorCode::PatternMismatch,
                std::string(to_string(kc)) + " does not apply to " + piece.to_string());
  return from_frame(state, f.state, macro_normalized(kc, f.state, *l));
}

bool kc_goal_met(KcId kc, const TargetPiece& piece, const CubeState& state) {
  const CubeState s = normalize_orientation(state).state;
  const auto l = find(s, piece);
  if (!l) return false;
  switch (kc) {
    case KcId::Side:
    case KcId::Back:
    case KcId::FrontHarder:
    case KcId::BackHarder:
    case KcId::Maintain:
      return !l->corner && face_of(l->white) == Face::U;
    case KcId::Match:
      return !l->corner && edge_solved(s, *l);
    case KcId::Underneath:
      return l->corner && upper_corner(l->slot);
    case KcId::LeftCorner:
    case KcId::RightCorner:
    case KcId::TopLayer:
    case KcId::Mismatch:
      return l->corner && corner_solved(s, *l);
  }
  return false;
}

std::vector<int> piece_stickers(const TargetPiece& piece, const CubeState& state) {
  const Framed f = to_frame(state);
  const auto l = find(f.state, piece);
  if (!l) return {};
  std::vector<int> out{sticker_from_frame(f, l->white), sticker_from_frame(f, l->others[0])};
  if (l->corner) out.push_back(sticker_from_frame(f, l->others[1]));
  return out;
}

std::vector<int> goal_stickers(KcId kc, const TargetPiece& piece, const CubeState& state) {
  const Framed f = to_frame(state);
  const auto l = find(f.state, piece);
  if (!l || kc_for(f.state, *l) != kc) return {};
  const CubeState end = apply_moves(f.state, macro_normalized(kc, f.state, *l));
  const auto e = find(end, piece);
  std::vector<int> out{sticker_from_frame(f, e->white), sticker_from_frame(f, e->others[0])};
  if (e->corner) out.push_back(sticker_from_frame(f, e->others[1]));
  return out;
}

}  // namespace rubikon
