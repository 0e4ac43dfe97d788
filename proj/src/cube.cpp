#include "rubikon/cube.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

#include "rubikon/cubie.hpp"

namespace rubikon {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::BadSymbol: return "BadSymbol";
    case ErrorCode::BadColorCount: return "BadColorCount";
    case ErrorCode::CenterConflict: return "CenterConflict";
    case ErrorCode::IllegalState: return "IllegalState";
    case ErrorCode::NotOneMove: return "NotOneMove";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::BadLevel: return "BadLevel";
    case ErrorCode::NoActiveSkill: return "NoActiveSkill";
    case ErrorCode::UnsatisfiableContext: return "UnsatisfiableContext";
    case ErrorCode::OpenAttempt: return "OpenAttempt";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::EmptyLog: return "EmptyLog";
    case ErrorCode::CorruptLog: return "CorruptLog";
    case ErrorCode::UndefinedMetric: return "UndefinedMetric";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

char to_char(Color c) {
  static constexpr char kChars[] = {'W', 'Y', 'G', 'B', 'R', 'O'};
  return kChars[static_cast<int>(c)];
}

char to_char(Face f) {
  static constexpr char kChars[] = {'U', 'R', 'F', 'D', 'L', 'B'};
  return kChars[static_cast<int>(f)];
}

std::string_view face_name(Face f) {
  static constexpr std::string_view kNames[] = {"up",   "right", "front",
                                                "down", "left",  "back"};
  return kNames[static_cast<int>(f)];
}

std::optional<Color> color_from_char(char c) {
  switch (c) {
    case 'W': return Color::White;
    case 'Y': return Color::Yellow;
    case 'G': return Color::Green;
    case 'B': return Color::Blue;
    case 'R': return Color::Red;
    case 'O': return Color::Orange;
    default: return std::nullopt;
  }
}

Color opposite(Color c) {
  switch (c) {
    case Color::White: return Color::Yellow;
    case Color::Yellow: return Color::White;
    case Color::Green: return Color::Blue;
    case Color::Blue: return Color::Green;
    case Color::Red: return Color::Orange;
    case Color::Orange: return Color::Red;
  }
  return c;
}

Face opposite(Face f) {
  return static_cast<Face>((static_cast<int>(f) + 3) % 6);
}

// ---------------------------------------------------------------------------
// Geometry. Sticker i sits on the cubie at integer position p in {-1,0,1}^3
// with outward normal n. x points right, y up, z toward the viewer.

namespace {

struct Vec {
  int x, y, z;
  bool operator==(const Vec&) const = default;
};

int dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec cross(Vec a, Vec b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Vec normal_of(Face f) {
  switch (f) {
    case Face::U: return {0, 1, 0};
    case Face::R: return {1, 0, 0};
    case Face::F: return {0, 0, 1};
    case Face::D: return {0, -1, 0};
    case Face::L: return {-1, 0, 0};
    case Face::B: return {0, 0, -1};
  }
  return {0, 0, 0};
}

Vec position_of(Face f, int row, int col) {
  switch (f) {
    case Face::U: return {col - 1, 1, row - 1};
    case Face::R: return {1, 1 - row, 1 - col};
    case Face::F: return {col - 1, 1 - row, 1};
    case Face::D: return {col - 1, -1, 1 - row};
    case Face::L: return {-1, 1 - row, col - 1};
    case Face::B: return {1 - col, 1 - row, -1};
  }
  return {0, 0, 0};
}

// Clockwise quarter turn seen from the tip of `axis`: v -> -(axis x v) + axis(axis.v).
Vec rotate_cw(Vec v, Vec axis) {
  const Vec c = cross(axis, v);
  const int d = dot(axis, v);
  return {-c.x + axis.x * d, -c.y + axis.y * d, -c.z + axis.z * d};
}

struct Geometry {
  std::array<Vec, kStickers> pos;
  std::array<Vec, kStickers> nrm;
  std::array<Permutation, 27> perms;

  int find(Vec p, Vec n) const {
    for (int i = 0; i < kStickers; ++i)
      if (pos[i] == p && nrm[i] == n) return i;
    assert(false && "no sticker at position");
    return -1;
  }

  Permutation build(Vec axis, int quarters, bool whole) const {
    Permutation dest{};
    for (int i = 0; i < kStickers; ++i) {
      Vec p = pos[i];
      Vec n = nrm[i];
      if (whole || dot(p, axis) == 1) {
        for (int q = 0; q < quarters; ++q) {
          p = rotate_cw(p, axis);
          n = rotate_cw(n, axis);
        }
      }
      dest[i] = static_cast<std::uint8_t>(find(p, n));
    }
    return dest;
  }

  Geometry() {
    for (Face f : kFaces) {
      for (int i = 0; i < 9; ++i) {
        pos[sticker(f, i)] = position_of(f, i / 3, i % 3);
        nrm[sticker(f, i)] = normal_of(f);
      }
    }
    for (const Move& m : Move::all()) {
      const int quarters = m.amount() == Amount::CW    ? 1
                           : m.amount() == Amount::CCW ? 3
                                                       : 2;
      Vec axis;
      if (m.is_turn()) {
        axis = normal_of(m.face());
      } else {
        axis = m.axis() == Axis::X   ? normal_of(Face::R)
               : m.axis() == Axis::Y ? normal_of(Face::U)
                                     : normal_of(Face::F);
      }
      perms[static_cast<std::size_t>(m.index())] =
          build(axis, quarters, !m.is_turn());
    }
  }
};

const Geometry& geometry() {
  static const Geometry g;
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// Moves

const std::array<Move, 27>& Move::all() {
  static const std::array<Move, 27> moves = [] {
    std::array<Move, 27> out{Move::turn(Face::U, Amount::CW)};
    int k = 0;
    for (Face f : kFaces)
      for (Amount a : {Amount::CW, Amount::CCW, Amount::Half})
        out[static_cast<std::size_t>(k++)] = Move::turn(f, a);
    for (Axis ax : {Axis::X, Axis::Y, Axis::Z})
      for (Amount a : {Amount::CW, Amount::CCW, Amount::Half})
        out[static_cast<std::size_t>(k++)] = Move::reorient(ax, a);
    return out;
  }();
  return moves;
}

const std::array<Move, 12>& Move::quarter_turns() {
  static const std::array<Move, 12> moves = [] {
    std::array<Move, 12> out{Move::turn(Face::U, Amount::CW)};
    int k = 0;
    for (Face f : kFaces)
      for (Amount a : {Amount::CW, Amount::CCW})
        out[static_cast<std::size_t>(k++)] = Move::turn(f, a);
    return out;
  }();
  return moves;
}

int Move::index() const {
  const int a = static_cast<int>(amount_);
  if (is_turn()) return static_cast<int>(target_) * 3 + a;
  return 18 + static_cast<int>(target_) * 3 + a;
}

std::string Move::notation() const {
  std::string s;
  if (is_turn()) {
    s += to_char(face());
  } else {
    s += axis() == Axis::X ? 'x' : axis() == Axis::Y ? 'y' : 'z';
  }
  if (amount_ == Amount::CCW) s += '\'';
  if (amount_ == Amount::Half) s += '2';
  return s;
}

Move Move::parse(std::string_view text) {
  if (text.empty() || text.size() > 2)
    throw Error(ErrorCode::SchemaError, "bad move '" + std::string(text) + "'");
  Amount amount = Amount::CW;
  if (text.size() == 2) {
    if (text[1] == '\'') amount = Amount::CCW;
    else if (text[1] == '2') amount = Amount::Half;
    else throw Error(ErrorCode::SchemaError, "bad move '" + std::string(text) + "'");
  }
  switch (text[0]) {
    case 'U': return turn(Face::U, amount);
    case 'R': return turn(Face::R, amount);
    case 'F': return turn(Face::F, amount);
    case 'D': return turn(Face::D, amount);
    case 'L': return turn(Face::L, amount);
    case 'B': return turn(Face::B, amount);
    case 'x': return reorient(Axis::X, amount);
    case 'y': return reorient(Axis::Y, amount);
    case 'z': return reorient(Axis::Z, amount);
    default:
      throw Error(ErrorCode::SchemaError, "bad move '" + std::string(text) + "'");
  }
}

Move inverse(Move m) {
  Amount a = m.amount();
  if (a == Amount::CW) a = Amount::CCW;
  else if (a == Amount::CCW) a = Amount::CW;
  return m.is_turn() ? Move::turn(m.face(), a) : Move::reorient(m.axis(), a);
}

std::vector<Move> inverse(std::span<const Move> moves) {
  std::vector<Move> out;
  out.reserve(moves.size());
  for (auto it = moves.rbegin(); it != moves.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

std::string to_notation(std::span<const Move> moves) {
  std::string s;
  for (const Move& m : moves) {
    if (!s.empty()) s += ' ';
    s += m.notation();
  }
  return s;
}

std::vector<Move> parse_moves(std::string_view text) {
  std::vector<Move> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) out.push_back(Move::parse(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

const Permutation& permutation(Move m) {
  return geometry().perms[static_cast<std::size_t>(m.index())];
}

// ---------------------------------------------------------------------------
// CubeState

const CubeState& CubeState::solved() {
  static const CubeState s = [] {
    std::array<Color, kStickers> st{};
    const std::array<Color, 6> scheme = {Color::White, Color::Red,
                                         Color::Green, Color::Yellow,
                                         Color::Orange, Color::Blue};
    for (int f = 0; f < 6; ++f)
      for (int i = 0; i < 9; ++i) st[static_cast<std::size_t>(f * 9 + i)] = scheme[static_cast<std::size_t>(f)];
    return CubeState(st);
  }();
  return s;
}

CubeState CubeState::parse(std::string_view facelets) {
  if (facelets.size() != kStickers)
    throw Error(ErrorCode::BadLength,
                "expected 54 facelets, got " + std::to_string(facelets.size()));
  std::array<Color, kStickers> st{};
  std::array<int, 6> counts{};
  for (int i = 0; i < kStickers; ++i) {
    auto c = color_from_char(facelets[static_cast<std::size_t>(i)]);
    if (!c)
      throw Error(ErrorCode::BadSymbol,
                  std::string("bad facelet symbol '") + facelets[static_cast<std::size_t>(i)] +
                      "' at " + std::to_string(i));
    st[static_cast<std::size_t>(i)] = *c;
    ++counts[static_cast<std::size_t>(*c)];
  }
  for (Color c : kColors)
    if (counts[static_cast<std::size_t>(c)] != 9)
      throw Error(ErrorCode::BadColorCount,
                  std::string("color ") + to_char(c) + " appears " +
                      std::to_string(counts[static_cast<std::size_t>(c)]) + " times");
  return CubeState(st);
}

std::string CubeState::to_string() const {
  std::string s(kStickers, ' ');
  for (int i = 0; i < kStickers; ++i) s[static_cast<std::size_t>(i)] = to_char((*this)[i]);
  return s;
}

std::optional<Face> CubeState::face_with_center(Color c) const {
  for (Face f : kFaces)
    if (center(f) == c) return f;
  return std::nullopt;
}

CubeState apply_move(const CubeState& state, Move m) {
  const Permutation& p = permutation(m);
  std::array<Color, kStickers> out{};
  for (int i = 0; i < kStickers; ++i) out[p[static_cast<std::size_t>(i)]] = state[i];
  return CubeState(out);
}

CubeState apply_moves(const CubeState& state, std::span<const Move> moves) {
  CubeState s = state;
  for (const Move& m : moves) s = apply_move(s, m);
  return s;
}

bool has_valid_color_counts(const CubeState& state) {
  std::array<int, 6> counts{};
  for (Color c : state.stickers()) ++counts[static_cast<std::size_t>(c)];
  return std::all_of(counts.begin(), counts.end(), [](int n) { return n == 9; });
}

// ---------------------------------------------------------------------------
// Orientation

namespace {

struct Rotation {
  Permutation dest;
  std::vector<Move> moves;
};

// The 24 whole-cube rotations, each with a shortest reorientation sequence.
const std::vector<Rotation>& rotations() {
  static const std::vector<Rotation> table = [] {
    std::vector<Rotation> out;
    Permutation id{};
    for (int i = 0; i < kStickers; ++i) id[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    out.push_back({id, {}});
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      const Rotation cur = out[queue.front()];
      queue.pop_front();
      for (const Move& m : Move::all()) {
        if (m.is_turn()) continue;
        const Permutation& p = permutation(m);
        Permutation next{};
        for (int i = 0; i < kStickers; ++i) next[static_cast<std::size_t>(i)] = p[cur.dest[static_cast<std::size_t>(i)]];
        const bool seen = std::any_of(out.begin(), out.end(), [&](const Rotation& r) {
          return r.dest == next;
        });
        if (seen) continue;
        Rotation r{next, cur.moves};
        r.moves.push_back(m);
        out.push_back(std::move(r));
        queue.push_back(out.size() - 1);
      }
    }
    return out;
  }();
  return table;
}

bool centers_are_permutation(const CubeState& s) {
  std::array<bool, 6> seen{};
  for (Face f : kFaces) {
    auto& slot = seen[static_cast<std::size_t>(s.center(f))];
    if (slot) return false;
    slot = true;
  }
  return true;
}

}  // namespace

bool is_normalized(const CubeState& state) {
  return state.center(Face::D) == Color::White && state.center(Face::F) == Color::Green;
}

Normalized normalize_orientation(const CubeState& state) {
  if (!centers_are_permutation(state))
    throw Error(ErrorCode::CenterConflict, "centers are not six distinct colors");
  for (const Rotation& r : rotations()) {
    std::array<Color, kStickers> out{};
    for (int i = 0; i < kStickers; ++i) out[r.dest[static_cast<std::size_t>(i)]] = state[i];
    CubeState s(out);
    if (is_normalized(s)) return {s, r.moves};
  }
  throw Error(ErrorCode::CenterConflict, "White and Green centers are opposite");
}

// ---------------------------------------------------------------------------
// Legality

bool is_legal(const CubeState& state) {
  if (!has_valid_color_counts(state)) return false;
  if (!centers_are_permutation(state)) return false;
  Normalized n;
  try {
    n = normalize_orientation(state);
  } catch (const Error&) {
    return false;
  }
  // Western scheme, in the normalized frame: Yellow up, Orange right.
  const CubeState& s = n.state;
  if (s.center(Face::U) != Color::Yellow || s.center(Face::R) != Color::Orange ||
      s.center(Face::L) != Color::Red || s.center(Face::B) != Color::Blue)
    return false;
  auto cubies = cubie::from_facelets(s);
  return cubies && cubie::solvable(*cubies);
}

// ---------------------------------------------------------------------------
// Scramble

Scramble scramble(std::uint64_t seed, int n_moves) {
  if (n_moves < 0) throw Error(ErrorCode::InvalidArgument, "negative scramble length");
  Rng rng(seed);
  Scramble out{CubeState::solved(), {}};
  out.moves.reserve(static_cast<std::size_t>(n_moves));
  int last_face = -1;
  for (int i = 0; i < n_moves; ++i) {
    int face;
    do {
      face = static_cast<int>(rng.uniform(6));
    } while (face == last_face);
    const auto amount = static_cast<Amount>(rng.uniform(3));
    const Move m = Move::turn(static_cast<Face>(face), amount);
    out.moves.push_back(m);
    out.state = apply_move(out.state, m);
    last_face = face;
  }
  return out;
}

// ---------------------------------------------------------------------------
// StickerMask

StickerMask StickerMask::all() {
  StickerMask m;
  m.bits_.fill(true);
  return m;
}

StickerMask StickerMask::of(std::initializer_list<int> indices) {
  StickerMask m;
  for (int i : indices) m.set(i);
  return m;
}

bool StickerMask::empty() const {
  return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; });
}

int StickerMask::count() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<int> StickerMask::indices() const {
  std::vector<int> out;
  for (int i = 0; i < kStickers; ++i)
    if (test(i)) out.push_back(i);
  return out;
}

StickerMask StickerMask::operator|(const StickerMask& o) const {
  StickerMask m;
  for (int i = 0; i < kStickers; ++i)
    if (test(i) || o.test(i)) m.set(i);
  return m;
}

StickerMask StickerMask::operator&(const StickerMask& o) const {
  StickerMask m;
  for (int i = 0; i < kStickers; ++i)
    if (test(i) && o.test(i)) m.set(i);
  return m;
}

StickerMask StickerMask::operator~() const {
  StickerMask m;
  for (int i = 0; i < kStickers; ++i)
    if (!test(i)) m.set(i);
  return m;
}

bool StickerMask::equal_on(const CubeState& a, const CubeState& b) const {
  for (int i = 0; i < kStickers; ++i)
    if (test(i) && a[i] != b[i]) return false;
  return true;
}

StateKey pack(const CubeState& s) {
  StateKey k;
  for (int i = 0; i < kStickers; ++i) {
    const auto bits = static_cast<std::uint64_t>(s[i]);
    const int bit = i * 3;
    k.words[static_cast<std::size_t>(bit / 64)] |= bits << (bit % 64);
    if (bit % 64 > 61)
      k.words[static_cast<std::size_t>(bit / 64 + 1)] |= bits >> (64 - bit % 64);
  }
  return k;
}

}  // namespace rubikon
