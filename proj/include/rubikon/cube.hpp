#pragma once

// Facelet model of the 3x3x3 cube.
//
// Stickers are indexed 0..53 as face*9 + row*3 + col with faces in the order
// U, R, F, D, L, B. Each face is read row-major as seen head-on; U is viewed
// with B at the top, D with F at the top, and the four side faces with U at
// the top. This is the usual URFDLB facelet layout.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rubikon/error.hpp"
#include "rubikon/rng.hpp"

namespace rubikon {

enum class Color : std::uint8_t { White, Yellow, Green, Blue, Red, Orange };
enum class Face : std::uint8_t { U, R, F, D, L, B };
enum class Axis : std::uint8_t { X, Y, Z };
enum class Amount : std::uint8_t { CW, CCW, Half };

inline constexpr int kStickers = 54;
inline constexpr std::array<Face, 6> kFaces = {Face::U, Face::R, Face::F,
                                               Face::D, Face::L, Face::B};
inline constexpr std::array<Color, 6> kColors = {
    Color::White, Color::Yellow, Color::Green,
    Color::Blue,  Color::Red,    Color::Orange};

constexpr int sticker(Face f, int i) { return static_cast<int>(f) * 9 + i; }
constexpr Face face_of(int sticker_index) {
  return static_cast<Face>(sticker_index / 9);
}
constexpr int center_of(Face f) { return sticker(f, 4); }

char to_char(Color c);
char to_char(Face f);
std::string_view face_name(Face f);  // "up", "right", ...
std::optional<Color> color_from_char(char c);
Color opposite(Color c);
Face opposite(Face f);

class Move {
 public:
  enum class Kind : std::uint8_t { FaceTurn, Reorient };

  constexpr Move() : Move(Kind::FaceTurn, 0, Amount::CW) {}

  static constexpr Move turn(Face f, Amount a) {
    return Move(Kind::FaceTurn, static_cast<std::uint8_t>(f), a);
  }
  static constexpr Move reorient(Axis ax, Amount a) {
    return Move(Kind::Reorient, static_cast<std::uint8_t>(ax), a);
  }

  // All 18 face turns followed by the 9 reorientations.
  static const std::array<Move, 27>& all();
  // The 12 quarter-turn generators.
  static const std::array<Move, 12>& quarter_turns();
  // Parses "R", "R'", "R2", "x", "y'", "z2".
  static Move parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_turn() const { return kind_ == Kind::FaceTurn; }
  Face face() const { return static_cast<Face>(target_); }
  Axis axis() const { return static_cast<Axis>(target_); }
  Amount amount() const { return amount_; }

  // Quarter-turn cost: 1 for 90 degrees, 2 for 180, 0 for reorientations.
  int quarter_turns_cost() const {
    if (!is_turn()) return 0;
    return amount_ == Amount::Half ? 2 : 1;
  }
  int index() const;
  std::string notation() const;

  bool operator==(const Move&) const = default;

 private:
  constexpr Move(Kind k, std::uint8_t t, Amount a)
      : kind_(k), target_(t), amount_(a) {}

  Kind kind_;
  std::uint8_t target_;
  Amount amount_;
};

Move inverse(Move m);
std::vector<Move> inverse(std::span<const Move> moves);
std::string to_notation(std::span<const Move> moves);
std::vector<Move> parse_moves(std::string_view text);

// Sticker permutation: sticker at index i moves to index `dest[i]`.
using Permutation = std::array<std::uint8_t, kStickers>;
const Permutation& permutation(Move m);

class CubeState {
 public:
  CubeState() : stickers_(solved().stickers_) {}
  explicit CubeState(const std::array<Color, kStickers>& stickers)
      : stickers_(stickers) {}

  // U=White, R=Red, F=Green, D=Yellow, L=Orange, B=Blue.
  static const CubeState& solved();
  // Throws BadLength / BadSymbol / BadColorCount.
  static CubeState parse(std::string_view facelets);

  Color operator[](int i) const { return stickers_[static_cast<std::size_t>(i)]; }
  Color center(Face f) const { return (*this)[center_of(f)]; }
  const std::array<Color, kStickers>& stickers() const { return stickers_; }

  std::string to_string() const;
  bool operator==(const CubeState&) const = default;

  // Returns the face currently carrying the given center color.
  std::optional<Face> face_with_center(Color c) const;

  CubeState with_sticker(int i, Color c) const {
    CubeState s = *this;
    s.stickers_[static_cast<std::size_t>(i)] = c;
    return s;
  }

 private:
  std::array<Color, kStickers> stickers_;
};

CubeState apply_move(const CubeState& state, Move m);
CubeState apply_moves(const CubeState& state, std::span<const Move> moves);

// True iff every color appears exactly nine times.
bool has_valid_color_counts(const CubeState& state);

struct Normalized {
  CubeState state;
  std::vector<Move> reorients;  // applied to the input, in order
};

// Reorients the cube so White is on D and Green is on F. Throws CenterConflict
// when the centers are not a permutation of the six colors or no whole-cube
// rotation reaches that placement.
Normalized normalize_orientation(const CubeState& state);
bool is_normalized(const CubeState& state);

// Reachability from solved by face turns: corner twist sum, edge flip sum and
// permutation parity, on top of valid pieces and a proper center scheme.
bool is_legal(const CubeState& state);

struct Scramble {
  CubeState state;
  std::vector<Move> moves;
};
inline constexpr int kDefaultScrambleLength = 25;
Scramble scramble(std::uint64_t seed, int n_moves = kDefaultScrambleLength);

class StickerMask {
 public:
  StickerMask() = default;
  static StickerMask all();
  static StickerMask of(std::initializer_list<int> indices);

  void set(int i) { bits_[static_cast<std::size_t>(i)] = true; }
  void reset(int i) { bits_[static_cast<std::size_t>(i)] = false; }
  bool test(int i) const { return bits_[static_cast<std::size_t>(i)]; }
  bool empty() const;
  int count() const;
  std::vector<int> indices() const;

  StickerMask operator|(const StickerMask& o) const;
  StickerMask operator&(const StickerMask& o) const;
  StickerMask operator~() const;
  bool operator==(const StickerMask&) const = default;

  bool equal_on(const CubeState& a, const CubeState& b) const;

 private:
  std::array<bool, kStickers> bits_{};
};

// Compact hashable key for search tables.
struct StateKey {
  std::array<std::uint64_t, 3> words{};
  bool operator==(const StateKey&) const = default;
};
StateKey pack(const CubeState& s);

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    std::uint64_t h = k.words[0] * 0x9E3779B97F4A7C15ull;
    h ^= k.words[1] + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h ^= k.words[2] + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace rubikon
