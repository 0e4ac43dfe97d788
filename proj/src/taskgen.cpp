#include "rubikon/taskgen.hpp"

#include <algorithm>
#include <array>

#include "frame.hpp"
#include "rubikon/cubie.hpp"

namespace rubikon {

namespace {

using cubie::kCorners;
using cubie::kEdges;

// In the normalized frame the white pieces are the ones whose home is the
// bottom layer.
bool white_edge(int piece) { return piece >= cubie::DR && piece <= cubie::DB; }
bool white_corner(int piece) { return piece >= cubie::DFR; }
bool up_edge_slot(int slot) { return slot <= cubie::UB; }

int corner_column(int slot) {
  for (int k = 0; k < 4; ++k)
    if (frame::kUpCorner[static_cast<std::size_t>(k)] == slot || frame::kDownCorner[static_cast<std::size_t>(k)] == slot)
      return k;
  return -1;
}

struct Build {
  cubie::CubieState c = cubie::CubieState::identity();
  std::array<bool, kEdges> eslot{}, epiece{};
  std::array<bool, kCorners> cslot{}, cpiece{};

  void edge(int slot, int piece, int ori) {
    c.ep[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(piece);
    c.eo[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(ori);
    eslot[static_cast<std::size_t>(slot)] = epiece[static_cast<std::size_t>(piece)] = true;
  }
  void corner(int slot, int piece, int ori) {
    c.cp[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(piece);
    c.co[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(ori);
    cslot[static_cast<std::size_t>(slot)] = cpiece[static_cast<std::size_t>(piece)] = true;
  }
  bool edge_free(int slot) const { return !eslot[static_cast<std::size_t>(slot)]; }
  bool corner_free(int slot) const { return !cslot[static_cast<std::size_t>(slot)]; }
};

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.uniform(i)]);
}

template <class T>
T pick(const std::vector<T>& v, Rng& rng) {
  return v[rng.uniform(v.size())];
}

// Places every unplaced piece at random, then repairs twist, flip and
// permutation parity using pieces without white.
void fill_random(Build& b, Rng& rng) {
  std::vector<int> eslots, epieces, cslots, cpieces;
  for (int i = 0; i < kEdges; ++i) {
    if (b.edge_free(i)) eslots.push_back(i);
    if (!b.epiece[static_cast<std::size_t>(i)]) epieces.push_back(i);
  }
  for (int i = 0; i < kCorners; ++i) {
    if (b.corner_free(i)) cslots.push_back(i);
    if (!b.cpiece[static_cast<std::size_t>(i)]) cpieces.push_back(i);
  }
  shuffle(epieces, rng);
  shuffle(cpieces, rng);
  for (std::size_t i = 0; i < eslots.size(); ++i) b.edge(eslots[i], epieces[i], static_cast<int>(rng.uniform(2)));
  for (std::size_t i = 0; i < cslots.size(); ++i) b.corner(cslots[i], cpieces[i], static_cast<int>(rng.uniform(3)));

  std::vector<int> plain_edges, plain_corners;
  for (int s = 0; s < kEdges; ++s)
    if (!white_edge(b.c.ep[static_cast<std::size_t>(s)])) plain_edges.push_back(s);
  for (int s = 0; s < kCorners; ++s)
    if (!white_corner(b.c.cp[static_cast<std::size_t>(s)])) plain_corners.push_back(s);

  const int twist = cubie::corner_twist_sum(b.c);
  auto& co = b.c.co[static_cast<std::size_t>(plain_corners.front())];
  co = static_cast<std::uint8_t>((co + 3 - twist) % 3);
  const int flip = cubie::edge_flip_sum(b.c);
  auto& eo = b.c.eo[static_cast<std::size_t>(plain_edges.front())];
  eo = static_cast<std::uint8_t>((eo + flip) % 2);
  if (cubie::permutation_parity(b.c.cp) != cubie::permutation_parity(b.c.ep))
    std::swap(b.c.ep[static_cast<std::size_t>(plain_edges[0])], b.c.ep[static_cast<std::size_t>(plain_edges[1])]);
}

struct Context {
  Build fixed;
  std::vector<int> petal_slots;  // up-edge slots holding a fixed petal
};

Context read_context(const std::optional<CubeState>& ctx, Stage stage) {
  Context out;
  if (!ctx) return out;
  if (!is_legal(*ctx)) throw Error(ErrorCode::IllegalState, "context is not a reachable cube");
  const auto c = *cubie::from_facelets(normalize_orientation(*ctx).state);
  for (int s = 0; s < kEdges; ++s) {
    const int p = c.ep[static_cast<std::size_t>(s)];
    const int o = c.eo[static_cast<std::size_t>(s)];
    if (!white_edge(p)) continue;
    const bool petal = up_edge_slot(s) && o == 0;
    const bool seated = s == p && o == 0;
    // Cross-stage petals are the material Match works on, so only seated
    // edges count as placed there.
    const bool keep = stage == Stage::WhiteFlower ? petal : seated;
    if (!keep) continue;
    out.fixed.edge(s, p, o);
    if (petal) out.petal_slots.push_back(s);
  }
  if (stage == Stage::FourCorners)
    for (int s = 0; s < kCorners; ++s) {
      const int p = c.cp[static_cast<std::size_t>(s)];
      if (white_corner(p) && s == p && c.co[static_cast<std::size_t>(s)] == 0) out.fixed.corner(s, p, 0);
    }
  return out;
}

// White pieces that may play the target of template t.
std::vector<int> target_candidates(KcId kc, const PatternTemplate& t, const Build& fixed) {
  const auto loc = cubie::locate(t.white_sticker);
  std::vector<int> pieces;
  if (!loc.corner) {
    if (t.offset >= 0) {
      const int side = cubie::kEdgeStickers[static_cast<std::size_t>(loc.slot)][1];
      pieces.push_back(frame::kDownEdge[static_cast<std::size_t>((frame::ring_index(face_of(side)) + t.offset) % 4)]);
    } else {
      for (int p = cubie::DR; p <= cubie::DB; ++p) pieces.push_back(p);
    }
  } else {
    const int col = corner_column(loc.slot);
    if (t.offset >= 0)
      pieces.push_back(frame::kDownCorner[static_cast<std::size_t>((col + t.offset) % 4)]);
    else if (kc == KcId::LeftCorner || kc == KcId::RightCorner || kc == KcId::TopLayer)
      pieces.push_back(frame::kDownCorner[static_cast<std::size_t>(col)]);
    else
      for (int p = cubie::DFR; p <= cubie::DRB; ++p) pieces.push_back(p);
  }
  std::erase_if(pieces, [&](int p) {
    const bool used = loc.corner ? fixed.cpiece[static_cast<std::size_t>(p)] : fixed.epiece[static_cast<std::size_t>(p)];
    const bool would_be_solved = p == loc.slot && loc.position == 0;
    return used || would_be_solved;
  });
  return pieces;
}

int free_white_edges(const Build& b) {
  int n = 0;
  for (int p = cubie::DR; p <= cubie::DB; ++p) n += !b.epiece[static_cast<std::size_t>(p)];
  return n;
}

bool compatible(KcId kc, const PatternTemplate& t, const Context& ctx) {
  const auto loc = cubie::locate(t.white_sticker);
  const bool slot_taken = loc.corner ? !ctx.fixed.corner_free(loc.slot) : !ctx.fixed.edge_free(loc.slot);
  if (slot_taken) return false;
  if (target_candidates(kc, t, ctx.fixed).empty()) return false;
  for (int s : t.free)
    if (!ctx.fixed.edge_free(cubie::locate(s).slot)) return false;
  int needed = 0;
  for (int s : t.occupied) {
    const int slot = cubie::locate(s).slot;
    if (ctx.fixed.edge_free(slot)) ++needed;
  }
  const int spare = free_white_edges(ctx.fixed) - (loc.corner ? 0 : 1);
  return needed <= spare;
}

std::vector<int> free_up_slots(const Build& b, const PatternTemplate& t) {
  std::vector<int> out;
  for (int s = cubie::UR; s <= cubie::UB; ++s) {
    if (!b.edge_free(s)) continue;
    const int petal = cubie::kEdgeStickers[static_cast<std::size_t>(s)][0];
    if (std::find(t.free.begin(), t.free.end(), petal) != t.free.end()) continue;
    out.push_back(s);
  }
  return out;
}

std::vector<int> unplaced_white_edges(const Build& b) {
  std::vector<int> out;
  for (int p = cubie::DR; p <= cubie::DB; ++p)
    if (!b.epiece[static_cast<std::size_t>(p)]) out.push_back(p);
  return out;
}

// Plausible progress for a task drawn without context: petals for the
// flower, a partial cross around a daisy, a finished cross for corners.
void add_progress(KcId kc, const PatternTemplate& t, Build& b, Rng& rng) {
  const Stage stage = kc_info(kc).stage;
  if (stage == Stage::WhiteFlower) {
    for (int p : unplaced_white_edges(b)) {
      if (rng.uniform(2) == 0) continue;
      const auto slots = free_up_slots(b, t);
      if (slots.empty()) break;
      b.edge(pick(slots, rng), p, 0);
    }
  } else if (stage == Stage::WhiteCross) {
    for (int p : unplaced_white_edges(b)) {
      const auto slots = free_up_slots(b, t);
      if ((rng.uniform(2) == 0 || slots.empty()) && b.edge_free(p))
        b.edge(p, p, 0);
      else if (!slots.empty())
        b.edge(pick(slots, rng), p, 0);
    }
  } else {
    for (int p : unplaced_white_edges(b))
      if (b.edge_free(p)) b.edge(p, p, 0);
    for (int p = cubie::DFR; p <= cubie::DRB; ++p)
      if (!b.cpiece[static_cast<std::size_t>(p)] && b.corner_free(p) && rng.uniform(2) == 1) b.corner(p, p, 0);
  }
}

std::optional<GeneratedTask> attempt_build(KcId kc, int ti, const Context& ctx, bool synthetic, Rng& rng,
                                           std::uint64_t seed) {
  const PatternTemplate& t = kc_templates(kc)[static_cast<std::size_t>(ti)];
  Build b = ctx.fixed;
  const auto loc = cubie::locate(t.white_sticker);
  const int piece = pick(target_candidates(kc, t, b), rng);
  if (loc.corner)
    b.corner(loc.slot, piece, loc.position);
  else
    b.edge(loc.slot, piece, loc.position);

  for (int s : t.occupied) {
    const int slot = cubie::locate(s).slot;
    if (!b.edge_free(slot)) continue;
    const auto spare = unplaced_white_edges(b);
    if (spare.empty()) return std::nullopt;
    b.edge(slot, pick(spare, rng), 0);
  }
  for (int s : t.free) {
    const int slot = cubie::locate(s).slot;
    if (!b.edge_free(slot)) continue;
    std::vector<int> plain;
    for (int p = cubie::UR; p <= cubie::UB; ++p)
      if (!b.epiece[static_cast<std::size_t>(p)]) plain.push_back(p);
    for (int p = cubie::FR; p <= cubie::BR; ++p)
      if (!b.epiece[static_cast<std::size_t>(p)]) plain.push_back(p);
    b.edge(slot, pick(plain, rng), static_cast<int>(rng.uniform(2)));
  }
  if (synthetic) add_progress(kc, t, b, rng);
  fill_random(b, rng);

  const CubeState state = cubie::to_facelets(b.c, frame::reference());
  if (!is_legal(state)) return std::nullopt;
  TargetPiece target;
  const auto ms = match_kc(state);
  const auto it = std::find_if(ms.begin(), ms.end(), [&](const KcMatch& m) {
    if (m.kc != kc || m.template_index != ti) return false;
    const auto st = piece_stickers(m.piece, state);
    return !st.empty() && st[0] == t.white_sticker;
  });
  if (it == ms.end()) return std::nullopt;
  return GeneratedTask{kc, state, it->piece, ti, seed};
}

}  // namespace

std::vector<int> compatible_templates(KcId kc, const std::optional<CubeState>& context) {
  const Context ctx = read_context(context, kc_info(kc).stage);
  std::vector<int> out;
  const auto& ts = kc_templates(kc);
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (compatible(kc, ts[i], ctx)) out.push_back(static_cast<int>(i));
  return out;
}

GeneratedTask generate_task(KcId kc, std::uint64_t seed, const std::optional<CubeState>& context) {
  const Context ctx = read_context(context, kc_info(kc).stage);
  std::vector<int> options;
  const auto& ts = kc_templates(kc);
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (compatible(kc, ts[i], ctx)) options.push_back(static_cast<int>(i));
  if (options.empty())
    throw Error(ErrorCode::UnsatisfiableContext,
                std::string("no ") + std::string(to_string(kc)) + " template fits the placed pieces");
  Rng rng(seed);
  const int ti = pick(options, rng);
  for (int i = 0; i < kGenerationRetries; ++i)
    if (auto task = attempt_build(kc, ti, ctx, !context.has_value(), rng, seed)) return *task;
  throw Error(ErrorCode::UnsatisfiableContext,
              std::string("could not instantiate ") + std::string(to_string(kc)) + " around the placed pieces");
}

std::optional<KcId> pick_next_kc(const std::vector<SkillRow>& rows) {
  for (Stage st : kStages) {
    std::optional<KcId> best;
    for (const SkillRow& r : rows) {
      if (r.mastered || kc_info(r.kc).stage != st) continue;
      if (!best || kc_info(r.kc).stars < kc_info(*best).stars) best = r.kc;
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace rubikon
