#pragma once

// Three-level hint payloads: level 1 highlights the target piece and its
// destination, level 2 also grays out stickers that do not matter, level 3
// adds the macro as annotated steps. Sticker indices and moves refer to the
// hinted state's own orientation.

#include <string>
#include <vector>

#include "rubikon/task_model.hpp"

namespace rubikon {

struct HintStep {
  Move move;
  std::string annotation;  // e.g. "front face clockwise x1", face named in the normalized frame
};

struct HintPayload {
  int level = 1;
  KcId kc = KcId::Side;
  TargetPiece piece;
  StickerMask highlight;
  StickerMask grayout;  // empty below level 2
  std::vector<HintStep> steps;  // empty below level 3
};

// Throws BadLevel outside 1..3 and PatternMismatch when (kc, piece) does not
// apply to the state.
HintPayload make_hint(const CubeState& state, KcId kc, const TargetPiece& piece, int level);

// First-layer pieces already placed for the stage: petals for the flower,
// seated cross edges for the cross, seated cross edges and corners last.
std::vector<TargetPiece> placed_pieces(const CubeState& state, Stage stage);

// Stickers of the placed pieces plus the six centers.
StickerMask placed_stickers(const CubeState& state, Stage stage);

// Face name as seen with White down and Green front.
std::string step_annotation(const CubeState& state, Move m);

}  // namespace rubikon
