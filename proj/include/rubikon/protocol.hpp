#pragma once

// JSON encodings shared by the wire protocol, the event log and the catalog
// export. Facelet strings use the 54-character URFDLB format.

#include <json.hpp>
#include <string>

#include "rubikon/hints.hpp"
#include "rubikon/taskgen.hpp"
#include "rubikon/tracing.hpp"

namespace rubikon {

using Json = nlohmann::json;

inline constexpr int kProtocolVersion = 1;

// Knowledge components with their stage, stars and templates (each with its
// macro in face-turn notation), plus each stage's goal mask in the
// normalized frame.
Json kc_catalog_json();

Json to_json(const TargetPiece& p);
Json to_json(const SkillRow& r);
Json to_json(const std::vector<SkillRow>& rows);
Json to_json(const HintPayload& h);
Json to_json(const GeneratedTask& t);
Json to_json(const TracingParams& p);
Json to_json(const StickerMask& m);
Json moves_json(std::span<const Move> moves);

// Fields absent from `j` keep the values of `base`. Throws InvalidArgument on
// wrong types or values that fail TracingParams::validate.
TracingParams params_from_json(const Json& j, const TracingParams& base = {});

// Envelope {seq, type, payload}; the payload is always an object.
Json envelope(std::int64_t seq, std::string_view type, Json payload);

}  // namespace rubikon
