#include "rubikon/protocol.hpp"

namespace rubikon {

Json to_json(const StickerMask& m) { return m.indices(); }

Json moves_json(std::span<const Move> moves) {
  Json out = Json::array();
  for (Move m : moves) out.push_back(m.notation());
  return out;
}

namespace {

// Macro of each template, taken from the first seed that draws it. Macros
// are fixed by the template in the normalized frame except for Maintain,
// whose top-face adjustments depend on which petal slots are free.
Json templates_json(KcId kc) {
  const auto& templates = kc_templates(kc);
  Json out = Json::array();
  std::vector<Json> macros(templates.size());
  std::size_t found = 0;
  for (std::uint64_t seed = 0; found < templates.size(); ++seed) {
    const GeneratedTask t = generate_task(kc, seed);
    Json& slot = macros[static_cast<std::size_t>(t.template_index)];
    if (!slot.is_null()) continue;
    std::string text;
    for (Move m : canonical_macro(kc, t.piece, t.state)) text += (text.empty() ? "" : " ") + m.notation();
    slot = text;
    ++found;
  }
  for (std::size_t i = 0; i < templates.size(); ++i)
    out.push_back({{"index", i},
                   {"label", templates[i].label},
                   {"white_sticker", templates[i].white_sticker},
                   {"offset", templates[i].offset < 0 ? Json(nullptr) : Json(templates[i].offset)},
                   {"macro", macros[i]},
                   {"macro_depends_on_context", kc == KcId::Maintain}});
  return out;
}

}  // namespace

Json kc_catalog_json() {
  static const Json catalog = [] {
    Json kcs = Json::array();
    for (const KcInfo& k : kc_catalog())
      kcs.push_back({{"id", k.key},
                     {"name", k.name},
                     {"stage", to_string(k.stage)},
                     {"stars", k.stars},
                     {"summary", k.summary},
                     {"templates", templates_json(k.id)}});
    Json stages = Json::array();
    for (Stage s : kStages) stages.push_back({{"id", to_string(s)}, {"goal_mask", to_json(stage_mask(s))}});
    return Json{{"version", kProtocolVersion}, {"kcs", kcs}, {"stages", stages}};
  }();
  return catalog;
}

Json to_json(const TargetPiece& p) { return p.to_string(); }

Json to_json(const SkillRow& r) {
  const KcInfo& k = kc_info(r.kc);
  return {{"kc_id", k.key},     {"stage", to_string(k.stage)}, {"stars", k.stars},
          {"score", r.score},   {"mastered", r.mastered},      {"attempts", r.attempts_seen}};
}

Json to_json(const std::vector<SkillRow>& rows) {
  Json out = Json::array();
  for (const SkillRow& r : rows) out.push_back(to_json(r));
  return out;
}

Json to_json(const HintPayload& h) {
  Json steps = Json::array();
  for (const HintStep& s : h.steps) steps.push_back({{"move", s.move.notation()}, {"annotation", s.annotation}});
  return {{"level", h.level},
          {"kc_id", to_string(h.kc)},
          {"piece", to_json(h.piece)},
          {"highlight", to_json(h.highlight)},
          {"grayout", to_json(h.grayout)},
          {"steps", steps}};
}

Json to_json(const GeneratedTask& t) {
  return {{"kc_id", to_string(t.kc)},
          {"piece", to_json(t.piece)},
          {"template_index", t.template_index},
          {"template_label", kc_templates(t.kc)[static_cast<std::size_t>(t.template_index)].label},
          {"stage", to_string(kc_info(t.kc).stage)},
          {"seed", t.seed},
          {"facelet", t.state.to_string()}};
}

Json to_json(const TracingParams& p) {
  return {{"t1", p.t1},
          {"t2", p.t2},
          {"n", p.n},
          {"weights", p.weights},
          {"cap", p.cap},
          {"denominator", p.denominator == TracingParams::Denominator::Transitions ? "transitions" : "states"}};
}

TracingParams params_from_json(const Json& j, const TracingParams& base) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "params must be a JSON object");
  TracingParams p = base;
  auto number = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw Error(ErrorCode::InvalidArgument, std::string(key) + " must be a number");
    out = j[key].get<double>();
  };
  auto integer = [&](const char* key, int& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) throw Error(ErrorCode::InvalidArgument, std::string(key) + " must be an integer");
    out = j[key].get<int>();
  };
  number("t1", p.t1);
  number("t2", p.t2);
  integer("n", p.n);
  integer("cap", p.cap);
  if (j.contains("weights")) {
    const Json& w = j["weights"];
    if (!w.is_array() || w.size() != p.weights.size())
      throw Error(ErrorCode::InvalidArgument, "weights must be an array of 4 numbers");
    for (std::size_t i = 0; i < p.weights.size(); ++i) {
      if (!w[i].is_number()) throw Error(ErrorCode::InvalidArgument, "weights must be numbers");
      p.weights[i] = w[i].get<double>();
    }
  }
  if (j.contains("denominator")) {
    const Json& d = j["denominator"];
    if (d == "transitions")
      p.denominator = TracingParams::Denominator::Transitions;
    else if (d == "states")
      p.denominator = TracingParams::Denominator::States;
    else
      throw Error(ErrorCode::InvalidArgument, "denominator must be \"transitions\" or \"states\"");
  }
  p.validate();
  return p;
}

Json envelope(std::int64_t seq, std::string_view type, Json payload) {
  return {{"seq", seq}, {"type", type}, {"payload", std::move(payload)}};
}

}  // namespace rubikon
