#include <doctest.h>

#include "rubikon/protocol.hpp"

using namespace rubikon;

TEST_CASE("the catalog lists every KC with its templates and macros") {
  const Json c = kc_catalog_json();
  CHECK(c["version"] == kProtocolVersion);
  REQUIRE(c["kcs"].size() == static_cast<std::size_t>(kKcCount));
  for (std::size_t i = 0; i < c["kcs"].size(); ++i) {
    const Json& k = c["kcs"][i];
    const KcInfo& info = kc_catalog()[i];
    CHECK(k["id"] == info.key);
    CHECK(k["stage"] == to_string(info.stage));
    CHECK(k["stars"] == info.stars);
    REQUIRE(k["templates"].size() == kc_templates(info.id).size());
    for (const Json& t : k["templates"]) {
      CHECK(t["macro"].is_string());
      CHECK_FALSE(t["macro"].get<std::string>().empty());
    }
  }
  for (const Json& k : c["kcs"])
    CHECK(k["templates"][0]["macro_depends_on_context"] == (k["id"] == "maintain"));
  CHECK(c["kcs"][static_cast<std::size_t>(KcId::Side)]["templates"].size() == 8);
  CHECK(c["kcs"][static_cast<std::size_t>(KcId::BackHarder)]["templates"].size() == 4);
  REQUIRE(c["stages"].size() == 3);
}

TEST_CASE("a template's macro does not depend on the draw unless flagged") {
  const Json c = kc_catalog_json();
  for (const KcInfo& k : kc_catalog()) {
    const Json& templates = c["kcs"][static_cast<std::size_t>(k.id)]["templates"];
    if (templates[0]["macro_depends_on_context"] == true) continue;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const GeneratedTask t = generate_task(k.id, seed);
      std::string text;
      for (Move m : canonical_macro(k.id, t.piece, t.state)) text += (text.empty() ? "" : " ") + m.notation();
      CHECK_MESSAGE(templates[static_cast<std::size_t>(t.template_index)]["macro"] == text, k.key);
    }
  }
}

TEST_CASE("params overrides keep unspecified fields and reject bad values") {
  const TracingParams p = params_from_json({{"t1", 0.9}, {"denominator", "states"}});
  CHECK(p.t1 == 0.9);
  CHECK(p.t2 == 2.4);
  CHECK(p.denominator == TracingParams::Denominator::States);
  const TracingParams back = params_from_json(to_json(p));
  CHECK(to_json(back) == to_json(p));
  CHECK_THROWS_AS(params_from_json({{"t1", "high"}}), Error);
  CHECK_THROWS_AS(params_from_json({{"n", 0}}), Error);
  CHECK_THROWS_AS(params_from_json({{"weights", {1.0, 0.8}}}), Error);
  CHECK_THROWS_AS(params_from_json({{"weights", {0.5, 0.8, 0.5, 0.0}}}), Error);
  CHECK_THROWS_AS(params_from_json(Json::array()), Error);
}

TEST_CASE("envelopes always carry an object payload") {
  const Json e = envelope(3, "Hello", Json::object());
  CHECK(e["seq"] == 3);
  CHECK(e["type"] == "Hello");
  CHECK(e["payload"].is_object());
  CHECK(moves_json(std::vector<Move>{Move::parse("R"), Move::parse("U2"), Move::parse("F'")}) ==
        Json::array({"R", "U2", "F'"}));
}
