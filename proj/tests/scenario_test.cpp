#include <string>

#include <gtest/gtest.h>

#include "sinsim/scenario.hpp"

namespace sinsim {
namespace {

const std::string kMinimal = R"(
[time]
horizon_s = 3600
step_s = 60

[node]
id = sat
altitude_km = 550
inclination_deg = 53
)";

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseScenario, MinimalDocument) {
  const auto cfg = parse_scenario(kMinimal);
  EXPECT_EQ(cfg.horizon.end, 3600.0);
  EXPECT_EQ(cfg.step, 60.0);
  ASSERT_EQ(cfg.nodes.size(), 1U);
  const auto& n = cfg.nodes[0];
  EXPECT_EQ(n.id, "sat");
  EXPECT_EQ(n.kind, NodeKind::provider_satellite);
  EXPECT_EQ(n.layer, Layer::LEO);
  const auto& el = std::get<OrbitalElements>(n.motion);
  EXPECT_DOUBLE_EQ(el.semi_major_axis, kEarthRadiusKm + 550.0);
  EXPECT_DOUBLE_EQ(el.inclination, deg_to_rad(53.0));
  EXPECT_EQ(cfg.sdn.messages_per_hop, 4);
  EXPECT_EQ(cfg.links.occlusion_margin, kDefaultGrazingMarginKm);
}

TEST(ParseScenario, HashTracksContent) {
  EXPECT_EQ(parse_scenario(kMinimal).source_hash, parse_scenario(kMinimal).source_hash);
  EXPECT_NE(parse_scenario(kMinimal).source_hash, parse_scenario(kMinimal + "\n# x\n").source_hash);
}

TEST(ParseScenario, EccentricityOutOfRangeNamesField) {
  const std::string err = error_of(kMinimal + "eccentricity = 1.2\n");
  EXPECT_NE(err.find("eccentricity"), std::string::npos) << err;
  EXPECT_NE(err.find("[node]"), std::string::npos) << err;
}

TEST(ParseScenario, WalkerExpansion) {
  const auto cfg = parse_scenario(R"(
[time]
horizon_s = 600
[walker]
name = w
total = 6
planes = 3
phasing = 1
inclination_deg = 53
altitude_km = 550
)");
  ASSERT_EQ(cfg.nodes.size(), 6U);
  EXPECT_EQ(cfg.nodes[0].id, "w-0-0");
  EXPECT_EQ(cfg.nodes[5].id, "w-2-1");
  for (const auto& n : cfg.nodes) EXPECT_EQ(n.group, "w");
}

TEST(ParseScenario, LinksAndSdnSections) {
  const auto cfg = parse_scenario(kMinimal + R"(
[node]
id = user
kind = nanosat_terminal
position_km = 7000 0 0
[links]
allow = nanosat_terminal provider_satellite max_range_km=2500 bandwidth_mbps=50
allow = provider_satellite provider_satellite same_group
occlusion_margin_km = 80
[flow]
src = user
dst = sat
bidirectional = false
[sdn]
messages_per_hop = 2
bin_s = 120
rule_removal = true
)");
  ASSERT_EQ(cfg.links.rules.size(), 2U);
  EXPECT_EQ(cfg.links.rules[0].max_range, 2500.0);
  EXPECT_EQ(cfg.links.rules[0].bandwidth_mbps, 50.0);
  EXPECT_TRUE(cfg.links.rules[1].same_group);
  EXPECT_EQ(cfg.links.occlusion_margin, 80.0);
  ASSERT_EQ(cfg.flows.size(), 1U);
  EXPECT_FALSE(cfg.flows[0].bidirectional);
  EXPECT_EQ(cfg.sdn.messages_per_hop, 2);
  EXPECT_EQ(cfg.sdn.bin, 120.0);
  EXPECT_TRUE(cfg.sdn.rule_removal);
  EXPECT_TRUE(std::holds_alternative<InertialPoint>(cfg.node("user").motion));
}

TEST(ParseScenario, GroundSite) {
  const auto cfg = parse_scenario(kMinimal + "[node]\nid = gs\nkind = ground_station\nlatitude_deg = 47\nlongitude_deg = 8\n");
  EXPECT_EQ(cfg.node("gs").layer, Layer::ground);
}

struct BadCase {
  const char* label;
  std::string text;
  const char* needle;
};

TEST(ParseScenario, ErrorsNameTheProblem) {
  const std::vector<BadCase> cases{
      {"missing time", "[node]\nid = a\naltitude_km = 500\n", "[time]"},
      {"bad number", "[time]\nhorizon_s = abc\n", "horizon_s"},
      {"negative step", "[time]\nhorizon_s = 100\nstep_s = -1\n", "step_s"},
      {"unknown field", kMinimal + "colour = red\n", "colour"},
      {"unknown section", kMinimal + "[bogus]\n", "unknown section"},
      {"duplicate id", kMinimal + "[node]\nid = sat\naltitude_km = 600\n", "duplicate"},
      {"no altitude", kMinimal + "[node]\nid = b\n", "altitude_km"},
      {"below surface", kMinimal + "[node]\nid = b\nsemi_major_axis_km = 5000\n", "semi_major_axis"},
      {"unknown kind", kMinimal + "[node]\nid = b\nkind = blimp\naltitude_km = 1\n", "blimp"},
      {"flow endpoint", kMinimal + "[flow]\nsrc = sat\ndst = ghost\n", "ghost"},
      {"odd multiplier", kMinimal + "[sdn]\nmessages_per_hop = 3\n", "messages_per_hop"},
      {"walker planes", "[time]\nhorizon_s = 60\n[walker]\nname = w\ntotal = 7\nplanes = 3\ninclination_deg = 0\naltitude_km = 500\n", "walker"},
      {"no equals", kMinimal + "just words\n", "key = value"},
      {"controller", kMinimal + "[sdn]\ncontroller = nobody\n", "nobody"},
  };
  for (const auto& c : cases) {
    const std::string err = error_of(c.text);
    EXPECT_FALSE(err.empty()) << c.label;
    EXPECT_NE(err.find(c.needle), std::string::npos) << c.label << ": " << err;
  }
}

TEST(ParseScenario, ErrorCarriesLineNumber) {
  const std::string err = error_of("[time]\nhorizon_s = 60\n\n[node]\nid = a\naltitude_km = x\n");
  EXPECT_NE(err.find("line 6"), std::string::npos) << err;
}

TEST(ParseScenario, BundledScenariosLoad) {
  const auto geo = parse_scenario(read_text_file(SINSIM_SCENARIO_DIR "/spire_vs_providers.scn"));
  EXPECT_EQ(geo.nodes.size(), 1U + 20U + 648U + 1584U);
  const auto sdn = parse_scenario(read_text_file(SINSIM_SCENARIO_DIR "/sdn_paper_intervals.scn"));
  EXPECT_EQ(sdn.flows.size(), 3U);
  EXPECT_EQ(sdn.node("geo-controller").layer, Layer::GEO);
  EXPECT_THROW(read_text_file("/nonexistent/file.scn"), ScenarioError);
}

}  // namespace
}  // namespace sinsim
