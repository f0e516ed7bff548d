#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "sinsim/report_io.hpp"
#include "sinsim/scenario.hpp"

namespace sinsim {
namespace {

namespace fs = std::filesystem;
using fixtures::allow;
using fixtures::point;

ScenarioConfig two_node(Vec3 a, Vec3 b) {
  auto cfg = fixtures::config(3600, 60);
  cfg.nodes = {point("user", a, NodeKind::nanosat_terminal), point("sat", b)};
  cfg.links.rules = {allow(NodeKind::nanosat_terminal, NodeKind::provider_satellite)};
  cfg.flows = {FlowSpec{"user", "sat", true, "data"}};
  return cfg;
}

TEST(ConnectivityStudy, ColocatedNodesAlwaysCovered) {
  const auto r = run_connectivity_study(two_node({7000, 0, 0}, {7000, 0, 0}));
  ASSERT_EQ(r.pairs.size(), 1U);
  EXPECT_EQ(r.pairs[0].coverage, 1.0);
  EXPECT_EQ(r.pairs[0].windows.size(), 1U);
  EXPECT_EQ(r.pairs[0].range_spread(), 0.0);
  ASSERT_EQ(r.coverage.size(), 1U);
  EXPECT_EQ(r.coverage[0].coverage, 1.0);
  EXPECT_EQ(r.coverage[0].median_window, 3600.0);
}

TEST(ConnectivityStudy, DuplicateFlowPairsReportedOnce) {
  auto cfg = two_node({7000, 0, 0}, {7000, 100, 0});
  cfg.flows.push_back({"sat", "user", true, "reply"});
  EXPECT_EQ(run_connectivity_study(cfg).pairs.size(), 1U);
}

TEST(SdnStudy, NoVisibilityNoMessages) {
  const auto r = run_sdn_study(two_node({7000, 0, 0}, {-7000, 0, 0}));
  ASSERT_EQ(r.flows.size(), 1U);
  EXPECT_EQ(r.ledger.total(), 0U);
  EXPECT_TRUE(r.flows[0].timeline.handovers.empty());
  for (const auto& res : r.flows[0].timeline.results) EXPECT_FALSE(res);
  for (const auto& b : r.load) EXPECT_EQ(b.messages, 0U);
}

TEST(SdnStudy, PermanentSingleHopCostsEightMessages) {
  const auto r = run_sdn_study(two_node({7000, 0, 0}, {7000, 1000, 0}));
  EXPECT_EQ(r.flows[0].timeline.handovers.size(), 1U);
  EXPECT_EQ(r.ledger.total(), 8U);
  EXPECT_EQ(r.load.front().messages, 8U);
}

TEST(SdnStudy, StylizedCadenceScenario) {
  const auto cfg = parse_scenario(read_text_file(SINSIM_SCENARIO_DIR "/sdn_paper_intervals.scn"));
  const auto r = run_sdn_study(cfg);
  ASSERT_EQ(r.flows.size(), 3U);
  EXPECT_EQ(r.flows[0].ledger.total(), 288U);
  EXPECT_EQ(r.flows[1].ledger.total(), 96U);
  EXPECT_EQ(r.flows[2].ledger.total(), 32U);
  EXPECT_EQ(r.ledger.total(), 416U);
  // one single-hop bring-up per contact
  EXPECT_EQ(r.flows[0].timeline.handovers.size(), 36U);
  EXPECT_EQ(r.flows[1].timeline.handovers.size(), 12U);
  EXPECT_EQ(r.flows[2].timeline.handovers.size(), 4U);
  const auto spire = cfg.node("spire");
  const auto times = sample_times(cfg.horizon, cfg.step);
  const auto windows = contact_windows(
      detail::pair_series(cfg, spire, detail::states_over(spire, times), cfg.node("starlink"), times));
  EXPECT_EQ(windows.size(), r.flows[0].timeline.handovers.size());
  EXPECT_EQ(r.ledger.controller, "geo-controller");
  EXPECT_EQ(r.ledger.controller_layer, Layer::GEO);
}

TEST(ConnectivityStudy, BundledGeometricScenarioOrdering) {
  const auto r =
      run_connectivity_study(parse_scenario(read_text_file(SINSIM_SCENARIO_DIR "/spire_vs_providers.scn")));
  ASSERT_EQ(r.coverage.size(), 3U);
  EXPECT_EQ(r.coverage[0].group, "o3b");
  EXPECT_EQ(r.coverage[1].group, "oneweb");
  EXPECT_EQ(r.coverage[2].group, "starlink");
  EXPECT_GT(*r.coverage[0].median_window, *r.coverage[1].median_window);
  EXPECT_GT(*r.coverage[1].median_window, *r.coverage[2].median_window);
  ASSERT_EQ(r.pairs.size(), 3U);
}

TEST(CheckConsistency, DetectsTampering) {
  auto r = run_sdn_study(two_node({7000, 0, 0}, {7000, 1000, 0}));
  EXPECT_NO_THROW(check_consistency(r));
  r.flows[0].ledger.messages.pop_back();
  EXPECT_THROW(check_consistency(r), std::logic_error);

  auto c = run_connectivity_study(two_node({7000, 0, 0}, {7000, 0, 0}));
  c.pairs[0].coverage = 0.5;
  EXPECT_THROW(check_consistency(c), std::logic_error);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class OutputDirs : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("sinsim_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
  }
  void TearDown() override { fs::remove_all(root_); }
  fs::path root_;
};

TEST_F(OutputDirs, SdnOutputsAreByteIdenticalAcrossRuns) {
  const auto cfg = parse_scenario(read_text_file(SINSIM_SCENARIO_DIR "/sdn_paper_intervals.scn"));
  write_sdn_outputs(run_sdn_study(cfg), root_ / "a", true);
  write_sdn_outputs(run_sdn_study(cfg), root_ / "b", true);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(root_ / "a")) {
    ++files;
    EXPECT_EQ(slurp(e.path()), slurp(root_ / "b" / e.path().filename())) << e.path();
  }
  EXPECT_EQ(files, 3U * 3U + 6U);
  EXPECT_EQ(slurp(root_ / "a" / "message_load.csv").substr(0, 30), "bin_start_s,messages\n0.000,24\n");
}

TEST_F(OutputDirs, ConnectivityCsvShape) {
  auto cfg = two_node({7000, 0, 0}, {7000, 1000, 0});
  write_connectivity_outputs(run_connectivity_study(cfg), root_);
  const std::string vis = slurp(root_ / "visibility_user__sat.csv");
  EXPECT_EQ(vis.substr(0, vis.find('\n')), "time_s,range_km,visible");
  EXPECT_NE(vis.find("\n0.000,1000.000000,1\n"), std::string::npos);
  EXPECT_EQ(std::count(vis.begin(), vis.end(), '\n'), 62);
  EXPECT_EQ(vis.find('\r'), std::string::npos);
  EXPECT_NE(slurp(root_ / "run.txt").find("study=connectivity\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(root_ / "coverage.csv"));
}

}  // namespace
}  // namespace sinsim
