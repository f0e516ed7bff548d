// Command-line entry point: `sinsim connectivity|sdn --scenario <path> --out <dir>`.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sinsim/sinsim.hpp"

namespace {

struct Options {
  std::string scenario;
  std::string out;
  std::optional<double> step;
  bool summary = false;
  bool dump_snapshots = false;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--scenario", opt.scenario, "Scenario document")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", opt.out, "Output directory")->required();
  cmd->add_option("--step", opt.step, "Override the scenario sampling step (s)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--summary", opt.summary, "Print the report table to stdout");
}

sinsim::ScenarioConfig load(const Options& opt) {
  auto cfg = sinsim::parse_scenario(sinsim::read_text_file(opt.scenario));
  if (opt.step) {
    cfg.step = *opt.step;
    sinsim::validate(cfg);
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-layer space information network simulator"};
  app.set_version_flag("--version", sinsim::kToolVersion);
  app.require_subcommand(1);

  Options opt;
  auto* connectivity =
      app.add_subcommand("connectivity", "Ranges, contact windows and coverage per node pair");
  add_common(connectivity, opt);
  auto* sdn = app.add_subcommand("sdn", "Routes, handovers and SDN controller message load");
  add_common(sdn, opt);
  sdn->add_flag("--dump-snapshots", opt.dump_snapshots, "Also write snapshots.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = load(opt);
    if (connectivity->parsed()) {
      const auto report = sinsim::run_connectivity_study(cfg);
      sinsim::write_connectivity_outputs(report, opt.out);
      if (opt.summary) sinsim::print_summary(report, std::cout);
    } else {
      const auto report = sinsim::run_sdn_study(cfg);
      sinsim::write_sdn_outputs(report, opt.out, opt.dump_snapshots);
      if (opt.summary) sinsim::print_summary(report, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "sinsim: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
