#pragma once

// CSV and summary emission. Header row, fixed column order, '.' decimal
// separator, '\n' line endings; times in s, ranges in km, delays in ms.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "sinsim/experiment.hpp"
#include "sinsim/routing.hpp"
#include "sinsim/sdn.hpp"
#include "sinsim/topology.hpp"

namespace sinsim {

namespace detail {

/// Node ids restricted to a filename-safe alphabet.
inline std::string file_token(std::string_view id) {
  std::string out(id);
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

inline std::string pair_token(std::string_view a, std::string_view b) {
  return file_token(a) + "__" + file_token(b);
}

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, std::string_view header) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
    out_ << header << '\n';
  }

  template <typename... Args>
  void row(fmt::format_string<Args...> f, Args&&... args) {
    out_ << fmt::format(f, std::forward<Args>(args)...) << '\n';
  }

 private:
  std::ofstream out_;
};

inline std::string edge_text(const DirectedEdge& e) { return e.from + "->" + e.to; }

inline std::string window_text(const std::optional<double>& v) {
  return v ? fmt::format("{:.3f}", *v) : std::string("");
}

inline void write_metadata(const ExperimentReport& r, const std::filesystem::path& dir) {
  std::ofstream out(dir / "run.txt", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write run.txt");
  out << fmt::format("study={}\n", r.meta.study);
  out << fmt::format("scenario={}\n", r.meta.scenario_name);
  out << fmt::format("scenario_hash={:016x}\n", r.meta.scenario_hash);
  out << fmt::format("tool_version={}\n", r.meta.tool_version);
  out << fmt::format("horizon_s={:.3f}\n", r.meta.horizon.duration());
  out << fmt::format("step_s={:.3f}\n", r.meta.step);
  if (r.ledger.controller) {
    out << fmt::format("controller={}\n", *r.ledger.controller);
    out << fmt::format("controller_layer={}\n", to_string(*r.ledger.controller_layer));
  }
}

}  // namespace detail

inline void write_visibility_csv(const std::vector<VisibilitySample>& series,
                                 const std::filesystem::path& path) {
  detail::CsvFile csv(path, "time_s,range_km,visible");
  for (const auto& s : series) csv.row("{:.3f},{:.6f},{}", s.time, s.range, s.visible ? 1 : 0);
}

inline void write_snapshots_csv(const std::vector<SnapshotGraph>& snapshots,
                                const std::filesystem::path& path) {
  detail::CsvFile csv(path, "time_s,node_a,node_b,class,delay_ms");
  for (const auto& g : snapshots) {
    for (const auto& l : g.links) {
      csv.row("{:.3f},{},{},{},{:.6f}", g.time, l.node_a, l.node_b, to_string(l.link_class),
              l.delay * 1e3);
    }
  }
}

inline void write_route_csv(const RouteTimeline& tl, const std::vector<SnapshotGraph>& snapshots,
                            const std::filesystem::path& path) {
  detail::CsvFile csv(path, "time_s,reachable,hop_count,total_delay_ms,new_hops,dropped_hops");
  std::size_t next_event = 0;
  for (std::size_t k = 0; k < tl.results.size(); ++k) {
    const double t = snapshots[k].time;
    std::size_t added = 0;
    std::size_t dropped = 0;
    if (next_event < tl.handovers.size() && tl.handovers[next_event].time == t) {
      added = tl.handovers[next_event].new_hops.size();
      dropped = tl.handovers[next_event].dropped_hops.size();
      ++next_event;
    }
    const auto& r = tl.results[k];
    if (r) {
      csv.row("{:.3f},1,{},{:.6f},{},{}", t, r->hops.size(), r->total_delay * 1e3, added, dropped);
    } else {
      csv.row("{:.3f},0,0,,{},{}", t, added, dropped);
    }
  }
}

inline void write_ledger_csv(const MessageLedger& ledger, const std::filesystem::path& path) {
  detail::CsvFile csv(path, "time_s,switch,direction,kind,hop");
  for (const auto& m : ledger.messages) {
    csv.row("{:.3f},{},{},{},{}", m.time, m.switch_id, to_string(m.direction), to_string(m.kind),
            detail::edge_text(m.hop));
  }
}

inline void write_load_csv(const std::vector<LoadBin>& load, const std::filesystem::path& path) {
  detail::CsvFile csv(path, "bin_start_s,messages");
  for (const auto& b : load) csv.row("{:.3f},{}", b.start, b.messages);
}

inline void write_connectivity_outputs(const ExperimentReport& r,
                                       const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  detail::write_metadata(r, dir);

  detail::CsvFile pairs(dir / "pairs.csv",
                        "node_a,node_b,windows,coverage,min_range_km,max_range_km,range_spread_km");
  detail::CsvFile pair_windows(dir / "pair_windows.csv", "node_a,node_b,start_s,end_s,duration_s");
  for (const auto& p : r.pairs) {
    write_visibility_csv(p.series, dir / ("visibility_" + detail::pair_token(p.node_a, p.node_b) +
                                          ".csv"));
    pairs.row("{},{},{},{:.6f},{:.6f},{:.6f},{:.6f}", p.node_a, p.node_b, p.windows.size(),
              p.coverage, p.min_range, p.max_range, p.range_spread());
    for (const auto& w : p.windows) {
      pair_windows.row("{},{},{:.3f},{:.3f},{:.3f}", w.node_a, w.node_b, w.start, w.end,
                       w.duration());
    }
  }

  detail::CsvFile coverage(dir / "coverage.csv",
                           "terminal,group,satellites,windows,median_window_s,union_coverage");
  detail::CsvFile access(dir / "access_windows.csv",
                         "terminal,satellite,group,start_s,end_s,duration_s");
  for (const auto& g : r.coverage) {
    coverage.row("{},{},{},{},{},{:.6f}", g.terminal, g.group, g.satellites, g.windows.size(),
                 detail::window_text(g.median_window), g.coverage);
    for (const auto& w : g.windows) {
      access.row("{},{},{},{:.3f},{:.3f},{:.3f}", w.node_a, w.node_b, g.group, w.start, w.end,
                 w.duration());
    }
  }
}

inline void write_sdn_outputs(const ExperimentReport& r, const std::filesystem::path& dir,
                              bool dump_snapshots = false) {
  std::filesystem::create_directories(dir);
  detail::write_metadata(r, dir);

  detail::CsvFile flows(dir / "flows.csv",
                        "src,dst,label,bidirectional,handovers,new_hops,messages");
  for (const auto& f : r.flows) {
    const std::string token = detail::pair_token(f.flow.src, f.flow.dst);
    write_route_csv(f.timeline, r.snapshots, dir / ("route_" + token + ".csv"));
    write_ledger_csv(f.ledger, dir / ("ledger_" + token + ".csv"));
    write_load_csv(f.load, dir / ("message_load_" + token + ".csv"));
    std::size_t new_hops = 0;
    for (const auto& h : f.timeline.handovers) new_hops += h.new_hops.size();
    flows.row("{},{},{},{},{},{},{}", f.flow.src, f.flow.dst, f.flow.label,
              f.flow.bidirectional ? 1 : 0, f.timeline.handovers.size(), new_hops,
              f.ledger.total());
  }
  write_ledger_csv(r.ledger, dir / "ledger.csv");
  write_load_csv(r.load, dir / "message_load.csv");
  write_load_csv(cumulative_load(r.load), dir / "message_load_cumulative.csv");
  if (dump_snapshots) write_snapshots_csv(r.snapshots, dir / "snapshots.csv");
}

inline void print_summary(const ExperimentReport& r, std::ostream& os) {
  os << fmt::format("{} study: {} (hash {:016x}, sinsim {})\n", r.meta.study,
                    r.meta.scenario_name.empty() ? "<unnamed>" : r.meta.scenario_name,
                    r.meta.scenario_hash, r.meta.tool_version);
  os << fmt::format("horizon {:.0f} s, step {:.3f} s\n", r.meta.horizon.duration(), r.meta.step);
  if (!r.pairs.empty()) {
    os << fmt::format("\n{:<24} {:<24} {:>8} {:>9} {:>14}\n", "node_a", "node_b", "windows",
                      "coverage", "range_spread");
    for (const auto& p : r.pairs) {
      os << fmt::format("{:<24} {:<24} {:>8} {:>9.3f} {:>11.1f} km\n", p.node_a, p.node_b,
                        p.windows.size(), p.coverage, p.range_spread());
    }
  }
  if (!r.coverage.empty()) {
    os << fmt::format("\n{:<16} {:<16} {:>6} {:>8} {:>14} {:>9}\n", "terminal", "provider", "sats",
                      "windows", "median_window", "coverage");
    for (const auto& g : r.coverage) {
      const std::string median =
          g.median_window ? fmt::format("{:.1f} min", *g.median_window / 60.0) : "-";
      os << fmt::format("{:<16} {:<16} {:>6} {:>8} {:>14} {:>9.3f}\n", g.terminal, g.group,
                        g.satellites, g.windows.size(), median, g.coverage);
    }
  }
  if (!r.flows.empty()) {
    os << fmt::format("\n{:<16} {:<16} {:>10} {:>10}\n", "src", "dst", "handovers", "messages");
    for (const auto& f : r.flows) {
      os << fmt::format("{:<16} {:<16} {:>10} {:>10}\n", f.flow.src, f.flow.dst,
                        f.timeline.handovers.size(), f.ledger.total());
    }
    os << fmt::format("total controller messages: {}\n", r.ledger.total());
    if (r.ledger.controller) {
      os << fmt::format("controller: {} ({})\n", *r.ledger.controller,
                        to_string(*r.ledger.controller_layer));
    }
  }
}

}  // namespace sinsim
