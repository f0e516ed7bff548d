#pragma once

// Controller <-> switch flow-setup message accounting.
//
// Each new hop u->v of a flow costs a request/install exchange at both
// switches of the hop (packet-in then flow-mod at u, the same again at v), i.e.
// four messages per hop and per traffic direction by default.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "sinsim/routing.hpp"
#include "sinsim/scenario_config.hpp"
#include "sinsim/visibility.hpp"

namespace sinsim {

inline constexpr int kDefaultMessagesPerHop = 4;

struct FlowId {
  NodeId src;
  NodeId dst;

  FlowId reversed() const { return {dst, src}; }
  friend auto operator<=>(const FlowId&, const FlowId&) = default;
};

enum class ControlDirection { switch_to_controller, controller_to_switch };
enum class MessageKind { rule_request, rule_install, rule_remove };

inline std::string_view to_string(ControlDirection d) {
  return d == ControlDirection::switch_to_controller ? "switch_to_controller"
                                                     : "controller_to_switch";
}

inline std::string_view to_string(MessageKind k) {
  switch (k) {
    case MessageKind::rule_request: return "rule_request";
    case MessageKind::rule_install: return "rule_install";
    case MessageKind::rule_remove: return "rule_remove";
  }
  return "?";
}

struct ControlMessage {
  double time = 0.0;
  NodeId switch_id;
  ControlDirection direction = ControlDirection::switch_to_controller;
  MessageKind kind = MessageKind::rule_request;
  FlowId flow;
  DirectedEdge hop;

  friend bool operator==(const ControlMessage&, const ControlMessage&) = default;
};

struct MessageLedger {
  std::vector<ControlMessage> messages;  // time-ordered
  // Controller placement metadata; does not affect counts.
  std::optional<NodeId> controller;
  std::optional<Layer> controller_layer;

  std::size_t total() const { return messages.size(); }
  std::size_t count(MessageKind kind) const {
    return static_cast<std::size_t>(std::count_if(
        messages.begin(), messages.end(), [kind](const ControlMessage& m) { return m.kind == kind; }));
  }
};

struct ControlPlaneOptions {
  int messages_per_hop = kDefaultMessagesPerHop;  // per direction; even
  bool rule_removal = false;
};

struct LoadBin {
  double start = 0.0;
  std::size_t messages = 0;

  friend bool operator==(const LoadBin&, const LoadBin&) = default;
};

/// Setup messages for `new_hops` new hops: per_hop × hops × directions.
inline std::size_t flow_setup_messages(std::size_t new_hops, bool bidirectional,
                                       int messages_per_hop = kDefaultMessagesPerHop) {
  if (messages_per_hop < 0) throw std::invalid_argument("messages_per_hop must be >= 0");
  return static_cast<std::size_t>(messages_per_hop) * new_hops * (bidirectional ? 2U : 1U);
}

namespace detail {

inline void emit_setup(std::vector<ControlMessage>& out, double time, const FlowId& flow,
                       const DirectedEdge& hop, int messages_per_hop) {
  for (int pair = 0; pair < messages_per_hop / 2; ++pair) {
    const NodeId& sw = pair % 2 == 0 ? hop.from : hop.to;
    out.push_back({time, sw, ControlDirection::switch_to_controller, MessageKind::rule_request,
                   flow, hop});
    out.push_back({time, sw, ControlDirection::controller_to_switch, MessageKind::rule_install,
                   flow, hop});
  }
}

}  // namespace detail

/// Folds time-ordered handovers of one flow into a message ledger. All
/// messages of a handover carry its snapshot time.
inline MessageLedger simulate_control_plane(const std::vector<HandoverEvent>& handovers,
                                            const FlowId& flow, bool bidirectional,
                                            const ControlPlaneOptions& options = {}) {
  if (options.messages_per_hop < 0 || options.messages_per_hop % 2 != 0) {
    throw std::invalid_argument("messages_per_hop must be a non-negative even number");
  }
  MessageLedger ledger;
  for (std::size_t i = 0; i < handovers.size(); ++i) {
    const auto& ev = handovers[i];
    if (i > 0 && ev.time < handovers[i - 1].time) {
      throw std::invalid_argument("handovers are not time-ordered");
    }
    for (const auto& hop : ev.new_hops) {
      detail::emit_setup(ledger.messages, ev.time, flow, hop, options.messages_per_hop);
    }
    if (bidirectional) {
      for (auto it = ev.new_hops.rbegin(); it != ev.new_hops.rend(); ++it) {
        detail::emit_setup(ledger.messages, ev.time, flow.reversed(), it->reversed(),
                           options.messages_per_hop);
      }
    }
    if (options.rule_removal) {
      for (const auto& hop : ev.dropped_hops) {
        ledger.messages.push_back({ev.time, hop.from, ControlDirection::controller_to_switch,
                                   MessageKind::rule_remove, flow, hop});
        if (bidirectional) {
          const DirectedEdge back = hop.reversed();
          ledger.messages.push_back({ev.time, back.from, ControlDirection::controller_to_switch,
                                     MessageKind::rule_remove, flow.reversed(), back});
        }
      }
    }
  }
  return ledger;
}

/// Stable time-merge of several ledgers (ties keep argument order).
inline MessageLedger merge_ledgers(const std::vector<MessageLedger>& ledgers) {
  MessageLedger out;
  for (const auto& l : ledgers) {
    out.messages.insert(out.messages.end(), l.messages.begin(), l.messages.end());
    if (!out.controller) {
      out.controller = l.controller;
      out.controller_layer = l.controller_layer;
    }
  }
  std::stable_sort(out.messages.begin(), out.messages.end(),
                   [](const ControlMessage& a, const ControlMessage& b) { return a.time < b.time; });
  return out;
}

/// Histogram of message timestamps. Bins are [start + k·bin, start + (k+1)·bin),
/// the last one truncated at the horizon end and closed there.
inline std::vector<LoadBin> message_load_series(const MessageLedger& ledger, double bin,
                                                const TimeSpan& horizon) {
  if (!(bin > 0.0)) throw std::invalid_argument("bin must be positive");
  if (!(horizon.duration() > 0.0)) throw std::invalid_argument("horizon must be positive");
  const auto nbins = static_cast<std::size_t>(std::ceil(horizon.duration() / bin - 1e-9));
  std::vector<LoadBin> series;
  series.reserve(nbins);
  for (std::size_t k = 0; k < nbins; ++k) {
    series.push_back({horizon.start + static_cast<double>(k) * bin, 0});
  }
  for (const auto& m : ledger.messages) {
    if (m.time < horizon.start || m.time > horizon.end) {
      throw std::out_of_range("message at t=" + std::to_string(m.time) + " outside horizon");
    }
    auto k = static_cast<std::size_t>(std::floor((m.time - horizon.start) / bin));
    k = std::min(k, nbins - 1);
    ++series[k].messages;
  }
  return series;
}

inline std::vector<LoadBin> cumulative_load(std::vector<LoadBin> series) {
  std::size_t running = 0;
  for (auto& b : series) {
    running += b.messages;
    b.messages = running;
  }
  return series;
}

// ---------------------------------------------------------------------------
// Flow-table replay

struct FlowRule {
  NodeId switch_id;
  FlowId match;
  NodeId next_hop;
  double installed_at = 0.0;
};

using FlowTable = std::map<std::pair<NodeId, FlowId>, FlowRule>;

/// True when every install has a request for the same (time, switch, flow,
/// hop) earlier in the ledger and request/install counts match.
inline bool installs_paired_with_requests(const MessageLedger& ledger) {
  using Key = std::tuple<double, NodeId, FlowId, DirectedEdge>;
  std::map<Key, long> open;
  for (const auto& m : ledger.messages) {
    const Key key{m.time, m.switch_id, m.flow, m.hop};
    if (m.kind == MessageKind::rule_request) ++open[key];
    if (m.kind == MessageKind::rule_install && --open[key] < 0) return false;
  }
  return std::all_of(open.begin(), open.end(), [](const auto& kv) { return kv.second == 0; });
}

/// Rebuilds forwarding state from the ledger. A hop u->v installs "forward
/// toward v" at its tail switch u; the head-side exchange at v carries no
/// forwarding entry of its own. Re-installing at the same (switch, match)
/// replaces the previous rule.
inline FlowTable replay_rules(const MessageLedger& ledger, double up_to) {
  FlowTable table;
  for (const auto& m : ledger.messages) {
    if (m.time > up_to) break;
    if (m.switch_id != m.hop.from) continue;
    const auto key = std::make_pair(m.switch_id, m.flow);
    if (m.kind == MessageKind::rule_install) {
      table[key] = FlowRule{m.switch_id, m.flow, m.hop.to, m.time};
    } else if (m.kind == MessageKind::rule_remove) {
      const auto it = table.find(key);
      if (it != table.end() && it->second.next_hop == m.hop.to) table.erase(it);
    }
  }
  return table;
}

/// Follows installed rules from flow.src; stops at flow.dst, a missing rule or a loop.
inline std::vector<NodeId> rule_chain(const FlowTable& table, const FlowId& flow) {
  std::vector<NodeId> chain{flow.src};
  while (chain.back() != flow.dst) {
    const auto it = table.find({chain.back(), flow});
    if (it == table.end()) break;
    if (std::find(chain.begin(), chain.end(), it->second.next_hop) != chain.end()) break;
    chain.push_back(it->second.next_hop);
  }
  return chain;
}

}  // namespace sinsim
