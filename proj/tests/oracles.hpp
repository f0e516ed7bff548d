#pragma once

// Independent reference computations used to derive and cross-check expected
// values. Nothing here calls into the code under test's algorithms.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

/// Bisection on f(E) = E - e sin E - M over [M - 1, M + 1].
inline double kepler_bisection(double mean_anomaly, double e) {
  double lo = mean_anomaly - 1.0;
  double hi = mean_anomaly + 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid - e * std::sin(mid) - mean_anomaly < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Edge {
  std::size_t a;
  std::size_t b;
  double delay;
};

struct BestPath {
  double delay = std::numeric_limits<double>::infinity();
  std::size_t hops = 0;
  std::vector<std::size_t> nodes;
};

/// Exhaustive DFS over all simple paths; keeps the minimum under
/// (delay, hops, node sequence). Delays are summed in path order.
inline std::optional<BestPath> brute_force_path(std::size_t n, const std::vector<Edge>& edges,
                                                std::size_t src, std::size_t dst) {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : edges) {
    adj[e.a].push_back({e.b, e.delay});
    adj[e.b].push_back({e.a, e.delay});
  }
  std::optional<BestPath> best;
  std::vector<std::size_t> stack{src};
  std::vector<bool> used(n, false);
  used[src] = true;
  std::function<void(double)> dfs = [&](double delay) {
    const std::size_t u = stack.back();
    if (u == dst) {
      BestPath cand{delay, stack.size() - 1, stack};
      const auto key = [](const BestPath& p) { return std::tie(p.delay, p.hops, p.nodes); };
      if (!best || key(cand) < key(*best)) best = cand;
      return;
    }
    for (const auto& [v, d] : adj[u]) {
      if (used[v]) continue;
      used[v] = true;
      stack.push_back(v);
      dfs(delay + d);
      stack.pop_back();
      used[v] = false;
    }
  };
  dfs(0.0);
  return best;
}

/// Run-length encoding of a boolean trace sampled at uniform `step`:
/// [first visible, first invisible after) with the last run closed at the
/// final sample time.
inline std::vector<std::pair<double, double>> run_lengths(const std::vector<bool>& visible,
                                                          double t0, double step) {
  std::vector<std::pair<double, double>> runs;
  std::size_t i = 0;
  while (i < visible.size()) {
    if (!visible[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < visible.size() && visible[j]) ++j;
    const double start = t0 + static_cast<double>(i) * step;
    const double end = j < visible.size() ? t0 + static_cast<double>(j) * step
                                          : t0 + static_cast<double>(visible.size() - 1) * step;
    if (end > start) runs.emplace_back(start, end);
    i = j;
  }
  return runs;
}

/// Square wave: visible for `on` out of every `period` samples.
inline std::vector<bool> square_wave(std::size_t samples, std::size_t period, std::size_t on,
                                     std::size_t offset = 0) {
  std::vector<bool> v(samples);
  for (std::size_t k = 0; k < samples; ++k) v[k] = ((k + offset) % period) < on;
  return v;
}

}  // namespace oracle
