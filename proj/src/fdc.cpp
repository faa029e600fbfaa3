#include "deepconn/fdc.hpp"

#include <algorithm>
#include <set>

#include "deepconn/error.hpp"
#include "deepconn/simplex.hpp"

namespace deepconn {

std::vector<Rational> overlay_weights(const Instance& instance,
                                      const std::map<EdgeIndex, Rational>& y) {
  std::vector<Rational> w(instance.overlay_edges().size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (EdgeIndex e : instance.overlay_route(i).edges) {
      if (auto it = y.find(e); it != y.end()) w[i] += it->second;
    }
  }
  return w;
}

namespace {

// Dijkstra distances to `target`; nullopt marks unreachable nodes. O(V^2),
// which avoids a heap over GMP values and is plenty at desk scale.
std::vector<std::optional<Rational>> distances_to(const Instance& instance, NodeIndex target,
                                                  const std::vector<Rational>& w) {
  const std::size_t n = instance.node_count();
  std::vector<std::optional<Rational>> dist(n);
  std::vector<bool> done(n, false);
  dist[target] = Rational(0);
  for (;;) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || !dist[v]) continue;
      if (u == n || *dist[v] < *dist[u]) u = v;
    }
    if (u == n) break;
    done[u] = true;
    for (const OverlayArc& arc : instance.overlay_neighbors(static_cast<NodeIndex>(u))) {
      Rational cand = *dist[u] + w[arc.edge];
      if (!dist[arc.to] || cand < *dist[arc.to]) dist[arc.to] = std::move(cand);
    }
  }
  return dist;
}

}  // namespace

std::optional<OverlayPath> separation_oracle(const Instance& instance, NodeIndex s,
                                             NodeIndex t,
                                             const std::map<EdgeIndex, Rational>& y) {
  require_peer_pair(instance, s, t);
  for (const auto& [e, value] : y) {
    if (value < 0) throw Error(ErrorCode::kArgument, "negative edge price");
  }
  const auto w = overlay_weights(instance, y);
  const auto dist = distances_to(instance, t, w);
  if (!dist[s] || *dist[s] >= 1) return std::nullopt;
  const Rational target = *dist[s];

  // Walk tight arcs smallest-neighbour-first; backtracking makes the first
  // completed walk the lexicographically smallest shortest simple path even
  // when zero-weight arcs allow detours.
  std::vector<bool> on_path(instance.node_count(), false);
  OverlayPath path{{s}};
  on_path[s] = true;
  auto walk = [&](auto&& self, NodeIndex u, const Rational& so_far) -> bool {
    if (u == t) return true;
    for (const OverlayArc& arc : instance.overlay_neighbors(u)) {
      const NodeIndex v = arc.to;
      if (on_path[v] || !dist[v]) continue;
      Rational reached = so_far + w[arc.edge];
      if (reached + *dist[v] != target) continue;
      on_path[v] = true;
      path.peers.push_back(v);
      if (self(self, v, reached)) return true;
      path.peers.pop_back();
      on_path[v] = false;
    }
    return false;
  };
  if (!walk(walk, s, Rational(0))) {
    throw Error(ErrorCode::kInternal, "separation oracle lost its shortest path");
  }
  return path;
}

FlowResult fdc_pair(const Instance& instance, NodeIndex s, NodeIndex t) {
  require_peer_pair(instance, s, t);
  FlowResult result;
  auto first = overlay_bfs_path(instance, s, t);
  if (!first) return result;

  std::vector<EdgeMultiset> images;
  std::set<OverlayPath> known;
  auto add_column = [&](OverlayPath p) {
    if (!known.insert(p).second) {
      throw Error(ErrorCode::kInternal, "column generation produced a repeated path");
    }
    images.push_back(route_image(instance, p));
    result.generated_paths.push_back(std::move(p));
  };
  add_column(std::move(*first));

  for (;;) {
    ++result.iterations;
    std::vector<EdgeIndex> rows;
    for (const auto& img : images) {
      for (const auto& [e, c] : img.counts()) rows.push_back(e);
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    const std::size_t cols = images.size();
    std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t j = 0; j < cols; ++j) a[r][j] = images[j].count(rows[r]);
    }
    auto lp = solve_packing_lp(a, std::vector<Rational>(rows.size(), Rational(1)),
                               std::vector<Rational>(cols, Rational(1)));
    if (!lp) throw Error(ErrorCode::kInternal, "restricted flow LP unbounded");

    std::map<EdgeIndex, Rational> y;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (lp->dual[r] != 0) y.emplace(rows[r], lp->dual[r]);
    }
    auto violated = separation_oracle(instance, s, t, y);
    if (violated) {
      add_column(std::move(*violated));
      continue;
    }

    result.value = lp->objective;
    result.dual = std::move(y);
    for (std::size_t j = 0; j < cols; ++j) {
      if (lp->primal[j] != 0) result.primal.emplace(result.generated_paths[j], lp->primal[j]);
    }
    return result;
  }
}

FlowAllPairs fdc_all_pairs(const Instance& instance) {
  const auto peers = instance.peers();
  std::optional<FlowAllPairs> best;
  for (std::size_t i = 0; i < peers.size(); ++i) {
    for (std::size_t j = i + 1; j < peers.size(); ++j) {
      FlowResult r = fdc_pair(instance, peers[i], peers[j]);
      if (!best || r.value < best->value) {
        best = FlowAllPairs{r.value, NodePair{peers[i], peers[j]}, std::move(r)};
      }
    }
  }
  return std::move(*best);
}

std::string audit_flow_result(const Instance& instance, NodeIndex s, NodeIndex t,
                              const FlowResult& result) {
  Rational primal_sum;
  std::map<EdgeIndex, Rational> load;
  for (const auto& [path, x] : result.primal) {
    if (path.peers.front() != s || path.peers.back() != t) return "primal path has wrong endpoints";
    if (x < 0) return "negative primal value";
    primal_sum += x;
    const EdgeMultiset image = route_image(instance, path);
    for (const auto& [e, c] : image.counts()) load[e] += x * c;
  }
  for (const auto& [e, l] : load) {
    if (l > 1) return "capacity exceeded on " + instance.edge_label(e);
  }

  Rational dual_sum;
  for (const auto& [e, y] : result.dual) {
    if (y < 0) return "negative dual value";
    dual_sum += y;
  }
  if (primal_sum != result.value) return "primal objective differs from value";
  if (dual_sum != result.value) return "dual objective differs from value";

  for (const auto& path : result.generated_paths) {
    Rational length;
    const EdgeMultiset image = route_image(instance, path);
    for (const auto& [e, c] : image.counts()) {
      if (auto it = result.dual.find(e); it != result.dual.end()) length += it->second * c;
    }
    if (length < 1) return "dual constraint violated by generated path";
  }
  if (result.generated_paths.empty() && overlay_bfs_path(instance, s, t)) {
    return "value 0 reported although an overlay path exists";
  }
  if (separation_oracle(instance, s, t, result.dual)) {
    return "separation oracle finds a violated dual constraint";
  }
  return {};
}

}  // namespace deepconn
