// Shared helpers for the unit and acceptance binaries. The brute-force
// oracles here deliberately avoid the library's search code: they walk the
// instance through its public accessors only.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "deepconn/exact.hpp"
#include "deepconn/fdc.hpp"
#include "deepconn/gadgets.hpp"
#include "deepconn/instance.hpp"
#include "deepconn/overlay.hpp"
#include "deepconn/rational.hpp"
#include "deepconn/sparsifier.hpp"

namespace testing {

using namespace deepconn;

inline Instance fixture(const std::string& name) {
  return load_instance(std::string(DEEPCONN_FIXTURE_DIR) + "/" + name + ".json");
}

inline std::pair<NodeIndex, NodeIndex> nodes(const Instance& inst, const char* a, const char* b) {
  return {inst.node(a), inst.node(b)};
}

// Every node a peer, every G-edge an overlay edge routed as itself.
inline Instance single_layer(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  InstanceDocument doc;
  for (std::size_t i = 0; i < n; ++i) doc.nodes.push_back("g" + std::to_string(i));
  doc.peers = doc.nodes;
  for (auto [a, b] : edges) {
    doc.edges.emplace_back(doc.nodes[a], doc.nodes[b]);
    doc.overlay_edges.push_back(doc.edges.back());
    doc.routes.push_back({doc.edges.back(), {doc.nodes[a], doc.nodes[b]}});
  }
  return Instance::from_document(doc);
}

inline bool connected(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(n);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

inline std::vector<std::pair<std::size_t, std::size_t>> random_connected_graph(std::mt19937_64& rng,
                                                                              std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (coin(rng)) edges.emplace_back(a, b);
      }
    }
    if (connected(n, edges)) return edges;
  }
}

inline bool has_bridge(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  for (std::size_t skip = 0; skip < edges.size(); ++skip) {
    auto rest = edges;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(skip));
    if (!connected(n, rest)) return true;
  }
  return false;
}

// Random instance with a subsampled overlay (each pair kept with
// probability `keep`); routes for dropped pairs are dropped too.
inline Instance random_partial(std::mt19937_64& rng, std::size_t nodes, std::size_t peers,
                               double edge_p, double keep) {
  RandomInstanceOptions opt;
  opt.nodes = nodes;
  opt.peers = peers;
  opt.edge_probability = edge_p;
  opt.seed = rng();
  opt.policy = (rng() & 1) ? RoutePolicy::kShortestPath : RoutePolicy::kRandomSimple;
  InstanceDocument doc = random_instance(opt).to_document();
  std::bernoulli_distribution coin(keep);
  std::vector<InstanceDocument::NamePair> overlay;
  std::vector<InstanceDocument::RouteEntry> routes;
  for (std::size_t i = 0; i < doc.overlay_edges.size(); ++i) {
    if (coin(rng)) overlay.push_back(doc.overlay_edges[i]);
  }
  for (const auto& r : doc.routes) {
    if (std::find(overlay.begin(), overlay.end(), r.pair) != overlay.end()) routes.push_back(r);
  }
  doc.overlay_edges = overlay;
  doc.routes = routes;
  return Instance::from_document(doc);
}

// ---- independent oracles -------------------------------------------------

// Sorted G-edge ids of the route of overlay pair (a,b).
inline std::vector<EdgeIndex> route_edges(const Instance& inst, NodeIndex a, NodeIndex b) {
  const auto path = inst.oriented_route(a, b);
  std::vector<EdgeIndex> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) out.push_back(*inst.find_edge(path[i], path[i + 1]));
  std::sort(out.begin(), out.end());
  return out;
}

// All vertex-simple s-t paths in H, by plain DFS over the overlay edge list.
inline std::vector<std::vector<NodeIndex>> all_paths(const Instance& inst, NodeIndex s, NodeIndex t) {
  std::map<NodeIndex, std::vector<NodeIndex>> adj;
  for (auto e : inst.overlay_edges()) {
    adj[e.lo].push_back(e.hi);
    adj[e.hi].push_back(e.lo);
  }
  std::vector<std::vector<NodeIndex>> out;
  std::vector<NodeIndex> cur{s};
  std::function<void(NodeIndex)> dfs = [&](NodeIndex v) {
    if (v == t) {
      out.push_back(cur);
      return;
    }
    for (auto w : adj[v]) {
      if (std::find(cur.begin(), cur.end(), w) != cur.end()) continue;
      cur.push_back(w);
      dfs(w);
      cur.pop_back();
    }
  };
  dfs(s);
  return out;
}

// Multiplicity of each G-edge along the concatenated routes.
inline std::map<EdgeIndex, unsigned> image_counts(const Instance& inst, const std::vector<NodeIndex>& path) {
  std::map<EdgeIndex, unsigned> counts;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    for (auto e : route_edges(inst, path[i], path[i + 1])) ++counts[e];
  }
  return counts;
}

inline bool walk_simple(const Instance& inst, const std::vector<NodeIndex>& path) {
  std::vector<NodeIndex> walk;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto r = inst.oriented_route(path[i], path[i + 1]);
    walk.insert(walk.end(), r.begin() + (i == 0 ? 0 : 1), r.end());
  }
  std::set<NodeIndex> distinct(walk.begin(), walk.end());
  return distinct.size() == walk.size();
}

// s-t connectivity in H after killing every overlay edge routed through `cut`.
inline bool survives(const Instance& inst, NodeIndex s, NodeIndex t, const std::vector<EdgeIndex>& cut) {
  std::vector<std::vector<NodeIndex>> adj(inst.node_count());
  for (auto e : inst.overlay_edges()) {
    auto r = route_edges(inst, e.lo, e.hi);
    bool killed = std::any_of(r.begin(), r.end(), [&](EdgeIndex g) {
      return std::find(cut.begin(), cut.end(), g) != cut.end();
    });
    if (killed) continue;
    adj[e.lo].push_back(e.hi);
    adj[e.hi].push_back(e.lo);
  }
  std::vector<bool> seen(inst.node_count());
  std::vector<NodeIndex> stack{s};
  seen[s] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (v == t) return true;
    for (auto w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return false;
}

// Smallest cut by enumerating G-edge subsets in increasing size.
inline std::size_t brute_erdc(const Instance& inst, NodeIndex s, NodeIndex t) {
  const std::size_t m = inst.graph_edge_count();
  for (std::size_t k = 0; k <= m; ++k) {
    std::vector<bool> pick(m, false);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(k), pick.end(), true);
    do {
      std::vector<EdgeIndex> cut;
      for (std::size_t i = 0; i < m; ++i) {
        if (pick[i]) cut.push_back(static_cast<EdgeIndex>(i));
      }
      if (!survives(inst, s, t, cut)) return k;
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return m;
}

// Maximum family of paths with pairwise disjoint image supports.
inline std::size_t brute_packing(const Instance& inst, NodeIndex s, NodeIndex t, bool simple) {
  std::vector<std::set<EdgeIndex>> images;
  for (const auto& p : all_paths(inst, s, t)) {
    if (simple && !walk_simple(inst, p)) continue;
    std::set<EdgeIndex> img;
    for (auto [e, c] : image_counts(inst, p)) img.insert(e);
    images.push_back(std::move(img));
  }
  std::size_t best = 0;
  std::set<EdgeIndex> used;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t taken) {
    best = std::max(best, taken);
    if (i == images.size() || taken + (images.size() - i) <= best) return;
    bool free = std::none_of(images[i].begin(), images[i].end(), [&](EdgeIndex e) { return used.count(e); });
    if (free) {
      used.insert(images[i].begin(), images[i].end());
      rec(i + 1, taken + 1);
      for (auto e : images[i]) used.erase(e);
    }
    rec(i + 1, taken);
  };
  rec(0, 0);
  return best;
}

// Min s-t edge cut of G by subset enumeration.
inline std::size_t brute_classic(const Instance& inst, NodeIndex s, NodeIndex t) {
  const std::size_t m = inst.graph_edge_count();
  auto reach = [&](const std::vector<bool>& gone) -> bool {
    std::vector<bool> seen(inst.node_count());
    std::vector<NodeIndex> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : inst.neighbors(v)) {
        if (gone[*inst.find_edge(v, w)] || seen[w]) continue;
        seen[w] = true;
        stack.push_back(w);
      }
    }
    return seen[t];
  };
  for (std::size_t k = 0; k <= m; ++k) {
    std::vector<bool> pick(m, false);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(k), pick.end(), true);
    do {
      if (!reach(pick)) return k;
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return m;
}

// Weak-duality optimality proof for a flow result over the full path space:
// primal capacity-feasible, dual covers every simple path, objectives equal.
inline std::string certify_flow(const Instance& inst, NodeIndex s, NodeIndex t, const FlowResult& r) {
  std::map<EdgeIndex, Rational> load;
  Rational primal, dual;
  for (const auto& [p, x] : r.primal) {
    if (x < 0) return "negative x";
    if (p.peers.front() != s || p.peers.back() != t) return "bad endpoints";
    primal += x;
    for (auto [e, c] : image_counts(inst, p.peers)) load[e] += x * c;
  }
  for (const auto& [e, l] : load) {
    if (l > 1) return "overloaded edge";
  }
  for (const auto& [e, y] : r.dual) {
    if (y < 0) return "negative y";
    dual += y;
  }
  for (const auto& p : all_paths(inst, s, t)) {
    Rational len;
    for (auto [e, c] : image_counts(inst, p)) {
      if (auto it = r.dual.find(e); it != r.dual.end()) len += it->second * c;
    }
    if (len < 1) return "dual infeasible on some path";
  }
  if (primal != dual) return "objectives differ";
  if (primal != r.value) return "value differs from objectives";
  return {};
}

// κ from scratch: for every G-edge on a tree route, count components of H
// after deleting the overlay edges routed through it.
inline std::size_t brute_kappa(const Instance& inst, const std::vector<NodePair>& overlay,
                               const std::vector<NodePair>& tree) {
  std::set<EdgeIndex> tracked;
  for (auto e : tree) {
    for (auto g : route_edges(inst, e.lo, e.hi)) tracked.insert(g);
  }
  std::size_t kappa = 0;
  for (auto g : tracked) {
    std::vector<std::size_t> comp(inst.node_count());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return comp[x] == x ? x : comp[x] = find(comp[x]);
    };
    std::size_t blocks = inst.peers().size();
    for (auto e : overlay) {
      auto r = route_edges(inst, e.lo, e.hi);
      if (std::binary_search(r.begin(), r.end(), g)) continue;
      auto a = find(e.lo), b = find(e.hi);
      if (a != b) {
        comp[a] = b;
        --blocks;
      }
    }
    kappa += blocks - 1;
  }
  return kappa;
}

// All-pairs ERDC >= 2 on H: H connected and no single G-edge kill splits it.
inline bool two_erdc(const Instance& inst, const std::vector<NodePair>& overlay) {
  auto split = [&](std::optional<EdgeIndex> gone) {
    std::vector<std::size_t> comp(inst.node_count());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return comp[x] == x ? x : comp[x] = find(comp[x]);
    };
    std::size_t blocks = inst.peers().size();
    for (auto e : overlay) {
      if (gone) {
        auto r = route_edges(inst, e.lo, e.hi);
        if (std::binary_search(r.begin(), r.end(), *gone)) continue;
      }
      auto a = find(e.lo), b = find(e.hi);
      if (a != b) {
        comp[a] = b;
        --blocks;
      }
    }
    return blocks > 1;
  };
  if (split(std::nullopt)) return false;
  for (EdgeIndex g = 0; g < inst.graph_edge_count(); ++g) {
    if (split(g)) return false;
  }
  return true;
}

}  // namespace testing
