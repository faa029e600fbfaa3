#include "deepconn/gadgets.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "deepconn/error.hpp"
#include "deepconn/union_find.hpp"

namespace deepconn {

SetSystem::SetSystem(std::size_t m, std::size_t n) : m_(m), n_(n), cells_(m * n, false) {
  if (m == 0 || n == 0) throw Error(ErrorCode::kArgument, "set system dimensions must be positive");
}

SetSystem SetSystem::from_sets(std::size_t m, const std::vector<std::vector<std::size_t>>& sets) {
  SetSystem s(m, sets.size());
  for (std::size_t j = 0; j < sets.size(); ++j) {
    for (std::size_t i : sets[j]) {
      if (i == 0 || i > m) throw Error(ErrorCode::kArgument, "set element out of range");
      s.set(i - 1, j);
    }
  }
  return s;
}

std::vector<std::size_t> SetSystem::members(std::size_t j) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m_; ++i) {
    if (contains(i, j)) out.push_back(i);
  }
  return out;
}

std::string edge_token(const std::string& a, const std::string& b) {
  return a < b ? a + "|" + b : b + "|" + a;
}

std::size_t encoded_vertex_count(std::size_t skeleton_vertices, const SetSystem& sets) {
  std::size_t count = skeleton_vertices + 2 * sets.elements();
  for (std::size_t j = 0; j < sets.sets(); ++j) count += sets.members(j).size() + 1;
  return count;
}

namespace {

using NamePair = std::pair<std::string, std::string>;

NamePair canonical(const NamePair& p) {
  return p.first < p.second ? p : NamePair{p.second, p.first};
}

std::string element_vertex(std::size_t i, char side) {
  return "v" + std::to_string(i + 1) + "_" + side;
}

}  // namespace

GadgetOutput encode_set_system(const NamedGraph& skeleton, const std::vector<NamePair>& f,
                               const SetSystem& sets) {
  if (f.size() != sets.sets()) {
    throw Error(ErrorCode::kArgument, "need exactly one designated overlay edge per set");
  }
  if (skeleton.vertices.empty()) throw Error(ErrorCode::kArgument, "empty overlay skeleton");
  std::set<NamePair> skeleton_edges;
  for (const auto& e : skeleton.edges) {
    if (e.first == e.second) throw Error(ErrorCode::kArgument, "skeleton self-loop at " + e.first);
    skeleton_edges.insert(canonical(e));
  }
  std::set<NamePair> designated;
  for (const auto& e : f) {
    const auto c = canonical(e);
    if (!skeleton_edges.count(c)) {
      throw Error(ErrorCode::kArgument, "designated edge " + edge_token(e.first, e.second) +
                                            " is not a skeleton edge");
    }
    if (!designated.insert(c).second) {
      throw Error(ErrorCode::kArgument, "duplicate designated edge " + edge_token(e.first, e.second));
    }
  }

  InstanceDocument doc;
  Labels labels;
  std::set<std::string> taken(skeleton.vertices.begin(), skeleton.vertices.end());
  auto fresh = [&](std::string name) {
    if (!taken.insert(name).second) {
      throw Error(ErrorCode::kArgument, "gadget vertex name '" + name + "' collides with the skeleton");
    }
    doc.nodes.push_back(name);
    return name;
  };
  auto add_edge = [&](const std::string& a, const std::string& b, const char* role) {
    doc.edges.emplace_back(a, b);
    labels[role].push_back(edge_token(a, b));
  };

  doc.nodes = skeleton.vertices;
  doc.peers = skeleton.vertices;
  for (const auto& v : skeleton.vertices) labels["peers"].push_back(v);
  for (const auto& e : skeleton.edges) doc.overlay_edges.push_back(e);

  for (const auto& e : skeleton.edges) {
    if (designated.count(canonical(e))) continue;
    add_edge(e.first, e.second, "E_H_minus_F");
    doc.routes.push_back({e, {e.first, e.second}});
  }

  for (std::size_t i = 0; i < sets.elements(); ++i) {
    const auto a = fresh(element_vertex(i, 'a'));
    const auto b = fresh(element_vertex(i, 'b'));
    labels["element_a"].push_back(a);
    labels["element_b"].push_back(b);
    add_edge(a, b, "E_D");
  }

  std::vector<bool> used(sets.elements(), false);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const auto& [x, y] = f[j];
    labels["F"].push_back(edge_token(x, y));
    const auto members = sets.members(j);
    // Hops of p_j before subdivision: x -> a_{i1}, b_{i1} -> a_{i2}, ..., b_{ik} -> y.
    std::vector<std::string> path{x};
    std::string tail = x;
    std::size_t connector = 0;
    auto connect = [&](const std::string& to) {
      const auto z = fresh("z" + std::to_string(j + 1) + "_" + std::to_string(++connector));
      labels["subdivision"].push_back(z);
      add_edge(tail, z, "E_rho");
      add_edge(z, to, "E_rho");
      path.push_back(z);
      path.push_back(to);
    };
    for (std::size_t i : members) {
      used[i] = true;
      connect(element_vertex(i, 'a'));
      path.push_back(element_vertex(i, 'b'));
      tail = element_vertex(i, 'b');
    }
    connect(y);
    doc.routes.push_back({{x, y}, std::move(path)});
  }

  const std::string anchor = *std::min_element(skeleton.vertices.begin(), skeleton.vertices.end());
  for (std::size_t i = 0; i < sets.elements(); ++i) {
    if (!used[i]) add_edge(element_vertex(i, 'a'), anchor, "E_anchor");
  }

  return GadgetOutput{Instance::from_document(doc), std::move(labels)};
}

SpddcReduction build_spddc_reduction(const SetSystem& sets, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kArgument, "packing size must be positive");
  const std::size_t n = sets.sets();
  auto u = [](std::size_t l) { return "u" + std::to_string(l); };
  auto v = [](std::size_t l, std::size_t j) {
    return "v" + std::to_string(l) + "_" + std::to_string(j + 1);
  };

  NamedGraph skeleton;
  std::vector<NamePair> f;
  SetSystem copies(sets.elements(), k * n);
  for (std::size_t l = 0; l <= k; ++l) skeleton.vertices.push_back(u(l));
  for (std::size_t l = 1; l <= k; ++l) {
    for (std::size_t j = 0; j < n; ++j) {
      skeleton.vertices.push_back(v(l, j));
      skeleton.edges.emplace_back(u(l - 1), v(l, j));
      skeleton.edges.emplace_back(v(l, j), u(l));
      f.emplace_back(u(l - 1), v(l, j));
      const std::size_t column = (l - 1) * n + j;
      for (std::size_t i : sets.members(j)) copies.set(i, column);
    }
  }

  SpddcReduction out{encode_set_system(skeleton, f, copies), u(0), u(k)};
  for (std::size_t l = 0; l <= k; ++l) out.gadget.labels["layer_u"].push_back(u(l));
  for (std::size_t l = 1; l <= k; ++l) {
    for (std::size_t j = 0; j < n; ++j) out.gadget.labels["layer_v"].push_back(v(l, j));
  }
  return out;
}

Instance build_hamiltonian_reduction(const NamedGraph& g0) {
  if (g0.vertices.size() < 3) throw Error(ErrorCode::kArgument, "need at least three vertices");
  const std::string x = "apex_x", y = "apex_y";
  std::set<NamePair> base;
  for (const auto& e : g0.edges) {
    if (e.first == e.second) throw Error(ErrorCode::kArgument, "self-loop at " + e.first);
    base.insert(canonical(e));
  }

  InstanceDocument doc;
  doc.nodes = g0.vertices;
  for (const auto& name : {x, y}) {
    if (std::find(g0.vertices.begin(), g0.vertices.end(), name) != g0.vertices.end()) {
      throw Error(ErrorCode::kArgument, "vertex name '" + name + "' is reserved");
    }
    doc.nodes.push_back(name);
  }
  doc.peers = g0.vertices;
  doc.edges.assign(base.begin(), base.end());
  doc.edges.emplace_back(x, y);
  for (const auto& w : g0.vertices) {
    doc.edges.emplace_back(w, x);
    doc.edges.emplace_back(w, y);
  }
  for (std::size_t a = 0; a < g0.vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < g0.vertices.size(); ++b) {
      const auto& p = g0.vertices[a];
      const auto& q = g0.vertices[b];
      doc.overlay_edges.emplace_back(p, q);
      if (base.count(canonical({p, q}))) {
        doc.routes.push_back({{p, q}, {p, q}});
      } else {
        doc.routes.push_back({{p, q}, {p, x, y, q}});
      }
    }
  }
  return Instance::from_document(doc);
}

bool set_packing_brute_force(const SetSystem& sets, std::size_t k, std::size_t budget) {
  const std::size_t n = sets.sets();
  if (k == 0) return true;
  if (k > n) return false;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  std::size_t explored = 0;
  for (;;) {
    if (++explored > budget) {
      throw Error(ErrorCode::kBudget, "set packing search exceeded " + std::to_string(budget) +
                                          " combinations");
    }
    std::vector<bool> hit(sets.elements(), false);
    bool disjoint = true;
    for (std::size_t j : pick) {
      for (std::size_t i : sets.members(j)) {
        if (hit[i]) disjoint = false;
        hit[i] = true;
      }
    }
    if (disjoint) return true;

    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

namespace {

bool coin(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

std::size_t below(std::mt19937_64& rng, std::size_t bound) { return rng() % bound; }

std::vector<std::size_t> bfs_route(const std::vector<std::vector<std::size_t>>& adj,
                                   std::size_t from, std::size_t to) {
  std::vector<std::size_t> parent(adj.size(), adj.size());
  parent[from] = from;
  std::deque<std::size_t> queue{from};
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[u]) {
      if (parent[w] == adj.size()) {
        parent[w] = u;
        queue.push_back(w);
      }
    }
  }
  std::vector<std::size_t> path;
  for (std::size_t w = to; w != from; w = parent[w]) path.push_back(w);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::size_t> random_route(const std::vector<std::vector<std::size_t>>& adj,
                                      std::size_t from, std::size_t to, std::mt19937_64& rng) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> stack{from};
  seen[from] = true;
  auto dfs = [&](auto&& self, std::size_t u) -> bool {
    if (u == to) return true;
    std::vector<std::size_t> order = adj[u];
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[below(rng, i)]);
    for (std::size_t w : order) {
      if (seen[w]) continue;
      seen[w] = true;
      stack.push_back(w);
      if (self(self, w)) return true;
      stack.pop_back();
    }
    return false;
  };
  dfs(dfs, from);
  return stack;
}

}  // namespace

Instance random_instance(const RandomInstanceOptions& opt) {
  if (opt.nodes < 2 || opt.peers < 2 || opt.peers > opt.nodes) {
    throw Error(ErrorCode::kArgument, "need 2 <= peers <= nodes");
  }
  if (!(opt.edge_probability >= 0.0 && opt.edge_probability <= 1.0)) {
    throw Error(ErrorCode::kArgument, "edge probability must lie in [0,1]");
  }
  std::mt19937_64 rng(opt.seed);
  const std::size_t width = std::to_string(opt.nodes - 1).size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < opt.nodes; ++i) {
    std::string digits = std::to_string(i);
    names.push_back("n" + std::string(width - digits.size(), '0') + digits);
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t attempt = 0;; ++attempt) {
    if (attempt == opt.retry_budget) {
      throw Error(ErrorCode::kBudget, "could not draw a connected graph within the retry budget");
    }
    edges.clear();
    DisjointSets dsu(opt.nodes);
    for (std::size_t a = 0; a < opt.nodes; ++a) {
      for (std::size_t b = a + 1; b < opt.nodes; ++b) {
        if (coin(rng, opt.edge_probability)) {
          edges.emplace_back(a, b);
          dsu.unite(a, b);
        }
      }
    }
    if (dsu.components() == 1) break;
  }

  std::vector<std::size_t> order(opt.nodes);
  for (std::size_t i = 0; i < opt.nodes; ++i) order[i] = i;
  for (std::size_t i = 0; i < opt.peers; ++i) std::swap(order[i], order[i + below(rng, opt.nodes - i)]);
  std::vector<std::size_t> peers(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(opt.peers));
  std::sort(peers.begin(), peers.end());

  std::vector<std::vector<std::size_t>> adj(opt.nodes);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  InstanceDocument doc;
  doc.nodes = names;
  for (const auto& [a, b] : edges) doc.edges.emplace_back(names[a], names[b]);
  for (std::size_t p : peers) doc.peers.push_back(names[p]);
  for (std::size_t i = 0; i < peers.size(); ++i) {
    for (std::size_t j = i + 1; j < peers.size(); ++j) {
      const auto path = opt.policy == RoutePolicy::kShortestPath
                            ? bfs_route(adj, peers[i], peers[j])
                            : random_route(adj, peers[i], peers[j], rng);
      InstanceDocument::RouteEntry route{{names[peers[i]], names[peers[j]]}, {}};
      for (std::size_t w : path) route.path.push_back(names[w]);
      doc.routes.push_back(std::move(route));
      doc.overlay_edges.emplace_back(names[peers[i]], names[peers[j]]);
    }
  }
  return Instance::from_document(doc);
}

}  // namespace deepconn
