#include "deepconn/exact.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <boost/dynamic_bitset.hpp>

#include "deepconn/error.hpp"

namespace deepconn {

namespace {

using Bits = boost::dynamic_bitset<>;

// G-edges grouped by the set of overlay edges they kill. Removing any member
// of a group has the same effect on H, so the search branches on groups.
struct KillGroups {
  std::vector<std::vector<std::size_t>> kills;  // overlay edge ids per group
  std::vector<EdgeIndex> representative;        // smallest G-edge per group
  std::vector<std::ptrdiff_t> group_of;         // per G-edge, -1 if unused
};

KillGroups group_graph_edges(const Instance& instance) {
  std::vector<std::vector<std::size_t>> kill(instance.graph_edge_count());
  for (std::size_t o = 0; o < instance.overlay_edges().size(); ++o) {
    for (EdgeIndex e : instance.overlay_route(o).edges) kill[e].push_back(o);
  }
  KillGroups groups;
  groups.group_of.assign(instance.graph_edge_count(), -1);
  std::map<std::vector<std::size_t>, std::size_t> seen;
  for (EdgeIndex e = 0; e < kill.size(); ++e) {
    if (kill[e].empty()) continue;
    auto [it, fresh] = seen.emplace(kill[e], groups.kills.size());
    if (fresh) {
      groups.kills.push_back(kill[e]);
      groups.representative.push_back(e);
    }
    groups.group_of[e] = static_cast<std::ptrdiff_t>(it->second);
  }
  return groups;
}

class CutSearch {
 public:
  CutSearch(const Instance& instance, NodeIndex s, NodeIndex t, std::size_t budget)
      : instance_(instance), s_(s), t_(t), budget_(budget),
        groups_(group_graph_edges(instance)),
        removed_(instance.overlay_edges().size(), 0) {}

  CutResult run() {
    std::size_t k = lower_bound();
    for (;; ++k) {
      chosen_.clear();
      if (search(k)) {
        CutResult result;
        result.value = chosen_.size();
        for (std::size_t g : chosen_) result.witness.edges.push_back(groups_.representative[g]);
        std::sort(result.witness.edges.begin(), result.witness.edges.end());
        return result;
      }
    }
  }

 private:
  std::vector<bool> removed_mask() const {
    std::vector<bool> mask(removed_.size());
    for (std::size_t i = 0; i < removed_.size(); ++i) mask[i] = removed_[i] > 0;
    return mask;
  }

  // Greedy count of surviving paths with pairwise disjoint images; each one
  // needs its own removed edge.
  std::size_t lower_bound() const {
    std::vector<bool> blocked(instance_.graph_edge_count(), false);
    std::vector<bool> mask = removed_mask();
    std::size_t count = 0;
    for (;;) {
      for (std::size_t o = 0; o < mask.size(); ++o) {
        if (mask[o]) continue;
        for (EdgeIndex e : instance_.overlay_route(o).edges) {
          if (blocked[e]) {
            mask[o] = true;
            break;
          }
        }
      }
      auto path = overlay_bfs_path(instance_, s_, t_, mask);
      if (!path) return count;
      ++count;
      for (std::size_t i = 0; i + 1 < path->peers.size(); ++i) {
        for (EdgeIndex e : instance_.route(path->peers[i], path->peers[i + 1])->edges) {
          blocked[e] = true;
        }
      }
    }
  }

  bool search(std::size_t k) {
    if (++nodes_ > budget_) {
      throw Error(ErrorCode::kBudget, "exact budget exceeded: ERDC search explored more than " +
                                          std::to_string(budget_) + " nodes");
    }
    auto path = overlay_bfs_path(instance_, s_, t_, removed_mask());
    if (!path) return true;
    if (k == 0 || lower_bound() > k) return false;

    // Some removed edge must hit this path's image.
    std::set<std::size_t> branch;
    for (std::size_t i = 0; i + 1 < path->peers.size(); ++i) {
      for (EdgeIndex e : instance_.route(path->peers[i], path->peers[i + 1])->edges) {
        branch.insert(static_cast<std::size_t>(groups_.group_of[e]));
      }
    }
    for (std::size_t g : branch) {
      for (std::size_t o : groups_.kills[g]) ++removed_[o];
      chosen_.push_back(g);
      if (search(k - 1)) return true;
      chosen_.pop_back();
      for (std::size_t o : groups_.kills[g]) --removed_[o];
    }
    return false;
  }

  const Instance& instance_;
  NodeIndex s_, t_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  KillGroups groups_;
  std::vector<unsigned> removed_;
  std::vector<std::size_t> chosen_;
};

Bits image_bits(const Instance& instance, const OverlayPath& path) {
  Bits bits(instance.graph_edge_count());
  for (std::size_t i = 0; i + 1 < path.peers.size(); ++i) {
    for (EdgeIndex e : instance.route(path.peers[i], path.peers[i + 1])->edges) bits.set(e);
  }
  return bits;
}

// Maximum set packing over path images by branch and bound.
class PackingSearch {
 public:
  PackingSearch(const Instance& instance, NodeIndex s, NodeIndex t,
                std::vector<OverlayPath> paths, std::size_t budget)
      : paths_(std::move(paths)), budget_(budget),
        at_s_(instance.graph_edge_count()), at_t_(instance.graph_edge_count()) {
    // Small images first finds good incumbents early; ties stay lexicographic.
    for (const auto& p : paths_) images_.push_back(image_bits(instance, p));
    std::vector<std::size_t> order(paths_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return images_[a].count() < images_[b].count();
    });
    order_ = std::move(order);
    const auto edges = instance.graph_edges();
    for (EdgeIndex e = 0; e < edges.size(); ++e) {
      if (edges[e].has(s)) at_s_.set(e);
      if (edges[e].has(t)) at_t_.set(e);
    }
  }

  std::vector<std::size_t> run() {
    std::vector<std::size_t> current;
    recurse(order_, current);
    return best_;
  }

 private:
  // Every image touches s and t in G, so disjoint images need distinct
  // G-edges at both ends.
  std::size_t upper_bound(const std::vector<std::size_t>& candidates) const {
    Bits covered(at_s_.size());
    for (std::size_t c : candidates) covered |= images_[c];
    return std::min({candidates.size(), (covered & at_s_).count(), (covered & at_t_).count()});
  }

  void recurse(const std::vector<std::size_t>& candidates, std::vector<std::size_t>& current) {
    if (++nodes_ > budget_) {
      throw Error(ErrorCode::kBudget, "exact budget exceeded: path packing explored more than " +
                                          std::to_string(budget_) + " nodes");
    }
    if (current.size() > best_.size()) best_ = current;
    if (candidates.empty() || current.size() + upper_bound(candidates) <= best_.size()) return;

    const std::size_t pick = candidates.front();
    std::vector<std::size_t> compatible;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (!images_[pick].intersects(images_[candidates[i]])) compatible.push_back(candidates[i]);
    }
    current.push_back(pick);
    recurse(compatible, current);
    current.pop_back();

    std::vector<std::size_t> rest(candidates.begin() + 1, candidates.end());
    recurse(rest, current);
  }

  std::vector<OverlayPath> paths_;
  std::vector<Bits> images_;
  std::vector<std::size_t> order_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<std::size_t> best_;
  Bits at_s_, at_t_;
};

PackingResult packing_pair(const Instance& instance, NodeIndex s, NodeIndex t,
                           const ExactBudget& budget, bool simple_only) {
  auto paths = enumerate_simple_paths(instance, s, t, budget.path_cap);
  if (simple_only) {
    std::erase_if(paths, [&](const OverlayPath& p) { return !is_simple_concatenation(instance, p); });
  }
  PackingSearch search(instance, s, t, paths, budget.packing_nodes);
  PackingResult result;
  for (std::size_t i : search.run()) result.witness.paths.push_back(paths[i]);
  std::sort(result.witness.paths.begin(), result.witness.paths.end());
  result.value = result.witness.paths.size();
  return result;
}

}  // namespace

CutResult erdc_pair(const Instance& instance, NodeIndex s, NodeIndex t,
                    const ExactBudget& budget) {
  require_peer_pair(instance, s, t);
  if (!overlay_bfs_path(instance, s, t)) return {};
  return CutSearch(instance, s, t, budget.cut_nodes).run();
}

PackingResult pddc_pair(const Instance& instance, NodeIndex s, NodeIndex t,
                        const ExactBudget& budget) {
  require_peer_pair(instance, s, t);
  return packing_pair(instance, s, t, budget, false);
}

PackingResult spddc_pair(const Instance& instance, NodeIndex s, NodeIndex t,
                         const ExactBudget& budget) {
  require_peer_pair(instance, s, t);
  return packing_pair(instance, s, t, budget, true);
}

AllPairsResult all_pairs(const Instance& instance, Parameter which, const ExactBudget& budget) {
  const auto peers = instance.peers();
  std::optional<AllPairsResult> best;
  for (std::size_t i = 0; i < peers.size(); ++i) {
    for (std::size_t j = i + 1; j < peers.size(); ++j) {
      const NodeIndex s = peers[i], t = peers[j];
      AllPairsResult r;
      r.argmin = NodePair{s, t};
      if (which == Parameter::kErdc) {
        auto cut = erdc_pair(instance, s, t, budget);
        r.value = cut.value;
        r.cut = std::move(cut.witness);
      } else {
        auto pack = which == Parameter::kPddc ? pddc_pair(instance, s, t, budget)
                                              : spddc_pair(instance, s, t, budget);
        r.value = pack.value;
        r.packing = std::move(pack.witness);
      }
      if (!best || r.value < best->value) best = std::move(r);
      if (best->value == 0) return std::move(*best);
    }
  }
  return std::move(*best);
}

std::size_t classic_edge_connectivity(const Instance& instance, NodeIndex s, NodeIndex t) {
  if (s == t) throw Error(ErrorCode::kArgument, "endpoints must be distinct");
  const std::size_t n = instance.node_count();
  // residual[u][v]: remaining capacity of arc u->v; each undirected edge
  // starts with one unit in each direction.
  std::vector<std::vector<int>> residual(n, std::vector<int>(n, 0));
  for (const NodePair& e : instance.graph_edges()) {
    residual[e.lo][e.hi] = 1;
    residual[e.hi][e.lo] = 1;
  }
  std::size_t flow = 0;
  for (;;) {
    std::vector<std::ptrdiff_t> parent(n, -1);
    parent[s] = s;
    std::deque<NodeIndex> queue{s};
    while (!queue.empty() && parent[t] < 0) {
      const NodeIndex u = queue.front();
      queue.pop_front();
      for (NodeIndex v : instance.neighbors(u)) {
        if (parent[v] < 0 && residual[u][v] > 0) {
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (parent[t] < 0) return flow;
    for (NodeIndex v = t; v != s; v = static_cast<NodeIndex>(parent[v])) {
      const auto u = static_cast<NodeIndex>(parent[v]);
      --residual[u][v];
      ++residual[v][u];
    }
    ++flow;
  }
}

bool overlay_connected_after(const Instance& instance, NodeIndex s, NodeIndex t,
                             const std::vector<EdgeIndex>& removed_graph_edges) {
  std::vector<bool> dead_edge(instance.graph_edge_count(), false);
  for (EdgeIndex e : removed_graph_edges) dead_edge.at(e) = true;
  std::vector<bool> removed(instance.overlay_edges().size(), false);
  for (std::size_t o = 0; o < removed.size(); ++o) {
    for (EdgeIndex e : instance.overlay_route(o).edges) {
      if (dead_edge[e]) removed[o] = true;
    }
  }
  return overlay_bfs_path(instance, s, t, removed).has_value();
}

std::string check_cut_certificate(const Instance& instance, NodeIndex s, NodeIndex t,
                                  const CutCertificate& cut) {
  for (EdgeIndex e : cut.edges) {
    if (e >= instance.graph_edge_count()) return "certificate names a non-edge";
  }
  if (overlay_connected_after(instance, s, t, cut.edges)) {
    return "removing the certificate edges leaves s and t connected";
  }
  return {};
}

std::string check_path_packing(const Instance& instance, NodeIndex s, NodeIndex t,
                               const PathPacking& packing, bool require_simple) {
  std::vector<Bits> images;
  for (const auto& p : packing.paths) {
    try {
      check_overlay_path(instance, p);
    } catch (const Error& e) {
      return e.what();
    }
    if (p.peers.front() != s || p.peers.back() != t) return "packing path has wrong endpoints";
    if (require_simple && !is_simple_concatenation(instance, p)) {
      return "packing path " + format_path(instance, p) + " is not a simple concatenation";
    }
    images.push_back(image_bits(instance, p));
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      if (images[i].intersects(images[j])) return "packing paths share an underlying edge";
    }
  }
  return {};
}

}  // namespace deepconn
