#include "deepconn/sparsifier.hpp"

#include <algorithm>
#include <limits>

#include "deepconn/error.hpp"

namespace deepconn {

namespace {

constexpr std::size_t kNpos = std::numeric_limits<std::size_t>::max();

const Route& route_or_throw(const Instance& instance, NodePair e) {
  const Route* r = instance.route(e.lo, e.hi);
  if (!r) {
    throw Error(ErrorCode::kPrecondition,
                "peer pair " + instance.pair_label(e) + " has no route; a total routing scheme is required");
  }
  return *r;
}

void require_total(const Instance& instance) {
  if (!instance.routing_total()) {
    throw Error(ErrorCode::kPrecondition, "sparsification requires a total routing scheme");
  }
}

std::vector<NodePair> all_peer_pairs(const Instance& instance) {
  std::vector<NodePair> out;
  const auto peers = instance.peers();
  for (std::size_t i = 0; i < peers.size(); ++i) {
    for (std::size_t j = i + 1; j < peers.size(); ++j) out.push_back({peers[i], peers[j]});
  }
  return out;
}

}  // namespace

PreconditionReport check_precondition(const Instance& instance) {
  require_total(instance);
  const auto peers = instance.peers();
  std::vector<std::size_t> slot(instance.node_count(), 0);
  for (std::size_t i = 0; i < peers.size(); ++i) slot[peers[i]] = i;

  for (EdgeIndex e = 0; e < instance.graph_edge_count(); ++e) {
    DisjointSets dsu(peers.size());
    for (const auto& [pair, route] : instance.routes()) {
      if (std::find(route.edges.begin(), route.edges.end(), e) == route.edges.end()) {
        dsu.unite(slot[pair.lo], slot[pair.hi]);
      }
    }
    if (dsu.components() != 1) return {false, e};
  }
  return {};
}

void require_precondition(const Instance& instance) {
  auto report = check_precondition(instance);
  if (!report.ok) {
    throw Error(ErrorCode::kPrecondition, "precondition ERDC(K_P) >= 2 violated at edge " +
                                              instance.edge_label(*report.violating_edge));
  }
}

AugmentationState::AugmentationState(const Instance& instance, std::vector<NodePair> tree,
                                     std::vector<NodePair> overlay)
    : instance_(&instance), tree_(std::move(tree)), overlay_(std::move(overlay)) {
  const auto peers = instance.peers();
  for (auto& e : tree_) e = NodePair::of(e.lo, e.hi);
  for (auto& e : overlay_) e = NodePair::of(e.lo, e.hi);
  std::sort(tree_.begin(), tree_.end());
  std::sort(overlay_.begin(), overlay_.end());
  overlay_.erase(std::unique(overlay_.begin(), overlay_.end()), overlay_.end());

  peer_slot_.assign(instance.node_count(), kNpos);
  for (std::size_t i = 0; i < peers.size(); ++i) peer_slot_[peers[i]] = i;

  // T must be a spanning tree on P contained in H.
  if (tree_.size() + 1 != peers.size()) {
    throw Error(ErrorCode::kArgument, "tree must have |P|-1 edges");
  }
  DisjointSets span(peers.size());
  for (const NodePair& e : tree_) {
    if (e.lo >= peer_slot_.size() || peer_slot_[e.lo] == kNpos || peer_slot_[e.hi] == kNpos) {
      throw Error(ErrorCode::kArgument, "tree edge is not a peer pair");
    }
    if (!span.unite(peer_slot_[e.lo], peer_slot_[e.hi])) {
      throw Error(ErrorCode::kArgument, "tree contains a cycle");
    }
    if (!std::binary_search(overlay_.begin(), overlay_.end(), e)) {
      throw Error(ErrorCode::kArgument, "overlay does not contain tree edge " + instance.pair_label(e));
    }
  }
  for (const NodePair& e : overlay_) {
    if (peer_slot_[e.lo] == kNpos || peer_slot_[e.hi] == kNpos || e.lo == e.hi) {
      throw Error(ErrorCode::kArgument, "overlay edge is not a peer pair");
    }
  }

  for (const NodePair& e : tree_) {
    for (EdgeIndex g : route_or_throw(instance, e).edges) tracked_.push_back(g);
  }
  std::sort(tracked_.begin(), tracked_.end());
  tracked_.erase(std::unique(tracked_.begin(), tracked_.end()), tracked_.end());
  tracked_slot_.assign(instance.graph_edge_count(), kNpos);
  for (std::size_t i = 0; i < tracked_.size(); ++i) tracked_slot_[tracked_[i]] = i;

  blocks_.assign(tracked_.size(), DisjointSets(peers.size()));
  std::vector<bool> on_route(tracked_.size(), false);
  for (const NodePair& e : overlay_) {
    const Route& r = route_or_throw(instance, e);
    std::fill(on_route.begin(), on_route.end(), false);
    for (EdgeIndex g : r.edges) {
      if (tracked_slot_[g] != kNpos) on_route[tracked_slot_[g]] = true;
    }
    for (std::size_t i = 0; i < tracked_.size(); ++i) {
      if (!on_route[i]) blocks_[i].unite(peer_slot_[e.lo], peer_slot_[e.hi]);
    }
  }
  kappa_i_.resize(tracked_.size());
  for (std::size_t i = 0; i < tracked_.size(); ++i) {
    kappa_i_[i] = blocks_[i].components() - 1;
    kappa_ += kappa_i_[i];
  }
}

bool AugmentationState::contains(NodePair e) const {
  return std::binary_search(overlay_.begin(), overlay_.end(), NodePair::of(e.lo, e.hi));
}

std::size_t AugmentationState::delta(NodePair e) const {
  e = NodePair::of(e.lo, e.hi);
  if (contains(e)) {
    throw Error(ErrorCode::kArgument, "candidate " + instance_->pair_label(e) + " already in H");
  }
  const Route& r = route_or_throw(*instance_, e);
  std::vector<bool> on_route(tracked_.size(), false);
  for (EdgeIndex g : r.edges) {
    if (tracked_slot_[g] != kNpos) on_route[tracked_slot_[g]] = true;
  }
  const std::size_t a = peer_slot_.at(e.lo), b = peer_slot_.at(e.hi);
  if (a == kNpos || b == kNpos) throw Error(ErrorCode::kArgument, "candidate is not a peer pair");
  std::size_t gain = 0;
  for (std::size_t i = 0; i < tracked_.size(); ++i) {
    if (!on_route[i] && blocks_[i].root(a) != blocks_[i].root(b)) ++gain;
  }
  return gain;
}

void AugmentationState::add(NodePair e) {
  e = NodePair::of(e.lo, e.hi);
  if (contains(e)) return;
  const Route& r = route_or_throw(*instance_, e);
  std::vector<bool> on_route(tracked_.size(), false);
  for (EdgeIndex g : r.edges) {
    if (tracked_slot_[g] != kNpos) on_route[tracked_slot_[g]] = true;
  }
  for (std::size_t i = 0; i < tracked_.size(); ++i) {
    if (!on_route[i] && blocks_[i].unite(peer_slot_[e.lo], peer_slot_[e.hi])) {
      --kappa_i_[i];
      --kappa_;
    }
  }
  overlay_.insert(std::upper_bound(overlay_.begin(), overlay_.end(), e), e);
}

AugmentationState compute_kappa(const Instance& instance, const std::vector<NodePair>& overlay,
                                const std::vector<NodePair>& tree) {
  return AugmentationState(instance, tree, overlay);
}

std::size_t delta(const AugmentationState& state, NodePair e) { return state.delta(e); }

std::vector<NodePair> default_tree(const Instance& instance) {
  const auto peers = instance.peers();
  std::vector<NodePair> tree;
  for (std::size_t i = 1; i < peers.size(); ++i) tree.push_back({peers[0], peers[i]});
  return tree;
}

AugmentResult greedy_augment(const Instance& instance, const std::vector<NodePair>& tree) {
  require_precondition(instance);
  AugmentationState state(instance, tree, tree);
  AugmentResult result;
  const auto candidates = all_peer_pairs(instance);
  while (state.kappa() > 0) {
    result.kappa_history.push_back(state.kappa());
    std::size_t best_gain = 0;
    NodePair best{};
    for (const NodePair& e : candidates) {
      if (state.contains(e)) continue;
      const std::size_t gain = state.delta(e);
      if (gain > best_gain) {
        best_gain = gain;
        best = e;
      }
    }
    if (best_gain == 0) {
      throw Error(ErrorCode::kInternal, "no candidate reduces kappa although the precondition holds");
    }
    state.add(best);
  }
  result.kappa_history.push_back(state.kappa());
  result.overlay = state.overlay();
  return result;
}

AugmentResult sparsify(const Instance& instance) {
  require_precondition(instance);
  return greedy_augment(instance, default_tree(instance));
}

std::vector<NodePair> brute_force_augment(const Instance& instance,
                                          const std::vector<NodePair>& tree,
                                          std::size_t budget) {
  require_precondition(instance);
  const AugmentationState base(instance, tree, tree);
  std::vector<NodePair> candidates;
  for (const NodePair& e : all_peer_pairs(instance)) {
    if (!base.contains(e)) candidates.push_back(e);
  }

  std::size_t explored = 0;
  for (std::size_t k = 0; k <= candidates.size(); ++k) {
    // Lexicographic k-combinations of candidate positions.
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      if (++explored > budget) {
        throw Error(ErrorCode::kBudget, "brute-force augmentation exceeded " +
                                            std::to_string(budget) + " subsets");
      }
      AugmentationState trial = base;
      for (std::size_t i : pick) trial.add(candidates[i]);
      if (trial.kappa() == 0) return trial.overlay();

      std::size_t i = k;
      while (i > 0 && pick[i - 1] == candidates.size() - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw Error(ErrorCode::kInternal, "no feasible augmentation although the precondition holds");
}

std::vector<NodePair> special_case_construct(const Instance& graph) {
  const auto edges = graph.graph_edges();
  const std::size_t n = graph.node_count();

  std::vector<bool> in_tree(edges.size(), false);
  DisjointSets kruskal(n);
  for (EdgeIndex e = 0; e < edges.size(); ++e) {
    if (kruskal.unite(edges[e].lo, edges[e].hi)) in_tree[e] = true;
  }

  std::vector<NodePair> overlay;
  for (EdgeIndex e = 0; e < edges.size(); ++e) {
    if (!in_tree[e]) continue;
    overlay.push_back(edges[e]);
    DisjointSets side(n);
    for (EdgeIndex f = 0; f < edges.size(); ++f) {
      if (in_tree[f] && f != e) side.unite(edges[f].lo, edges[f].hi);
    }
    std::optional<EdgeIndex> cover;
    for (EdgeIndex f = 0; f < edges.size(); ++f) {
      if (f != e && !side.same(edges[f].lo, edges[f].hi)) {
        cover = f;
        break;
      }
    }
    if (!cover) {
      throw Error(ErrorCode::kPrecondition,
                  "underlying graph is not 2-edge-connected: bridge " + graph.edge_label(e));
    }
    overlay.push_back(edges[*cover]);
  }
  std::sort(overlay.begin(), overlay.end());
  overlay.erase(std::unique(overlay.begin(), overlay.end()), overlay.end());
  return overlay;
}

Instance identity_instance(const Instance& graph, std::vector<NodePair> overlay) {
  InstanceDocument doc;
  for (NodeIndex v = 0; v < graph.node_count(); ++v) doc.nodes.push_back(graph.name(v));
  doc.peers = doc.nodes;
  for (const NodePair& e : graph.graph_edges()) {
    doc.edges.emplace_back(graph.name(e.lo), graph.name(e.hi));
    doc.routes.push_back({{graph.name(e.lo), graph.name(e.hi)}, {graph.name(e.lo), graph.name(e.hi)}});
  }
  for (const NodePair& e : overlay) doc.overlay_edges.emplace_back(graph.name(e.lo), graph.name(e.hi));
  return Instance::from_document(doc);
}

}  // namespace deepconn
