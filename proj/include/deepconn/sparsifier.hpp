#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "deepconn/instance.hpp"
#include "deepconn/union_find.hpp"

namespace deepconn {

struct PreconditionReport {
  bool ok = true;
  std::optional<EdgeIndex> violating_edge;
};

// ERDC(K_P) >= 2: no single G-edge disconnects the complete peer graph once
// the pairs routed through it are deleted. Requires a total routing scheme.
PreconditionReport check_precondition(const Instance& instance);

// Throws Error(kPrecondition) with the violating edge when the check fails.
void require_precondition(const Instance& instance);

// Distance-to-feasibility bookkeeping for an overlay H ⊇ T.
//
// tracked[i] is the i-th G-edge of ρ(T) in canonical order; blocks[i] is the
// component partition of H minus the overlay edges routed through it, and
// kappa_i = (#blocks) - 1.
class AugmentationState {
 public:
  AugmentationState(const Instance& instance, std::vector<NodePair> tree,
                    std::vector<NodePair> overlay);

  std::size_t kappa() const { return kappa_; }
  std::size_t kappa_at(std::size_t i) const { return kappa_i_[i]; }
  const std::vector<EdgeIndex>& tracked() const { return tracked_; }
  const std::vector<NodePair>& tree() const { return tree_; }
  const std::vector<NodePair>& overlay() const { return overlay_; }
  bool contains(NodePair e) const;

  // κ(H) - κ(H ∪ {e}); e must be a routed peer pair outside H.
  std::size_t delta(NodePair e) const;

  // Adds e to H and updates every partition.
  void add(NodePair e);

 private:
  const Instance* instance_;
  std::vector<NodePair> tree_;
  std::vector<NodePair> overlay_;  // sorted
  std::vector<EdgeIndex> tracked_;
  std::vector<std::size_t> tracked_slot_;  // G-edge -> position in tracked_, or npos
  std::vector<std::size_t> peer_slot_;      // node -> position among peers
  std::vector<DisjointSets> blocks_;
  std::vector<std::size_t> kappa_i_;
  std::size_t kappa_ = 0;
};

AugmentationState compute_kappa(const Instance& instance, const std::vector<NodePair>& overlay,
                                const std::vector<NodePair>& tree);

std::size_t delta(const AugmentationState& state, NodePair e);

struct AugmentResult {
  std::vector<NodePair> overlay;            // sorted
  std::vector<std::size_t> kappa_history;   // κ before each step and at the end
};

// Greedy max-Δ augmentation of T until κ = 0 (ties: smallest pair).
AugmentResult greedy_augment(const Instance& instance, const std::vector<NodePair>& tree);

// Star at the smallest peer.
std::vector<NodePair> default_tree(const Instance& instance);

// default_tree followed by greedy_augment.
AugmentResult sparsify(const Instance& instance);

// Minimum-cardinality superset of T with κ = 0, by increasing-size subset
// search. Throws Error(kBudget) past `budget` subsets.
std::vector<NodePair> brute_force_augment(const Instance& instance,
                                          const std::vector<NodePair>& tree,
                                          std::size_t budget = std::size_t{1} << 22);

// P = V(G), identity routes: Kruskal tree plus one covering G-edge per tree
// edge. Throws Error(kPrecondition) naming a bridge if G has one.
std::vector<NodePair> special_case_construct(const Instance& graph);

// Instance on the same G with every node a peer and every G-edge routed as
// itself, carrying `overlay` as H.
Instance identity_instance(const Instance& graph, std::vector<NodePair> overlay);

}  // namespace deepconn
