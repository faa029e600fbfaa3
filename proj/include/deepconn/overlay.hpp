#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deepconn/instance.hpp"

namespace deepconn {

// A vertex-simple path x_0..x_k in the overlay graph H.
struct OverlayPath {
  std::vector<NodeIndex> peers;

  friend auto operator<=>(const OverlayPath&, const OverlayPath&) = default;
};

// Multiplicity of every G-edge along a concatenated route; ψ(p,e) = count(e).
class EdgeMultiset {
 public:
  void add(EdgeIndex e, unsigned times = 1) { counts_[e] += times; }
  unsigned count(EdgeIndex e) const {
    auto it = counts_.find(e);
    return it == counts_.end() ? 0 : it->second;
  }
  const std::map<EdgeIndex, unsigned>& counts() const { return counts_; }
  std::vector<EdgeIndex> support() const;
  bool all_unit() const;

  friend bool operator==(const EdgeMultiset&, const EdgeMultiset&) = default;

 private:
  std::map<EdgeIndex, unsigned> counts_;
};

inline constexpr std::size_t kDefaultPathCap = 100'000;

// Throws Error(kArgument) unless `path` is a vertex-simple walk over E(H)
// with at least one hop.
void check_overlay_path(const Instance& instance, const OverlayPath& path);

// Multiset of G-edges along ρ(x_0,x_1)·…·ρ(x_{k-1},x_k).
EdgeMultiset route_image(const Instance& instance, const OverlayPath& path);

// The concatenated G-walk of `path`, node by node.
std::vector<NodeIndex> concatenated_walk(const Instance& instance, const OverlayPath& path);

// True iff the concatenated G-walk visits no vertex twice.
bool is_simple_concatenation(const Instance& instance, const OverlayPath& path);

// All vertex-simple (s,t)-paths of H in lexicographic order of peer
// sequence. Throws Error(kBudget) once more than `cap` paths exist.
std::vector<OverlayPath> enumerate_simple_paths(const Instance& instance, NodeIndex s,
                                                NodeIndex t,
                                                std::size_t cap = kDefaultPathCap);

// Fewest-hop (s,t)-path in H, smallest neighbour first; nullopt if none.
// Overlay edges with `removed[i]` set are skipped when `removed` is non-empty.
std::optional<OverlayPath> overlay_bfs_path(const Instance& instance, NodeIndex s,
                                            NodeIndex t,
                                            const std::vector<bool>& removed = {});

// Throws Error(kArgument) unless s and t are distinct peers.
void require_peer_pair(const Instance& instance, NodeIndex s, NodeIndex t);

std::string format_path(const Instance& instance, const OverlayPath& path);

}  // namespace deepconn
