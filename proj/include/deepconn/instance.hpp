#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace deepconn {

using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

// Unordered node pair stored with lo < hi. Node indices follow the sorted
// order of node names, so comparing pairs compares names lexicographically.
struct NodePair {
  NodeIndex lo = 0;
  NodeIndex hi = 0;

  static NodePair of(NodeIndex a, NodeIndex b) {
    return a < b ? NodePair{a, b} : NodePair{b, a};
  }
  bool has(NodeIndex v) const { return lo == v || hi == v; }
  NodeIndex other(NodeIndex v) const { return v == lo ? hi : lo; }

  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

// Name-level description of an instance, as read from or written to JSON.
struct InstanceDocument {
  using NamePair = std::pair<std::string, std::string>;
  struct RouteEntry {
    NamePair pair;
    std::vector<std::string> path;
  };

  std::vector<std::string> nodes;
  std::vector<NamePair> edges;
  std::vector<std::string> peers;
  std::vector<NamePair> overlay_edges;
  std::vector<RouteEntry> routes;
};

// A route ρ(u,v), stored oriented from pair.lo to pair.hi.
struct Route {
  std::vector<NodeIndex> path;
  std::vector<EdgeIndex> edges;  // G-edge ids along the path, in path order
};

// Overlay neighbour together with the overlay edge id that reaches it.
struct OverlayArc {
  NodeIndex to = 0;
  std::size_t edge = 0;
};

// Validated (G, P, ρ, H). Immutable once built.
class Instance {
 public:
  // Validates the document; throws Error(kValidation) naming the first
  // violated invariant.
  static Instance from_document(const InstanceDocument& doc);

  InstanceDocument to_document() const;

  // Same G, P and ρ with a different overlay edge set (validated).
  Instance with_overlay(std::vector<NodePair> overlay) const;

  std::size_t node_count() const { return names_.size(); }
  const std::string& name(NodeIndex v) const { return names_[v]; }
  std::optional<NodeIndex> find_node(std::string_view name) const;
  // Throws Error(kArgument) for an unknown name.
  NodeIndex node(std::string_view name) const;

  std::span<const NodePair> graph_edges() const { return edges_; }
  std::size_t graph_edge_count() const { return edges_.size(); }
  std::optional<EdgeIndex> find_edge(NodeIndex a, NodeIndex b) const;
  std::span<const NodeIndex> neighbors(NodeIndex v) const { return adjacency_[v]; }

  std::span<const NodeIndex> peers() const { return peers_; }
  bool is_peer(NodeIndex v) const { return peer_mask_[v]; }

  std::span<const NodePair> overlay_edges() const { return overlay_; }
  std::optional<std::size_t> find_overlay_edge(NodeIndex a, NodeIndex b) const;
  std::span<const OverlayArc> overlay_neighbors(NodeIndex v) const {
    return overlay_adjacency_[v];
  }

  // nullptr when the pair has no route.
  const Route* route(NodeIndex a, NodeIndex b) const;
  const Route& overlay_route(std::size_t overlay_edge) const {
    return overlay_routes_[overlay_edge];
  }
  // Node sequence of ρ(from,to) walked from `from`.
  std::vector<NodeIndex> oriented_route(NodeIndex from, NodeIndex to) const;
  const std::map<NodePair, Route>& routes() const { return routes_; }

  // Every unordered pair of distinct peers has a route.
  bool routing_total() const;

  std::string edge_label(EdgeIndex e) const;
  std::string pair_label(NodePair p) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.names_ == b.names_ && a.edges_ == b.edges_ && a.peers_ == b.peers_ &&
           a.overlay_ == b.overlay_ && a.route_paths() == b.route_paths();
  }

 private:
  Instance() = default;
  std::map<NodePair, std::vector<NodeIndex>> route_paths() const;
  void index_overlay();

  std::vector<std::string> names_;
  std::map<std::string, NodeIndex, std::less<>> index_;
  std::vector<NodePair> edges_;
  std::map<NodePair, EdgeIndex> edge_index_;
  std::vector<std::vector<NodeIndex>> adjacency_;
  std::vector<NodeIndex> peers_;
  std::vector<bool> peer_mask_;
  std::map<NodePair, Route> routes_;
  std::vector<NodePair> overlay_;
  std::map<NodePair, std::size_t> overlay_index_;
  std::vector<std::vector<OverlayArc>> overlay_adjacency_;
  std::vector<Route> overlay_routes_;
};

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);
std::string serialize_document(const InstanceDocument& doc);
Instance load_instance(const std::filesystem::path& path);

}  // namespace deepconn
