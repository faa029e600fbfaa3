#include "deepconn/overlay.hpp"

#include <algorithm>
#include <deque>

#include "deepconn/error.hpp"

namespace deepconn {

std::vector<EdgeIndex> EdgeMultiset::support() const {
  std::vector<EdgeIndex> out;
  out.reserve(counts_.size());
  for (const auto& [e, c] : counts_) out.push_back(e);
  return out;
}

bool EdgeMultiset::all_unit() const {
  return std::all_of(counts_.begin(), counts_.end(),
                     [](const auto& kv) { return kv.second == 1; });
}

void require_peer_pair(const Instance& instance, NodeIndex s, NodeIndex t) {
  if (s >= instance.node_count() || !instance.is_peer(s) ||
      t >= instance.node_count() || !instance.is_peer(t)) {
    throw Error(ErrorCode::kArgument, "endpoints must be peers");
  }
  if (s == t) throw Error(ErrorCode::kArgument, "endpoints must be distinct");
}

void check_overlay_path(const Instance& instance, const OverlayPath& path) {
  const auto& seq = path.peers;
  if (seq.size() < 2) throw Error(ErrorCode::kArgument, "overlay path needs at least one hop");
  std::vector<NodeIndex> sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kArgument, "overlay path is not vertex-simple");
  }
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (seq[i] >= instance.node_count() || seq[i + 1] >= instance.node_count() ||
        !instance.find_overlay_edge(seq[i], seq[i + 1])) {
      throw Error(ErrorCode::kArgument, "overlay path uses a non-overlay edge");
    }
  }
}

EdgeMultiset route_image(const Instance& instance, const OverlayPath& path) {
  check_overlay_path(instance, path);
  EdgeMultiset image;
  for (std::size_t i = 0; i + 1 < path.peers.size(); ++i) {
    const Route* r = instance.route(path.peers[i], path.peers[i + 1]);
    if (!r) throw Error(ErrorCode::kValidation, "overlay edge without a route");
    for (EdgeIndex e : r->edges) image.add(e);
  }
  return image;
}

std::vector<NodeIndex> concatenated_walk(const Instance& instance, const OverlayPath& path) {
  check_overlay_path(instance, path);
  std::vector<NodeIndex> walk{path.peers.front()};
  for (std::size_t i = 0; i + 1 < path.peers.size(); ++i) {
    auto hop = instance.oriented_route(path.peers[i], path.peers[i + 1]);
    walk.insert(walk.end(), hop.begin() + 1, hop.end());
  }
  return walk;
}

bool is_simple_concatenation(const Instance& instance, const OverlayPath& path) {
  auto walk = concatenated_walk(instance, path);
  std::sort(walk.begin(), walk.end());
  return std::adjacent_find(walk.begin(), walk.end()) == walk.end();
}

std::vector<OverlayPath> enumerate_simple_paths(const Instance& instance, NodeIndex s,
                                                NodeIndex t, std::size_t cap) {
  require_peer_pair(instance, s, t);
  std::vector<OverlayPath> out;
  std::vector<bool> on_path(instance.node_count(), false);
  std::vector<NodeIndex> stack{s};
  on_path[s] = true;

  // Neighbour lists are sorted, so depth-first order is lexicographic order.
  auto dfs = [&](auto&& self, NodeIndex u) -> void {
    for (const OverlayArc& arc : instance.overlay_neighbors(u)) {
      const NodeIndex v = arc.to;
      if (on_path[v]) continue;
      stack.push_back(v);
      if (v == t) {
        if (out.size() == cap) {
          throw Error(ErrorCode::kBudget, "simple path enumeration exceeded cap of " +
                                              std::to_string(cap) + " paths");
        }
        out.push_back(OverlayPath{stack});
      } else {
        on_path[v] = true;
        self(self, v);
        on_path[v] = false;
      }
      stack.pop_back();
    }
  };
  dfs(dfs, s);
  return out;
}

std::optional<OverlayPath> overlay_bfs_path(const Instance& instance, NodeIndex s,
                                            NodeIndex t, const std::vector<bool>& removed) {
  constexpr NodeIndex kNone = static_cast<NodeIndex>(-1);
  std::vector<NodeIndex> parent(instance.node_count(), kNone);
  std::deque<NodeIndex> queue{s};
  parent[s] = s;
  while (!queue.empty()) {
    const NodeIndex u = queue.front();
    queue.pop_front();
    if (u == t) break;
    for (const OverlayArc& arc : instance.overlay_neighbors(u)) {
      if (!removed.empty() && removed[arc.edge]) continue;
      if (parent[arc.to] != kNone) continue;
      parent[arc.to] = u;
      queue.push_back(arc.to);
    }
  }
  if (parent[t] == kNone) return std::nullopt;
  OverlayPath path;
  for (NodeIndex v = t; v != s; v = parent[v]) path.peers.push_back(v);
  path.peers.push_back(s);
  std::reverse(path.peers.begin(), path.peers.end());
  return path;
}

std::string format_path(const Instance& instance, const OverlayPath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.peers.size(); ++i) {
    if (i) out += "->";
    out += instance.name(path.peers[i]);
  }
  return out;
}

}  // namespace deepconn
