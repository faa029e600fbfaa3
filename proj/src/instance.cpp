#include "deepconn/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "deepconn/error.hpp"
#include "deepconn/union_find.hpp"

namespace deepconn {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::kValidation, message);
}

bool valid_token(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

std::string quote_pair(const InstanceDocument::NamePair& p) {
  return "(" + p.first + "," + p.second + ")";
}

}  // namespace

Instance Instance::from_document(const InstanceDocument& doc) {
  Instance inst;

  inst.names_ = doc.nodes;
  for (const auto& n : inst.names_) {
    if (!valid_token(n)) invalid("invalid node name '" + n + "'");
  }
  std::sort(inst.names_.begin(), inst.names_.end());
  if (auto dup = std::adjacent_find(inst.names_.begin(), inst.names_.end());
      dup != inst.names_.end()) {
    invalid("duplicate node '" + *dup + "'");
  }
  if (inst.names_.empty()) invalid("underlying graph has no nodes");
  for (NodeIndex i = 0; i < inst.names_.size(); ++i) inst.index_.emplace(inst.names_[i], i);

  auto lookup = [&](const std::string& name, const char* what) {
    auto it = inst.index_.find(name);
    if (it == inst.index_.end()) invalid(std::string(what) + " references unknown node '" + name + "'");
    return it->second;
  };

  for (const auto& e : doc.edges) {
    NodeIndex a = lookup(e.first, "edge");
    NodeIndex b = lookup(e.second, "edge");
    if (a == b) invalid("self-loop at '" + e.first + "'");
    inst.edges_.push_back(NodePair::of(a, b));
  }
  std::sort(inst.edges_.begin(), inst.edges_.end());
  if (auto dup = std::adjacent_find(inst.edges_.begin(), inst.edges_.end());
      dup != inst.edges_.end()) {
    invalid("parallel edge " + inst.pair_label(*dup));
  }
  inst.adjacency_.resize(inst.names_.size());
  DisjointSets components(inst.names_.size());
  for (EdgeIndex i = 0; i < inst.edges_.size(); ++i) {
    const NodePair e = inst.edges_[i];
    inst.edge_index_.emplace(e, i);
    inst.adjacency_[e.lo].push_back(e.hi);
    inst.adjacency_[e.hi].push_back(e.lo);
    components.unite(e.lo, e.hi);
  }
  for (auto& adj : inst.adjacency_) std::sort(adj.begin(), adj.end());
  if (components.components() != 1) invalid("underlying graph disconnected");

  inst.peer_mask_.assign(inst.names_.size(), false);
  for (const auto& p : doc.peers) {
    NodeIndex v = lookup(p, "peer set");
    if (inst.peer_mask_[v]) invalid("duplicate peer '" + p + "'");
    inst.peer_mask_[v] = true;
    inst.peers_.push_back(v);
  }
  std::sort(inst.peers_.begin(), inst.peers_.end());
  if (inst.peers_.size() < 2) invalid("fewer than two peers");

  for (const auto& r : doc.routes) {
    NodeIndex a = lookup(r.pair.first, "route pair");
    NodeIndex b = lookup(r.pair.second, "route pair");
    if (!inst.peer_mask_[a] || !inst.peer_mask_[b]) {
      invalid("route pair " + quote_pair(r.pair) + " is not a peer pair");
    }
    if (a == b) invalid("route pair " + quote_pair(r.pair) + " has equal endpoints");
    const NodePair key = NodePair::of(a, b);
    if (inst.routes_.count(key)) invalid("duplicate route for pair " + quote_pair(r.pair));
    if (r.path.size() < 2) invalid("route for " + quote_pair(r.pair) + " shorter than one edge");

    Route route;
    for (const auto& n : r.path) route.path.push_back(lookup(n, "route"));
    if (route.path.front() == key.hi && route.path.back() == key.lo) {
      std::reverse(route.path.begin(), route.path.end());
    }
    if (route.path.front() != key.lo || route.path.back() != key.hi) {
      invalid("route for " + quote_pair(r.pair) + " does not connect its pair");
    }
    std::vector<NodeIndex> seen = route.path;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      invalid("route not vertex-simple: " + quote_pair(r.pair));
    }
    for (std::size_t i = 0; i + 1 < route.path.size(); ++i) {
      auto e = inst.find_edge(route.path[i], route.path[i + 1]);
      if (!e) {
        invalid("route for " + quote_pair(r.pair) + " uses non-edge (" +
                inst.names_[route.path[i]] + "," + inst.names_[route.path[i + 1]] + ")");
      }
      route.edges.push_back(*e);
    }
    inst.routes_.emplace(key, std::move(route));
  }

  std::vector<NodePair> overlay;
  for (const auto& e : doc.overlay_edges) {
    NodeIndex a = lookup(e.first, "overlay edge");
    NodeIndex b = lookup(e.second, "overlay edge");
    if (!inst.peer_mask_[a] || !inst.peer_mask_[b]) {
      invalid("overlay edge " + quote_pair(e) + " has a non-peer endpoint");
    }
    if (a == b) invalid("overlay self-loop at '" + e.first + "'");
    overlay.push_back(NodePair::of(a, b));
  }
  inst.overlay_ = std::move(overlay);
  inst.index_overlay();
  return inst;
}

void Instance::index_overlay() {
  std::sort(overlay_.begin(), overlay_.end());
  if (auto dup = std::adjacent_find(overlay_.begin(), overlay_.end()); dup != overlay_.end()) {
    invalid("parallel overlay edge " + pair_label(*dup));
  }
  overlay_index_.clear();
  overlay_routes_.clear();
  overlay_adjacency_.assign(names_.size(), {});
  for (std::size_t i = 0; i < overlay_.size(); ++i) {
    const NodePair e = overlay_[i];
    if (!peer_mask_[e.lo] || !peer_mask_[e.hi] || e.lo == e.hi) {
      invalid("overlay edge " + pair_label(e) + " is not a peer pair");
    }
    const Route* r = route(e.lo, e.hi);
    if (!r) invalid("overlay edge " + pair_label(e) + " has no route");
    overlay_routes_.push_back(*r);
    overlay_index_.emplace(e, i);
    overlay_adjacency_[e.lo].push_back({e.hi, i});
    overlay_adjacency_[e.hi].push_back({e.lo, i});
  }
  for (auto& adj : overlay_adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const OverlayArc& x, const OverlayArc& y) { return x.to < y.to; });
  }
}

Instance Instance::with_overlay(std::vector<NodePair> overlay) const {
  Instance copy = *this;
  for (auto& e : overlay) e = NodePair::of(e.lo, e.hi);
  copy.overlay_ = std::move(overlay);
  copy.index_overlay();
  return copy;
}

InstanceDocument Instance::to_document() const {
  InstanceDocument doc;
  doc.nodes = names_;
  for (const auto& e : edges_) doc.edges.emplace_back(names_[e.lo], names_[e.hi]);
  for (NodeIndex p : peers_) doc.peers.push_back(names_[p]);
  for (const auto& e : overlay_) doc.overlay_edges.emplace_back(names_[e.lo], names_[e.hi]);
  for (const auto& [key, route] : routes_) {
    InstanceDocument::RouteEntry entry;
    entry.pair = {names_[key.lo], names_[key.hi]};
    for (NodeIndex v : route.path) entry.path.push_back(names_[v]);
    doc.routes.push_back(std::move(entry));
  }
  return doc;
}

std::optional<NodeIndex> Instance::find_node(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Instance::node(std::string_view name) const {
  auto v = find_node(name);
  if (!v) throw Error(ErrorCode::kArgument, "unknown node '" + std::string(name) + "'");
  return *v;
}

std::optional<EdgeIndex> Instance::find_edge(NodeIndex a, NodeIndex b) const {
  auto it = edge_index_.find(NodePair::of(a, b));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Instance::find_overlay_edge(NodeIndex a, NodeIndex b) const {
  auto it = overlay_index_.find(NodePair::of(a, b));
  if (it == overlay_index_.end()) return std::nullopt;
  return it->second;
}

const Route* Instance::route(NodeIndex a, NodeIndex b) const {
  auto it = routes_.find(NodePair::of(a, b));
  return it == routes_.end() ? nullptr : &it->second;
}

std::vector<NodeIndex> Instance::oriented_route(NodeIndex from, NodeIndex to) const {
  const Route* r = route(from, to);
  if (!r) {
    throw Error(ErrorCode::kValidation,
                "no route for pair " + pair_label(NodePair::of(from, to)));
  }
  std::vector<NodeIndex> path = r->path;
  if (path.front() != from) std::reverse(path.begin(), path.end());
  return path;
}

bool Instance::routing_total() const {
  const std::size_t n = peers_.size();
  return routes_.size() == n * (n - 1) / 2;
}

std::string Instance::edge_label(EdgeIndex e) const { return pair_label(edges_[e]); }

std::string Instance::pair_label(NodePair p) const {
  return "(" + names_[p.lo] + "," + names_[p.hi] + ")";
}

std::map<NodePair, std::vector<NodeIndex>> Instance::route_paths() const {
  std::map<NodePair, std::vector<NodeIndex>> out;
  for (const auto& [key, r] : routes_) out.emplace(key, r.path);
  return out;
}

// ---------------------------------------------------------------------------
// JSON document format

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& message) {
  throw Error(ErrorCode::kSyntax, "schema error: " + message);
}

std::string as_name(const json& j, const char* where) {
  if (!j.is_string()) schema_error(std::string(where) + ": expected a string");
  return j.get<std::string>();
}

InstanceDocument::NamePair as_pair(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2) schema_error(std::string(where) + ": expected a 2-array");
  return {as_name(j[0], where), as_name(j[1], where)};
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(std::string("missing key '") + key + "'");
  if (!it->is_array()) schema_error(std::string("'") + key + "' must be an array");
  return *it;
}

InstanceDocument::NamePair sorted(InstanceDocument::NamePair p) {
  if (p.second < p.first) std::swap(p.first, p.second);
  return p;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSyntax,
                "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!root.is_object()) schema_error("document must be a JSON object");

  InstanceDocument doc;
  for (const auto& n : require(root, "nodes")) doc.nodes.push_back(as_name(n, "nodes"));
  for (const auto& e : require(root, "edges")) doc.edges.push_back(as_pair(e, "edges"));
  for (const auto& p : require(root, "peers")) doc.peers.push_back(as_name(p, "peers"));
  for (const auto& e : require(root, "overlay_edges")) {
    doc.overlay_edges.push_back(as_pair(e, "overlay_edges"));
  }
  for (const auto& r : require(root, "routes")) {
    if (!r.is_object() || !r.contains("pair") || !r.contains("path")) {
      schema_error("routes: expected {\"pair\": [...], \"path\": [...]}");
    }
    InstanceDocument::RouteEntry entry;
    entry.pair = as_pair(r["pair"], "routes.pair");
    if (!r["path"].is_array()) schema_error("routes.path: expected an array");
    for (const auto& n : r["path"]) entry.path.push_back(as_name(n, "routes.path"));
    doc.routes.push_back(std::move(entry));
  }
  return Instance::from_document(doc);
}

std::string serialize_document(const InstanceDocument& doc) {
  auto pairs = [](const std::vector<InstanceDocument::NamePair>& v) {
    std::vector<InstanceDocument::NamePair> out;
    for (const auto& p : v) out.push_back(sorted(p));
    std::sort(out.begin(), out.end());
    ordered_json arr = ordered_json::array();
    for (const auto& p : out) arr.push_back({p.first, p.second});
    return arr;
  };

  ordered_json root;
  root["nodes"] = doc.nodes;
  root["edges"] = pairs(doc.edges);
  root["peers"] = doc.peers;
  root["overlay_edges"] = pairs(doc.overlay_edges);

  std::vector<InstanceDocument::RouteEntry> routes = doc.routes;
  for (auto& r : routes) {
    auto key = sorted(r.pair);
    if (key != r.pair) std::reverse(r.path.begin(), r.path.end());
    r.pair = key;
  }
  std::sort(routes.begin(), routes.end(),
            [](const auto& x, const auto& y) { return x.pair < y.pair; });
  ordered_json arr = ordered_json::array();
  for (const auto& r : routes) {
    ordered_json entry;
    entry["pair"] = {r.pair.first, r.pair.second};
    entry["path"] = r.path;
    arr.push_back(std::move(entry));
  }
  root["routes"] = std::move(arr);
  return root.dump(2) + "\n";
}

std::string serialize_instance(const Instance& instance) {
  return serialize_document(instance.to_document());
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kArgument, "cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

}  // namespace deepconn
