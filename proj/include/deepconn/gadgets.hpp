#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "deepconn/instance.hpp"

namespace deepconn {

// m elements × n sets; contains(i, j) for 0-based element i and set j.
class SetSystem {
 public:
  SetSystem(std::size_t m, std::size_t n);
  // Sets given as lists of 1-based element indices.
  static SetSystem from_sets(std::size_t m, const std::vector<std::vector<std::size_t>>& sets);

  std::size_t elements() const { return m_; }
  std::size_t sets() const { return n_; }
  bool contains(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, bool value = true) { cells_[i * n_ + j] = value; }
  // Ascending 0-based elements of set j.
  std::vector<std::size_t> members(std::size_t j) const;

 private:
  std::size_t m_, n_;
  std::vector<bool> cells_;
};

// Plain named graph: the overlay frame of a set-system encoding, or the
// input graph of the Hamiltonian reduction (which may be disconnected).
struct NamedGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
};

using Labels = std::map<std::string, std::vector<std::string>>;

struct GadgetOutput {
  Instance instance;
  // Construction role -> names. Keys: "E_D", "E_rho", "E_H_minus_F",
  // "E_anchor" (edges, as "a|b"), "F" (overlay edges, same format),
  // "element_a", "element_b", "subdivision", "peers", and per-generator
  // extras such as "layer_u", "layer_v", "apex".
  Labels labels;
};

std::string edge_token(const std::string& a, const std::string& b);

// Builds G and ρ on top of `skeleton` so that the j-th edge of `f` is routed
// through exactly the element edges of set j (ascending element order), with
// every connector subdivided by a fresh vertex. Elements that no set uses
// are tied to the smallest skeleton vertex by an unrouted anchor edge so
// that G stays connected.
GadgetOutput encode_set_system(const NamedGraph& skeleton,
                               const std::vector<std::pair<std::string, std::string>>& f,
                               const SetSystem& sets);

// Exact |V(G)| of an encode_set_system output: |V(H)| + 2m + Σ_j (|S_j| + 1).
std::size_t encoded_vertex_count(std::size_t skeleton_vertices, const SetSystem& sets);

struct SpddcReduction {
  GadgetOutput gadget;
  std::string source;
  std::string sink;
};

// Layered overlay u_0 … u_k with k copies of every set. When every set is
// nonempty, SPDDC(u_0,u_k) >= 1 iff the sets admit a packing of size k. An
// empty set breaks the "only if" direction: its copies may be chosen on
// several layers, which a packing of distinct sets cannot do.
SpddcReduction build_spddc_reduction(const SetSystem& sets, std::size_t k);

// Underlying graph g0 plus apex vertices x, y; peers V(g0); ρ(u,v) is the
// g0 edge when present and (u, x, y, v) otherwise. H is the complete graph.
Instance build_hamiltonian_reduction(const NamedGraph& g0);

// Exhaustive: do k pairwise disjoint sets exist?
bool set_packing_brute_force(const SetSystem& sets, std::size_t k,
                             std::size_t budget = 10'000'000);

enum class RoutePolicy { kShortestPath, kRandomSimple };

struct RandomInstanceOptions {
  std::size_t nodes = 8;
  std::size_t peers = 4;
  double edge_probability = 0.5;
  RoutePolicy policy = RoutePolicy::kShortestPath;
  std::uint64_t seed = 1;
  std::size_t retry_budget = 1000;
};

// G(n,p) retried until connected, random peer subset, total routing scheme,
// complete overlay. Deterministic for a fixed seed.
Instance random_instance(const RandomInstanceOptions& options);

}  // namespace deepconn
