#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "deepconn/instance.hpp"
#include "deepconn/overlay.hpp"

namespace deepconn {

// Limits for the exponential searches. Exceeding one throws Error(kBudget);
// these routines never fall back to an approximation.
struct ExactBudget {
  std::size_t cut_nodes = std::size_t{1} << 20;  // ERDC search-tree nodes
  std::size_t packing_nodes = 1'000'000;         // set-packing B&B nodes
  std::size_t path_cap = kDefaultPathCap;
};

struct CutCertificate {
  std::vector<EdgeIndex> edges;  // F ⊆ E(G), ascending
};

struct PathPacking {
  std::vector<OverlayPath> paths;  // lexicographic order
};

struct CutResult {
  std::size_t value = 0;
  CutCertificate witness;
};

struct PackingResult {
  std::size_t value = 0;
  PathPacking witness;
};

// Edge-removal deep connectivity: minimum |F| such that deleting every
// overlay edge routed through F separates s from t in H.
CutResult erdc_pair(const Instance& instance, NodeIndex s, NodeIndex t,
                    const ExactBudget& budget = {});

// Path-disjoint deep connectivity: most simple (s,t)-paths of H with
// pairwise disjoint image supports.
PackingResult pddc_pair(const Instance& instance, NodeIndex s, NodeIndex t,
                        const ExactBudget& budget = {});

// As pddc_pair, restricted to paths whose concatenated walk is simple.
PackingResult spddc_pair(const Instance& instance, NodeIndex s, NodeIndex t,
                         const ExactBudget& budget = {});

enum class Parameter { kErdc, kPddc, kSpddc };

struct AllPairsResult {
  std::size_t value = 0;
  NodePair argmin;
  CutCertificate cut;        // set for kErdc
  PathPacking packing;       // set for kPddc / kSpddc
};

// Minimum over unordered peer pairs, smallest pair on ties.
AllPairsResult all_pairs(const Instance& instance, Parameter which,
                         const ExactBudget& budget = {});

// Single-layer s–t edge connectivity of G (unit-capacity max flow).
std::size_t classic_edge_connectivity(const Instance& instance, NodeIndex s, NodeIndex t);

// Witness checks, independent of the searches. Empty string means valid.
std::string check_cut_certificate(const Instance& instance, NodeIndex s, NodeIndex t,
                                  const CutCertificate& cut);
std::string check_path_packing(const Instance& instance, NodeIndex s, NodeIndex t,
                               const PathPacking& packing, bool require_simple);

// True iff s and t stay connected in H after deleting every overlay edge
// whose route meets `removed_graph_edges`.
bool overlay_connected_after(const Instance& instance, NodeIndex s, NodeIndex t,
                             const std::vector<EdgeIndex>& removed_graph_edges);

}  // namespace deepconn
