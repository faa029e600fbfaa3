#pragma once

#include <map>
#include <optional>
#include <vector>

#include "deepconn/instance.hpp"
#include "deepconn/overlay.hpp"
#include "deepconn/rational.hpp"

namespace deepconn {

// Flow deep connectivity of one peer pair with both LP certificates.
struct FlowResult {
  Rational value;
  std::map<OverlayPath, Rational> primal;  // x_p > 0 only
  std::map<EdgeIndex, Rational> dual;      // y_e > 0 only
  std::vector<OverlayPath> generated_paths;
  std::size_t iterations = 0;
};

// Weight of each overlay edge under G-edge prices y: w(e) = Σ_{e'∈ρ(e)} y_e'.
std::vector<Rational> overlay_weights(const Instance& instance,
                                      const std::map<EdgeIndex, Rational>& y);

// Shortest (s,t)-path of H under the weights induced by y, returned only if
// its length is below 1 (a violated dual constraint). Among shortest simple
// paths the lexicographically smallest peer sequence is returned.
std::optional<OverlayPath> separation_oracle(const Instance& instance, NodeIndex s,
                                             NodeIndex t,
                                             const std::map<EdgeIndex, Rational>& y);

// FDC(s,t,H) by column generation over the restricted path LP.
FlowResult fdc_pair(const Instance& instance, NodeIndex s, NodeIndex t);

struct FlowAllPairs {
  Rational value;
  NodePair argmin;
  FlowResult witness;
};

// min over unordered peer pairs; ties go to the smallest pair.
FlowAllPairs fdc_all_pairs(const Instance& instance);

// Independent audit of a FlowResult: primal capacity feasibility, Σx = Σy =
// value, dual feasibility on the generated paths and on the full path space
// (via the oracle). Returns an empty string when every check passes.
std::string audit_flow_result(const Instance& instance, NodeIndex s, NodeIndex t,
                              const FlowResult& result);

}  // namespace deepconn
