#include <doctest.h>

#include "deepconn/error.hpp"
#include "deepconn/simplex.hpp"
#include "deepconn/union_find.hpp"
#include "support.hpp"

using namespace deepconn;
using testing::fixture;

namespace {

const char* kTiny = R"({
  "nodes": ["a", "b", "c"],
  "edges": [["a", "b"], ["b", "c"]],
  "peers": ["a", "c"],
  "overlay_edges": [["a", "c"]],
  "routes": [{"pair": ["c", "a"], "path": ["c", "b", "a"]}]
})";

ErrorCode code_of(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInternal;
}

std::string message_of(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("rational formatting") {
  CHECK(format_rational(Rational(3, 2)) == "3/2");
  CHECK(format_rational(Rational(4, 2)) == "2");
  CHECK(format_rational(Rational(0)) == "0");
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("disjoint sets") {
  DisjointSets d;
  d.reset(5);
  CHECK(d.components() == 5);
  CHECK(d.unite(0, 1));
  CHECK_FALSE(d.unite(1, 0));
  CHECK(d.unite(3, 4));
  CHECK(d.same(0, 1));
  CHECK(d.root(4) == d.find(3));
  CHECK(d.components() == 3);
}

TEST_CASE("fig1 fixture shape") {
  const Instance inst = fixture("fig1");
  CHECK(inst.node_count() == 14);
  CHECK(inst.graph_edge_count() == 18);
  CHECK(inst.peers().size() == 8);
  CHECK(inst.overlay_edges().size() == 9);
  CHECK_FALSE(inst.routing_total());
}

TEST_CASE("routes are reoriented and canonicalized") {
  const Instance inst = parse_instance(kTiny);
  const auto a = inst.node("a"), c = inst.node("c");
  CHECK(inst.route(c, a)->path == std::vector<NodeIndex>{a, inst.node("b"), c});
  CHECK(inst.oriented_route(c, a).front() == c);
  CHECK(inst.routing_total());
}

TEST_CASE("serialization round trip") {
  for (const char* name : {"fig1", "shared_edge", "triangle", "k2", "three_cycle", "infeasible"}) {
    const Instance inst = fixture(name);
    const std::string text = serialize_instance(inst);
    const Instance again = parse_instance(text);
    CHECK(again == inst);
    CHECK(serialize_instance(again) == text);
  }
}

TEST_CASE("validation errors") {
  CHECK(code_of("{") == ErrorCode::kSyntax);
  CHECK(code_of(R"({"nodes": []})") == ErrorCode::kSyntax);
  const std::string base = R"("peers": ["a","b"], "overlay_edges": [], "routes": [])";
  CHECK(message_of(R"({"nodes":["a","a"],"edges":[],)" + base + "}").find("duplicate") != std::string::npos);
  CHECK(message_of(R"({"nodes":["a","b"],"edges":[["a","a"]],)" + base + "}").find("self-loop") != std::string::npos);
  CHECK(message_of(R"({"nodes":["a","b"],"edges":[["a","b"],["b","a"]],)" + base + "}").find("parallel") != std::string::npos);
  CHECK(message_of(R"({"nodes":["a","b","c"],"edges":[["a","b"]],)" + base + "}") ==
        "underlying graph disconnected");
  CHECK(code_of(R"({"nodes":["a","b"],"edges":[["a","b"]],"peers":["a"],"overlay_edges":[],"routes":[]})") ==
        ErrorCode::kValidation);
}

TEST_CASE("route must be vertex-simple") {
  const std::string doc = R"({
    "nodes": ["S","T","U1","U4","M1"],
    "edges": [["S","U1"],["U1","M1"],["M1","U4"],["U4","T"]],
    "peers": ["U1","U4","S","T"],
    "overlay_edges": [["U1","U4"]],
    "routes": [{"pair": ["U1","U4"], "path": ["U1","M1","M1","U4"]}]})";
  CHECK(message_of(doc).rfind("route not vertex-simple", 0) == 0);
  CHECK(code_of(doc) == ErrorCode::kValidation);
}

TEST_CASE("overlay edge without route is rejected") {
  const std::string doc = R"({"nodes":["a","b"],"edges":[["a","b"]],"peers":["a","b"],
    "overlay_edges":[["a","b"]],"routes":[]})";
  CHECK(message_of(doc).find("has no route") != std::string::npos);
}

TEST_CASE("route image on fig1") {
  const Instance inst = fixture("fig1");
  OverlayPath p{{inst.node("S"), inst.node("U1"), inst.node("U4"), inst.node("T")}};
  const EdgeMultiset img = route_image(inst, p);
  std::set<std::string> labels;
  for (auto e : img.support()) labels.insert(inst.edge_label(e));
  CHECK(labels == std::set<std::string>{"(S,U1)", "(M1,U1)", "(M1,M2)", "(M2,U2)", "(U2,U3)",
                                         "(U3,U4)", "(T,U4)"});
  CHECK(img.all_unit());
  CHECK(is_simple_concatenation(inst, p));
  CHECK(concatenated_walk(inst, p).size() == 8);
}

TEST_CASE("single overlay edge image") {
  const Instance inst = fixture("k2");
  OverlayPath p{{inst.node("a"), inst.node("b")}};
  CHECK(route_image(inst, p).counts() == std::map<EdgeIndex, unsigned>{{0, 1}});
  CHECK(is_simple_concatenation(inst, p));
}

TEST_CASE("shared edge multiplicity") {
  const Instance inst = fixture("shared_edge");
  OverlayPath p{{inst.node("s"), inst.node("x"), inst.node("t")}};
  const auto ab = *inst.find_edge(inst.node("a"), inst.node("b"));
  CHECK(route_image(inst, p).count(ab) == 2);
  CHECK_FALSE(route_image(inst, p).all_unit());
  CHECK_FALSE(is_simple_concatenation(inst, p));
}

TEST_CASE("path argument checks") {
  const Instance inst = fixture("fig1");
  CHECK_THROWS_AS(route_image(inst, OverlayPath{{inst.node("S")}}), Error);
  CHECK_THROWS_AS(route_image(inst, OverlayPath{{inst.node("S"), inst.node("T")}}), Error);
  CHECK_THROWS_AS(require_peer_pair(inst, inst.node("S"), inst.node("S")), Error);
  CHECK_THROWS_AS(require_peer_pair(inst, inst.node("S"), inst.node("M2")), Error);
}

TEST_CASE("path enumeration") {
  const Instance inst = fixture("fig1");
  const auto [s, t] = testing::nodes(inst, "S", "T");
  const auto paths = enumerate_simple_paths(inst, s, t);
  REQUIRE(paths.size() == 3);
  CHECK(std::is_sorted(paths.begin(), paths.end()));
  CHECK(format_path(inst, paths[0]) == "S->D1->D4->T");
  CHECK_THROWS_AS(enumerate_simple_paths(inst, s, t, 2), Error);
}

TEST_CASE("image invariants on random instances") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 30; ++round) {
    const Instance inst = testing::random_partial(rng, 7, 4, 0.5, 0.7);
    const auto peers = inst.peers();
    for (const auto& p : enumerate_simple_paths(inst, peers[0], peers[1])) {
      const EdgeMultiset img = route_image(inst, p);
      std::set<EdgeIndex> expected;
      for (std::size_t i = 0; i + 1 < p.peers.size(); ++i) {
        for (auto e : testing::route_edges(inst, p.peers[i], p.peers[i + 1])) expected.insert(e);
      }
      const auto support = img.support();
      CHECK(std::set<EdgeIndex>(support.begin(), support.end()) == expected);
      if (is_simple_concatenation(inst, p)) CHECK(img.all_unit());
    }
    for (std::size_t e = 0; e < inst.overlay_edges().size(); ++e) {
      const auto pair = inst.overlay_edges()[e];
      CHECK(route_image(inst, OverlayPath{{pair.lo, pair.hi}}).all_unit());
    }
  }
}

TEST_CASE("simplex on a textbook packing LP") {
  // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3  ->  x = 3, y = 1, value 11
  std::vector<std::vector<Rational>> a{{1, 1}, {1, 3}, {1, 0}};
  auto sol = solve_packing_lp<Rational>(a, {4, 6, 3}, {3, 2});
  REQUIRE(sol);
  CHECK(sol->objective == 11);
  CHECK(sol->primal == std::vector<Rational>{3, 1});
  Rational dual_obj = 4 * sol->dual[0] + 6 * sol->dual[1] + 3 * sol->dual[2];
  CHECK(dual_obj == 11);
  CHECK_FALSE(solve_packing_lp<Rational>({{-1}}, {1}, {1}));
}
