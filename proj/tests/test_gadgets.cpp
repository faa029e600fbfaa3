#include <doctest.h>

#include "deepconn/error.hpp"
#include "support.hpp"

using namespace deepconn;

namespace {

bool has(const Labels& labels, const std::string& key, const std::string& value) {
  auto it = labels.find(key);
  return it != labels.end() && std::find(it->second.begin(), it->second.end(), value) != it->second.end();
}

std::set<std::string> route_tokens(const Instance& inst, const std::string& a, const std::string& b) {
  std::set<std::string> out;
  const auto path = inst.oriented_route(inst.node(a), inst.node(b));
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    out.insert(edge_token(inst.name(path[i]), inst.name(path[i + 1])));
  }
  return out;
}

NamedGraph path_xyz() {
  return NamedGraph{{"x", "y", "z"}, {{"x", "y"}, {"y", "z"}}};
}

}  // namespace

TEST_CASE("set system basics") {
  const SetSystem s = SetSystem::from_sets(3, {{1, 3}, {}, {2}});
  CHECK(s.elements() == 3);
  CHECK(s.sets() == 3);
  CHECK(s.contains(0, 0));
  CHECK(s.contains(2, 0));
  CHECK_FALSE(s.contains(1, 0));
  CHECK(s.members(0) == std::vector<std::size_t>{0, 2});
  CHECK(s.members(1).empty());
  CHECK_THROWS_AS(SetSystem::from_sets(2, {{3}}), Error);
}

TEST_CASE("encoding: membership matrix") {
  const SetSystem sets = SetSystem::from_sets(2, {{1}, {1, 2}});
  const auto out = encode_set_system(path_xyz(), {{"x", "y"}, {"y", "z"}}, sets);
  const auto xy = route_tokens(out.instance, "x", "y");
  const auto yz = route_tokens(out.instance, "y", "z");
  CHECK(xy.count("v1_a|v1_b"));
  CHECK_FALSE(xy.count("v2_a|v2_b"));
  CHECK(yz.count("v1_a|v1_b"));
  CHECK(yz.count("v2_a|v2_b"));
  CHECK(out.instance.node_count() == encoded_vertex_count(3, sets));
  CHECK(has(out.labels, "E_D", "v1_a|v1_b"));
  CHECK(has(out.labels, "F", "x|y"));
}

TEST_CASE("encoding: empty set gives a plain subdivided connector") {
  const SetSystem sets = SetSystem::from_sets(1, {{1}, {}});
  const auto out = encode_set_system(path_xyz(), {{"x", "y"}, {"y", "z"}}, sets);
  const auto path = out.instance.oriented_route(out.instance.node("y"), out.instance.node("z"));
  REQUIRE(path.size() == 3);
  CHECK(has(out.labels, "subdivision", out.instance.name(path[1])));
}

TEST_CASE("encoding: uncovered element is anchored") {
  const SetSystem sets = SetSystem::from_sets(2, {{1}, {}});
  const auto out = encode_set_system(path_xyz(), {{"x", "y"}, {"y", "z"}}, sets);
  REQUIRE(out.labels.at("E_anchor").size() == 1);
  CHECK(out.labels.at("E_anchor")[0] == "v2_a|x");
}

TEST_CASE("encoding: argument errors") {
  const SetSystem sets = SetSystem::from_sets(1, {{1}, {1}});
  CHECK_THROWS_AS(encode_set_system(path_xyz(), {{"x", "y"}, {"x", "y"}}, sets), Error);
  CHECK_THROWS_AS(encode_set_system(path_xyz(), {{"x", "y"}}, sets), Error);
  NamedGraph clash{{"x", "v1_a"}, {{"x", "v1_a"}}};
  CHECK_THROWS_AS(encode_set_system(clash, {{"x", "v1_a"}}, SetSystem::from_sets(1, {{1}})), Error);
}

TEST_CASE("encoding: every route edge has one owner") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 40; ++round) {
    const std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
    SetSystem sets(m, n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) sets.set(i, j, rng() & 1);
    }
    NamedGraph skeleton;
    std::vector<std::pair<std::string, std::string>> f;
    for (std::size_t i = 0; i <= n; ++i) skeleton.vertices.push_back("p" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) {
      skeleton.edges.emplace_back(skeleton.vertices[i], skeleton.vertices[i + 1]);
      f.push_back(skeleton.edges.back());
    }
    const auto out = encode_set_system(skeleton, f, sets);
    std::map<std::string, int> owners;
    for (const auto& [a, b] : f) {
      for (const auto& tok : route_tokens(out.instance, a, b)) ++owners[tok];
    }
    for (const auto& tok : out.labels.at("E_rho")) CHECK(owners[tok] == 1);
  }
}

TEST_CASE("spddc reduction examples") {
  auto run = [](const SetSystem& sets, std::size_t k) {
    const auto red = build_spddc_reduction(sets, k);
    const auto& inst = red.gadget.instance;
    return spddc_pair(inst, inst.node(red.source), inst.node(red.sink)).value;
  };
  CHECK(run(SetSystem::from_sets(2, {{1}, {2}}), 2) >= 1);
  CHECK(run(SetSystem::from_sets(1, {{1}, {1}}), 2) == 0);
  CHECK(run(SetSystem::from_sets(2, {{1, 2}}), 1) >= 1);
  const auto red = build_spddc_reduction(SetSystem::from_sets(2, {{1}, {2}}), 2);
  CHECK(red.source == "u0");
  CHECK(red.sink == "u2");
  CHECK(has(red.gadget.labels, "layer_v", "v2_1"));
}

TEST_CASE("hamiltonian reduction examples") {
  const Instance path = build_hamiltonian_reduction(NamedGraph{{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}});
  CHECK(path.routing_total());
  CHECK(path.oriented_route(path.node("a"), path.node("c")).size() == 4);
  const std::vector<NodePair> tri{NodePair::of(path.node("a"), path.node("b")),
                                  NodePair::of(path.node("b"), path.node("c")),
                                  NodePair::of(path.node("a"), path.node("c"))};
  CHECK(all_pairs(path.with_overlay(tri), Parameter::kErdc).value == 2);

  const Instance star = build_hamiltonian_reduction(
      NamedGraph{{"c", "l1", "l2", "l3"}, {{"c", "l1"}, {"c", "l2"}, {"c", "l3"}}});
  std::vector<NodePair> all;
  const auto peers = star.peers();
  for (std::size_t i = 0; i < peers.size(); ++i) {
    for (std::size_t j = i + 1; j < peers.size(); ++j) all.push_back({peers[i], peers[j]});
  }
  std::vector<bool> pick(all.size(), false);
  std::fill(pick.end() - 4, pick.end(), true);
  bool found = false;
  do {
    std::vector<NodePair> h;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (pick[i]) h.push_back(all[i]);
    }
    found = found || testing::two_erdc(star, h);
  } while (std::next_permutation(pick.begin(), pick.end()));
  CHECK_FALSE(found);

  const Instance triangle =
      build_hamiltonian_reduction(NamedGraph{{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}});
  std::vector<NodePair> cycle{NodePair::of(triangle.node("a"), triangle.node("b")),
                              NodePair::of(triangle.node("b"), triangle.node("c")),
                              NodePair::of(triangle.node("a"), triangle.node("c"))};
  CHECK(testing::two_erdc(triangle, cycle));
  CHECK_THROWS_AS(build_hamiltonian_reduction(NamedGraph{{"a", "b"}, {{"a", "b"}}}), Error);
}

TEST_CASE("set packing brute force") {
  CHECK(set_packing_brute_force(SetSystem::from_sets(2, {{1}, {2}, {1, 2}}), 2));
  CHECK_FALSE(set_packing_brute_force(SetSystem::from_sets(2, {{1}, {1, 2}}), 2));
  CHECK(set_packing_brute_force(SetSystem::from_sets(2, {{1, 2}}), 1));
}

TEST_CASE("random instances") {
  RandomInstanceOptions opt;
  const Instance a = random_instance(opt);
  const Instance b = random_instance(opt);
  CHECK(serialize_instance(a) == serialize_instance(b));
  CHECK(a.routing_total());
  CHECK(a.peers().size() == 4);
  // Shortest-path policy: every route length equals the BFS distance in G.
  for (const auto& [pair, route] : a.routes()) {
    std::vector<int> dist(a.node_count(), -1);
    std::vector<NodeIndex> queue{pair.lo};
    dist[pair.lo] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (auto w : a.neighbors(queue[head])) {
        if (dist[w] < 0) {
          dist[w] = dist[queue[head]] + 1;
          queue.push_back(w);
        }
      }
    }
    CHECK(static_cast<int>(route.path.size()) - 1 == dist[pair.hi]);
  }
  opt.policy = RoutePolicy::kRandomSimple;
  opt.seed = 9;
  CHECK(random_instance(opt).routing_total());
}
