#include <doctest.h>

#include "oracles/generators.hpp"
#include "slp/message_passing.hpp"
#include "slp/solver.hpp"

using namespace slp;
using slp::testing::Rng;

TEST_CASE("first rounds on two nodes match the centralized iteration") {
  const auto g = build_graph(std::vector<WeightedPair>{{0, 1, 1.0}});
  const SamplingSet s({{0, 1.0}});
  MessagePassingNetwork net(g, s);
  auto st = SolverState::zeros(g);
  const auto p = make_preconditioners(g);
  for (int r = 0; r < 2; ++r) {
    net.step();
    slp_iterate(st, g, p, s);
    CHECK(net.iterate() == st.x_curr);
    CHECK(net.dual() == st.y_curr);
    CHECK(net.average() == st.x_avg);
  }
  CHECK(net.iterate() == NodeSignal(std::vector<double>{1.0, 0.5}));
}

TEST_CASE("message passing is bit-identical to the centralized solver") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = slp::testing::uniform_index(rng, 2, 40);
    const auto g = build_graph(slp::testing::random_connected(rng, n, 0.15));
    const SamplingSet s(slp::testing::random_labels(rng, n, std::min<std::size_t>(n, 3)));
    MessagePassingNetwork net(g, s);
    auto st = SolverState::zeros(g);
    const auto p = make_preconditioners(g);
    for (int r = 0; r < 200; ++r) {
      const auto stats = net.step();
      slp_iterate(st, g, p, s);
      CHECK(stats.messages == 2 * g.num_edges());
    }
    CHECK(net.iterate() == st.x_curr);
    CHECK(net.average() == st.x_avg);
    CHECK(net.dual() == st.y_curr);
    CHECK(net.rounds() == 200);
  }
}

TEST_CASE("units only know their incident edges") {
  Rng rng(9);
  const auto g = build_graph(slp::testing::random_connected(rng, 25, 0.2));
  const SamplingSet s({{0, 1.0}});
  const auto units = make_units(g, s);
  for (const auto& u : units) {
    CHECK(u.ports.size() == g.incidences(u.id).size());
    for (const auto& port : u.ports) {
      const auto& e = g.edge(port.edge);
      CHECK((e.head == u.id || e.tail == u.id));
      CHECK(port.is_head == (e.head == u.id));
      CHECK(port.neighbor == (port.is_head ? e.tail : e.head));
    }
  }
  CHECK(units[0].label == 1.0);
  CHECK_FALSE(units[1].label.has_value());
}

TEST_CASE("influence travels one hop per round") {
  const auto chain = build_graph(slp::testing::unit_chain(100));
  const SamplingSet ends({{0, 1.0}, {99, 0.5}});
  MessagePassingNetwork net(chain, ends);
  for (int r = 0; r < 10; ++r) net.step();
  const auto x = net.iterate();
  for (std::size_t i = 11; i <= 88; ++i) CHECK(x[i] == 0.0);
  // Round 1 only imposes labels, so after K rounds the front sits at hop K - 1.
  CHECK(x[9] != 0.0);
  CHECK(x[10] == 0.0);
  CHECK(locality_violations(chain, ends, x, 10).empty());
  CHECK(locality_violations(chain, ends, net.average(), 10).empty());

  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = slp::testing::uniform_index(rng, 5, 60);
    const auto tree = build_graph(slp::testing::random_tree(rng, n));
    const SamplingSet s(slp::testing::random_labels(rng, n, 2));
    MessagePassingNetwork tnet(tree, s);
    for (std::size_t k = 0; k <= 10; ++k) {
      CHECK(locality_violations(tree, s, tnet.iterate(), k).empty());
      tnet.step();
    }
  }
}

TEST_CASE("before any round only labeled nodes are nonzero") {
  const auto g = build_graph(slp::testing::unit_chain(5));
  const SamplingSet s({{2, 1.0}});
  NodeSignal x(5);
  x[2] = 1.0;
  CHECK(locality_violations(g, s, x, 0).empty());
  x[3] = 0.1;
  CHECK(locality_violations(g, s, x, 0) == std::vector<std::size_t>{3});
}

TEST_CASE("star with a labeled center fills every leaf in one round") {
  const auto star = build_graph(slp::testing::unit_star(6));
  const SamplingSet s({{0, 1.0}});
  MessagePassingNetwork net(star, s);
  net.step();
  net.step();
  CHECK(locality_violations(star, s, net.iterate(), 1).empty());
  for (std::size_t leaf = 1; leaf <= 6; ++leaf) CHECK(net.iterate()[leaf] != 0.0);
}

TEST_CASE("round statistics") {
  const auto g = build_graph(slp::testing::unit_star(3));
  MessagePassingNetwork net(g, SamplingSet({{1, 1.0}}));
  const auto stats = net.step();
  CHECK(stats.round == 1);
  CHECK(stats.messages == 6);
  REQUIRE(stats.node_ops.size() == 4);
  CHECK(stats.node_ops[0] > stats.node_ops[1]);
}
