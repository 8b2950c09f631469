#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles/dense.hpp"
#include "oracles/generators.hpp"
#include "slp/baselines.hpp"
#include "slp/bench.hpp"

using namespace slp;
using slp::testing::Rng;

TEST_CASE("fully labeled input comes back unchanged") {
  const auto g = build_graph(slp::testing::unit_chain(3));
  const auto r = lp_solve(g, SamplingSet({{0, 1.0}, {1, 5.0}, {2, -2.0}}));
  CHECK(r.converged);
  CHECK(r.signal == NodeSignal(std::vector<double>{1.0, 5.0, -2.0}));
}

TEST_CASE("harmonic interpolation on unit chains") {
  const auto g3 = build_graph(slp::testing::unit_chain(3));
  CHECK(lp_solve(g3, SamplingSet({{0, 1.0}, {2, 0.0}})).signal[1] == doctest::Approx(0.5));

  const auto g11 = build_graph(slp::testing::unit_chain(11));
  const auto r = lp_solve(g11, SamplingSet({{0, 1.0}, {10, 0.0}}));
  CHECK(r.converged);
  for (std::size_t i = 0; i <= 10; ++i) CHECK(std::abs(r.signal[i] - (1.0 - i / 10.0)) <= 1e-8);
}

TEST_CASE("agrees with the dense Laplacian solve and respects the maximum principle") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = slp::testing::uniform_index(rng, 3, 30);
    const auto edges = slp::testing::random_connected(rng, n, 0.2);
    const auto g = build_graph(edges);
    const auto labels = slp::testing::random_labels(rng, n, 3 < n ? 3 : n);
    const SamplingSet s(labels);
    const auto r = lp_solve(g, s);
    REQUIRE(r.converged);
    const auto exact = oracle::dense_harmonic(n, g.edge_list(), labels);
    double lo = labels[0].value, hi = labels[0].value;
    for (const auto& l : labels) {
      lo = std::min(lo, l.value);
      hi = std::max(hi, l.value);
    }
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(r.signal[i] - exact[i]) <= 1e-9);
      CHECK(r.signal[i] >= lo);
      CHECK(r.signal[i] <= hi);
      if (s.contains(i)) continue;
      double avg = 0.0;
      for (const auto& inc : g.incidences(i)) avg += g.edge(inc.edge).weight * r.signal[inc.neighbor];
      CHECK(std::abs(avg / weighted_degree(g, i) - r.signal[i]) <= 1e-11);
    }
  }
}

TEST_CASE("iteration cap is flagged") {
  const auto g = build_graph(slp::testing::unit_chain(50));
  LpConfig cfg;
  cfg.max_iters = 3;
  const auto r = lp_solve(g, SamplingSet({{0, 1.0}, {49, 0.0}}), cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
  cfg.max_iters = 0;
  CHECK_THROWS_AS((void)lp_solve(g, SamplingSet({{0, 1.0}}), cfg), std::invalid_argument);
}

TEST_CASE("chain: SLP recovers the step, LP smooths it") {
  const auto chain = make_chain({10});
  SolverConfig cfg;
  cfg.max_iters = 100000;
  const auto slp_run = solve(chain.graph, chain.samples, cfg);
  const auto lp = lp_solve(chain.graph, chain.samples);
  const auto cmp = compare(chain.graph, chain.samples, slp_run.iterate, lp.signal, chain.truth);
  CHECK(cmp.slp.sup_error <= 1e-4);
  CHECK(cmp.lp.sup_error > cmp.slp.sup_error);
  CHECK(cmp.slp.tv == doctest::Approx(1.0 / 9.0));
  CHECK(cmp.lp.tv > cmp.slp.tv);
}

TEST_CASE("constant truth with one label") {
  Rng rng(6);
  const auto g = build_graph(slp::testing::random_connected(rng, 10, 0.3));
  const SamplingSet s({{3, 0.25}});
  SolverConfig cfg;
  cfg.max_iters = 20000;
  const auto slp_run = solve(g, s, cfg);
  const auto lp = lp_solve(g, s);
  const auto cmp = compare(g, s, slp_run.iterate, lp.signal, NodeSignal(10, 0.25));
  CHECK(cmp.slp.sup_error <= 1e-12);
  CHECK(cmp.lp.sup_error <= 1e-11);
  CHECK(cmp.lp.mean_square_error <= 1e-22);
}

TEST_CASE("two clusters joined by a weak bridge") {
  const std::size_t size = 5;
  const auto edges = slp::testing::two_cluster_bridge(size, 0.01);
  const auto g = build_graph(edges);
  const std::vector<Label> labels{{0, 1.0}, {2 * size - 1, 0.0}};
  const SamplingSet s(labels);
  NodeSignal truth(2 * size);
  for (std::size_t i = 0; i < size; ++i) truth[i] = 1.0;

  SolverConfig cfg;
  cfg.max_iters = 20000;
  const auto slp_run = solve(g, s, cfg);
  CHECK(sup_distance(slp_run.iterate, truth) <= 1e-9);

  const auto lp = lp_solve(g, s);
  const auto exact = oracle::dense_harmonic(2 * size, g.edge_list(), labels);
  CHECK(std::abs(lp.signal[size - 1] - exact[size - 1]) <= 1e-9);
  CHECK(std::abs(lp.signal[size] - exact[size]) <= 1e-9);
  const auto cmp = compare(g, s, slp_run.iterate, lp.signal, truth);
  CHECK(cmp.lp.sup_error > cmp.slp.sup_error);
}
