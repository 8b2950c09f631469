import math

import pytest

import slp


def test_chain_of_four_recovers_the_step():
    graph, labels, truth = slp.make_chain(4)
    assert graph.num_nodes == 4
    assert slp.tv_norm(graph, truth) == pytest.approx(1 / 3)

    out = slp.solve(graph, labels, max_iters=100_000)
    assert out["iterations"] == 100_000
    assert out["iterate"] == pytest.approx(truth, abs=1e-12)
    assert out["average"][0] == 1.0
    gap = slp.duality_gap(graph, labels, out["iterate"], out["dual"])
    assert gap is not None and abs(gap) <= 1e-9


def test_graph_from_edges():
    g = slp.Graph([(1, 0, 2.0), (1, 2, 0.5)])
    assert g.num_edges == 2
    assert g.edges[0] == (0, 1, 2.0)
    assert g.degree(1) == 2.5
    assert slp.apply_incidence(g, [1.0, 0.0, 0.0]) == [2.0, 0.0]
    assert slp.apply_incidence_adjoint(g, [1.0, 0.0]) == [2.0, -2.0, 0.0]


def test_invalid_input_raises():
    with pytest.raises(slp.GraphError):
        slp.Graph([(0, 1, 1.0), (2, 3, 1.0)])
    with pytest.raises(ValueError):
        slp.Graph([(0, 0, 1.0)])
    g = slp.Graph([(0, 1, 1.0)])
    with pytest.raises(slp.LabelError):
        slp.solve(g, [(5, 1.0)])
    with pytest.raises(slp.LabelError):
        slp.solve(g, [])


def test_message_passing_matches_solve():
    graph, labels, _ = slp.make_chain(12)
    mp = slp.message_passing(graph, labels, rounds=50)
    central = slp.solve(graph, labels, max_iters=50)
    assert mp["iterate"] == central["iterate"]
    assert mp["average"] == central["average"]
    assert mp["messages"] == 50 * 2 * graph.num_edges


def test_trace_and_baseline():
    graph, labels, truth = slp.make_chain(10)
    out = slp.solve(graph, labels, max_iters=100, record_trace=True, trace_stride=25)
    assert [r["k"] for r in out["trace"]] == [25, 50, 75, 100]
    assert out["trace"][0]["bound"] is None

    lp, converged = slp.lp_solve(graph, labels)
    assert converged
    assert lp[0] == 1.0 and lp[-1] == 0.0
    assert all(0.0 <= v <= 1.0 for v in lp)


def test_kappa_and_rate_report():
    g = slp.Graph([(0, 1, 1.0)])
    assert slp.kappa_estimate(g) == pytest.approx(math.sqrt(0.5), rel=1e-9)

    report = slp.run_rate_experiment(100, [1, 2, 5, 10])
    assert report["bound_violations"] == 0
    assert [p["K"] for p in report["points"]] == [1, 2, 5, 10]
