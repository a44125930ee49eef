"""Structural classification, gauges, and numeric symmetry checks."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chiralwalk import (Edge, GaugePhase, WalkHamiltonian, apply_gauge,
                        bipartite_negation_gauge, classify, cycle_flux,
                        default_time_samples, eq_parity_residual, is_bipartite,
                        parse_graph, propagate, pts_numeric,
                        skeleton, to_dense, tree_phase_removal)

PI = math.pi


def uniform_triangle(alpha):
    return WalkHamiltonian(3, (Edge(0, 1, 1.0, alpha), Edge(1, 2, 1.0, alpha),
                               Edge(2, 0, 1.0, alpha)))


def random_forest_edges(rng, n):
    return [(int(rng.integers(0, v)), v) for v in range(1, n)
            if rng.random() < 0.9]


def assert_closed_odd_walk(skel, walk):
    assert walk[0] == walk[-1]
    assert (len(walk) - 1) % 2 == 1
    edge_set = set(skel.edges)
    for u, v in zip(walk, walk[1:]):
        if u == v:
            assert u in skel.self_nodes
        else:
            assert (min(u, v), max(u, v)) in edge_set


# --- classification ---------------------------------------------------------

def test_classify_chain_is_symmetric_and_phase_free():
    graph = parse_graph("nodes 4\nedge 0 1 1 0.9\nedge 1 2 1 -0.4\nedge 2 3 1 2.0\n")
    report = classify(graph)
    assert report.structural_class == "tree"
    assert report.structural_pts is True
    assert report.phase_dependent is False
    assert report.phase_removal_gauge is not None
    assert report.numeric_pts_residual <= 1e-9


def test_classify_even_cycle_is_symmetric_but_phase_dependent():
    graph = parse_graph("nodes 4\nedge 0 1 1 0.3\nedge 1 2 1 0.1\n"
                        "edge 2 3 1 -0.7\nedge 3 0 1 0.2\n")
    report = classify(graph)
    assert report.structural_class == "bipartite-with-cycles"
    assert report.structural_pts is True
    assert report.phase_dependent is True
    assert report.negation_gauge is not None
    assert report.numeric_pts_residual <= 1e-9


def test_classify_triangle_breaks_symmetry():
    report = classify(uniform_triangle(PI / 6))
    assert report.structural_class == "non-bipartite"
    assert report.structural_pts is False
    assert report.phase_dependent is True
    assert report.odd_cycle == (0, 1, 2, 0)
    assert report.numeric_pts_residual > 1e-3


def test_classify_zero_flux_triangle_distinguishes_structure_from_instance():
    # odd-cycle geometry, but this instance's flux is zero: the structural
    # verdict stays No while the sampled numerics report symmetry
    report = classify(uniform_triangle(0.0))
    assert report.structural_class == "non-bipartite"
    assert report.structural_pts is False
    assert report.pts_symmetric_at_samples is True
    assert report.numeric_pts_residual <= 1e-9


def test_classify_tree_with_self_edges():
    graph = parse_graph("nodes 3\nedge 0 1 1 0.4\nedge 1 2 1 0.8\nself 0 1.5\n")
    report = classify(graph)
    assert report.structural_class == "tree-with-self-edges"
    assert report.is_forest is True
    assert report.is_bipartite is False          # the self-edge is an odd cycle
    assert report.structural_pts is True          # phases still gauge away
    assert report.phase_dependent is False
    assert report.numeric_pts_residual <= 1e-9


def test_report_text_and_csv_round_trip_keys():
    report = classify(parse_graph("nodes 3\nedge a b 1 0.1\nedge b c 1 0.2\n"))
    text = report.to_text()
    assert "structural_class=tree" in text
    assert "phase_dependent=No" in text
    assert "labels=a:0;b:1;c:2" in text
    header = report.csv_header().split(",")
    row = report.to_csv_row().split(",")
    assert len(header) == len(row)


# --- bipartiteness ----------------------------------------------------------

def test_path_is_bipartite_with_alternating_coloring():
    skel = skeleton(parse_graph("nodes 4\nedge 0 1 1 0\nedge 1 2 1 0\nedge 2 3 1 0\n"))
    check = is_bipartite(skel)
    assert check.bipartite
    assert check.coloring == (0, 1, 0, 1)


def test_triangle_witness_is_the_triangle():
    check = is_bipartite(skeleton(uniform_triangle(0.0)))
    assert not check.bipartite
    assert check.odd_cycle == (0, 1, 2, 0)
    assert_closed_odd_walk(skeleton(uniform_triangle(0.0)), check.odd_cycle)


def test_self_edge_is_a_unit_odd_cycle():
    graph = parse_graph("nodes 2\nedge 0 1 1 0\nself 1 3.0\n")
    check = is_bipartite(skeleton(graph))
    assert not check.bipartite
    assert check.odd_cycle == (1, 1)


def test_odd_cycle_witnesses_are_valid_walks():
    rng = np.random.default_rng(21)
    for _ in range(40):
        n = int(rng.integers(3, 10))
        pairs = {(int(rng.integers(0, v)), v) for v in range(1, n)}
        for _ in range(int(rng.integers(1, 4))):
            i = int(rng.integers(0, n - 1))
            j = int(rng.integers(i + 1, n))
            pairs.add((i, j))
        edges = tuple(Edge(i, j, 1.0, 0.0) for i, j in sorted(pairs))
        skel = skeleton(WalkHamiltonian(n, edges))
        check = is_bipartite(skel)
        if not check.bipartite:
            assert_closed_odd_walk(skel, check.odd_cycle)
        else:
            for i, j in skel.edges:
                assert check.coloring[i] != check.coloring[j]


# --- gauges -----------------------------------------------------------------

def test_single_edge_phase_removal():
    graph = parse_graph("nodes 2\nedge 0 1 1.0 0.7\n")
    gauge = tree_phase_removal(graph)
    assert gauge.phases == (0.0, 0.7)
    assert abs(apply_gauge(graph, gauge).edges[0].alpha) <= 1e-15


def test_star_phase_removal_makes_hamiltonian_real():
    graph = parse_graph("nodes 4\nedge 0 1 1 0.1\nedge 0 2 1 0.2\nedge 0 3 1 0.3\n")
    gauged = apply_gauge(graph, tree_phase_removal(graph))
    assert max(abs(e.alpha) for e in gauged.edges) <= 1e-12
    assert np.abs(to_dense(gauged).imag).max() <= 1e-12


def test_path_phase_removal_matches_propagation_rule():
    graph = parse_graph("nodes 3\nedge 0 1 1 0.78539816339744828\n"
                        "edge 1 2 1 -0.78539816339744828\n")
    gauge = tree_phase_removal(graph)
    assert np.allclose(gauge.phases, (0.0, PI / 4, 0.0), atol=1e-15)
    gauged = apply_gauge(graph, gauge)
    assert max(abs(e.alpha) for e in gauged.edges) <= 1e-12


def test_phase_removal_round_trip_on_random_forests():
    rng = np.random.default_rng(8)
    for _ in range(50):
        n = int(rng.integers(2, 13))
        edges = tuple(Edge(i, j, float(rng.uniform(0.5, 1.5)),
                           float(rng.uniform(-PI, PI)))
                      for i, j in random_forest_edges(rng, n))
        graph = WalkHamiltonian(n, edges)
        gauged = apply_gauge(graph, tree_phase_removal(graph))
        worst = max((abs(e.alpha) for e in gauged.edges), default=0.0)
        assert worst <= 1e-12


def test_phase_removal_rejects_cycles():
    with pytest.raises(ValueError, match="not a forest"):
        tree_phase_removal(uniform_triangle(0.1))


def test_two_site_negation_gauge():
    graph = parse_graph("nodes 2\nedge 0 1 1.0 0.4\n")
    gauge = bipartite_negation_gauge(graph)
    assert gauge.phases == (0.0, PI)
    flipped = to_dense(apply_gauge(graph, gauge))
    assert np.abs(flipped + to_dense(graph)).max() <= 1e-12


def test_even_cycle_negation_gauge_with_uniform_diagonal():
    graph = parse_graph("nodes 4\nedge 0 1 1 0.3\nedge 1 2 1 0.1\n"
                        "edge 2 3 1 -0.7\nedge 3 0 1 0.2\n"
                        "self 0 2.0\nself 1 2.0\nself 2 2.0\nself 3 2.0\n")
    gauge = bipartite_negation_gauge(graph)
    diag = np.diag(graph.diagonal())
    original = to_dense(graph) - diag
    flipped = to_dense(apply_gauge(graph, gauge)) - diag
    assert np.abs(flipped + original).max() <= 1e-12


def test_negation_gauge_rejections():
    with pytest.raises(ValueError, match="not bipartite"):
        bipartite_negation_gauge(uniform_triangle(0.0))
    with pytest.raises(ValueError, match="equal"):
        bipartite_negation_gauge(
            parse_graph("nodes 2\nedge 0 1 1 0\nself 0 1.0\n"))


def test_negation_gauge_implies_time_reversal_pairing():
    graph = parse_graph("nodes 4\nedge 0 1 1 0.9\nedge 1 2 1 0.4\n"
                        "edge 2 3 1 1.3\nedge 3 0 1 -0.2\n")
    for t in (0.5, 1.9, 3.3):
        forward = np.abs(propagate(graph, t).matrix)
        backward = np.abs(propagate(graph, -t).matrix)
        assert np.abs(forward - backward).max() <= 1e-12


def test_apply_gauge_identity_and_mismatch():
    graph = uniform_triangle(0.5)
    assert apply_gauge(graph, GaugePhase((0.0, 0.0, 0.0))) == graph
    with pytest.raises(ValueError, match="gauge has"):
        apply_gauge(graph, GaugePhase((0.0, 0.0)))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=3, max_size=3),
       st.lists(st.floats(-10, 10), min_size=3, max_size=3))
def test_gauge_composition(lam1, lam2):
    graph = uniform_triangle(0.3)
    one_then_two = apply_gauge(apply_gauge(graph, GaugePhase(tuple(lam1))),
                               GaugePhase(tuple(lam2)))
    combined = apply_gauge(graph, GaugePhase(tuple(lam1)) + GaugePhase(tuple(lam2)))
    for left, right in zip(one_then_two.edges, combined.edges):
        assert abs(left.alpha - right.alpha) <= 1e-12


def test_gauge_preserves_transition_probabilities():
    rng = np.random.default_rng(17)
    for _ in range(30):
        n = int(rng.integers(2, 9))
        edges = tuple(Edge(i, j, float(rng.uniform(0.5, 1.5)),
                           float(rng.uniform(-PI, PI)))
                      for i in range(n) for j in range(i + 1, n)
                      if rng.random() < 0.5)
        graph = WalkHamiltonian(n, edges)
        gauge = GaugePhase(tuple(float(x) for x in rng.uniform(-PI, PI, n)))
        t = float(rng.uniform(-5, 5))
        p = np.abs(propagate(graph, t).matrix) ** 2
        p_gauged = np.abs(propagate(apply_gauge(graph, gauge), t).matrix) ** 2
        assert np.abs(p - p_gauged).max() <= 1e-12


# --- numeric symmetry -------------------------------------------------------

def test_tree_pts_residual_is_tiny():
    rng = np.random.default_rng(2)
    graph = WalkHamiltonian(6, tuple(
        Edge(i, j, float(rng.uniform(0.5, 1.5)), float(rng.uniform(-PI, PI)))
        for i, j in random_forest_edges(rng, 6)))
    check = pts_numeric(graph)
    assert check.residual <= 1e-9
    assert check.symmetric


def test_chiral_triangle_fails_pts_on_coarse_grid():
    graph = uniform_triangle(PI / 6)  # total flux pi/2
    times = [2 * PI * k / 64 for k in range(1, 65)]
    check = pts_numeric(graph, times)
    assert check.residual > 0.1
    assert not check.symmetric


def test_real_triangle_passes_pts():
    check = pts_numeric(uniform_triangle(0.0))
    assert check.residual <= 1e-9


def test_default_time_samples_scale_with_spectrum():
    samples = default_time_samples(uniform_triangle(0.0))
    assert len(samples) == 64
    assert math.isclose(samples[-1], 2 * PI / 2.0)  # spectral norm is 2


# --- parity-split residual --------------------------------------------------

def test_parity_residual_vanishes_on_bipartite_graphs():
    graph = parse_graph("nodes 4\nedge 0 1 1 0.6\nedge 1 2 1 -0.2\n"
                        "edge 2 3 1 1.0\nedge 3 0 1 0.5\n")
    for t in (0.4, 1.1, 2.7):
        for i in range(4):
            for j in range(i + 1, 4):
                assert abs(eq_parity_residual(graph, t, i, j)) <= 1e-12


def test_parity_residual_zero_at_zero_time():
    assert abs(eq_parity_residual(uniform_triangle(0.8), 0.0, 0, 2)) <= 1e-14


def test_parity_residual_nonzero_for_chiral_triangle():
    assert abs(eq_parity_residual(uniform_triangle(PI / 2), 0.9, 0, 2)) > 1e-3


def test_parity_residual_is_half_the_probability_skew():
    rng = np.random.default_rng(23)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        edges = tuple(Edge(i, j, float(rng.uniform(0.5, 1.5)),
                           float(rng.uniform(-PI, PI)))
                      for i in range(n) for j in range(i + 1, n)
                      if rng.random() < 0.6)
        if not edges:
            continue
        graph = WalkHamiltonian(n, edges)
        t = float(rng.uniform(0.2, 4.0))
        p = np.abs(propagate(graph, t).matrix) ** 2
        for i in range(n):
            for j in range(i + 1, n):
                residual = eq_parity_residual(graph, t, i, j)
                assert abs(2 * abs(residual) - abs(p[i, j] - p[j, i])) <= 1e-12


# --- cycle flux -------------------------------------------------------------

def test_triangle_flux_is_three_alpha():
    assert abs(cycle_flux(uniform_triangle(0.2), (0, 1, 2, 0)) - 0.6) <= 1e-12
    # 3 * 2.0 = 6.0 wraps into (-pi, pi]
    assert abs(cycle_flux(uniform_triangle(2.0), (0, 1, 2, 0))
               - (6.0 - 2 * PI)) <= 1e-12


def test_four_cycle_flux_cancels():
    graph = parse_graph("nodes 4\nedge 0 1 1 0.1\nedge 1 2 1 0.2\n"
                        "edge 2 3 1 -0.3\nedge 3 0 1 0.0\n")
    assert abs(cycle_flux(graph, (0, 1, 2, 3, 0))) <= 1e-12


def test_flux_is_gauge_invariant():
    rng = np.random.default_rng(4)
    graph = uniform_triangle(0.77)
    for _ in range(20):
        gauge = GaugePhase(tuple(float(x) for x in rng.uniform(-PI, PI, 3)))
        flux = cycle_flux(apply_gauge(graph, gauge), (0, 1, 2, 0))
        base = cycle_flux(graph, (0, 1, 2, 0))
        assert abs(math.remainder(flux - base, 2 * PI)) <= 1e-12


def test_flux_orientation_flips_sign():
    graph = uniform_triangle(0.2)
    assert abs(cycle_flux(graph, (0, 2, 1, 0)) + 0.6) <= 1e-12


def test_flux_errors():
    graph = parse_graph("nodes 3\nedge 0 1 1 0\nedge 1 2 1 0\n")
    with pytest.raises(ValueError, match="missing edge"):
        cycle_flux(graph, (0, 1, 2, 0))
    with pytest.raises(ValueError, match="closed walk"):
        cycle_flux(graph, (0, 1, 2))
