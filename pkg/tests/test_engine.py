from __future__ import annotations

from random import Random

import pytest

from nonrep import FlagLabeledGraph
from nonrep.engine import (
    LabelSwitchDigraph,
    cyclic_edges,
    no_reversal_view,
    reachable_edges,
    shortest_nonrepetitive_path,
)
from oracles import (
    oracle_cyclic_edges,
    oracle_reachable,
    oracle_shortest_length,
    random_flag_graph,
)


def _reach_set(edges):
    return {(e.edge_id, e.tail, e.head, e.far_label) for e in edges}


def test_triangle_distinct_labels_all_cyclic():
    g = FlagLabeledGraph(True, [("a", "b", "L1"), ("b", "c", "L2"), ("c", "a", "L3")])
    assert cyclic_edges(g) == {0, 1, 2}


def test_triangle_with_repeat_has_no_cycles():
    g = FlagLabeledGraph(True, [("a", "b", "L1"), ("b", "c", "L1"), ("c", "a", "L2")])
    assert cyclic_edges(g) == set()


def test_single_edge_acyclic():
    g = FlagLabeledGraph(True, [("a", "b", "L1")])
    assert cyclic_edges(g) == set()


def test_reach_follows_label_switches():
    g = FlagLabeledGraph(True, [("a", "b", "1"), ("b", "c", "2")])
    assert {e.edge_id for e in reachable_edges(g, "a", "1")} == {0, 1}


def test_reach_blocked_by_repetition():
    g = FlagLabeledGraph(True, [("a", "b", "1"), ("b", "c", "1")])
    assert {e.edge_id for e in reachable_edges(g, "a", "1")} == {0}


def test_reach_missing_start_flag_is_empty():
    g = FlagLabeledGraph(True, [("a", "b", "1")])
    assert reachable_edges(g, "a", "9") == []
    assert reachable_edges(g, "b", "1") == []


def test_reach_reports_far_labels():
    g = FlagLabeledGraph(True, [("a", "b", "1", "7")])
    (hit,) = reachable_edges(g, "a", "1")
    assert (hit.tail, hit.head, hit.far_label) == ("a", "b", "7")


def test_shortest_straight_line():
    g = FlagLabeledGraph(True, [("a", "b", "1"), ("b", "c", "2")])
    path = shortest_nonrepetitive_path(g, "a", "c")
    assert [(e.tail, e.head) for e in path] == [("a", "b"), ("b", "c")]


def test_shortest_takes_detour_around_repetition():
    g = FlagLabeledGraph(
        True, [("a", "b", "1"), ("b", "c", "1"), ("a", "d", "1"), ("d", "c", "2")]
    )
    path = shortest_nonrepetitive_path(g, "a", "c")
    assert [(e.tail, e.head) for e in path] == [("a", "d"), ("d", "c")]
    assert len(path) == 2


def test_shortest_same_vertex_is_empty():
    g = FlagLabeledGraph(True, [("a", "b", "1")])
    assert shortest_nonrepetitive_path(g, "a", "a") == []


def test_shortest_absent():
    g = FlagLabeledGraph(True, [("a", "b", "1"), ("c", "a", "1")])
    assert shortest_nonrepetitive_path(g, "b", "c") is None


def test_engine_rejects_self_loops():
    g = FlagLabeledGraph(False, [("a", "a", "x")])
    with pytest.raises(ValueError):
        LabelSwitchDigraph(g)


def test_no_reversal_view_single_edge():
    g = FlagLabeledGraph(False, [("a", "b", "x")])
    assert cyclic_edges(no_reversal_view(g)) == set()


def test_no_reversal_view_triangle():
    g = FlagLabeledGraph(False, [("a", "b", "x"), ("b", "c", "x"), ("c", "a", "x")])
    assert cyclic_edges(no_reversal_view(g)) == {0, 1, 2}


def test_no_reversal_view_requires_undirected():
    g = FlagLabeledGraph(True, [("a", "b", "x")])
    with pytest.raises(ValueError):
        no_reversal_view(g)


def _all_start_flags(g):
    seen = set()
    for vid in range(g.num_vertices):
        for lid in g.vertex_label_ids(vid):
            seen.add((g.vertex_name(vid), g.label_name(lid)))
    return sorted(seen)


@pytest.mark.parametrize("flag_labeled", [False, True])
def test_random_corpus_matches_state_oracle(flag_labeled):
    rng = Random(20240 + flag_labeled)
    for _ in range(150):
        g = random_flag_graph(rng, flag_labeled=flag_labeled)
        expansion = LabelSwitchDigraph(g)
        dense = LabelSwitchDigraph(g, dense=True)
        expected_cyclic = oracle_cyclic_edges(g)
        assert expansion.cycle_edge_ids() == expected_cyclic
        assert dense.cycle_edge_ids() == expected_cyclic
        for vertex, label in _all_start_flags(g):
            got = _reach_set(expansion.reachable_from(vertex, label).edges)
            assert got == oracle_reachable(g, vertex, label)
            assert got == _reach_set(dense.reachable_from(vertex, label).edges)


def test_random_corpus_shortest_lengths():
    rng = Random(77)
    for _ in range(120):
        g = random_flag_graph(rng)
        expansion = LabelSwitchDigraph(g)
        for s in range(g.num_vertices):
            for t in range(g.num_vertices):
                src, dst = g.vertex_name(s), g.vertex_name(t)
                path = expansion.shortest_path(src, dst)
                want = oracle_shortest_length(g, src, dst)
                if want is None:
                    assert path is None
                else:
                    assert path is not None and len(path) == want


def test_reach_walk_witnesses_are_nonrepetitive():
    rng = Random(5150)
    for _ in range(60):
        g = random_flag_graph(rng, flag_labeled=True)
        expansion = LabelSwitchDigraph(g)
        for vertex, label in _all_start_flags(g):
            reach = expansion.reachable_from(vertex, label)
            for hit in reach.edges:
                walk = reach.walk_to(hit)
                assert walk[-1] == hit
                assert walk[0].tail == vertex
                current = vertex
                prev_far = None
                for step in walk:
                    assert step.tail == current
                    u, v = g.endpoints(step.edge_id)
                    near = (
                        g.edge_labels(step.edge_id)[0]
                        if step.tail == u
                        else g.edge_labels(step.edge_id)[1]
                    )
                    if prev_far is None:
                        assert near == label
                    else:
                        assert near != prev_far
                    prev_far = step.far_label
                    current = step.head


def test_size_linearity_on_corpus():
    rng = Random(13)
    for _ in range(120):
        g = random_flag_graph(rng, max_vertices=10, max_labels=4, flag_labeled=True)
        expansion = LabelSwitchDigraph(g)
        label_total = sum(
            len(g.vertex_label_ids(v)) for v in range(g.num_vertices)
        )
        n, m = g.num_vertices, g.num_edges
        assert expansion.num_nodes <= 4 * label_total + 6 * n
        assert expansion.num_arcs <= 6 * label_total + 4 * n + 2 * m


def test_cyclic_edges_are_self_reachable():
    # Every traversal on a closed walk must show up in the reach set started
    # from its own tail flag (the closed walk begins with that edge).
    rng = Random(99)
    for _ in range(60):
        g = random_flag_graph(rng)
        expansion = LabelSwitchDigraph(g)
        for hit in expansion.cycle_directions():
            u, v = g.endpoints(hit.edge_id)
            near = (
                g.edge_labels(hit.edge_id)[0]
                if hit.tail == u
                else g.edge_labels(hit.edge_id)[1]
            )
            reach = expansion.reachable_from(hit.tail, near)
            assert (hit.edge_id, hit.tail, hit.head, hit.far_label) in _reach_set(
                reach.edges
            )


def test_no_reversal_random_matches_oracle():
    rng = Random(31337)
    for _ in range(80):
        g = random_flag_graph(rng, directed=False)
        view = no_reversal_view(g)
        assert cyclic_edges(view) == oracle_cyclic_edges(view)
