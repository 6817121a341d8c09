from __future__ import annotations

from random import Random

import pytest

from nonrep.sudoku.board import Board, apply_deduction, parse_board
from nonrep.sudoku.generate import dense_bivalue_fixture, generate, solved_grid
from nonrep.sudoku.rules import (
    RULES,
    bilocation_conflict_rule,
    bilocation_cycle_rule,
    bilocation_repeat_rule,
    build_bilocation_graph,
    build_bivalue_graphs,
    digit_grid_matching,
    group_matching,
    hidden_singles,
    naked_singles,
    box_line,
    rule_deductions,
    solve,
)


def board_with_candidates(cand_map: dict[int, set[int]], default: set[int]) -> Board:
    """Empty board with hand-assigned candidate sets (tests only)."""
    board = Board(3)
    for cell in range(81):
        digits = cand_map.get(cell, default)
        board.cand[cell] = sum(1 << (d - 1) for d in digits)
    return board


# -- local rules -------------------------------------------------------------------


def test_hidden_single_on_nearly_full_row():
    values = [0] * 81
    for c, d in zip(range(8), (1, 2, 3, 4, 5, 6, 8, 9)):
        values[c] = d
    board = Board(3, values)
    ded = [d for d in hidden_singles(board) if d.placements == ((8, 7),)]
    assert ded, "digit 7 must be placed in the last cell of row 1"


def test_naked_single_fires():
    board = board_with_candidates({0: {4}}, default=set(range(1, 10)))
    deds = naked_singles(board)
    assert deds[0].placements == ((0, 4),)


def test_box_line_eliminates_outside_box():
    # all homes of digit 5 in box 1 sit in row 1
    cand_map = {c: {5, 1, 2} for c in (0, 1, 2)}
    default = {1, 2, 3}
    for c in list(range(3, 9)):
        cand_map[c] = {5, 1, 2, 3}  # row 1 outside the box also admits 5
    board = board_with_candidates(cand_map, default)
    deds = [d for d in box_line(board) if d.witness == "box 1->row 1[5]"]
    assert deds
    assert set(deds[0].eliminations) == {(c, 5) for c in range(3, 9)}


def test_matching_digit_contradiction():
    # digit 5 restricted to a single column in two different rows
    cand_map = {}
    default = {1, 2, 3, 4, 6, 7, 8, 9}
    cand_map[0] = {5, 1}  # r1c1
    cand_map[9] = {5, 1}  # r2c1 -> both rows need 5 in column 1
    for c in range(1, 9):
        cand_map[c] = default
    for c in range(10, 18):
        cand_map[c] = default
    board = board_with_candidates(cand_map, default | {5})
    # rows 1 and 2 admit 5 only in column 1: no system of distinct columns
    deds = digit_grid_matching(board)
    assert any(d.contradiction for d in deds)


def test_matching_rules_on_unique_group_completion():
    # row 1 has a unique assignment: cell i takes digit i+1
    cand_map = {c: set(range(1, c + 2)) for c in range(9)}
    board = board_with_candidates(cand_map, set(range(1, 10)))
    deds = group_matching(board)
    row1 = next(d for d in deds if d.witness == "row 1")
    assert set(row1.eliminations) == {
        (c, d) for c in range(9) for d in range(1, c + 1)
    }


def test_matching_rules_quiet_on_permutation_grid():
    # a fully forced digit pattern generates no eliminations
    solved = solved_grid(Board(3))
    trace_board = solved
    assert digit_grid_matching(trace_board) == []
    assert group_matching(trace_board) == []


def test_digit_matching_quiet_on_permutation_pattern():
    # digit 9 admissible exactly on the diagonal: a unique perfect matching
    # with no unmatched edges, hence nothing to eliminate
    cand_map = {i * 9 + i: {9, 1, 2} for i in range(9)}
    board = board_with_candidates(cand_map, set(range(1, 9)))
    assert digit_grid_matching(board) == []


# -- graph builders -----------------------------------------------------------------


def test_bilocation_edges_and_dedup():
    board = parse_board("." * 81)
    # carve digit 5 down to two homes shared by row 1 and box 1
    for c in list(range(2, 9)) + [9, 10, 11, 18, 19, 20]:
        board.eliminate(c, 5)
    bl = build_bilocation_graph(board)
    edges = [
        (bl.graph.endpoints(e), bl.graph.edge_labels(e)[0])
        for e in range(bl.graph.num_edges)
    ]
    assert (((0, 1), 5)) in edges
    # row 1 and box 1 both witness the same pair: still one edge
    assert sum(1 for ep, lab in edges if ep == (0, 1) and lab == 5) == 1


def test_bilocation_three_labels_contradiction():
    cand_map = {0: {1, 2, 3, 9}, 1: {1, 2, 3, 9}}
    default = {4, 5, 6, 7, 8, 9}
    board = board_with_candidates(cand_map, default)
    bl = build_bilocation_graph(board)
    assert bl.contradiction is not None
    deds = bilocation_cycle_rule(board)
    assert deds and deds[0].contradiction


def test_bivalue_graph_edges():
    cand_map = {0: {4, 7}, 5: {7, 9}}
    default = {1, 2, 3}
    board = board_with_candidates(cand_map, default)
    bv, bb = build_bivalue_graphs(board)
    assert bv.graph.num_edges == 1
    assert bv.graph.endpoints(0) == (0, 5)
    assert bv.graph.edge_labels(0) == (7, 7)
    # each bivalued cell carries exactly six bipartite edges
    for cell in (0, 5):
        assert sum(
            1
            for e in range(bb.graph.num_edges)
            if bb.graph.endpoints(e)[0] == cell
        ) == 6


def test_bipartite_bivalue_size_bounds():
    board = dense_bivalue_fixture(3)
    _, bb = build_bivalue_graphs(board)
    assert bb.graph.num_vertices <= 4 * 3**4
    assert bb.graph.num_edges <= 6 * 3**4


# -- nonlocal rules on crafted boards -------------------------------------------------


def _rectangle_cells():
    a, b = 0, 3  # r1c1, r1c4
    d, c = 27, 30  # r4c1, r4c4
    return a, b, c, d


def test_bilocation_cycle_restricts_rectangle():
    a, b, c, d = _rectangle_cells()
    cand_map = {a: {5, 6, 9}, b: {5, 6, 8}, c: {5, 6, 9}, d: {5, 6, 8}}
    board = board_with_candidates(cand_map, {1, 2, 3})
    deds = bilocation_cycle_rule(board)
    got = {ded.eliminations for ded in deds}
    assert ((a, 9),) in got
    assert ((b, 8),) in got
    assert ((c, 9),) in got
    assert ((d, 8),) in got


def test_bilocation_repeat_places_repeated_label():
    a, b, c, d = _rectangle_cells()
    # cycle labels 2,5,6,2 reading a->b->c->d->a: the repeated 2 sits at a
    cand_map = {a: {2, 7}, b: {2, 5}, c: {5, 6}, d: {2, 6}}
    board = board_with_candidates(cand_map, {1, 3, 4})
    deds = bilocation_repeat_rule(board)
    assert [ded.placements for ded in deds] == [((a, 2),)]
    assert "2>" in deds[0].witness


def test_bilocation_conflict_places_start_label():
    c = 40  # r5c5
    a = 36  # r5c1
    b = 4  # r1c5
    w1 = 72  # r9c1
    w2 = 76  # r9c5
    cand_map = {
        c: {2, 7},
        a: {2, 9},
        b: {2, 9},
        w1: {1, 9},
        w2: {1, 9},
    }
    board = board_with_candidates(cand_map, {3, 5, 6})
    deds = bilocation_conflict_rule(board)
    assert [ded.placements for ded in deds] == [((c, 2),)]
    assert "|" in deds[0].witness  # two chains recorded


# -- corpus checks ---------------------------------------------------------------------


def _fresh_corpus(count, seed):
    rng = Random(seed)
    boards = []
    for _ in range(count):
        report = generate(3, rng.randrange(2**32))
        boards.append((report.puzzle, report.solution))
    return boards


def test_rules_sound_and_monotone_on_corpus():
    for puzzle, solution in _fresh_corpus(12, 500):
        board = puzzle.copy()
        trace = solve(board)
        assert trace.outcome in ("solved", "stuck")
        current = puzzle.copy()
        for ded in trace.deductions:
            for cell, digit in ded.placements:
                assert solution.values[cell] == digit
            for cell, digit in ded.eliminations:
                assert solution.values[cell] != digit
            nxt = apply_deduction(current, ded)
            assert isinstance(nxt, Board)
            for cellv in range(81):
                # candidate sets only ever shrink
                assert nxt.cand[cellv] & ~current.cand[cellv] == 0 or (
                    current.values[cellv] == 0 and nxt.values[cellv] != 0
                )
            current = nxt
        if trace.outcome == "solved":
            assert current.values == solution.values
            assert current.values == trace.board.values


def test_rule_idempotence_on_corpus():
    for puzzle, _ in _fresh_corpus(6, 901):
        board = puzzle.copy()
        for _step in range(200):
            fired = None
            for _tier, name in RULES:
                deds = rule_deductions(board, name)
                if deds:
                    fired = (name, deds[0])
                    break
            if fired is None:
                break
            name, ded = fired
            nxt = apply_deduction(board, ded)
            if not isinstance(nxt, Board):
                break
            board = nxt
            again = rule_deductions(board, name)
            assert ded not in again, (name, ded)
        else:
            pytest.fail("solve loop did not terminate")


def test_solved_board_trace_is_empty():
    solved = solved_grid(Board(3))
    trace = solve(solved)
    assert trace.outcome == "solved"
    assert trace.deductions == ()
    assert trace.difficulty_tier == 0


def test_max_tier_zero_uses_only_singles():
    report = generate(3, 17)
    trace = solve(report.puzzle, max_tier=0)
    assert all(t == 0 for t in trace.tiers)


def test_trace_replay_reproduces_final_board():
    report = generate(3, 23)
    trace = solve(report.puzzle)
    board = report.puzzle.copy()
    for ded in trace.deductions:
        board = apply_deduction(board, ded)
        assert isinstance(board, Board)
    assert board.values == trace.board.values


def test_bivalue_walks_match_bipartite_walks():
    # one bivalue step corresponds to two steps in the bipartite form
    for puzzle, _ in _fresh_corpus(6, 321):
        trace = solve(puzzle, max_tier=2)
        board = trace.board
        bv, bb = build_bivalue_graphs(board)
        if not 0 < bv.graph.num_vertices <= 12:
            continue
        assert _bivalue_signatures(bv.graph, 3) == _bipartite_signatures(bb.graph, 3)


def _bivalue_signatures(graph, depth):
    sigs = set()

    def extend(cell, last_label, trail):
        sigs.add(trail)
        if len(trail) // 2 >= depth:
            return
        vid = graph.vertex_id(cell)
        for eid, end in graph.incident(vid):
            label = graph.edge_labels(eid)[0]
            if last_label is not None and label == last_label:
                continue
            far = graph.endpoints(eid)[1 - end]
            extend(far, label, trail + (label, far))

    for vid in range(graph.num_vertices):
        cell = graph.vertex_name(vid)
        extend(cell, None, (cell,))
    return sigs


def _bipartite_signatures(graph, depth):
    sigs = set()

    def extend(vertex, last_flag, trail):
        if isinstance(vertex, int):
            sigs.add(trail)
            if len(trail) // 2 >= depth:
                return
        vid = graph.vertex_id(vertex)
        for eid, end in graph.incident(vid):
            flag = graph.edge_labels(eid)[end]
            if last_flag is not None and flag == last_flag:
                continue
            far = graph.endpoints(eid)[1 - end]
            far_flag = graph.edge_labels(eid)[1 - end]
            if isinstance(vertex, int):
                extend(far, far_flag, trail)
            else:
                extend(far, far_flag, trail + (far_flag[1], far))

    for vid in range(graph.num_vertices):
        vertex = graph.vertex_name(vid)
        if isinstance(vertex, int):
            extend(vertex, None, (vertex,))
    return sigs
