"""Rule-based Sudoku solving, generation and grading."""

from .board import (
    Board,
    Contradiction,
    Deduction,
    SolveTrace,
    apply_deduction,
    cell_name,
    deduction_line,
    parse_board,
)
from .rules import (
    BilocationGraph,
    BipartiteBivalueGraph,
    BivalueGraph,
    RULES,
    RULE_TIER,
    build_bilocation_graph,
    build_bivalue_graphs,
    rule_deductions,
    solve,
)
from .generate import (
    BatchStats,
    GenReport,
    GenerationError,
    batch_stats,
    count_solutions,
    dense_bivalue_fixture,
    generate,
    grade,
    solved_grid,
)

__all__ = [
    "Board",
    "Contradiction",
    "Deduction",
    "SolveTrace",
    "apply_deduction",
    "cell_name",
    "deduction_line",
    "parse_board",
    "BilocationGraph",
    "BipartiteBivalueGraph",
    "BivalueGraph",
    "RULES",
    "RULE_TIER",
    "build_bilocation_graph",
    "build_bivalue_graphs",
    "rule_deductions",
    "solve",
    "BatchStats",
    "GenReport",
    "GenerationError",
    "batch_stats",
    "count_solutions",
    "dense_bivalue_fixture",
    "generate",
    "grade",
    "solved_grid",
]
