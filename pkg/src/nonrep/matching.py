"""Bipartite and general maximum matching, plus per-edge viability analysis.

``classify_edges`` splits the edges of a bipartite instance into those that
appear in every perfect matching (mandatory), in none (forbidden), and the
rest (optional).  When a perfect matching exists, forbidden edges are found
by orienting matched edges left-to-right and unmatched edges right-to-left:
an unmatched edge is usable iff its endpoints share a strongly connected
component of that orientation.  Mandatory edges are detected by removing the
edge and re-solving; instances here are small enough that the O(m) extra
solves are irrelevant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels

MANDATORY = "mandatory"
FORBIDDEN = "forbidden"
OPTIONAL = "optional"


@dataclass(frozen=True)
class BipartiteInstance:
    left_size: int
    right_size: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for l, r in self.edges:
            if not (0 <= l < self.left_size and 0 <= r < self.right_size):
                raise ValueError(f"edge ({l},{r}) out of range")
            if (l, r) in seen:
                raise ValueError(f"duplicate edge ({l},{r})")
            seen.add((l, r))

    @property
    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per left vertex: (right, edge index) in edge order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.left_size)]
        for idx, (l, r) in enumerate(self.edges):
            adj[l].append((r, idx))
        return adj


@dataclass(frozen=True)
class EdgeClassification:
    labels: tuple[str, ...]
    perfect: bool

    def of_kind(self, kind: str) -> set[int]:
        return {i for i, lab in enumerate(self.labels) if lab == kind}


def _kuhn(inst: BipartiteInstance) -> tuple[list[int], list[int]]:
    """Deterministic augmenting-path matching; left vertices in index order."""
    adj = inst.adjacency
    mate_l = [-1] * inst.left_size
    mate_r = [-1] * inst.right_size

    def try_augment(l: int, visited: set[int]) -> bool:
        for r, _ in adj[l]:
            if r in visited:
                continue
            visited.add(r)
            if mate_r[r] == -1 or try_augment(mate_r[r], visited):
                mate_l[l] = r
                mate_r[r] = l
                return True
        return False

    for l in range(inst.left_size):
        try_augment(l, set())
    return mate_l, mate_r


def max_bipartite_matching(inst: BipartiteInstance) -> tuple[int, ...]:
    """Edge indices of a maximum-cardinality matching (deterministic)."""
    mate_l, _ = _kuhn(inst)
    chosen = []
    for idx, (l, r) in enumerate(inst.edges):
        if mate_l[l] == r:
            chosen.append(idx)
            mate_l[l] = -2  # each left vertex contributes one edge
    return tuple(chosen)


def matching_size(inst: BipartiteInstance) -> int:
    mate_l, _ = _kuhn(inst)
    return sum(1 for r in mate_l if r >= 0)


def _scc(num: int, adj: list[list[int]]) -> list[int]:
    """Tiny iterative Tarjan for the orientation graph."""
    disc = [-1] * num
    low = [0] * num
    comp = [-1] * num
    on_stack = [False] * num
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(num):
        if disc[root] != -1:
            continue
        work = [(root, 0)]
        disc[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if disc[w] == -1:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], disc[w])
            else:
                work.pop()
                if low[v] == disc[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
    return comp


def classify_edges(inst: BipartiteInstance) -> EdgeClassification:
    """Mandatory / forbidden / optional relative to perfect matchings.

    Without a perfect matching the classification is made relative to
    maximum matchings instead and the result is flagged ``perfect=False``.
    """
    if inst.left_size == 0 or inst.right_size == 0:
        raise ValueError("empty instance")
    mate_l, mate_r = _kuhn(inst)
    size = sum(1 for r in mate_l if r >= 0)
    perfect = size == inst.left_size == inst.right_size
    labels = [OPTIONAL] * len(inst.edges)

    if perfect:
        # Orientation: matched l -> r, unmatched r -> l; nodes 0..L-1 then rights.
        num = inst.left_size + inst.right_size
        adj: list[list[int]] = [[] for _ in range(num)]
        for l, r in inst.edges:
            if mate_l[l] == r:
                adj[l].append(inst.left_size + r)
            else:
                adj[inst.left_size + r].append(l)
        comp = _scc(num, adj)
        for idx, (l, r) in enumerate(inst.edges):
            if mate_l[l] != r and comp[l] != comp[inst.left_size + r]:
                labels[idx] = FORBIDDEN
    else:
        for idx, (l, r) in enumerate(inst.edges):
            rest = tuple(
                e for e in inst.edges if e != (l, r) and e[0] != l and e[1] != r
            )
            forced = BipartiteInstance(inst.left_size, inst.right_size, rest)
            if matching_size(forced) + 1 < size:
                labels[idx] = FORBIDDEN

    for idx, (l, r) in enumerate(inst.edges):
        if mate_l[l] != r:
            continue
        rest = tuple(e for i, e in enumerate(inst.edges) if i != idx)
        if matching_size(BipartiteInstance(inst.left_size, inst.right_size, rest)) < size:
            labels[idx] = MANDATORY
    return EdgeClassification(tuple(labels), perfect)


def general_matching_mate(num_vertices: int, edges) -> tuple[np.ndarray, bool]:
    """Mate array of a maximum matching in a general graph (blossom search)."""
    tails = []
    heads = []
    for u, v in edges:
        tails.append(u)
        heads.append(v)
        tails.append(v)
        heads.append(u)
    indptr, indices, _ = _kernels.build_csr(
        num_vertices,
        np.array(tails, dtype=np.int64),
        np.array(heads, dtype=np.int64),
    )
    mate, perfect = _kernels.blossom_matching(num_vertices, indptr, indices, 0)
    return mate, bool(perfect)


def max_general_matching(num_vertices: int, edges) -> list[tuple[int, int]]:
    """Maximum matching of a simple undirected graph as a list of edge pairs."""
    mate, _ = general_matching_mate(num_vertices, edges)
    return [(v, int(mate[v])) for v in range(num_vertices) if 0 <= v < mate[v]]


def perfect_matching_mate(num_vertices: int, edges) -> tuple[np.ndarray, bool]:
    """Like :func:`general_matching_mate` but bails out early when some vertex
    provably cannot be matched (no perfect matching exists)."""
    tails = []
    heads = []
    for u, v in edges:
        tails.append(u)
        heads.append(v)
        tails.append(v)
        heads.append(u)
    indptr, indices, _ = _kernels.build_csr(
        num_vertices,
        np.array(tails, dtype=np.int64),
        np.array(heads, dtype=np.int64),
    )
    mate, perfect = _kernels.blossom_matching(num_vertices, indptr, indices, 1)
    return mate, bool(perfect)
