"""Hot numeric kernels shared by the graph engine and the Sudoku solver.

Every kernel is written as a plain function over numpy arrays.  When numba is
importable and the ``NONREP_NO_NUMBA`` environment variable is unset, the
functions are compiled with ``@njit``; otherwise the uncompiled Python
versions run.  The uncompiled version of every kernel stays reachable under a
``_py`` suffix so the two paths can be compared (see ``benchmarks/``).

Conventions: graphs are CSR (``indptr``/``indices`` int64 arrays); Sudoku
digit sets are int64 bitmasks (bit d = digit d+1), which caps kernel support
at B <= 7.  Pure-Python board code is not bound by that cap.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

USE_NUMBA = _HAVE_NUMBA and not os.environ.get("NONREP_NO_NUMBA")

_UNREACHED = np.int64(2**62)


def build_csr(num_nodes: int, tails: np.ndarray, heads: np.ndarray):
    """Sort arcs by tail (stable) and return (indptr, indices, pos_of_arc).

    ``pos_of_arc[i]`` is the CSR position of input arc ``i``; stability keeps
    arcs with equal tails in insertion order, which makes every downstream
    traversal deterministic.
    """
    tails = np.asarray(tails, dtype=np.int64)
    heads = np.asarray(heads, dtype=np.int64)
    order = np.argsort(tails, kind="stable")
    indices = heads[order]
    counts = np.bincount(tails, minlength=num_nodes)
    indptr = np.zeros(num_nodes + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    pos_of_arc = np.empty(len(order), dtype=np.int64)
    pos_of_arc[order] = np.arange(len(order), dtype=np.int64)
    return indptr, indices, pos_of_arc


# ---------------------------------------------------------------------------
# Digraph kernels
# ---------------------------------------------------------------------------


def scc_csr(indptr, indices):
    """Strongly connected components; ids in reverse topological order."""
    n = indptr.shape[0] - 1
    disc = np.full(n, -1, np.int64)
    low = np.zeros(n, np.int64)
    comp = np.full(n, -1, np.int64)
    on_stack = np.zeros(n, np.uint8)
    stack = np.empty(n, np.int64)
    dfs_v = np.empty(n + 1, np.int64)
    dfs_e = np.empty(n + 1, np.int64)
    sp = 0
    counter = 0
    ncomp = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        top = 0
        dfs_v[0] = root
        dfs_e[0] = indptr[root]
        disc[root] = counter
        low[root] = counter
        counter += 1
        stack[sp] = root
        sp += 1
        on_stack[root] = 1
        while top >= 0:
            v = dfs_v[top]
            e = dfs_e[top]
            if e < indptr[v + 1]:
                dfs_e[top] = e + 1
                w = indices[e]
                if disc[w] == -1:
                    disc[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    on_stack[w] = 1
                    top += 1
                    dfs_v[top] = w
                    dfs_e[top] = indptr[w]
                elif on_stack[w] and disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                if low[v] == disc[v]:
                    while True:
                        w = stack[sp - 1]
                        sp -= 1
                        on_stack[w] = 0
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                top -= 1
                if top >= 0 and low[v] < low[dfs_v[top]]:
                    low[dfs_v[top]] = low[v]
    return comp


def reach_csr(indptr, indices, start):
    """DFS reachability; returns (visited uint8, parent CSR arc position)."""
    n = indptr.shape[0] - 1
    visited = np.zeros(n, np.uint8)
    parent_arc = np.full(n, -1, np.int64)
    stack = np.empty(n, np.int64)
    visited[start] = 1
    stack[0] = start
    top = 1
    while top > 0:
        top -= 1
        v = stack[top]
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if not visited[w]:
                visited[w] = 1
                parent_arc[w] = e
                stack[top] = w
                top += 1
    return visited, parent_arc


def reach_many(indptr, indices, starts):
    """Reachability from several start nodes; row i is the set for starts[i]."""
    n = indptr.shape[0] - 1
    out = np.zeros((starts.shape[0], n), np.uint8)
    stack = np.empty(n, np.int64)
    for i in range(starts.shape[0]):
        visited = out[i]
        visited[starts[i]] = 1
        stack[0] = starts[i]
        top = 1
        while top > 0:
            top -= 1
            v = stack[top]
            for e in range(indptr[v], indptr[v + 1]):
                w = indices[e]
                if not visited[w]:
                    visited[w] = 1
                    stack[top] = w
                    top += 1
    return out


def bfs01(indptr, indices, unit, sources):
    """0/1-weighted BFS (``unit[arc]`` is the arc cost, 0 or 1).

    Returns (dist, parent CSR arc position); unreached nodes keep a distance
    of 2**62.
    """
    n = indptr.shape[0] - 1
    m = indices.shape[0]
    dist = np.full(n, _UNREACHED, np.int64)
    parent_arc = np.full(n, -1, np.int64)
    size = 2 * (n + m) + 2
    deque = np.empty(size, np.int64)
    head = n + m + 1
    tail = n + m + 1
    for i in range(sources.shape[0]):
        s = sources[i]
        dist[s] = 0
        deque[tail] = s
        tail += 1
    while head < tail:
        v = deque[head]
        head += 1
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            nd = dist[v] + unit[e]
            if nd < dist[w]:
                dist[w] = nd
                parent_arc[w] = e
                if unit[e] == 0:
                    head -= 1
                    deque[head] = w
                else:
                    deque[tail] = w
                    tail += 1
    return dist, parent_arc


# ---------------------------------------------------------------------------
# Matching kernels
# ---------------------------------------------------------------------------


def kuhn_bipartite(num_left, num_right, indptr, indices):
    """Maximum bipartite matching via BFS augmentation, left side in order.

    ``indptr``/``indices`` is the left-to-right adjacency.  Returns
    (mate_left, mate_right) with -1 for unmatched.
    """
    mate_l = np.full(num_left, -1, np.int64)
    mate_r = np.full(num_right, -1, np.int64)
    prev_r = np.empty(num_right, np.int64)
    queue = np.empty(num_left, np.int64)
    in_queue = np.zeros(num_left, np.uint8)
    for l0 in range(num_left):
        if mate_l[l0] != -1:
            continue
        prev_r[:] = -1
        in_queue[:] = 0
        queue[0] = l0
        in_queue[l0] = 1
        qh = 0
        qt = 1
        found = np.int64(-1)
        while qh < qt and found == -1:
            l = queue[qh]
            qh += 1
            for e in range(indptr[l], indptr[l + 1]):
                r = indices[e]
                if prev_r[r] != -1:
                    continue
                prev_r[r] = l
                nxt = mate_r[r]
                if nxt == -1:
                    found = r
                    break
                if not in_queue[nxt]:
                    in_queue[nxt] = 1
                    queue[qt] = nxt
                    qt += 1
        if found != -1:
            r = found
            while True:
                l = prev_r[r]
                old = mate_l[l]
                mate_l[l] = r
                mate_r[r] = l
                if old == -1:
                    break
                r = old
    return mate_l, mate_r


def bipartite_forbidden(num_left, num_right, indptr, indices):
    """Matching plus per-edge viability for square instances.

    Returns (size, mate_l, mate_r, forbidden) where forbidden[pos] is 1 when
    the CSR edge at ``pos`` lies in no perfect matching.  The flags are only
    meaningful when size == num_left == num_right (a perfect matching); they
    come from orienting matched edges left->right and unmatched edges
    right->left and comparing strongly connected components.
    """
    mate_l, mate_r = kuhn_bipartite(num_left, num_right, indptr, indices)
    size = np.int64(0)
    for l in range(num_left):
        if mate_l[l] != -1:
            size += 1
    m = indices.shape[0]
    forbidden = np.zeros(m, np.uint8)
    if size != num_left or num_left != num_right:
        return size, mate_l, mate_r, forbidden
    n = num_left + num_right
    deg = np.zeros(n, np.int64)
    for l in range(num_left):
        for e in range(indptr[l], indptr[l + 1]):
            r = indices[e]
            if mate_l[l] == r:
                deg[l] += 1
            else:
                deg[num_left + r] += 1
    o_indptr = np.zeros(n + 1, np.int64)
    for v in range(n):
        o_indptr[v + 1] = o_indptr[v] + deg[v]
    fill = o_indptr[:-1].copy()
    o_indices = np.empty(m, np.int64)
    for l in range(num_left):
        for e in range(indptr[l], indptr[l + 1]):
            r = indices[e]
            if mate_l[l] == r:
                o_indices[fill[l]] = num_left + r
                fill[l] += 1
            else:
                o_indices[fill[num_left + r]] = l
                fill[num_left + r] += 1
    comp = scc_csr(o_indptr, o_indices)
    for l in range(num_left):
        for e in range(indptr[l], indptr[l + 1]):
            r = indices[e]
            if mate_l[l] != r and comp[l] != comp[num_left + r]:
                forbidden[e] = 1
    return size, mate_l, mate_r, forbidden


def blossom_matching(n, indptr, indices, require_perfect):
    """Maximum matching in a general graph (blossom contraction).

    Returns (mate, perfect).  With ``require_perfect`` set, the search stops
    as soon as some exposed vertex admits no augmenting path: such a vertex
    stays exposed in some maximum matching, so no perfect matching exists.
    """
    mate = np.full(n, -1, np.int64)
    for v in range(n):
        if mate[v] != -1:
            continue
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if u != v and mate[u] == -1:
                mate[v] = u
                mate[u] = v
                break
    p = np.empty(n, np.int64)
    base = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    used = np.zeros(n, np.uint8)
    in_blossom = np.zeros(n, np.uint8)
    lca_mark = np.zeros(n, np.uint8)
    for root in range(n):
        if mate[root] != -1:
            continue
        used[:] = 0
        p[:] = -1
        for i in range(n):
            base[i] = i
        used[root] = 1
        queue[0] = root
        qh = 0
        qt = 1
        finish = np.int64(-1)
        while qh < qt and finish == -1:
            v = queue[qh]
            qh += 1
            for e in range(indptr[v], indptr[v + 1]):
                to = indices[e]
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and p[mate[to]] != -1):
                    # Odd cycle: contract the blossom around the tree lca.
                    lca_mark[:] = 0
                    a = base[v]
                    while True:
                        lca_mark[a] = 1
                        if mate[a] == -1:
                            break
                        a = base[p[mate[a]]]
                    b = base[to]
                    while not lca_mark[b]:
                        b = base[p[mate[b]]]
                    curbase = b
                    in_blossom[:] = 0
                    x = v
                    child = to
                    while base[x] != curbase:
                        in_blossom[base[x]] = 1
                        in_blossom[base[mate[x]]] = 1
                        p[x] = child
                        child = mate[x]
                        x = p[mate[x]]
                    x = to
                    child = v
                    while base[x] != curbase:
                        in_blossom[base[x]] = 1
                        in_blossom[base[mate[x]]] = 1
                        p[x] = child
                        child = mate[x]
                        x = p[mate[x]]
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = curbase
                            if not used[i]:
                                used[i] = 1
                                queue[qt] = i
                                qt += 1
                elif p[to] == -1:
                    p[to] = v
                    if mate[to] == -1:
                        finish = to
                        break
                    nxt = mate[to]
                    if not used[nxt]:
                        used[nxt] = 1
                        queue[qt] = nxt
                        qt += 1
        if finish == -1:
            if require_perfect:
                return mate, np.uint8(0)
        else:
            v = finish
            while v != -1:
                pv = p[v]
                nxt = mate[pv]
                mate[v] = pv
                mate[pv] = v
                v = nxt
    perfect = np.uint8(1)
    for v in range(n):
        if mate[v] == -1:
            perfect = np.uint8(0)
    return mate, perfect


# ---------------------------------------------------------------------------
# Sudoku kernels
# ---------------------------------------------------------------------------


def count_and_first(box, values, cap):
    """Backtracking completion count (saturating at cap) plus first solution.

    ``values`` holds 0 for empty cells and 1..N for placed digits.  Branches
    on a minimum-candidate cell, digits in ascending order, so the count and
    the first solution found are deterministic.
    """
    n = box * box
    size = n * n
    full = (np.int64(1) << n) - 1
    row_used = np.zeros(n, np.int64)
    col_used = np.zeros(n, np.int64)
    box_used = np.zeros(n, np.int64)
    work = values.copy()
    first = np.zeros(size, np.int64)
    for i in range(size):
        d = work[i]
        if d == 0:
            continue
        bit = np.int64(1) << (d - 1)
        r = i // n
        c = i % n
        b = (r // box) * box + c // box
        if (row_used[r] | col_used[c] | box_used[b]) & bit:
            return np.int64(0), first
        row_used[r] |= bit
        col_used[c] |= bit
        box_used[b] |= bit
    stack_cell = np.empty(size + 1, np.int64)
    stack_rest = np.empty(size + 1, np.int64)
    stack_bit = np.empty(size + 1, np.int64)
    count = np.int64(0)
    depth = 0
    descend = True
    while True:
        if descend:
            best = np.int64(-1)
            best_mask = np.int64(0)
            best_count = n + 1
            dead = False
            for i in range(size):
                if work[i] != 0:
                    continue
                r = i // n
                c = i % n
                b = (r // box) * box + c // box
                mask = full & ~(row_used[r] | col_used[c] | box_used[b])
                if mask == 0:
                    dead = True
                    break
                cnt = 0
                mm = mask
                while mm:
                    mm &= mm - 1
                    cnt += 1
                if cnt < best_count:
                    best_count = cnt
                    best = i
                    best_mask = mask
                    if cnt == 1:
                        break
            if dead:
                descend = False
            elif best == -1:
                count += 1
                if count == 1:
                    for i in range(size):
                        first[i] = work[i]
                if count >= cap:
                    return count, first
                descend = False
            else:
                stack_cell[depth] = best
                stack_rest[depth] = best_mask
                stack_bit[depth] = 0
                depth += 1
                descend = False
                # fall through to try the first digit of the new frame
        if depth == 0:
            return count, first
        frame = depth - 1
        i = stack_cell[frame]
        bit = stack_bit[frame]
        if bit != 0:
            # undo previous attempt at this frame
            r = i // n
            c = i % n
            b = (r // box) * box + c // box
            row_used[r] &= ~bit
            col_used[c] &= ~bit
            box_used[b] &= ~bit
            work[i] = 0
        rest = stack_rest[frame]
        if rest == 0:
            stack_bit[frame] = 0
            depth -= 1
            descend = False
            continue
        bit = rest & -rest
        stack_rest[frame] = rest ^ bit
        stack_bit[frame] = bit
        d = 0
        bb = bit
        while bb > 1:
            bb >>= 1
            d += 1
        work[i] = d + 1
        r = i // n
        c = i % n
        b = (r // box) * box + c // box
        row_used[r] |= bit
        col_used[c] |= bit
        box_used[b] |= bit
        descend = True


def propagate_singles(box, values):
    """Fill naked and hidden singles in place until a fixed point.

    Returns 1 if the grid completed, 0 if it stalled, -1 on contradiction
    (an empty cell with no candidates, a digit with no remaining home in
    some group, or conflicting givens).
    """
    n = box * box
    size = n * n
    full = (np.int64(1) << n) - 1
    row_used = np.zeros(n, np.int64)
    col_used = np.zeros(n, np.int64)
    box_used = np.zeros(n, np.int64)
    for i in range(size):
        d = values[i]
        if d == 0:
            continue
        bit = np.int64(1) << (d - 1)
        r = i // n
        c = i % n
        b = (r // box) * box + c // box
        if (row_used[r] | col_used[c] | box_used[b]) & bit:
            return -1
        row_used[r] |= bit
        col_used[c] |= bit
        box_used[b] |= bit
    changed = True
    while changed:
        changed = False
        for i in range(size):
            if values[i] != 0:
                continue
            r = i // n
            c = i % n
            b = (r // box) * box + c // box
            mask = full & ~(row_used[r] | col_used[c] | box_used[b])
            if mask == 0:
                return -1
            if mask & (mask - 1) == 0:
                d = 0
                mm = mask
                while mm > 1:
                    mm >>= 1
                    d += 1
                values[i] = d + 1
                row_used[r] |= mask
                col_used[c] |= mask
                box_used[b] |= mask
                changed = True
        for kind in range(3):
            for g in range(n):
                placed = np.int64(0)
                for j in range(n):
                    if kind == 0:
                        i = g * n + j
                    elif kind == 1:
                        i = j * n + g
                    else:
                        i = ((g // box) * box + j // box) * n + (g % box) * box + j % box
                    if values[i] != 0:
                        placed |= np.int64(1) << (values[i] - 1)
                for d in range(n):
                    bit = np.int64(1) << d
                    if placed & bit:
                        continue
                    home = np.int64(-1)
                    nhomes = 0
                    for j in range(n):
                        if kind == 0:
                            i = g * n + j
                        elif kind == 1:
                            i = j * n + g
                        else:
                            i = ((g // box) * box + j // box) * n + (g % box) * box + j % box
                        if values[i] != 0:
                            continue
                        r = i // n
                        c = i % n
                        b = (r // box) * box + c // box
                        if not (row_used[r] | col_used[c] | box_used[b]) & bit:
                            nhomes += 1
                            home = i
                            if nhomes > 1:
                                break
                    if nhomes == 0:
                        return -1
                    if nhomes == 1:
                        values[home] = d + 1
                        r = home // n
                        c = home % n
                        b = (r // box) * box + c // box
                        row_used[r] |= bit
                        col_used[c] |= bit
                        box_used[b] |= bit
                        changed = True
    for i in range(size):
        if values[i] == 0:
            return 0
    return 1


# ---------------------------------------------------------------------------
# jit wiring
# ---------------------------------------------------------------------------

scc_csr_py = scc_csr
reach_csr_py = reach_csr
reach_many_py = reach_many
bfs01_py = bfs01
kuhn_bipartite_py = kuhn_bipartite
bipartite_forbidden_py = bipartite_forbidden
blossom_matching_py = blossom_matching
count_and_first_py = count_and_first
propagate_singles_py = propagate_singles

if USE_NUMBA:
    _jit = numba.njit(cache=True)
    scc_csr = _jit(scc_csr)
    reach_csr = _jit(reach_csr)
    reach_many = _jit(reach_many)
    bfs01 = _jit(bfs01)
    kuhn_bipartite = _jit(kuhn_bipartite)
    bipartite_forbidden = _jit(bipartite_forbidden)
    blossom_matching = _jit(blossom_matching)
    count_and_first = _jit(count_and_first)
    propagate_singles = _jit(propagate_singles)

PURE_KERNELS = {
    "scc_csr": scc_csr_py,
    "reach_csr": reach_csr_py,
    "reach_many": reach_many_py,
    "bfs01": bfs01_py,
    "kuhn_bipartite": kuhn_bipartite_py,
    "bipartite_forbidden": bipartite_forbidden_py,
    "blossom_matching": blossom_matching_py,
    "count_and_first": count_and_first_py,
    "propagate_singles": propagate_singles_py,
}

ACTIVE_KERNELS = {
    "scc_csr": scc_csr,
    "reach_csr": reach_csr,
    "reach_many": reach_many,
    "bfs01": bfs01,
    "kuhn_bipartite": kuhn_bipartite,
    "bipartite_forbidden": bipartite_forbidden,
    "blossom_matching": blossom_matching,
    "count_and_first": count_and_first,
    "propagate_singles": propagate_singles,
}
