"""Pure-Python reference implementation of the pattern-search kernel.

Mirrors ``_kernels.pyx`` line for line; used when the compiled extension is
unavailable and as the baseline in ``benchmarks/bench_kernels.py``.
"""
from __future__ import annotations

RULE_COMPONENT = 0
RULE_RANK = 1


def _components_ok(n_rows, n_cols, chosen, edges, row_target, col_target):
    parent = list(range(n_rows + n_cols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in chosen:
        r, c = edges[e]
        a, b = find(r), find(n_rows + c)
        if a != b:
            parent[a] = b
    rows = [0] * (n_rows + n_cols)
    cols = [0] * (n_rows + n_cols)
    for r in range(n_rows):
        rows[find(r)] += 1
    for c in range(n_cols):
        cols[find(n_rows + c)] += 1
    for v in range(n_rows + n_cols):
        if (rows[v] or cols[v]) and rows[v] * row_target != cols[v] * col_target:
            return False
    return True


def integer_rank(mat):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination; ``mat`` is modified."""
    n_r = len(mat)
    n_c = len(mat[0]) if n_r else 0
    rank = 0
    prev = 1
    for col in range(n_c):
        piv = -1
        for i in range(rank, n_r):
            if mat[i][col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][col]
        for i in range(rank + 1, n_r):
            a = mat[i][col]
            row_i = mat[i]
            row_r = mat[rank]
            for j in range(col + 1, n_c):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
            row_i[col] = 0
        prev = p
        rank += 1
        if rank == n_r:
            break
    return rank


def _rank_ok(n_rows, n_cols, chosen, edges, row_target, col_target):
    k = len(chosen)
    n_eq = n_rows + n_cols
    mat = [[0] * (k + 1) for _ in range(n_eq)]
    for j, e in enumerate(chosen):
        r, c = edges[e]
        mat[r][j] = 1
        mat[n_rows + c][j] = 1
    for r in range(n_rows):
        mat[r][k] = row_target
    for c in range(n_cols):
        mat[n_rows + c][k] = col_target
    aug = integer_rank([row[:] for row in mat])
    plain = integer_rank([row[:k] for row in mat])
    return plain == aug


def _column_twins(n_cols, edges):
    """For each column, the previous column with the same neighbourhood, else -1.

    Such columns are interchangeable, so the search only opens a column once
    its previous twin is already covered.
    """
    nbrs = [set() for _ in range(n_cols)]
    for r, c in edges:
        nbrs[c].add(r)
    prev = [-1] * n_cols
    last = {}
    for c in range(n_cols):
        key = frozenset(nbrs[c])
        prev[c] = last.get(key, -1)
        last[key] = c
    return prev


def min_cover_search(n_rows, n_cols, edges, k_lo, k_hi, rule, row_target, col_target):
    """Smallest ``k`` in ``[k_lo, k_hi]`` admitting a feasible covering edge subset.

    ``edges`` must be sorted by row.  Only subsets touching every row and
    every column are examined, one per orbit of interchangeable columns.  Returns ``(k, witness_indices, examined)``
    with ``k = -1`` when nothing in range is feasible.
    """
    E = len(edges)
    prev_twin = _column_twins(n_cols, edges)
    test = _components_ok if rule == RULE_COMPONENT else _rank_ok
    row_of = [r for r, _ in edges]
    examined = 0
    for k in range(max(k_lo, 0), k_hi + 1):
        row_cov = [0] * n_rows
        col_cov = [0] * n_cols
        chosen: list[int] = []
        state = {"unrow": n_rows, "uncol": n_cols}
        found = None

        def rec(idx):
            nonlocal examined, found
            slots = k - len(chosen)
            if slots == 0:
                if state["unrow"] == 0 and state["uncol"] == 0:
                    examined += 1
                    if test(n_rows, n_cols, chosen, edges, row_target, col_target):
                        found = list(chosen)
                        return True
                return False
            if slots < state["unrow"] or slots < state["uncol"]:
                return False
            first_uncov = 0
            while first_uncov < n_rows and row_cov[first_uncov]:
                first_uncov += 1
            for e in range(idx, E - slots + 1):
                r = row_of[e]
                if r > first_uncov:
                    break
                c = edges[e][1]
                if col_cov[c] == 0 and prev_twin[c] >= 0 and col_cov[prev_twin[c]] == 0:
                    continue
                chosen.append(e)
                if row_cov[r] == 0:
                    state["unrow"] -= 1
                if col_cov[c] == 0:
                    state["uncol"] -= 1
                row_cov[r] += 1
                col_cov[c] += 1
                hit = rec(e + 1)
                row_cov[r] -= 1
                col_cov[c] -= 1
                if row_cov[r] == 0:
                    state["unrow"] += 1
                if col_cov[c] == 0:
                    state["uncol"] += 1
                chosen.pop()
                if hit:
                    return True
            return False

        if rec(0):
            return k, found, examined
    return -1, None, examined
