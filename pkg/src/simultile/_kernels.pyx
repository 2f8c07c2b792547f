# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pattern-search kernel; same contract as ``_kernels_py``.

Intermediate values of the Bareiss elimination are minors of a bipartite
incidence matrix augmented by one right-hand-side column.  Incidence matrices
of bipartite graphs are totally unimodular, so every such minor is bounded by
the l1 norm of the right-hand side and int64 cannot overflow for the
instance sizes accepted below.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memset

from ._kernels_py import _column_twins

cdef enum:
    MAXV = 128
    MAXE = 1024

cdef struct Ctx:
    int n_rows
    int n_cols
    int n_edges
    int k
    int rule
    long long row_target
    long long col_target
    int *erow
    int *ecol
    int *chosen
    int n_chosen
    int *row_cov
    int *col_cov
    int unrow
    int uncol
    long long examined
    int *parent
    long long *mat
    int *prev_twin


cdef int uf_find(int *parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef bint components_ok(Ctx *c) nogil:
    cdef int nv = c.n_rows + c.n_cols
    cdef int i, a, b, v
    cdef int rows[MAXV]
    cdef int cols[MAXV]
    for i in range(nv):
        c.parent[i] = i
        rows[i] = 0
        cols[i] = 0
    for i in range(c.n_chosen):
        a = uf_find(c.parent, c.erow[c.chosen[i]])
        b = uf_find(c.parent, c.n_rows + c.ecol[c.chosen[i]])
        if a != b:
            c.parent[a] = b
    for i in range(c.n_rows):
        rows[uf_find(c.parent, i)] += 1
    for i in range(c.n_cols):
        cols[uf_find(c.parent, c.n_rows + i)] += 1
    for v in range(nv):
        if (rows[v] or cols[v]) and rows[v] * c.row_target != cols[v] * c.col_target:
            return False
    return True


cdef int bareiss_rank(long long *m, int n_r, int n_c, int stride) nogil:
    cdef int rank = 0, col, i, j, piv
    cdef long long prev = 1, p, a, tmp
    for col in range(n_c):
        piv = -1
        for i in range(rank, n_r):
            if m[i * stride + col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(n_c):
                tmp = m[rank * stride + j]
                m[rank * stride + j] = m[piv * stride + j]
                m[piv * stride + j] = tmp
        p = m[rank * stride + col]
        for i in range(rank + 1, n_r):
            a = m[i * stride + col]
            for j in range(col + 1, n_c):
                m[i * stride + j] = (p * m[i * stride + j] - a * m[rank * stride + j]) / prev
            m[i * stride + col] = 0
        prev = p
        rank += 1
        if rank == n_r:
            break
    return rank


cdef bint rank_ok(Ctx *c) nogil:
    cdef int k = c.n_chosen
    cdef int n_eq = c.n_rows + c.n_cols
    cdef int stride = k + 1
    cdef int i, j, r_aug, r_plain
    cdef long long *m = c.mat
    for i in range(2):
        memset(m, 0, n_eq * stride * sizeof(long long))
        for j in range(k):
            m[c.erow[c.chosen[j]] * stride + j] = 1
            m[(c.n_rows + c.ecol[c.chosen[j]]) * stride + j] = 1
        if i == 0:
            for j in range(c.n_rows):
                m[j * stride + k] = c.row_target
            for j in range(c.n_cols):
                m[(c.n_rows + j) * stride + k] = c.col_target
            r_aug = bareiss_rank(m, n_eq, k + 1, stride)
        else:
            r_plain = bareiss_rank(m, n_eq, k, stride)
    return r_plain == r_aug


cdef bint rec(Ctx *c, int idx) nogil:
    cdef int slots = c.k - c.n_chosen
    cdef int first_uncov, e, r, col
    cdef bint hit
    if slots == 0:
        if c.unrow == 0 and c.uncol == 0:
            c.examined += 1
            if c.rule == 0:
                return components_ok(c)
            return rank_ok(c)
        return False
    if slots < c.unrow or slots < c.uncol:
        return False
    first_uncov = 0
    while first_uncov < c.n_rows and c.row_cov[first_uncov]:
        first_uncov += 1
    for e in range(idx, c.n_edges - slots + 1):
        r = c.erow[e]
        if r > first_uncov:
            break
        col = c.ecol[e]
        if c.col_cov[col] == 0 and c.prev_twin[col] >= 0 and c.col_cov[c.prev_twin[col]] == 0:
            continue
        c.chosen[c.n_chosen] = e
        c.n_chosen += 1
        if c.row_cov[r] == 0:
            c.unrow -= 1
        if c.col_cov[col] == 0:
            c.uncol -= 1
        c.row_cov[r] += 1
        c.col_cov[col] += 1
        hit = rec(c, e + 1)
        c.row_cov[r] -= 1
        c.col_cov[col] -= 1
        if c.row_cov[r] == 0:
            c.unrow += 1
        if c.col_cov[col] == 0:
            c.uncol += 1
        c.n_chosen -= 1
        if hit:
            return True
    return False


def min_cover_search(int n_rows, int n_cols, edges, int k_lo, int k_hi, int rule,
                     long long row_target, long long col_target):
    """Smallest ``k`` in ``[k_lo, k_hi]`` admitting a feasible covering edge subset.

    Returns ``(k, witness_indices, examined)``; ``k = -1`` if none.
    """
    cdef Ctx c
    cdef int E = len(edges)
    cdef int k, i
    cdef bint hit
    if n_rows + n_cols > MAXV or E > MAXE:
        raise ValueError("instance exceeds compiled kernel limits")
    c.n_rows = n_rows
    c.n_cols = n_cols
    c.n_edges = E
    c.rule = rule
    c.row_target = row_target
    c.col_target = col_target
    c.examined = 0
    c.erow = <int *> malloc(E * sizeof(int) + 1)
    c.ecol = <int *> malloc(E * sizeof(int) + 1)
    c.chosen = <int *> malloc(E * sizeof(int) + 1)
    c.row_cov = <int *> malloc(n_rows * sizeof(int) + 1)
    c.col_cov = <int *> malloc(n_cols * sizeof(int) + 1)
    c.parent = <int *> malloc((n_rows + n_cols) * sizeof(int) + 1)
    c.mat = <long long *> malloc((n_rows + n_cols) * (E + 1) * sizeof(long long) + 8)
    c.prev_twin = <int *> malloc(n_cols * sizeof(int) + 1)
    try:
        for i in range(E):
            c.erow[i] = edges[i][0]
            c.ecol[i] = edges[i][1]
        for i, t in enumerate(_column_twins(n_cols, edges)):
            c.prev_twin[i] = t
        for k in range(max(k_lo, 0), k_hi + 1):
            memset(c.row_cov, 0, n_rows * sizeof(int))
            memset(c.col_cov, 0, n_cols * sizeof(int))
            c.n_chosen = 0
            c.unrow = n_rows
            c.uncol = n_cols
            c.k = k
            with nogil:
                hit = rec(&c, 0)
            if hit:
                return k, [c.chosen[i] for i in range(k)], c.examined
        return -1, None, c.examined
    finally:
        free(c.erow)
        free(c.ecol)
        free(c.chosen)
        free(c.row_cov)
        free(c.col_cov)
        free(c.parent)
        free(c.mat)
        free(c.prev_twin)
