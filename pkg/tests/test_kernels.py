import math
import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from simultile import kernels
from simultile._kernels_py import _column_twins, integer_rank


def fraction_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for col in range(len(m[0]) if m else 0):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


int_matrices = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(int_matrices)
def test_bareiss_rank_matches_fraction_rank(mat):
    assert integer_rank([row[:] for row in mat]) == fraction_rank(mat)


def test_rank_of_singular_examples():
    assert integer_rank([[1, 2], [2, 4]]) == 1
    assert integer_rank([[0, 0], [0, 0]]) == 0
    assert integer_rank([[0, 1, 1], [1, 0, 1], [1, 1, 0]]) == 3


def test_column_twins():
    # columns 0 and 2 share rows {0, 1}; column 1 is alone
    edges = [(0, 0), (0, 2), (1, 0), (1, 2), (1, 1)]
    assert _column_twins(3, edges) == [-1, -1, 0]


def _instances():
    out = []
    for n in range(1, 5):
        for m in range(1, 5):
            full = [(i, j) for i in range(n) for j in range(m)]
            out.append((n, m, full, kernels.RULE_COMPONENT, m, n))
            L = n * m // math.gcd(n, m)
            cells = sorted((t % n, t % m) for t in range(L))
            out.append((n, m, cells, kernels.RULE_RANK, m, n))
    return out


@pytest.mark.skipif("cython" not in kernels.available_backends(), reason="extension not built")
@pytest.mark.parametrize("n, m, edges, rule, rt, ct", _instances())
def test_backends_agree(n, m, edges, rule, rt, ct):
    lo, hi = max(n, m), len(edges)
    a = kernels.min_cover_search(n, m, edges, lo, hi, rule, rt, ct, backend="cython")
    b = kernels.min_cover_search(n, m, edges, lo, hi, rule, rt, ct, backend="python")
    assert a == b


@pytest.mark.parametrize("backend", kernels.available_backends())
def test_infeasible_range_reports_minus_one(backend):
    # a 2x3 instance has no feasible pattern below 4 cells
    edges = [(i, j) for i in range(2) for j in range(3)]
    k, witness, _ = kernels.min_cover_search(2, 3, edges, 3, 3, kernels.RULE_COMPONENT, 3, 2,
                                             backend=backend)
    assert k == -1 and not witness


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.min_cover_search(1, 1, [(0, 0)], 1, 1, 0, 1, 1, backend="fortran")


def test_pure_python_selected_by_environment():
    env = dict(os.environ, SIMULTILE_PURE_PYTHON="1")
    code = "from simultile import kernels; print(kernels.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
