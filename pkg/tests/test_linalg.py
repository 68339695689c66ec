from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from grapeshot import SwiatkowskiComplex, elementary_grape, theta_graph
from grapeshot.linalg import (determinant, identity, matmul, nullspace_q, rank_q,
                              reduce_chain_complex, same_column_span, smith_normal_form,
                              solve_q)
from grapeshot.oracle import discretized_config_complex, subdivide_for

from conftest import k33, two_grapes


def diag_matrix(d, m, n):
    D = [[0] * n for _ in range(m)]
    for i, x in enumerate(d):
        D[i][i] = x
    return D


def test_snf_examples():
    assert smith_normal_form(identity(3)).diagonal == [1, 1, 1]
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == [2, 4]
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == []
    assert smith_normal_form([], (0, 3)).diagonal == []


matrices = st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                       min_size=m, max_size=m)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_transforms_and_divisibility(M):
    m, n = len(M), len(M[0])
    s = smith_normal_form(M)
    assert matmul(matmul(s.U, M), s.V) == diag_matrix(s.diagonal, m, n)
    assert matmul(s.U, s.U_inv) == identity(m)
    assert matmul(s.V, s.V_inv) == identity(n)
    assert abs(determinant(s.U)) == 1 and abs(determinant(s.V)) == 1
    assert all(x > 0 for x in s.diagonal)
    assert all(b % a == 0 for a, b in zip(s.diagonal, s.diagonal[1:]))


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_snf_matches_sympy_invariant_factors(M):
    ours = smith_normal_form(M).diagonal
    theirs = [abs(int(x)) for x in invariant_factors(Matrix(M), domain=ZZ) if x != 0]
    assert ours == theirs


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rational_helpers(M):
    m, n = len(M), len(M[0])
    r = rank_q(M, n)
    assert r == Matrix(M).rank()
    ker = nullspace_q(M, n)
    assert len(ker) == n - r
    for x in ker:
        assert all(sum(Fraction(row[j]) * x[j] for j in range(n)) == 0 for row in M)
    cols = [[M[i][j] for i in range(m)] for j in range(n)]
    b = [sum(cols[j][i] for j in range(n)) for i in range(m)]
    x = solve_q(cols, b, m)
    assert [sum(x[j] * cols[j][i] for j in range(n)) for i in range(m)] == b
    assert same_column_span(cols, cols + [b], m)


def test_solve_q_inconsistent():
    assert solve_q([[1, 0]], [0, 1], 2) is None


# ------------------------------------------------------------------ reduction

def test_projective_plane_has_two_torsion():
    # one cell in each dimension, d_2 = 2, d_1 = 0
    red = reduce_chain_complex([1, 1, 1], [[{}], [{}], [{0: 2}]])
    assert [h.betti for h in red.homology] == [1, 0, 0]
    assert red.homology[1].torsion == [2]


def rank_betti(cells, boundary):
    """Betti numbers from ranks over Q, a route that never touches the reduction."""
    ranks = [0]
    for d in range(1, len(cells)):
        rows = [[0] * cells[d] for _ in range(cells[d - 1])]
        for j, col in enumerate(boundary[d]):
            for i, c in col.items():
                rows[i][j] = c
        ranks.append(rank_q(rows, cells[d]) if rows else 0)
    ranks.append(0)
    return [cells[d] - ranks[d] - ranks[d + 1] for d in range(len(cells))]


def dense_torsion(cells, boundary, d):
    """Torsion of H_d from the dense SNF of d_{d+1}."""
    if d + 1 >= len(cells):
        return []
    rows = [[0] * cells[d + 1] for _ in range(cells[d])]
    for j, col in enumerate(boundary[d + 1]):
        for i, c in col.items():
            rows[i][j] = c
    return [x for x in smith_normal_form(rows, (cells[d], cells[d + 1])).diagonal if x > 1]


def cube_data(g, k):
    cc = discretized_config_complex(subdivide_for(g, k), k)
    return cc.counts, cc.boundary


def swiatkowski_data(g, k):
    cx = SwiatkowskiComplex(g)
    top = cx.top_degree(k)
    return ([len(cx.basis(d, k)) for d in range(top + 1)],
            [cx.boundary_columns(d, k) for d in range(top + 1)])


@pytest.mark.parametrize("make, g, k", [
    (cube_data, elementary_grape(1, 1), 2), (cube_data, theta_graph(), 2),
    (cube_data, two_grapes(), 2), (swiatkowski_data, k33(), 2),
    (swiatkowski_data, two_grapes(), 3)])
def test_reduction_agrees_with_rank_and_dense_snf(make, g, k):
    cells, boundary = make(g, k)
    red = reduce_chain_complex(cells, boundary, track=False)
    assert [h.betti for h in red.homology] == rank_betti(cells, boundary)
    for d in range(len(cells)):
        assert red.homology[d].torsion == dense_torsion(cells, boundary, d)


@pytest.mark.parametrize("g, k", [(elementary_grape(1, 1), 3), (elementary_grape(0, 3), 3),
                                  (theta_graph(), 4), (two_grapes(), 3)])
def test_representatives_and_projection(g, k):
    cx = SwiatkowskiComplex(g)
    red = cx.reduced(k)
    for d in range(red.top + 1):
        h = red.homology[d]
        n = h.betti
        # representatives are cycles whose coordinates form the identity
        for j, rep in enumerate(h.representatives):
            if d:
                basis = cx.basis(d, k)
                chain = {basis[i]: c for i, c in rep.items()}
                assert cx.boundary(chain) == {}
            assert red.coords(d, rep) == [int(i == j) for i in range(n)]
        # boundaries project to zero
        if d < red.top:
            for col in cx.boundary_columns(d + 1, k):
                assert red.coords(d, col) == [0] * n
