from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st
from math import gcd

from sphersheets.linalg import determinant
from sphersheets.rootcore import (
    RootSystemError,
    build_root_system,
    central_coweights,
    fundamental_group,
    in_coroot_lattice,
    lie_algebra_dimension,
    smith_normal_form,
)

from conftest import ALL_TYPES


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_cartan_shape(t, n):
    rs = build_root_system(t, n)
    for i, row in enumerate(rs.cartan_matrix):
        assert row[i] == 2
        assert all(v <= 0 for j, v in enumerate(row) if j != i)


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_root_count_matches_dimension(t, n):
    rs = build_root_system(t, n)
    assert len(rs.positive_roots) == (lie_algebra_dimension(t, n) - n) // 2
    assert rs.dimension == lie_algebra_dimension(t, n)


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_roots_closed_under_simple_reflections(t, n):
    rs = build_root_system(t, n)
    roots = set(rs.roots)
    for i in range(n):
        simple = tuple(int(j == i) for j in range(n))
        assert {rs.reflect_root(r, simple) for r in roots} == roots


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_highest_root(t, n):
    rs = build_root_system(t, n)
    beta = rs.highest_root_coeffs
    assert all(all(b >= c for b, c in zip(beta, r)) for r in rs.positive_roots)
    tops = [
        r for r in rs.positive_roots
        if all(tuple(a + int(j == i) for j, a in enumerate(r)) not in rs.root_set for i in range(n))
    ]
    assert tops == [beta]


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_determinant_is_centre_order(t, n):
    rs = build_root_system(t, n)
    assert determinant(rs.cartan_matrix) == fundamental_group(rs).order


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_simple_roots_dual_to_fundamental_coweights(t, n):
    rs = build_root_system(t, n)
    for i in range(n):
        root = tuple(int(j == i) for j in range(n))
        for j in range(n):
            assert rs.pairing(root, tuple(Fraction(int(k == j)) for k in range(n))) == int(i == j)


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_e_coordinates_round_trip(t, n):
    rs = build_root_system(t, n)
    for r in rs.roots:
        assert tuple(rs.from_e(rs.to_e(r))) == tuple(Fraction(c) for c in r)


def test_highest_roots_from_the_tables():
    assert build_root_system("C", 5).highest_root_coeffs == (2, 2, 2, 2, 1)
    assert build_root_system("E", 7).highest_root_coeffs == (2, 2, 3, 4, 3, 2, 1)
    a1 = build_root_system("A", 1)
    assert a1.positive_roots == ((1,),) and a1.highest_root_coeffs == (1,)


def test_root_counts():
    assert len(build_root_system("C", 6).positive_roots) == 36
    assert len(build_root_system("E", 8).positive_roots) == 120


@pytest.mark.parametrize(
    "t,n,factors",
    [("D", 4, (2, 2)), ("D", 6, (2, 2)), ("D", 5, (4,)), ("D", 7, (4,)), ("A", 4, (5,)), ("E", 6, (3,)), ("E", 8, ())],
)
def test_fundamental_group(t, n, factors):
    assert fundamental_group(build_root_system(t, n)).invariant_factors == factors


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_central_coweights_distinct(t, n):
    rs = build_root_system(t, n)
    reps = central_coweights(rs)
    group = fundamental_group(rs)
    assert len({group.coordinates(w) for w in reps}) == group.order == len(reps)
    assert not any(reps[0])
    assert all(in_coroot_lattice(rs, c) for c in rs.simple_coroots)


@pytest.mark.parametrize("t,n", [("B", 2), ("A", 0), ("E", 5), ("D", 3), ("G", 3), ("X", 2)])
def test_invalid_types(t, n):
    with pytest.raises(RootSystemError):
        build_root_system(t, n)


def _diagonal(d):
    return [d[i][i] for i in range(min(len(d), len(d[0])))]


def test_smith_examples():
    assert _diagonal(smith_normal_form([[1, 0], [0, 1]])[1]) == [1, 1]
    assert _diagonal(smith_normal_form([[2, -1], [-1, 2]])[1]) == [1, 3]
    d4 = build_root_system("D", 4).cartan_matrix
    assert _diagonal(smith_normal_form([list(r) for r in d4])[1]) == [1, 1, 2, 2]


def _determinantal_divisors(m):
    """gcd of all k x k minors, the brute-force definition of the Smith invariants."""
    rows, cols = len(m), len(m[0])
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs_ in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, int(determinant([[m[i][j] for j in cs] for i in rs_])))
        out.append(g)
    return out


@st.composite
def integer_matrices(draw):
    rows = draw(st.integers(1, 4))
    cols = draw(st.integers(1, 4))
    return [[draw(st.integers(-6, 6)) for _ in range(cols)] for _ in range(rows)]


@given(integer_matrices())
def test_smith_matches_minors(m):
    u, d, v = smith_normal_form([row[:] for row in m])
    diag = _diagonal(d)
    divisors = _determinantal_divisors(m)
    prod = 1
    for k, dk in enumerate(divisors):
        prod *= abs(diag[k])
        assert prod == dk
    for a, b in zip(diag, diag[1:]):
        if a:
            assert b % a == 0
    # U M V = D
    um = [[sum(u[i][k] * m[k][j] for k in range(len(m))) for j in range(len(m[0]))] for i in range(len(m))]
    umv = [[sum(um[i][k] * v[k][j] for k in range(len(m[0]))) for j in range(len(m[0]))] for i in range(len(m))]
    assert umv == d
