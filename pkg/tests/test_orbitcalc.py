from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from sphersheets.orbitcalc import (
    NilpotentOrbit,
    OrbitError,
    Partition,
    collapse,
    dominates,
    dual_partition,
    has_full_members,
    induce_type_A,
    is_birationally_rigid,
    is_spherical_nilpotent,
    levi_blocks,
    orbit_dimension,
    partitions_of,
    richardson_for_levi,
    richardson_from_blocks,
    spherical_nilpotent_orbits,
    validate_partition,
)
from sphersheets.rootcore import lie_algebra_dimension

P = Partition.from_multiplicities
NATURAL = {"B": lambda n: 2 * n + 1, "C": lambda n: 2 * n, "D": lambda n: 2 * n}


def valid_by_parity(t, d):
    bad = {"B": 0, "C": 1, "D": 0}[t]
    return all(m % 2 == 0 for v, m in Counter(d.parts).items() if v % 2 == bad)


def brute_collapse(t, d):
    """The unique maximum, in dominance order, of the valid partitions below ``d``."""
    below = [q for q in partitions_of(d.size) if valid_by_parity(t, q) and dominates(d, q)]
    tops = [q for q in below if all(dominates(q, r) for r in below)]
    assert len(tops) == 1
    return tops[0]


def full_members(d):
    parts = list(d.parts)
    return not parts or (parts[-1] == 1 and all(a - b <= 1 for a, b in zip(parts, parts[1:])))


def rank_of(t, size):
    return (size - 1) // 2 if t == "B" else size // 2


# examples -------------------------------------------------------------------------------------


def test_dual_examples():
    assert dual_partition(Partition.of(5)) == P([(1, 5)])
    assert dual_partition(Partition.of(3, 1)) == Partition.of(2, 1, 1)
    for n in range(2, 8):
        for i in range(1, (n + 1) // 2 + 1):
            assert richardson_for_levi("A", n, {i}).partition == dual_partition(Partition.of(n + 1 - i, i))


def test_validity_examples():
    assert validate_partition("C", 5, P([(2, 5)]))
    assert validate_partition("B", 5, P([(3, 1), (2, 4)]))
    assert not validate_partition("C", 2, Partition.of(3, 1))


@pytest.mark.parametrize("n", range(2, 8))
def test_collapse_examples(n):
    assert collapse("C", n, P([(3, 1), (1, 2 * n - 3)])) == P([(2, 2), (1, 2 * n - 4)])
    already = P([(2, n)])
    assert collapse("C", n, already) == already


@pytest.mark.parametrize("m", range(1, 5))
def test_collapse_b_even(m):
    assert collapse("B", 2 * m, P([(3, 1), (2, 2 * m - 1)])) == P([(3, 1), (2, 2 * (m - 1)), (1, 2)])


def test_dimension_examples():
    assert orbit_dimension(NilpotentOrbit.zero("C", 3)) == 0
    assert orbit_dimension(NilpotentOrbit.classical("C", 2, Partition.of(2, 2))) == 6
    for n in range(2, 8):
        assert orbit_dimension(NilpotentOrbit.classical("C", n, P([(2, 1), (1, 2 * n - 2)]))) == 2 * n


@pytest.mark.parametrize("n", range(2, 9))
def test_richardson_examples(n):
    assert richardson_from_blocks("C", n, [n]).partition == P([(2, n)])
    assert richardson_from_blocks("B", n, [1], n - 1).partition == P([(3, 1), (1, 2 * n - 2)])
    if n % 2:
        assert richardson_from_blocks("D", n, [n]).partition == P([(2, n - 1), (1, 2)])


def test_induce_type_a():
    assert induce_type_A([Partition.of(1), Partition.of(1), Partition.of(1)]) == Partition.of(3)
    assert induce_type_A([Partition.of(2, 1, 1)]) == Partition.of(2, 1, 1)
    assert induce_type_A([Partition.of(2, 1), Partition.of(1, 1, 1)]) == Partition.of(3, 2, 1)
    for n in range(2, 8):
        for d in partitions_of(n):
            zeros = [P([(1, b)]) for b in d.parts]
            assert induce_type_A(zeros) == dual_partition(d)
    out = induce_type_A([Partition.of(2, 1), Partition.of(1, 1, 1)])
    lie_dim = 6 * 6 - 1
    levi_dim = 9 + 9 - 1
    o_l = orbit_dimension(NilpotentOrbit.classical("A", 2, Partition.of(2, 1)))
    assert orbit_dimension(NilpotentOrbit.classical("A", 5, out)) == o_l + lie_dim - levi_dim


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 5) for b in range(1, 5)])
def test_type_a_induction_is_dimension_additive(a, b):
    n = a + b
    for x in partitions_of(a):
        for y in partitions_of(b):
            out = induce_type_A([x, y])
            inner = sum(
                orbit_dimension(NilpotentOrbit.classical("A", p.size - 1, p)) if p.size > 1 else 0
                for p in (x, y)
            )
            levi_dim = a * a + b * b - 1
            assert orbit_dimension(NilpotentOrbit.classical("A", n - 1, out)) == inner + (n * n - 1) - levi_dim


def test_full_members_examples():
    assert has_full_members(P([(1, 7)]))
    for n in range(3, 8):
        assert has_full_members(P([(2, 2), (1, 2 * n - 4)]))
    assert not has_full_members(Partition.of(4, 2))


def test_rigidity_examples():
    for n in range(1, 6):
        for d in partitions_of(n + 1):
            orbit = NilpotentOrbit.classical("A", n, d)
            assert is_birationally_rigid(orbit) == orbit.is_zero
    for n in (5, 7):
        assert not is_birationally_rigid(NilpotentOrbit.classical("D", n, P([(2, n - 1), (1, 2)])))
    assert is_birationally_rigid(NilpotentOrbit.exceptional("E", 7, "A2+A1"))
    assert is_birationally_rigid(NilpotentOrbit.exceptional("E", 7, "A4+A1"))
    assert is_birationally_rigid(NilpotentOrbit.exceptional("E", 8, "A4+2A1"))


def test_spherical_examples():
    for n in range(1, 7):
        for k in range(1, n + 1):
            assert is_spherical_nilpotent(NilpotentOrbit.classical("C", n, P([(2, k), (1, 2 * n - 2 * k)])))
    assert is_spherical_nilpotent(NilpotentOrbit.exceptional("E", 8, "4A1"))
    assert not is_spherical_nilpotent(NilpotentOrbit.classical("C", 2, Partition.of(4)))


def test_invalid_orbits():
    with pytest.raises(OrbitError):
        NilpotentOrbit.classical("C", 2, Partition.of(3, 1))
    with pytest.raises(OrbitError):
        NilpotentOrbit.classical("D", 4, Partition.of(2, 2, 2, 2))
    with pytest.raises(OrbitError):
        NilpotentOrbit.classical("D", 4, Partition.of(3, 1, 1, 1, 1, 1), "I")


# exhaustive and property checks -------------------------------------------------------------------


@pytest.mark.parametrize("t", "BCD")
@pytest.mark.parametrize("size", range(2, 15))
def test_collapse_matches_brute_force(t, size):
    if (t == "B") != (size % 2 == 1):
        return
    n = rank_of(t, size)
    for d in partitions_of(size):
        got = collapse(t, n, d)
        assert got == brute_collapse(t, d)
        assert validate_partition(t, n, got) and dominates(d, got)


@pytest.mark.parametrize("size", range(1, 15))
def test_dual_involution(size):
    for d in partitions_of(size):
        assert dual_partition(dual_partition(d)) == d


@pytest.mark.parametrize("t", "BCD")
@pytest.mark.parametrize("size", range(2, 15))
def test_rigidity_is_full_members(t, size):
    if (t == "B") != (size % 2 == 1):
        return
    n = rank_of(t, size)
    if t == "D" and n < 4 or t == "B" and n < 2:
        return
    for d in partitions_of(size):
        if not valid_by_parity(t, d):
            continue
        markers = ["I", "II"] if t == "D" and all(p % 2 == 0 for p in d.parts) else [None]
        for mk in markers:
            orbit = NilpotentOrbit.classical(t, n, d, mk)
            exception = t == "D" and n % 2 == 1 and d == P([(2, n - 1), (1, 2)])
            assert is_birationally_rigid(orbit) == (full_members(d) and not exception)


def iterated_richardson(t, blocks, residual):
    """Induce one GL block at a time: add 2 to the first ``b`` parts, then collapse."""
    size = NATURAL[t](residual)
    parts = [1] * size
    for b in reversed(blocks):
        padded = parts + [0] * max(0, b - len(parts))
        padded = [p + 2 if i < b else p for i, p in enumerate(padded)]
        parts = list(brute_collapse(t, Partition.of(*[p for p in padded if p])).parts)
    return Partition.of(*parts)


@st.composite
def classical_levis(draw):
    t = draw(st.sampled_from("BCD"))
    n = draw(st.integers(4 if t == "D" else 2, 7))
    removed = draw(st.sets(st.integers(1, n), min_size=1))
    return t, n, removed


@given(classical_levis())
def test_richardson_matches_iterated_induction(levi):
    t, n, removed = levi
    blocks, residual = levi_blocks(t, n, removed)
    if t == "D" and residual == 1:
        return
    orbit = richardson_for_levi(t, n, removed)
    assert orbit.partition == iterated_richardson(t, blocks, residual)


def _levi_dim(t, blocks, residual):
    base = {"B": residual * (2 * residual + 1), "C": residual * (2 * residual + 1), "D": residual * (2 * residual - 1)}
    return sum(b * b for b in blocks) + base[t]


@pytest.mark.parametrize("t", "ABCD")
@pytest.mark.parametrize("n", range(2, 9))
def test_richardson_dimension_for_all_levis(t, n):
    if t == "D" and n < 4:
        return
    dim_g = lie_algebra_dimension(t, n)
    for size in range(1, 3):
        for removed in combinations(range(1, n + 1), size):
            orbit = richardson_for_levi(t, n, set(removed))
            blocks, residual = levi_blocks(t, n, set(removed))
            dim_l = sum(b * b for b in blocks) - 1 if t == "A" else _levi_dim(t, blocks, residual)
            assert orbit_dimension(orbit) == dim_g - dim_l


@pytest.mark.parametrize("t", "BCD")
@pytest.mark.parametrize("n", range(4, 9))
def test_spherical_levi_richardson_rigidity(t, n):
    # among L_1 and L_n only C_n, L_1 and B_2m, L_n induce a birationally rigid orbit
    rigid = {k for k in (1, n) if is_birationally_rigid(richardson_for_levi(t, n, {k}))}
    expected = {"C": {1}, "B": {n} if n % 2 == 0 else set(), "D": set()}[t]
    assert rigid == expected


@pytest.mark.parametrize("t,n,count", [("E", 6, 4), ("E", 7, 6), ("E", 8, 5), ("F", 4, 4), ("G", 2, 3)])
def test_exceptional_spherical_lists(t, n, count):
    orbits = spherical_nilpotent_orbits(t, n)
    assert len(orbits) == count and orbits[0].is_zero
    bound = (lie_algebra_dimension(t, n) - n) // 2 + n
    assert all(orbit_dimension(o) <= bound for o in orbits)


@pytest.mark.parametrize("t", "BCD")
@pytest.mark.parametrize("n", range(4, 9))
def test_classical_spherical_dimension_bound(t, n):
    bound = (lie_algebra_dimension(t, n) - n) // 2 + n
    for o in spherical_nilpotent_orbits(t, n):
        assert orbit_dimension(o) <= bound
