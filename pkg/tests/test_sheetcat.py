from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from sphersheets.orbitcalc import NilpotentOrbit, Partition
from sphersheets.rootcore import build_root_system
from sphersheets.sheetcat import (
    CatalogError,
    WeightMonoid,
    build_catalog,
    catalog,
    central_singletons,
    check_partition,
    lie_algebra_catalog,
    locate_class,
    monoid_bound,
    monoid_equal,
    sheet_vs_birational_regressions,
    supported_ranks,
    twist_names,
    twist_vector,
    verify,
    verify_lie_algebra,
    verify_main_theorem,
    weight_monoid,
)
from sphersheets.torus import RationalCoweight

F = Fraction


# brute-force monoid oracle -----------------------------------------------------------------------


def brute_elements(m: WeightMonoid, bound: int) -> set[tuple[int, ...]]:
    """All non-negative combinations of generators with coefficient sum at most ``bound``."""
    gens = m.generators
    out = set()
    if not gens:
        return {(0,) * m.ambient_rank}
    caps = [bound // max(1, sum(g)) for g in gens]
    for counts in product(*(range(c + 1) for c in caps)):
        w = tuple(sum(k * g[i] for k, g in zip(counts, gens)) for i in range(m.ambient_rank))
        if sum(w) <= bound and m.satisfies_congruences(w):
            out.add(w)
    return out


@st.composite
def monoids(draw, rank=None):
    rank = rank or draw(st.integers(1, 3))
    gens = draw(st.lists(st.tuples(*[st.integers(0, 2)] * rank), max_size=4))
    congs = []
    if draw(st.booleans()):
        subset = draw(st.sets(st.integers(1, rank), min_size=1))
        congs.append((tuple(subset), 2))
    return WeightMonoid(rank, tuple(gens), tuple(congs))


@given(monoids())
def test_membership_matches_brute_force(m):
    bound = 6
    brute = brute_elements(m, bound)
    for w in product(range(bound + 1), repeat=m.ambient_rank):
        if sum(w) <= bound:
            assert m.contains(w) == (w in brute)
    assert m.elements(bound) == brute


@given(monoids())
def test_normal_form_preserves_monoid(m):
    nf = m.normal_form()
    assert brute_elements(nf, 6) == brute_elements(m, 6)
    assert len(nf.generators) <= len(m.generators)


@given(st.integers(1, 3).flatmap(lambda r: st.tuples(monoids(rank=r), monoids(rank=r))))
def test_monoid_equal_matches_brute_force(pair):
    a, b = pair
    wide = monoid_bound(a, b) + 4
    assert monoid_equal(a, b) == (brute_elements(a, wide) == brute_elements(b, wide))


def test_monoid_examples():
    c2 = [weight_monoid(f) for f in build_catalog("C", 2)]
    assert monoid_equal(c2[0], c2[0])
    assert not monoid_equal(WeightMonoid(2, ((2, 0),)), WeightMonoid(2, ((0, 1),)))
    with pytest.raises(CatalogError):
        monoid_equal(WeightMonoid(2, ()), WeightMonoid(3, ()))
    with pytest.raises(CatalogError):
        WeightMonoid(2, ((1, -1),))
    with pytest.raises(CatalogError):
        WeightMonoid(2, ((1, 0),), (((1,), 1),))


@pytest.mark.parametrize("p", [2, 3, 4])
def test_c2p_monoid_coincidence(p):
    fams = [f for f in build_catalog("C", 2 * p) if f.kind == "pseudo" and f.node == p and any(x != "1" for x in f.datum.orbit)]
    assert len(fams) == 2
    assert monoid_equal(weight_monoid(fams[0]), weight_monoid(fams[1]))


# catalogs ----------------------------------------------------------------------------------------


@pytest.mark.parametrize("t,n,count", [("C", 2, 4), ("E", 8, 6), ("G", 2, 4), ("E", 6, 4), ("E", 7, 7), ("A", 1, 1)])
def test_family_counts(t, n, count):
    assert len(build_catalog(t, n)) == count


def test_a1_has_three_sheets():
    cat = catalog("A", 1)
    assert len(cat.sheets) == 3
    assert [f.tau for f in central_singletons("A", 1)] == ["{1}", "{z}"]
    assert [f.tau for f in central_singletons("A", 3)] == ["{1}", "{z}", "{z^2}", "{z^3}"]


def test_c2_table():
    fams = build_catalog("C", 2)
    assert [weight_monoid(f).generators for f in fams] == [((0, 2), (2, 0)), ((0, 1), (2, 0)), ((0, 1),), ((2, 0),)]
    assert [f.d for f in fams] == [1, 2, 1, 2]


def test_e7_congruence_row():
    row = next(f for f in build_catalog("E", 7) if f.tau.endswith("4A_1)"))
    m = weight_monoid(row)
    assert len(m.generators) == 7 and m.congruences == (((2, 5, 7), 2),)
    assert m.contains((0, 1, 0, 0, 1, 0, 0)) and not m.contains((0, 1, 0, 0, 0, 0, 0))


def test_central_monoid_is_zero():
    for f in central_singletons("C", 3):
        assert weight_monoid(f).generators == ()


def test_b2_is_rejected():
    with pytest.raises(CatalogError):
        catalog("B", 2)


@pytest.mark.parametrize("t,n", [(t, n) for t, n in supported_ranks() if t in "ABCD"])
def test_type_a_to_d_twists(t, n):
    names = twist_names(build_root_system(t, n))
    assert names[0] == "1"
    assert len(names) == len(set(names))


# invariants over every supported rank ---------------------------------------------------------------


@pytest.mark.parametrize("t,n", supported_ranks())
def test_partition_property(t, n):
    rep = check_partition(catalog(t, n))
    assert rep.ok, rep.text()
    cat = catalog(t, n)
    keys = [k for sh in cat.sheets for k in sh.keys]
    assert len(keys) == len(set(keys))


@pytest.mark.parametrize("t,n", supported_ranks())
def test_main_theorem(t, n):
    rep = verify_main_theorem(catalog(t, n))
    assert rep.ok, rep.text()
    if t != "D" or n != 4:
        assert not rep.warnings


@pytest.mark.parametrize("t,n", supported_ranks())
def test_verify_has_no_failures(t, n):
    rep = verify(t, n)
    assert rep.ok, "\n".join(c.line() for c in rep.failures)


@pytest.mark.parametrize("t,n", supported_ranks())
def test_d_matches_translate_count(t, n):
    cat = catalog(t, n)
    for fam in cat.families:
        if fam.golden_row.d is not None:
            assert fam.d == fam.golden_row.d
        assert cat.translate_counts[fam.index] == fam.d


@pytest.mark.parametrize("t,n", supported_ranks())
def test_lie_algebra(t, n):
    fams = lie_algebra_catalog(t, n)
    assert verify_lie_algebra(t, n).ok
    for a in fams:
        for b in fams:
            if a is not b:
                assert not monoid_equal(a.weight_monoid, b.weight_monoid)


def test_c2_lie_algebra():
    fams = {f.name: f for f in lie_algebra_catalog("C", 2)}
    assert fams["l_1"].nilpotent is None
    assert fams["l_2"].nilpotent == "[2^2]"
    assert "[2,1^2]" in fams and "[1^4]" in fams


# locating classes ----------------------------------------------------------------------------------


def test_locate_c2():
    rs = build_root_system("C", 2)
    assert locate_class(rs, RationalCoweight((F(1, 2), F(0))), ("1", "1")).family.tau == "(M_1, {sigma_1}, {1})"
    assert locate_class(rs, RationalCoweight((F(1, 5), F(0)))).family.tau == "(L_1, Z(L_1)°, {1})"
    assert locate_class(rs, RationalCoweight((F(0), F(1, 3)))).family.tau == "(L_2, Z(L_2), {1})"
    central = locate_class(rs, RationalCoweight.zero(2))
    assert central.family.kind == "central" and central.twist == "1"


def test_locate_is_invariant_under_weyl_and_lattice():
    rs = build_root_system("C", 2)
    a = locate_class(rs, RationalCoweight((F(1, 5), F(0))))
    # s_1 then a coroot shift
    moved = RationalCoweight((F(-1, 5), F(2, 5))) + RationalCoweight.of(rs.simple_coroots[0])
    assert locate_class(rs, moved) == a
    # a translate by the central twist lands in the twisted sheet of the same family
    twisted = locate_class(rs, RationalCoweight((F(1, 5), F(0))) + RationalCoweight.of(twist_vector(rs, "z")))
    assert twisted.family == a.family and twisted.twist == "z"


def test_locate_rejects_non_spherical():
    rs = build_root_system("C", 3)
    with pytest.raises(CatalogError):
        locate_class(rs, RationalCoweight.zero(3), NilpotentOrbit.classical("C", 3, Partition.of(6)))
    with pytest.raises(CatalogError):
        locate_class(rs, RationalCoweight((F(1, 7), F(1, 5), F(0))))


# regressions ------------------------------------------------------------------------------------------


@pytest.mark.parametrize("t,n", [("C", 2), ("C", 3), ("C", 4), ("C", 8), ("B", 4), ("B", 5), ("B", 6), ("B", 8)])
def test_regressions(t, n):
    rep = sheet_vs_birational_regressions(t, n)
    assert rep.ok and len(rep.checks) >= 1, rep.text()


def test_regressions_only_for_b_and_c():
    with pytest.raises(CatalogError):
        sheet_vs_birational_regressions("D", 4)


def test_c_rank_warns_on_printed_size():
    rep = verify("C", 4)
    assert any("[2^2,1^4]" in c.detail and "size" in c.detail for c in rep.warnings)
