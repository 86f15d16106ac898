"""Catalog of spherical birational sheets, weight monoids and the checks built on them.

Table rows come from the shipped JSON files (see :mod:`sphersheets.golden`).  For
every row the decomposition datum, the member classes and ``d`` are recomputed
from the root data; :func:`verify` diffs the two.  Weight monoids are read from
the tables only.

Class descriptors are hashable keys:

* ``("central", twist, orbit)`` for ``z u`` with ``z`` central,
* ``("point", alcove_point, labels)`` for ``s u`` with ``s`` isolated, the labels
  sitting on the factors of the standard pseudo-Levi at the alcove point,
* ``("family", faces)`` for a one-parameter semisimple family, ``faces`` being the
  alcove faces met by its generic points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from itertools import combinations
from pathlib import Path

from . import golden
from .golden import GoldenMember, GoldenOrbit, GoldenRow, GoldenTable
from .orbitcalc import (
    NilpotentOrbit,
    OrbitError,
    Partition,
    is_birationally_rigid,
    is_spherical_nilpotent,
    is_very_even,
    orbit_dimension,
    richardson_for_levi,
    spherical_nilpotent_orbits,
    validate_partition,
)
from .pseudolevi import (
    _component_index,
    PseudoLeviDescriptor,
    alcove_theta,
    center_structure,
    compute_dM,
    enumerate_spherical_pseudo_levis,
    labelled_point_key,
    levi_theta,
    node_root,
    pseudo_theta,
    satisfies_rp,
    sigma_element,
    standard_pseudo_levi,
    subsystem,
)
from .rootcore import RootSystem, build_root_system, central_coweights, in_coroot_lattice
from .torus import (
    RationalCoweight,
    TorusCoset,
    UnsupportedError,
    alcove_reduce,
    alcove_reduce_word,
    apply_word_to_coweight,
    centralizer_subsystem,
)


class CatalogError(ValueError):
    """Invalid request or a class outside the spherical catalog."""


# weight monoids ------------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightMonoid:
    """``{sum of generators} ∩ {weights with sum_{i in S} n_i ≡ 0 mod m}``.

    Weights are coefficient vectors over the fundamental weights; congruence
    indices are 1-based.
    """

    ambient_rank: int
    generators: tuple[tuple[int, ...], ...]
    congruences: tuple[tuple[tuple[int, ...], int], ...] = ()

    def __post_init__(self):
        gens = tuple(tuple(int(c) for c in g) for g in self.generators)
        for g in gens:
            if len(g) != self.ambient_rank or any(c < 0 for c in g):
                raise CatalogError(f"generator {g} is not a dominant weight of rank {self.ambient_rank}")
        congs = tuple((tuple(sorted(int(i) for i in s)), int(m)) for s, m in self.congruences)
        for s, m in congs:
            if m < 2 or not s or any(not 1 <= i <= self.ambient_rank for i in s):
                raise CatalogError(f"bad congruence {s} mod {m}")
        object.__setattr__(self, "generators", tuple(sorted(set(gens) - {(0,) * self.ambient_rank})))
        object.__setattr__(self, "congruences", tuple(sorted(set(congs))))

    @classmethod
    def zero(cls, rank: int) -> "WeightMonoid":
        return cls(rank, ())

    def satisfies_congruences(self, weight: tuple[int, ...]) -> bool:
        return all(sum(weight[i - 1] for i in s) % m == 0 for s, m in self.congruences)

    def contains(self, weight) -> bool:
        weight = tuple(int(c) for c in weight)
        if len(weight) != self.ambient_rank or any(c < 0 for c in weight):
            return False
        return self.satisfies_congruences(weight) and _in_span(self.generators, weight)

    def elements(self, bound: int) -> frozenset[tuple[int, ...]]:
        """Members with coefficient sum at most ``bound``."""
        return frozenset(self.iter_elements(bound))

    def iter_elements(self, bound: int):
        """Members with coefficient sum at most ``bound``, generated layer by layer."""
        zero = (0,) * self.ambient_rank
        seen = {zero}
        layer = [(zero, 0)]
        yield zero
        while layer:
            nxt = []
            for w, total in layer:
                for g in self.generators:
                    t = total + sum(g)
                    if t > bound:
                        continue
                    v = tuple(a + b for a, b in zip(w, g))
                    if v not in seen:
                        seen.add(v)
                        nxt.append((v, t))
                        if self.satisfies_congruences(v):
                            yield v
            layer = nxt

    def normal_form(self) -> "WeightMonoid":
        """Drop generators that are sums of the others."""
        keep = []
        gens = sorted(self.generators, key=lambda g: (sum(g), g))
        for i, g in enumerate(gens):
            others = tuple(h for j, h in enumerate(gens) if j != i and sum(h) <= sum(g) and h not in keep[i:])
            if not _in_span(tuple(h for h in others if h != g), g):
                keep.append(g)
        return WeightMonoid(self.ambient_rank, tuple(keep), self.congruences)

    def describe(self) -> str:
        if not self.generators:
            return "0"
        body = "N{" + ", ".join(_weight_text(g) for g in self.generators) + "}"
        for s, m in self.congruences:
            body += f" | {'+'.join(f'n{i}' for i in s)} = 0 mod {m}"
        return body


def _weight_text(w: tuple[int, ...]) -> str:
    terms = [(f"{c}" if c > 1 else "") + f"w{i + 1}" for i, c in enumerate(w) if c]
    return terms[0] if len(terms) == 1 else "(" + "+".join(terms) + ")"


@cache
def _in_span(gens: tuple[tuple[int, ...], ...], w: tuple[int, ...]) -> bool:
    if not any(w):
        return True
    i = next(k for k, c in enumerate(w) if c)
    for g in gens:
        if g[i] and all(a <= b for a, b in zip(g, w)):
            if _in_span(gens, tuple(b - a for a, b in zip(g, w))):
                return True
    return False


def monoid_bound(a: WeightMonoid, b: WeightMonoid) -> int:
    moduli = [m for _, m in a.congruences + b.congruences] or [1]
    sums = [sum(g) for g in a.generators + b.generators] or [1]
    return 2 * max(moduli) * max(sums)


def monoid_equal(a: WeightMonoid, b: WeightMonoid) -> bool:
    """Mutual inclusion of all members up to the comparison bound."""
    if a.ambient_rank != b.ambient_rank:
        raise CatalogError("weight monoids of different ranks")
    bound = monoid_bound(a, b)
    return all(b.contains(w) for w in a.iter_elements(bound)) and all(a.contains(w) for w in b.iter_elements(bound))


# central elements -----------------------------------------------------------------------------


def _twist_name(rs: RootSystem, k: int) -> str:
    t, n = rs.type_label, rs.rank
    if t == "A":
        return "z" if k == 1 else f"z^{k}"
    if t == "D":
        return {1: "z1", n - 1: "zn-1", n: "zn"}[k]
    if rs.name == "E6":
        return {1: "z", 6: "z^2"}[k]
    return "z"


@cache
def twist_table(rs: RootSystem) -> tuple[tuple[str, tuple[int, ...]], ...]:
    """Names of the central elements with integral coweight representatives, identity first."""
    out = []
    for w in central_coweights(rs):
        name = "1" if not any(w) else _twist_name(rs, w.index(1) + 1)
        out.append((name, tuple(w)))
    return tuple(out)


def twist_names(rs: RootSystem) -> tuple[str, ...]:
    return tuple(name for name, _ in twist_table(rs))


def twist_vector(rs: RootSystem, name: str) -> tuple[int, ...]:
    if rs.type_label == "A" and name == "-1":
        if rs.rank % 2 == 0:
            raise CatalogError("-1 is not central in SL of odd degree")
        name = _twist_name(rs, (rs.rank + 1) // 2)
    for nm, w in twist_table(rs):
        if nm == name:
            return w
    raise CatalogError(f"unknown central element {name!r} for {rs.name}")


def is_central(rs: RootSystem, x: RationalCoweight) -> bool:
    return all(c.denominator == 1 for c in x.coords)


def twist_of(rs: RootSystem, x: RationalCoweight) -> str:
    return _twist_of(rs, x.coords)


@cache
def _twist_of(rs: RootSystem, coords: tuple) -> str:
    x = RationalCoweight(coords)
    for name, w in twist_table(rs):
        if in_coroot_lattice(rs, tuple(a - b for a, b in zip(x.coords, w))):
            return name
    raise CatalogError(f"{x} is not central")


# data types ---------------------------------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionDatum:
    """``(M, Z(M)° s, O^M)`` with ``O^M`` given by one label per simple factor of ``M``."""

    pseudo_levi: PseudoLeviDescriptor
    coset: TorusCoset
    orbit: tuple[str, ...]


@dataclass(frozen=True)
class SemisimpleFamily:
    node: int
    excluded: str
    faces: frozenset[frozenset[int]]


@dataclass(frozen=True)
class MemberClass:
    twist: str
    anchor: str
    orbit: str
    key: tuple = field(compare=False)

    def triple(self) -> tuple[str, str, str]:
        return self.twist, self.anchor, self.orbit

    def text(self) -> str:
        if self.anchor == "1":
            return f"{self.twist}·{self.orbit}"
        prefix = "" if self.twist == "1" else f"{self.twist}·"
        return f"{prefix}{self.anchor}·({self.orbit})"


@dataclass(frozen=True)
class Members:
    family: SemisimpleFamily | None
    isolated: tuple[MemberClass, ...]
    omitted: tuple[tuple[MemberClass, str], ...] = ()

    @property
    def candidates(self) -> tuple[MemberClass, ...]:
        return self.isolated + tuple(m for m, _ in self.omitted)


@dataclass(frozen=True)
class SheetFamily:
    index: int
    tau: str
    kind: str  # levi, pseudo, unipotent or central
    node: int | None
    datum: DecompositionDatum
    members: Members
    d: int
    weight_monoid: WeightMonoid
    golden_row: GoldenRow | None = field(default=None, compare=False, repr=False)

    def keys(self) -> frozenset[tuple]:
        out = {m.key for m in self.members.isolated}
        if self.members.family is not None:
            out.add(("family", self.members.family.faces))
        return frozenset(out)


@dataclass(frozen=True)
class Sheet:
    """One birational sheet: a row translated by a central element."""

    row: int
    twist: str
    keys: frozenset[tuple]


@dataclass(frozen=True)
class Catalog:
    rs: RootSystem
    table: GoldenTable
    families: tuple[SheetFamily, ...]
    central: tuple[SheetFamily, ...]
    sheets: tuple[Sheet, ...]
    candidate_sheets: dict = field(default_factory=dict, compare=False, repr=False)
    translate_counts: dict = field(default_factory=dict, compare=False, repr=False)

    def family(self, row: int) -> SheetFamily:
        return self.central[-row - 1] if row < 0 else self.families[row]


# orbit labels -------------------------------------------------------------------------------


def _classical_label(p: Partition) -> str:
    return "1" if all(x == 1 for x in p.parts) else p.compact()


def _factor_orbit(ftype: tuple[str, int], label: str) -> NilpotentOrbit | None:
    t, r = ftype
    if label == "1":
        return None
    if t not in "ABCD":
        raise CatalogError(f"factor labels are only supported on classical factors, got {t}{r}")
    p = Partition.parse(strip_marker(label))
    marker = "?" if t == "D" and is_very_even(p) else None
    return NilpotentOrbit.classical(t, r, p, marker)


def strip_marker(label: str) -> str:
    """Drop a very-even ``I``/``II`` suffix (kept in descriptor keys, not in displayed labels)."""
    return label.rstrip("I")


def _golden_factor_labels(orbit: GoldenOrbit, desc: PseudoLeviDescriptor) -> tuple[str, ...]:
    if orbit.kind == "trivial":
        return ("1",) * len(desc.components)
    if orbit.kind != "factors":
        raise CatalogError("pseudo-Levi data need per-factor orbits")
    if len(orbit.factors) != len(desc.components):
        raise CatalogError(f"{len(orbit.factors)} factor labels for {desc.type_string()}")
    return tuple("1" if f is None else _classical_label(Partition.from_multiplicities(list(f))) for f in orbit.factors)


def _golden_g_orbit(rs: RootSystem, orbit: GoldenOrbit) -> NilpotentOrbit:
    if orbit.kind == "partition":
        return NilpotentOrbit.classical(
            rs.type_label, rs.rank, Partition.from_multiplicities(list(orbit.partition)), orbit.marker
        )
    if orbit.kind == "label":
        return NilpotentOrbit.exceptional(rs.type_label, rs.rank, orbit.label)
    if orbit.kind == "trivial":
        return NilpotentOrbit.zero(rs.type_label, rs.rank)
    raise CatalogError("expected an orbit of G")


def levi_richardson(rs: RootSystem, k: int) -> NilpotentOrbit:
    """Orbit induced from the zero orbit of ``L_k``."""
    if rs.type_label in "ABCD":
        return richardson_for_levi(rs.type_label, rs.rank, {k})
    target = rs.dimension - (len(subsystem(rs, levi_theta(rs, k))) + rs.rank)
    found = [o for o in spherical_nilpotent_orbits(rs.type_label, rs.rank) if orbit_dimension(o) == target]
    if len(found) != 1:
        raise UnsupportedError(f"cannot identify the Richardson orbit of L_{k} in {rs.name} by dimension")
    return found[0]


def _dominant_in_factor(rs: RootSystem, comp: tuple[int, ...], v: tuple) -> tuple:
    changed = True
    while changed:
        changed = False
        for node in comp:
            r = node_root(rs, node)
            if rs.pairing(r, v) < 0:
                v = apply_word_to_coweight(rs, [r], v)
                changed = True
    return v


def induced_factor_labels(
    rs: RootSystem, target: PseudoLeviDescriptor, direction: tuple
) -> tuple[str, ...]:
    """Per factor of ``target``, the orbit induced from the Levi cut out by ``direction``."""
    labels = []
    for (t, r), comp in zip(target.component_types, target.components):
        v = _dominant_in_factor(rs, comp, direction)
        removed = {j + 1 for j, node in enumerate(comp) if rs.pairing(node_root(rs, node), v) != 0}
        if not removed:
            labels.append("1")
            continue
        if t not in "ABCD":
            raise UnsupportedError(f"induction inside an exceptional factor {t}{r}")
        orbit = richardson_for_levi(t, r, removed)
        labels.append(_classical_label(orbit.partition) + (orbit.marker or ""))
    return tuple(labels)


def _labels_rigid(target: PseudoLeviDescriptor, labels: tuple[str, ...]) -> bool:
    for ftype, lab in zip(target.component_types, labels):
        orbit = _factor_orbit(ftype, lab)
        if orbit is not None and not is_birationally_rigid(orbit):
            return False
    return True


# member classes ----------------------------------------------------------------------------------


@cache
def _reduce(rs: RootSystem, x: RationalCoweight) -> tuple[RationalCoweight, tuple]:
    a, word = alcove_reduce_word(rs, x)
    return a, tuple(word)


def _point_key(a: RationalCoweight, labels: tuple[str, ...]) -> tuple:
    return ("point", a.coords, labels)


def _central_member(rs: RootSystem, x: RationalCoweight, orbit: NilpotentOrbit) -> MemberClass:
    twist = twist_of(rs, x)
    return MemberClass(twist, "1", orbit.describe(), ("central", twist, orbit.describe()))


def _anchor_name(rs: RootSystem, a: RationalCoweight) -> tuple[str, str]:
    """``(twist, sigma_j)`` with ``a`` conjugate to ``twist * sigma_j``."""
    for name, w in twist_table(rs):
        for j in range(1, rs.rank + 1):
            if _reduce(rs, sigma_element(rs, j) + RationalCoweight.of(w))[0] == a:
                return name, f"sigma_{j}"
    raise UnsupportedError(f"no sigma-name for the point {a}")


def _isolated_member(rs: RootSystem, a: RationalCoweight, target, labels) -> MemberClass:
    twist, anchor = _anchor_name(rs, a)
    return MemberClass(twist, anchor, "x".join(map(strip_marker, labels)), _point_key(a, labels))


def _period(rs: RootSystem, k: int) -> int:
    t = 1
    while not in_coroot_lattice(rs, tuple(t * int(i == k - 1) for i in range(rs.rank))):
        t += 1
    return t


def _omega(rs: RootSystem, k: int, t: Fraction) -> RationalCoweight:
    return RationalCoweight(tuple(Fraction(t) * int(i == k - 1) for i in range(rs.rank)))


@cache
def levi_line(rs: RootSystem, k: int, shift: tuple[int, ...]):
    """Members and family faces of ``shift * exp(t omega_k)``.

    Returns ``(faces, candidates)`` where ``candidates`` pairs each member class
    met at a special parameter with whether it is birationally rigid in its
    centraliser (rigid ones are not members of this birational sheet).
    """
    c = rs.highest_root_coeffs[k - 1]
    if c > 2:
        raise UnsupportedError("semisimple families along omega_k need c_k <= 2")
    period = _period(rs, k)
    base = RationalCoweight.of(shift)
    direction = tuple(Fraction(int(i == k - 1)) for i in range(rs.rank))
    faces = set()
    for j in range(period * c):
        g = base + _omega(rs, k, Fraction(2 * j + 1, 2 * c))
        faces.add(alcove_theta(rs, _reduce(rs, g)[0]))
    seen: dict[tuple, tuple[MemberClass, bool]] = {}
    for j in range(period * c):
        x = base + _omega(rs, k, Fraction(j, c))
        if is_central(rs, x):
            orbit = levi_richardson(rs, k)
            m = _central_member(rs, x, orbit)
            seen.setdefault(m.key, (m, is_birationally_rigid(orbit)))
            continue
        a, word = _reduce(rs, x)
        target = standard_pseudo_levi(rs, alcove_theta(rs, a))
        v = apply_word_to_coweight(rs, word, direction)
        labels = induced_factor_labels(rs, target, v)
        m = _isolated_member(rs, a, target, labels)
        seen.setdefault(m.key, (m, _labels_rigid(target, labels)))
    return frozenset(faces), tuple(seen.values())


# building ------------------------------------------------------------------------------------------


def _excluded_text(c: int) -> str:
    return {1: "2 pi i Z", 2: "pi i Z"}[c]


def _g_descriptor(rs: RootSystem) -> PseudoLeviDescriptor:
    return standard_pseudo_levi(rs, frozenset(range(1, rs.rank + 1)))


def _split_reasons(rs: RootSystem, row: GoldenRow) -> dict[tuple[str, str, str], str]:
    out = {}
    for m in row.split_off:
        for t in _expand_twists(rs, row, m):
            out[(t, _golden_anchor(m), _golden_member_orbit(rs, row, m))] = m.reason or "split off"
    return out


def _build_levi(rs: RootSystem, row: GoldenRow) -> tuple[DecompositionDatum, Members, int]:
    k = row.node
    desc = standard_pseudo_levi(rs, levi_theta(rs, k))
    coset = center_structure(rs, desc).component_reps[0]
    datum = DecompositionDatum(desc, coset, ("1",) * len(desc.components))
    faces, candidates = levi_line(rs, k, (0,) * rs.rank)
    reasons = _split_reasons(rs, row)
    kept, omitted = [], []
    for m, rigid in candidates:
        if rigid:
            omitted.append((m, "birationally rigid in its centraliser"))
        elif m.triple() in reasons:
            omitted.append((m, reasons[m.triple()]))
        else:
            kept.append(m)
    family = SemisimpleFamily(k, _excluded_text(rs.highest_root_coeffs[k - 1]), faces)
    d = compute_dM(rs, desc, coset)
    return datum, Members(family, tuple(kept), tuple(omitted)), d


def _build_pseudo(rs: RootSystem, row: GoldenRow) -> tuple[DecompositionDatum, Members, int]:
    k = row.node
    desc = standard_pseudo_levi(rs, pseudo_theta(rs, k))
    labels = _golden_factor_labels(row.orbit, desc)
    s = sigma_element(rs, k)
    datum = DecompositionDatum(desc, TorusCoset.point(s), labels)
    key = ("point", *labelled_point_key(rs, desc, s, labels))
    member = MemberClass("1", f"sigma_{k}", "x".join(labels), key)
    return datum, Members(None, (member,)), compute_dM(rs, desc, datum.coset, labels)


def _build_unipotent(rs: RootSystem, row: GoldenRow) -> tuple[DecompositionDatum, Members, int]:
    orbit = _golden_g_orbit(rs, row.orbit)
    desc = _g_descriptor(rs)
    datum = DecompositionDatum(desc, TorusCoset.point(RationalCoweight.zero(rs.rank)), (orbit.describe(),))
    member = MemberClass("1", "1", orbit.describe(), ("central", "1", orbit.describe()))
    return datum, Members(None, (member,)), compute_dM(rs, desc, datum.coset)


def _translate_keys(rs: RootSystem, fam: SheetFamily, w: tuple[int, ...]) -> tuple[frozenset, tuple]:
    """Descriptor keys of ``z * fam`` (and its candidate keys) for ``z = exp(2 pi i w)``."""
    if fam.kind == "levi":
        faces, _ = levi_line(rs, fam.node, w)
        keys = {("family", faces)}
        cands = set(keys)
        for m, kept in _shift_match(rs, fam, w):
            cands.add(m.key)
            if kept:
                keys.add(m.key)
        return frozenset(keys), frozenset(cands)
    if fam.kind == "pseudo":
        desc = fam.datum.pseudo_levi
        x = fam.datum.coset.anchor + RationalCoweight.of(w)
        key = ("point", *labelled_point_key(rs, desc, x, fam.datum.orbit))
        return frozenset({key}), frozenset({key})
    orbit = fam.members.isolated[0].orbit
    key = ("central", twist_of(rs, RationalCoweight.of(w)), orbit)
    return frozenset({key}), frozenset({key})


def _shift_match(rs: RootSystem, fam: SheetFamily, w) -> list[tuple[MemberClass, bool]]:
    """Translate membership decisions: ``z m`` is a member of ``z S`` iff ``m`` is one of ``S``."""
    k = fam.node
    c = rs.highest_root_coeffs[k - 1]
    kept_keys = {m.key for m in fam.members.isolated}
    base = RationalCoweight.of(w)
    out = []
    for j in range(_period(rs, k) * c):
        x0 = _omega(rs, k, Fraction(j, c))
        x = base + x0
        if is_central(rs, x0):
            orbit = levi_richardson(rs, k)
            m0 = _central_member(rs, x0, orbit)
            m = _central_member(rs, x, orbit)
        else:
            a0, word0 = _reduce(rs, x0)
            t0 = standard_pseudo_levi(rs, alcove_theta(rs, a0))
            labels0 = induced_factor_labels(rs, t0, apply_word_to_coweight(rs, word0, _unit(rs, k)))
            m0 = _isolated_member(rs, a0, t0, labels0)
            a, word = _reduce(rs, x)
            t = standard_pseudo_levi(rs, alcove_theta(rs, a))
            labels = induced_factor_labels(rs, t, apply_word_to_coweight(rs, word, _unit(rs, k)))
            m = _isolated_member(rs, a, t, labels)
        out.append((m, m0.key in kept_keys))
    return out


def _unit(rs: RootSystem, k: int) -> tuple:
    return tuple(Fraction(int(i == k - 1)) for i in range(rs.rank))


def _central_families(rs: RootSystem) -> tuple[SheetFamily, ...]:
    desc = _g_descriptor(rs)
    zero = NilpotentOrbit.zero(rs.type_label, rs.rank)
    out = []
    for i, (name, w) in enumerate(twist_table(rs)):
        x = RationalCoweight.of(w)
        datum = DecompositionDatum(desc, TorusCoset.point(x), (zero.describe(),))
        member = MemberClass(name, "1", zero.describe(), ("central", name, zero.describe()))
        out.append(
            SheetFamily(-i - 1, "{" + name + "}", "central", None, datum, Members(None, (member,)), 1, WeightMonoid.zero(rs.rank))
        )
    return tuple(out)


@cache
def _build(table: GoldenTable) -> Catalog:
    rs = build_root_system(table.type_label, table.rank)
    builders = {"levi": _build_levi, "pseudo": _build_pseudo, "unipotent": _build_unipotent}
    fams = []
    for row in table.rows:
        if row.kind not in builders:
            raise CatalogError(f"unknown row kind {row.kind!r}")
        datum, members, d = builders[row.kind](rs, row)
        monoid = WeightMonoid(rs.rank, row.generators, row.congruences)
        fams.append(SheetFamily(row.index, row.tau, row.kind, row.node, datum, members, d, monoid, row))
    central = _central_families(rs)
    # rows that are central translates of one another list the same sheets
    sheets, candidate_sheets, counts, listed = [], {}, {}, set()
    for fam in fams:
        seen = set()
        for name, w in twist_table(rs):
            keys, cands = _translate_keys(rs, fam, w)
            if keys in seen:
                continue
            seen.add(keys)
            candidate_sheets[(fam.index, name)] = cands
            if keys not in listed:
                listed.add(keys)
                sheets.append(Sheet(fam.index, name, keys))
        counts[fam.index] = len(seen)
    for fam in central:
        sheets.append(Sheet(fam.index, fam.members.isolated[0].twist, fam.keys()))
    return Catalog(rs, table, tuple(fams), central, tuple(sheets), candidate_sheets, counts)


def catalog(type_label: str, rank: int, golden_path: str | Path | None = None) -> Catalog:
    if type_label == "B" and rank == 2:
        raise CatalogError("B2 is not catalogued separately; use C2")
    build_root_system(type_label, rank)
    table = golden.load_table(type_label, rank) if golden_path is None else golden.load_table_from(golden_path, type_label, rank)
    return _build(table)


def build_catalog(type_label: str, rank: int) -> list[SheetFamily]:
    """One family per table row (central singletons are in :func:`central_singletons`)."""
    return list(catalog(type_label, rank).families)


def central_singletons(type_label: str, rank: int) -> list[SheetFamily]:
    return list(catalog(type_label, rank).central)


def weight_monoid(family: SheetFamily) -> WeightMonoid:
    return family.weight_monoid.normal_form()


# golden member expansion ----------------------------------------------------------------------------


def _expand_twists(rs: RootSystem, row: GoldenRow, m: GoldenMember) -> tuple[str, ...]:
    names = twist_names(rs)
    if m.twists == "Z(G)":
        return names
    if m.twists == "Z(G)∩Z°":
        theta = levi_theta(rs, row.node)
        return tuple(name for name, w in twist_table(rs) if not any(_component_index(rs, theta, w)))
    if isinstance(m.twists, str):
        raise CatalogError(f"unknown twist keyword {m.twists!r}")
    return tuple(_canonical_twist(rs, t) for t in m.twists)


def _canonical_twist(rs: RootSystem, name: str) -> str:
    w = twist_vector(rs, name)
    return twist_of(rs, RationalCoweight.of(w))


def _golden_anchor(m: GoldenMember) -> str:
    return "1" if m.anchor == "1" else f"sigma_{m.anchor}"


def _golden_member_orbit(rs: RootSystem, row: GoldenRow, m: GoldenMember) -> str:
    if m.anchor == "1":
        return _golden_g_orbit(rs, m.orbit).describe()
    desc = standard_pseudo_levi(rs, pseudo_theta(rs, m.anchor))
    return "x".join(_golden_factor_labels(m.orbit, desc))


def golden_members(rs: RootSystem, row: GoldenRow) -> set[tuple[str, str, str]]:
    out = set()
    for m in row.isolated:
        for t in _expand_twists(rs, row, m):
            out.add((t, _golden_anchor(m), _golden_member_orbit(rs, row, m)))
    return out


# verification --------------------------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    status: str  # PASS, WARN or FAIL
    name: str
    detail: str = ""

    def line(self) -> str:
        return f"{self.status} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, ok: bool, name: str, detail: str = "") -> None:
        self.checks.append(Check("PASS" if ok else "FAIL", name, detail))

    def warn(self, name: str, detail: str) -> None:
        self.checks.append(Check("WARN", name, detail))

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    @property
    def status(self) -> str:
        states = {c.status for c in self.checks}
        return "FAIL" if "FAIL" in states else "WARN" if "WARN" in states else "PASS"

    @property
    def ok(self) -> bool:
        return self.status != "FAIL"

    @property
    def warnings(self) -> list[Check]:
        return [c for c in self.checks if c.status == "WARN"]

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "FAIL"]

    def text(self) -> str:
        return "\n".join([f"== {self.title}: {self.status}"] + [c.line() for c in self.checks])


def _one_multiplicity_apart(a: Partition, b: Partition) -> bool:
    values = set(a.parts) | set(b.parts)
    return sum(1 for v in values if a.multiplicity(v) != b.multiplicity(v)) == 1


def _erratum(row: GoldenRow, fieldname: str, printed_value: str, computed_value: str, parse=None):
    """``("WARN", note)`` when a recorded erratum explains the mismatch, else ``("FAIL", note)``."""
    for e in row.errata:
        if e.field != fieldname:
            continue
        corrected = e.corrected.replace("{", "").replace("}", "")
        if parse is not None:
            try:
                ok = parse(corrected) == parse(computed_value)
            except (OrbitError, ValueError):
                ok = False
        else:
            ok = corrected == computed_value
        if ok:
            return "WARN", f"printed {printed_value}, using {computed_value} ({e.note})"
    return "FAIL", f"printed {printed_value}, computed {computed_value}"


def _check_printed_induced(rs: RootSystem, fam: SheetFamily, rep: Report, name: str) -> None:
    row = fam.golden_row
    for at, orbit in row.printed_induced:
        printed = Partition.from_multiplicities(list(orbit.partition))
        if at == "central":
            computed = levi_richardson(rs, fam.node).partition
        else:
            sig = [m for m in fam.members.candidates if m.anchor.startswith("sigma")]
            if len(sig) != 1 or "x" in sig[0].orbit:
                rep.add(False, f"{name} printed induced class at sigma", "no unique single-factor sigma member")
                continue
            computed = Partition.parse(sig[0].orbit)
        if printed == computed:
            rep.add(True, f"{name} printed induced class at {at}", computed.compact())
            continue
        status, note = _erratum(row, "printed_induced", printed.compact(), computed.compact(), Partition.parse)
        if status == "WARN" and printed.size != computed.size and _one_multiplicity_apart(printed, computed):
            rep.warn(f"{name} printed induced class at {at}", f"size {printed.size} != {computed.size}; {note}")
        else:
            rep.add(False, f"{name} printed induced class at {at}", note)


def _check_row(rs: RootSystem, fam: SheetFamily, has_d: bool, rep: Report) -> None:
    row = fam.golden_row
    name = f"row {row.index} {row.tau}"
    desc = fam.datum.pseudo_levi
    if fam.kind == "levi":
        group = center_structure(rs, desc).component_group
        rep.add(desc.is_levi, f"{name} datum is a Levi", desc.type_string())
        # the full centre is a single coset only when it is connected
        rep.add(
            row.coset == "Z°" or group.order == 1,
            f"{name} datum coset",
            f"printed {row.coset}, Z(L)/Z(L)° of order {group.order}",
        )
        rep.add(satisfies_rp(rs, desc, fam.datum.coset), f"{name} datum (RP)")
        fam_members = fam.members.family
        rep.add(row.family_node == fam_members.node, f"{name} family node", str(fam_members.node))
        if row.excluded == fam_members.excluded:
            rep.add(True, f"{name} excluded parameters", fam_members.excluded)
        else:
            status, note = _erratum(row, "excluded", row.excluded, fam_members.excluded)
            (rep.warn if status == "WARN" else lambda n, d: rep.add(False, n, d))(f"{name} excluded parameters", note)
        want = golden_members(rs, row)
        have = {m.triple() for m in fam.members.isolated}
        rep.add(
            want == have,
            f"{name} members",
            "; ".join(sorted(" ".join(t) for t in have)) if want == have
            else f"missing {sorted(want - have)}, unexpected {sorted(have - want)}",
        )
        cands = {m.triple() for m in fam.members.candidates}
        for t in _split_reasons(rs, row):
            rep.add(t in cands, f"{name} split-off class is a candidate", " ".join(t))
        _check_printed_induced(rs, fam, rep, name)
    elif fam.kind == "pseudo":
        rep.add(not desc.is_levi, f"{name} datum is not a Levi", desc.type_string())
        rp = satisfies_rp(rs, desc, fam.datum.coset)
        rep.add(
            rp and centralizer_subsystem(rs, fam.datum.coset) == subsystem(rs, desc.theta),
            f"{name} datum (RP) and C_G(sigma) = M",
        )
        ok, detail = True, []
        for ftype, lab in zip(desc.component_types, fam.datum.orbit):
            try:
                orbit = _factor_orbit(ftype, lab)
            except (OrbitError, CatalogError) as exc:
                ok = False
                detail.append(str(exc))
                continue
            if orbit is not None and not is_birationally_rigid(orbit):
                ok = False
                detail.append(f"{lab} is not birationally rigid in {ftype[0]}{ftype[1]}")
        rep.add(ok, f"{name} datum orbit birationally rigid", "; ".join(detail) or "x".join(fam.datum.orbit))
    else:
        orbit = _golden_g_orbit(rs, row.orbit)
        rep.add(
            is_spherical_nilpotent(orbit) and is_birationally_rigid(orbit),
            f"{name} unipotent class spherical and birationally rigid",
            orbit.describe(),
        )
    if row.d is not None:
        rep.add(row.d == fam.d, f"{name} d", f"table {row.d}, computed {fam.d}")
    elif has_d:
        rep.add(False, f"{name} d", "missing from table")
    else:
        rep.add(fam.d == 1, f"{name} d", f"no column, computed {fam.d}")


def check_partition(cat: Catalog) -> Report:
    """Disjointness and coverage of the class descriptors over all sheets."""
    rs = cat.rs
    rep = Report(f"partition {rs.name}")
    owner: dict[tuple, list[tuple[int, str]]] = {}
    for sh in cat.sheets:
        for k in sh.keys:
            owner.setdefault(k, []).append((sh.row, sh.twist))
    clashes = {k: v for k, v in owner.items() if len(v) > 1}
    rep.add(not clashes, "sheets pairwise disjoint", f"{len(clashes)} shared descriptors" if clashes else f"{len(cat.sheets)} sheets")
    faces = [(sh, k[1]) for sh in cat.sheets for k in sh.keys if k[0] == "family"]
    overlap = [(a[0].row, b[0].row) for a, b in combinations(faces, 2) if a[1] & b[1]]
    rep.add(not overlap, "semisimple families disjoint", str(overlap) if overlap else "")
    missing = []
    for name in twist_names(rs):
        for orbit in spherical_nilpotent_orbits(rs.type_label, rs.rank):
            key = ("central", name, orbit.describe())
            if key not in owner:
                missing.append(f"{name}·{orbit.describe()}")
    for spl in enumerate_spherical_pseudo_levis(rs):
        if spl.kind == "levi":
            if not any(f.kind == "levi" and f.node == spl.node for f in cat.families):
                missing.append(spl.name)
            continue
        s = sigma_element(rs, spl.node)
        labels = ("1",) * len(spl.descriptor.components)
        for name, w in twist_table(rs):
            key = ("point", *labelled_point_key(rs, spl.descriptor, s + RationalCoweight.of(w), labels))
            if key not in owner:
                missing.append(f"{name}·sigma_{spl.node}")
    rep.add(not missing, "every spherical class covered", ", ".join(missing))
    for fam in cat.families:
        for m, reason in fam.members.omitted:
            n = len(owner.get(m.key, []))
            rep.add(n == 1, f"omitted {m.text()} from row {fam.index} lies in exactly one sheet", f"{reason}; found {n}")
    for fam in cat.families:
        count = cat.translate_counts[fam.index]
        rep.add(count == fam.d, f"row {fam.index} translates give d sheets", f"{count} vs d = {fam.d}")
    return rep


_TRIALITY_NODES = (1, 3, 4)


def _triality_moves():
    from itertools import permutations

    for perm in permutations(_TRIALITY_NODES):
        if perm != _TRIALITY_NODES:
            yield dict(zip(_TRIALITY_NODES, perm))


def _permute_monoid(m: WeightMonoid, move: dict[int, int]) -> WeightMonoid:
    def node(i):
        return move.get(i, i)

    gens = []
    for g in m.generators:
        v = [0] * len(g)
        for i, c in enumerate(g):
            v[node(i + 1) - 1] = c
        gens.append(tuple(v))
    congs = tuple((tuple(node(i) for i in s), mod) for s, mod in m.congruences)
    return WeightMonoid(m.ambient_rank, tuple(gens), congs)


def _triality_related(a: WeightMonoid, b: WeightMonoid) -> bool:
    return any(monoid_equal(_permute_monoid(a, mv), b) for mv in _triality_moves())


def verify_main_theorem(cat: Catalog) -> Report:
    """Weight monoids separate the ``Z(G)``-orbits of sheets, up to sanctioned twists."""
    rs = cat.rs
    rep = Report(f"main theorem {rs.name}")
    fams = list(cat.families) + [cat.central[0]]
    clashes = 0
    for a, b in combinations(fams, 2):
        if not monoid_equal(a.weight_monoid, b.weight_monoid):
            continue
        twist = _twist_relating(cat, a, b)
        if twist is not None:
            rep.add(True, f"equal monoids of rows {a.index} and {b.index} are one Z(G)-orbit", f"{b.tau} = {twist}·{a.tau}")
        else:
            clashes += 1
            rep.add(False, f"rows {a.index} and {b.index} share a weight monoid", f"{a.tau} / {b.tau}")
    rep.add(clashes == 0, "weight monoids pairwise distinct across Z(G)-orbits", f"{len(fams)} orbits incl. the centre")
    if rs.name == "D4":
        for a, b in combinations(cat.families, 2):
            if _triality_related(a.weight_monoid, b.weight_monoid):
                rep.warn(f"D4 triality relates rows {a.index} and {b.index}", f"{a.tau} / {b.tau}")
    return rep


def _twist_relating(cat: Catalog, a: SheetFamily, b: SheetFamily) -> str | None:
    if a.kind == "central" or b.kind == "central":
        return None
    target, _ = _translate_keys(cat.rs, b, (0,) * cat.rs.rank)
    for name, w in twist_table(cat.rs):
        keys, _ = _translate_keys(cat.rs, a, w)
        if keys == target:
            return name
    return None


# locating classes ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class Located:
    family: SheetFamily
    twist: str


def locate_class(
    rs: RootSystem,
    anchor: RationalCoweight,
    unipotent: NilpotentOrbit | tuple[str, ...] | None = None,
) -> Located:
    """The sheet containing ``exp(2 pi i anchor) * u``.

    For a central anchor ``unipotent`` is an orbit of ``G``; otherwise it is one
    label per factor of the standard pseudo-Levi at the alcove form of ``anchor``.
    """
    cat = catalog(rs.type_label, rs.rank)
    a = alcove_reduce(rs, anchor)
    if is_central(rs, a):
        orbit = unipotent if isinstance(unipotent, NilpotentOrbit) else NilpotentOrbit.zero(rs.type_label, rs.rank)
        if not is_spherical_nilpotent(orbit):
            raise CatalogError("outside G_sph catalog: unipotent class is not spherical")
        key = ("central", twist_of(rs, anchor), orbit.describe())
    else:
        theta = alcove_theta(rs, a)
        desc = standard_pseudo_levi(rs, theta)
        labels = ("1",) * len(desc.components) if unipotent is None else tuple(unipotent)
        if isinstance(unipotent, NilpotentOrbit) or len(labels) != len(desc.components):
            raise CatalogError("give one label per factor of the centraliser")
        if desc.torus_rank == 0:
            key = _point_key(a, labels)
        elif desc.torus_rank == 1 and all(x == "1" for x in labels):
            for sh in cat.sheets:
                for k in sh.keys:
                    if k[0] == "family" and theta in k[1]:
                        return Located(cat.family(sh.row), sh.twist)
            raise CatalogError("outside G_sph catalog: no spherical family through this element")
        else:
            raise CatalogError("outside G_sph catalog")
    for sh in cat.sheets:
        if key in sh.keys:
            return Located(cat.family(sh.row), sh.twist)
    raise CatalogError("outside G_sph catalog")


# Lie algebra -----------------------------------------------------------------------------------------


@dataclass(frozen=True)
class LieFamily:
    name: str
    levi_node: int | None
    nilpotent: str | None
    weight_monoid: WeightMonoid


def lie_algebra_catalog(type_label: str, rank: int) -> list[LieFamily]:
    """Levi rows give ``zeta omega_k`` families, rigid nilpotent orbits stand alone."""
    cat = catalog(type_label, rank)
    out = []
    for fam in cat.families:
        if fam.kind == "levi":
            nil = [m.orbit for m in fam.members.isolated if m.anchor == "1" and m.twist == "1"]
            out.append(LieFamily(f"l_{fam.node}", fam.node, nil[0] if nil else None, fam.weight_monoid))
        elif fam.kind == "unipotent":
            orbit = fam.members.isolated[0].orbit
            out.append(LieFamily(orbit, None, orbit, fam.weight_monoid))
    zero = NilpotentOrbit.zero(type_label, rank).describe()
    out.append(LieFamily(zero, None, zero, WeightMonoid.zero(rank)))
    return out


def verify_lie_algebra(type_label: str, rank: int) -> Report:
    fams = lie_algebra_catalog(type_label, rank)
    rep = Report(f"Lie algebra {type_label}{rank}")
    same = [(a.name, b.name) for a, b in combinations(fams, 2) if monoid_equal(a.weight_monoid, b.weight_monoid)]
    rep.add(not same, "weight monoids pairwise distinct", str(same) if same else f"{len(fams)} families")
    seen: dict[str, int] = {}
    for f in fams:
        if f.nilpotent is not None:
            seen[f.nilpotent] = seen.get(f.nilpotent, 0) + 1
    want = [o.describe() for o in spherical_nilpotent_orbits(type_label, rank)]
    bad = [w for w in want if seen.get(w, 0) != 1] + [s for s in seen if s not in want]
    rep.add(not bad, "each spherical nilpotent orbit in exactly one family", ", ".join(bad))
    return rep


# regressions -----------------------------------------------------------------------------------------


def _containing_levi_rows(cat: Catalog, key: tuple) -> list[SheetFamily]:
    out = []
    for fam in cat.families:
        if fam.kind == "levi" and key in cat.candidate_sheets[(fam.index, "1")]:
            out.append(fam)
    return out


def sheet_vs_birational_regressions(type_label: str, rank: int) -> Report:
    """Where the regular closure of a Levi family differs from its birational sheet."""
    if type_label not in "BC":
        raise CatalogError("regressions are recorded for types B and C")
    cat = catalog(type_label, rank)
    rs = cat.rs
    rep = Report(f"sheet regressions {rs.name}")
    if rs.name == "C2":
        key = ("central", "1", "[2^2]")
        rows = _containing_levi_rows(cat, key)
        rep.add(
            sorted(f.node for f in rows) == [1, 2],
            "[2^2] lies in the regular closures of both Levi families",
            ", ".join(f.tau for f in rows),
        )
        s1 = next(f for f in cat.families if f.kind == "levi" and f.node == 1)
        region = cat.candidate_sheets[(s1.index, "1")]
        touching = [sh for sh in cat.sheets if sh.keys & region]
        leaking = [sh for sh in touching if not sh.keys <= region]
        rep.add(bool(leaking), "S_1 is not a union of birational sheets", f"{len(leaking)} sheets meet S_1 without lying in it")
    elif type_label == "C":
        x2 = NilpotentOrbit.classical("C", rank, Partition.from_multiplicities([(2, 2), (1, 2 * rank - 4)]))
        key = ("central", "1", x2.describe())
        rows = _containing_levi_rows(cat, key)
        rep.add(
            [f.node for f in rows] == [1],
            f"X_2 = {x2.describe()} lies only in the closure of the L_1 family",
            ", ".join(f.tau for f in rows),
        )
    elif rank % 2 == 0:
        m = rank // 2
        zm = NilpotentOrbit.classical("B", rank, Partition.from_multiplicities([(3, 1), (2, 2 * (m - 1)), (1, 2)]))
        key = ("central", "1", zm.describe())
        rows = _containing_levi_rows(cat, key)
        rep.add(
            [f.node for f in rows] == [rank],
            f"Z_m = {zm.describe()} lies only in the closure of the L_n family",
            ", ".join(f.tau for f in rows),
        )
    else:
        rep.add(True, "no exceptional containment in odd rank")
    return rep


# top level ----------------------------------------------------------------------------------------------


def verify(type_label: str, rank: int, golden_path: str | Path | None = None) -> Report:
    """Diff the recomputed catalog against the table and run every consistency check."""
    cat = catalog(type_label, rank, golden_path)
    rs = cat.rs
    rep = Report(f"{rs.name} ({cat.table.source})")
    for fam in cat.families:
        _check_row(rs, fam, cat.table.has_d_column, rep)
    rep.extend(check_partition(cat))
    rep.extend(verify_main_theorem(cat))
    if golden_path is None:
        rep.extend(verify_lie_algebra(type_label, rank))
    if type_label in "BC":
        rep.extend(sheet_vs_birational_regressions(type_label, rank))
    return rep


def supported_ranks() -> list[tuple[str, int]]:
    """The (type, rank) pairs exercised by ``verify --all``."""
    out = [("A", n) for n in range(1, 9)]
    out += [("B", n) for n in range(3, 9)]
    out += [("C", n) for n in range(2, 9)]
    out += [("D", n) for n in range(4, 9)]
    out += [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
    return out


__all__ = [
    "CatalogError",
    "WeightMonoid",
    "monoid_bound",
    "monoid_equal",
    "twist_table",
    "twist_names",
    "twist_vector",
    "twist_of",
    "is_central",
    "DecompositionDatum",
    "SemisimpleFamily",
    "MemberClass",
    "Members",
    "SheetFamily",
    "Sheet",
    "Catalog",
    "levi_richardson",
    "induced_factor_labels",
    "levi_line",
    "catalog",
    "build_catalog",
    "central_singletons",
    "weight_monoid",
    "golden_members",
    "Check",
    "Report",
    "check_partition",
    "verify_main_theorem",
    "Located",
    "locate_class",
    "LieFamily",
    "lie_algebra_catalog",
    "verify_lie_algebra",
    "sheet_vs_birational_regressions",
    "verify",
    "supported_ranks",
]
