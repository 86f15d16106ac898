"""Conjugacy of torus points and of centre cosets.

A torus element is written ``exp(2 pi i x)`` with ``x`` a rational coweight in
fundamental-coweight coordinates.  Since the group is simply connected, two
points are conjugate iff they have the same representative in the closed
fundamental alcove.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import lcm
from typing import Iterable, Sequence

from . import linalg
from .linalg import Matrix
from .rootcore import IntVector, RootSystem, Vector, smith_normal_form


class UnsupportedError(NotImplementedError):
    """The requested computation is outside the supported scope."""


@dataclass(frozen=True)
class RationalCoweight:
    """``x`` in fundamental-coweight coordinates, standing for ``exp(2 pi i x)``."""

    coords: Vector

    @classmethod
    def of(cls, values: Iterable[int | Fraction | str]) -> "RationalCoweight":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def zero(cls, rank: int) -> "RationalCoweight":
        return cls(tuple(Fraction(0) for _ in range(rank)))

    def __add__(self, other: "RationalCoweight") -> "RationalCoweight":
        return RationalCoweight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "RationalCoweight") -> "RationalCoweight":
        return RationalCoweight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, k: int | Fraction) -> "RationalCoweight":
        return RationalCoweight(tuple(Fraction(k) * a for a in self.coords))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class TorusCoset:
    """The set ``exp(2 pi i (anchor + span(direction)))``.

    ``direction`` is stored as a reduced row echelon basis, so equal subspaces
    compare equal.
    """

    anchor: RationalCoweight
    direction: tuple[Vector, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "direction", linalg.rref(self.direction) if self.direction else ())

    @property
    def dimension(self) -> int:
        return len(self.direction)

    @classmethod
    def point(cls, x: RationalCoweight) -> "TorusCoset":
        return cls(x, ())

    def shifted(self, z: Sequence[int | Fraction]) -> "TorusCoset":
        return TorusCoset(self.anchor + RationalCoweight.of(z), self.direction)

    def generic_point(self, seed: int = 0) -> RationalCoweight:
        """A point of the coset avoiding every rational hyperplane of small height.

        Parameters are distinct primes over a large prime denominator; ``seed``
        selects an independent set of primes.
        """
        primes = _PRIMES[seed * 8 : seed * 8 + len(self.direction)]
        den = _BIG_DENOMINATORS[seed % len(_BIG_DENOMINATORS)]
        x = list(self.anchor.coords)
        for j, (t, b) in enumerate(zip(primes, self.direction)):
            x = [xi + Fraction(t, den ** (j + 1)) * bi for xi, bi in zip(x, b)]
        return RationalCoweight(tuple(x))


_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89]
_BIG_DENOMINATORS = [1_000_003, 999_983, 1_000_033]


# alcove reduction -----------------------------------------------------------------


def _reflect(rs: RootSystem, x: list[Fraction], root: IntVector, level: int) -> list[Fraction]:
    """Affine reflection in the wall ``root(x) = level``."""
    value = rs.pairing(root, x) - level
    cor = rs.coroot(root)
    return [xi - value * c for xi, c in zip(x, cor)]


def alcove_reduce_word(rs: RootSystem, x: RationalCoweight) -> tuple[RationalCoweight, list[IntVector]]:
    """Alcove representative of ``x`` and the roots whose reflections were applied.

    The linear part of the affine Weyl element taking ``x`` to its representative
    is the product of the reflections in the returned roots, first one applied
    first.
    """
    beta = rs.highest_root_coeffs
    beta_cor = rs.coroot(beta)
    n = rs.rank
    # work with integer numerators over a common denominator
    den = lcm(*(c.denominator for c in x.coords)) if n else 1
    cur = [int(c * den) for c in x.coords]
    word: list[IntVector] = []
    while True:
        worst = 0
        choice = None
        for i in range(n):
            if -cur[i] > worst:
                worst = -cur[i]
                choice = i
        excess = sum(b * c for b, c in zip(beta, cur)) - den
        if excess > worst:
            worst = excess
            choice = -1
        if choice is None:
            return RationalCoweight(tuple(Fraction(c, den) for c in cur)), word
        if choice == -1:
            cur = [c - excess * b for c, b in zip(cur, beta_cor)]
            word.append(beta)
        else:
            value = cur[choice]
            cur = [c - value * b for c, b in zip(cur, rs.simple_coroots[choice])]
            word.append(tuple(int(j == choice) for j in range(n)))


def alcove_reduce(rs: RootSystem, x: RationalCoweight) -> RationalCoweight:
    """Representative of ``x`` in ``{alpha_i(x) >= 0, beta(x) <= 1}``."""
    return alcove_reduce_word(rs, x)[0]


def in_alcove(rs: RootSystem, x: RationalCoweight) -> bool:
    return all(c >= 0 for c in x.coords) and rs.pairing(rs.highest_root_coeffs, x.coords) <= 1


def points_conjugate(rs: RootSystem, x: RationalCoweight, y: RationalCoweight) -> bool:
    return alcove_reduce(rs, x) == alcove_reduce(rs, y)


def apply_word_to_root(rs: RootSystem, word: Sequence[IntVector], root: IntVector) -> IntVector:
    for r in word:
        root = rs.reflect_root(root, r)
    return root


def apply_word_to_coweight(rs: RootSystem, word: Sequence[IntVector], x: Vector) -> Vector:
    """Linear action of the reflections in ``word`` on a coweight."""
    cur = list(x)
    for r in word:
        cur = _reflect(rs, cur, r, 0)
    return tuple(cur)


def graph_automorphism_D(rs: RootSystem, x: RationalCoweight) -> RationalCoweight:
    """The diagram automorphism of ``D_n`` swapping the last two nodes."""
    if rs.type_label != "D":
        raise ValueError("only defined for type D")
    c = list(x.coords)
    c[-1], c[-2] = c[-2], c[-1]
    return RationalCoweight(tuple(c))


# centralisers ------------------------------------------------------------------------


def centralizer_subsystem(rs: RootSystem, c: TorusCoset) -> frozenset[IntVector]:
    """Roots taking integral values on every point of the coset."""
    exact = frozenset(
        r
        for r in rs.roots
        if rs.pairing(r, c.anchor.coords).denominator == 1
        and all(rs.pairing(r, b) == 0 for b in c.direction)
    )
    if c.direction:
        for seed in (0, 1):
            g = c.generic_point(seed)
            generic = frozenset(r for r in rs.roots if rs.pairing(r, g.coords).denominator == 1)
            if generic != exact:
                raise AssertionError("generic point of the coset is not generic")
    return exact


# coset conjugacy -------------------------------------------------------------------
#
# A coset modulo Q^vee is encoded in coroot coordinates ``y`` (``x = y . R`` with
# the simple coroots as rows of ``R``).  Its class is determined by the lattice of
# integral functionals vanishing on the direction, in Hermite normal form, together
# with the residues of the anchor under those functionals.  Weyl reflections act
# on both by integer matrices, so the orbit search never touches fractions.


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form: a canonical basis of the row lattice."""
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return ()
    width = len(a[0])
    out: list[list[int]] = []
    col = 0
    while a and col < width:
        nz = [r for r in a if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                r[:] = [x - q * y for x, y in zip(r, p)]
            nz = [r for r in nz if r[col]]
        p = nz[0]
        if p[col] < 0:
            p[:] = [-x for x in p]
        for r in out:
            q = r[col] // p[col]
            r[:] = [x - q * y for x, y in zip(r, p)]
        out.append(p)
        a = [r for r in a if r is not p and any(r)]
        col += 1
    return tuple(tuple(r) for r in out)


@cache
def _coroot_inverse(rs: RootSystem) -> Matrix:
    return linalg.inverse([list(c) for c in rs.simple_coroots])


def _functional_lattice(rs: RootSystem, direction: tuple[Vector, ...]) -> tuple[tuple[int, ...], ...]:
    """Integer functionals on coroot coordinates vanishing on ``direction``."""
    n = rs.rank
    if not direction:
        return tuple(tuple(int(i == j) for i in range(n)) for j in range(n))
    rinv = _coroot_inverse(rs)
    dir_y = [linalg.scale_to_integers(linalg.vec_mat(b, rinv)) for b in direction]
    _, s, v = smith_normal_form([list(r) for r in dir_y])
    r = sum(1 for i in range(min(len(s), n)) if s[i][i] != 0)
    return hermite_normal_form([tuple(v[k][j] for k in range(n)) for j in range(r, n)])


def _scaled_anchor(rs: RootSystem, anchor: Vector, den: int) -> tuple[int, ...]:
    y = linalg.vec_mat(anchor, _coroot_inverse(rs))
    scaled = [Fraction(v) * den for v in y]
    if any(v.denominator != 1 for v in scaled):
        raise ValueError("denominator does not clear the anchor")
    return tuple(int(v) for v in scaled)


def _key(funcs: tuple[tuple[int, ...], ...], y: tuple[int, ...], den: int) -> tuple:
    return funcs, tuple(sum(f * v for f, v in zip(row, y)) % den for row in funcs)


def anchor_denominator(rs: RootSystem, cosets: Iterable[TorusCoset]) -> int:
    den = 1
    for c in cosets:
        for v in linalg.vec_mat(c.anchor.coords, _coroot_inverse(rs)):
            den = lcm(den, Fraction(v).denominator)
    return den


def _encode(rs: RootSystem, c: TorusCoset, den: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    return _functional_lattice(rs, c.direction), _scaled_anchor(rs, c.anchor.coords, den)


def coset_key(rs: RootSystem, c: TorusCoset, den: int | None = None) -> tuple:
    """Canonical label of a coset modulo ``Q^vee`` (not modulo ``W``)."""
    den = den or anchor_denominator(rs, [c])
    return (den, *_key(*_encode(rs, c, den), den))


def coset_orbit(rs: RootSystem, c: TorusCoset, den: int | None = None, limit: int = 500_000) -> set[tuple]:
    """All canonical labels in the Weyl-group orbit of a coset."""
    den = den or anchor_denominator(rs, [c])
    n = rs.rank
    # s_i on coroot coordinates changes only entry i; on functionals, entry j shifts by f_i R[j][i]
    col = [tuple(rs.simple_coroots[j][i] for j in range(n)) for i in range(n)]
    funcs, y = _encode(rs, c, den)
    seen = {_key(funcs, y, den)}
    queue = deque([(funcs, y)])
    while queue:
        funcs, y = queue.popleft()
        for i in range(n):
            ci = col[i]
            yi = y[i] - sum(a * b for a, b in zip(y, ci))
            new_y = y[:i] + (yi,) + y[i + 1 :]
            if all(f[i] == 0 for f in funcs):
                new_funcs = funcs
            else:
                new_funcs = hermite_normal_form([[fj - f[i] * cj for fj, cj in zip(f, ci)] for f in funcs])
            key = _key(new_funcs, new_y, den)
            if key not in seen:
                seen.add(key)
                queue.append((new_funcs, new_y))
                if len(seen) > limit:
                    raise UnsupportedError("coset orbit too large")
    return {(den, *k) for k in seen}


def _require_supported(rs: RootSystem, c: TorusCoset) -> None:
    if c.dimension and rs.type_label not in "ABCD":
        raise UnsupportedError(
            "coset conjugacy with a positive-dimensional direction is only supported for classical types"
        )


def cosets_conjugate(rs: RootSystem, c1: TorusCoset, c2: TorusCoset) -> bool:
    """Whether some Weyl element maps ``c1`` onto ``c2`` modulo ``Q^vee``."""
    if c1.dimension != c2.dimension:
        return False
    if c1.dimension == 0:
        return points_conjugate(rs, c1.anchor, c2.anchor)
    _require_supported(rs, c1)
    den = anchor_denominator(rs, [c1, c2])
    return coset_key(rs, c2, den) in coset_orbit(rs, c1, den)


def conjugacy_classes(rs: RootSystem, cosets: Sequence[TorusCoset]) -> list[int]:
    """Class index of each coset under Weyl conjugacy, numbered by first occurrence."""
    labels: list[int] = []
    if all(c.dimension == 0 for c in cosets):
        reps = [alcove_reduce(rs, c.anchor) for c in cosets]
        for r in reps:
            labels.append(reps.index(r))
        return _renumber(labels)
    for c in cosets:
        _require_supported(rs, c)
    den = anchor_denominator(rs, cosets)
    keys = [coset_key(rs, c, den) for c in cosets]
    for i, c in enumerate(cosets):
        found = None
        for j in range(i):
            if labels[j] == j and cosets[j].dimension == c.dimension and keys[i] in _orbit_cached(rs, cosets[j], den, keys[j]):
                found = j
                break
        labels.append(i if found is None else found)
    return _renumber(labels)


_ORBITS: dict[tuple, set[tuple]] = {}


def _orbit_cached(rs: RootSystem, c: TorusCoset, den: int, key: tuple) -> set[tuple]:
    k = (rs, key)
    if k not in _ORBITS:
        if len(_ORBITS) > 64:
            _ORBITS.clear()
        _ORBITS[k] = coset_orbit(rs, c, den)
    return _ORBITS[k]


def _renumber(labels: list[int]) -> list[int]:
    order: dict[int, int] = {}
    return [order.setdefault(x, len(order)) for x in labels]
