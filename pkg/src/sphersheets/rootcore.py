"""Root systems of the simple types in Bourbaki coordinates, with exact lattice data.

Roots are stored twice: in the ambient orthonormal ``e``-basis (as ``Fraction``
vectors, since ``E_8`` and ``F_4`` need half-integers) and in the basis of simple
roots (as integer vectors).  Coweights are always expressed in the basis of
fundamental coweights, so that the value of a simple root on a coweight is just
the corresponding coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, cached_property
from itertools import product
from math import prod

from . import linalg

Vector = tuple[Fraction, ...]
IntVector = tuple[int, ...]

TYPE_LABELS = ("A", "B", "C", "D", "E", "F", "G")

# dim G for each simple type, used as an independent check on |Phi+|.
_DIMENSION = {
    "A": lambda n: n * (n + 2),
    "B": lambda n: n * (2 * n + 1),
    "C": lambda n: n * (2 * n + 1),
    "D": lambda n: n * (2 * n - 1),
    "E": lambda n: {6: 78, 7: 133, 8: 248}[n],
    "F": lambda n: 52,
    "G": lambda n: 14,
}


class RootSystemError(ValueError):
    """Raised for an unsupported (type, rank) pair."""


def check_type(type_label: str, rank: int) -> None:
    """Reject pairs outside the supported families.

    ``B_2`` is excluded on purpose: it is isomorphic to ``C_2``, which is the
    form used throughout the catalog.
    """
    if type_label not in TYPE_LABELS:
        raise RootSystemError(f"unknown type {type_label!r}")
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise RootSystemError(f"rank must be an integer, got {rank!r}")
    ok = {
        "A": rank >= 1,
        "B": rank >= 3,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[type_label]
    if not ok:
        reason = "B_2 is covered by C_2" if (type_label, rank) == ("B", 2) else "rank out of range"
        raise RootSystemError(f"invalid type {type_label}{rank}: {reason}")


def lie_algebra_dimension(type_label: str, rank: int) -> int:
    return _DIMENSION[type_label](rank)


def _unit(dim: int, *entries: tuple[int, int | Fraction]) -> Vector:
    v = [Fraction(0)] * dim
    for i, x in entries:
        v[i] += Fraction(x)
    return tuple(v)


def _simple_roots_e(type_label: str, rank: int) -> list[Vector]:
    n = rank
    h = Fraction(1, 2)
    if type_label == "A":
        return [_unit(n + 1, (i, 1), (i + 1, -1)) for i in range(n)]
    if type_label in "BCD":
        roots = [_unit(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
        last = {
            "B": _unit(n, (n - 1, 1)),
            "C": _unit(n, (n - 1, 2)),
            "D": _unit(n, (n - 2, 1), (n - 1, 1)),
        }[type_label]
        return roots + [last]
    if type_label == "E":
        e8 = [
            _unit(8, (0, h), (7, h), *[(k, -h) for k in range(1, 7)]),
            _unit(8, (0, 1), (1, 1)),
            _unit(8, (1, 1), (0, -1)),
        ] + [_unit(8, (k, 1), (k - 1, -1)) for k in range(2, 7)]
        return e8[:n]
    if type_label == "F":
        return [
            _unit(4, (1, 1), (2, -1)),
            _unit(4, (2, 1), (3, -1)),
            _unit(4, (3, 1)),
            _unit(4, (0, h), (1, -h), (2, -h), (3, -h)),
        ]
    if type_label == "G":
        return [_unit(3, (0, 1), (1, -1)), _unit(3, (0, -2), (1, 1), (2, 1))]
    raise RootSystemError(type_label)


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Immutable root-system value for one simple type."""

    type_label: str
    rank: int
    simple_roots: tuple[Vector, ...]
    cartan_matrix: tuple[IntVector, ...]
    positive_roots: tuple[IntVector, ...]
    highest_root_coeffs: IntVector
    fundamental_weights: tuple[Vector, ...]
    fundamental_coweights: tuple[Vector, ...]
    _index: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootSystem):
            return NotImplemented
        return (self.type_label, self.rank) == (other.type_label, other.rank)

    def __hash__(self) -> int:
        return hash((self.type_label, self.rank))

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def dimension(self) -> int:
        return lie_algebra_dimension(self.type_label, self.rank)

    # conversions between bases -------------------------------------------------

    def to_e(self, coeffs: IntVector | Vector) -> Vector:
        """Simple-root coordinates -> ambient e-coordinates."""
        dim = len(self.simple_roots[0])
        return tuple(
            sum((Fraction(c) * a[k] for c, a in zip(coeffs, self.simple_roots)), Fraction(0))
            for k in range(dim)
        )

    def from_e(self, vec: Vector) -> Vector:
        """Ambient e-coordinates -> simple-root coordinates (vec must lie in their span)."""
        # pair with the fundamental coweights: <omega_check_j, alpha_i> = delta_ij
        coords = tuple(dot(vec, w) for w in self.fundamental_coweights)
        if self.to_e(coords) != tuple(Fraction(x) for x in vec):
            raise ValueError("vector is not in the span of the roots")
        return coords

    def coweight_to_e(self, x: Vector) -> Vector:
        """Fundamental-coweight coordinates -> ambient e-coordinates."""
        dim = len(self.simple_roots[0])
        return tuple(
            sum((Fraction(c) * w[k] for c, w in zip(x, self.fundamental_coweights)), Fraction(0))
            for k in range(dim)
        )

    def coweight_from_e(self, vec: Vector) -> Vector:
        return tuple(dot(vec, a) for a in self.simple_roots)

    # roots ---------------------------------------------------------------------

    @cached_property
    def roots(self) -> tuple[IntVector, ...]:
        neg = tuple(tuple(-c for c in r) for r in self.positive_roots)
        return self.positive_roots + neg

    @cached_property
    def root_set(self) -> frozenset[IntVector]:
        return frozenset(self.roots)

    @cached_property
    def highest_root(self) -> IntVector:
        return self.highest_root_coeffs

    def norm2(self, coeffs: IntVector) -> Fraction:
        key = ("norm2", tuple(coeffs))
        if key not in self._index:
            v = self.to_e(coeffs)
            self._index[key] = dot(v, v)
        return self._index[key]

    @cached_property
    def long_norm2(self) -> Fraction:
        return max(self.norm2(r) for r in self.positive_roots)

    def is_long(self, coeffs: IntVector) -> bool:
        return self.norm2(coeffs) == self.long_norm2

    def coroot(self, coeffs: IntVector) -> IntVector:
        """The coroot of a root, in fundamental-coweight coordinates."""
        cached = self._index.get(("coroot", coeffs))
        if cached is not None:
            return cached
        v = self.to_e(coeffs)
        n2 = dot(v, v)
        out = tuple(int(2 * dot(a, v) / n2) for a in self.simple_roots)
        self._index[("coroot", coeffs)] = out
        return out

    @cached_property
    def simple_coroots(self) -> tuple[IntVector, ...]:
        return tuple(self.coroot(tuple(int(i == j) for j in range(self.rank))) for i in range(self.rank))

    def pairing(self, root: IntVector, coweight: Vector) -> Fraction:
        """Value of a root (simple-root coordinates) on a coweight (fundamental-coweight coordinates)."""
        return Fraction(sum(a * x for a, x in zip(root, coweight) if a))

    def root_on_coroot(self, root: IntVector, other: IntVector) -> int:
        """<root, other^vee>."""
        return int(self.pairing(root, self.coroot(other)))

    def reflect_root(self, root: IntVector, by: IntVector) -> IntVector:
        k = self.root_on_coroot(root, by)
        return tuple(a - k * b for a, b in zip(root, by))

    def is_dominant_weight(self, weight: IntVector) -> bool:
        return all(x >= 0 for x in weight)


def _positive_roots(cartan: list[list[int]]) -> list[IntVector]:
    """Positive roots by closure under adding simple roots, using root strings."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    ordered = list(simple)
    while layer:
        nxt = []
        for r in layer:
            for j in range(n):
                # <r, alpha_j^vee> with cartan[i][j] = <alpha_i, alpha_j^vee>
                pair = sum(r[i] * cartan[i][j] for i in range(n))
                p = 0
                down = list(r)
                while True:
                    down[j] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                q = p - pair
                if q > 0:
                    up = list(r)
                    up[j] += 1
                    t = tuple(up)
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
                        ordered.append(t)
        layer = sorted(set(nxt))
    return ordered


@cache
def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Construct the root system of type ``type_label`` and rank ``rank``."""
    check_type(type_label, rank)
    simple = _simple_roots_e(type_label, rank)
    n = rank
    cartan = [[int(2 * dot(simple[i], simple[j]) / dot(simple[j], simple[j])) for j in range(n)] for i in range(n)]
    pos = _positive_roots(cartan)
    pos.sort(key=lambda r: (sum(r), r))
    highest = max(pos, key=sum)
    # omega_i = sum_k (C^{-1})_{ik} alpha_k ; omega_check_i = sum_k ((C^T)^{-1})_{ik} alpha_k^vee
    cinv = linalg.inverse(cartan)
    ctinv = linalg.inverse(linalg.transpose(cartan))
    dim = len(simple[0])

    def comb(coeffs, vecs):
        return tuple(sum((c * v[k] for c, v in zip(coeffs, vecs)), Fraction(0)) for k in range(dim))

    simple_coroots_e = [tuple(2 * x / dot(a, a) for x in a) for a in simple]
    weights = tuple(comb(cinv[i], simple) for i in range(n))
    coweights = tuple(comb(ctinv[i], simple_coroots_e) for i in range(n))
    return RootSystem(
        type_label=type_label,
        rank=rank,
        simple_roots=tuple(simple),
        cartan_matrix=tuple(tuple(row) for row in cartan),
        positive_roots=tuple(pos),
        highest_root_coeffs=highest,
        fundamental_weights=weights,
        fundamental_coweights=coweights,
    )


# Smith normal form ---------------------------------------------------------------


def smith_normal_form(matrix: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(U, D, V)`` with ``U @ matrix @ V == D``.

    ``U`` and ``V`` are unimodular and the diagonal of ``D`` is non-negative with
    each entry dividing the next.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = linalg.identity(m)
    v = linalg.identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            clean = True
            for i in range(t + 1, m):
                q = a[i][t] // a[t][t]
                if q:
                    add_row(i, t, -q)
                clean &= a[i][t] == 0
            for j in range(t + 1, n):
                q = a[t][j] // a[t][t]
                if q:
                    add_col(j, t, -q)
                clean &= a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


# Centre --------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """The centre ``Z(G) = P^vee / Q^vee`` of the simply connected group.

    ``generator_reps`` are integral coweights (fundamental-coweight coordinates)
    whose images generate the cyclic factors listed in ``invariant_factors``.
    """

    invariant_factors: IntVector
    generator_reps: tuple[IntVector, ...]
    _projection: tuple[IntVector, ...] = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def coordinates(self, x: IntVector) -> IntVector:
        """Image of an integral coweight in ``prod Z/d_i``."""
        ys = linalg.vec_mat(x, self._projection)
        return tuple(int(y) % d for y, d in zip(ys, self.invariant_factors))

    def elements(self) -> list[IntVector]:
        """One integral coweight per element, the identity first."""
        reps = []
        for ks in product(*(range(d) for d in self.invariant_factors)):
            rep = [0] * (len(self.generator_reps[0]) if self.generator_reps else 0)
            for k, g in zip(ks, self.generator_reps):
                rep = [r + k * x for r, x in zip(rep, g)]
            reps.append(tuple(rep))
        return reps or [()]


@cache
def fundamental_group(rs: RootSystem) -> FiniteAbelianGroup:
    """Compute ``P^vee/Q^vee`` via the Smith normal form of the coroot matrix."""
    n = rs.rank
    coroot_rows = [list(c) for c in rs.simple_coroots]
    u, d, v = smith_normal_form(coroot_rows)
    diag = [d[i][i] for i in range(n)]
    vinv = [[int(x) for x in row] for row in linalg.inverse(v)]
    keep = [i for i in range(n) if diag[i] != 1]
    factors = tuple(diag[i] for i in keep)
    projection = tuple(tuple(v[r][i] for i in keep) for r in range(n))
    group = FiniteAbelianGroup(factors, tuple(tuple(vinv[i]) for i in keep), projection)
    # prefer minuscule coweights (c_k = 1) as representatives when one has the same class
    minuscule = {}
    for k in range(n):
        if rs.highest_root_coeffs[k] == 1:
            w = tuple(int(i == k) for i in range(n))
            minuscule.setdefault(group.coordinates(w), w)
    nicer = []
    for g in group.generator_reps:
        nicer.append(minuscule.get(group.coordinates(g), g))
    return FiniteAbelianGroup(factors, tuple(nicer), projection)


def central_coweights(rs: RootSystem) -> list[IntVector]:
    """Integral coweights representing each element of ``Z(G)``, identity first.

    Non-identity elements are represented by minuscule fundamental coweights.
    """
    group = fundamental_group(rs)
    n = rs.rank
    reps = {group.coordinates(tuple([0] * n)): tuple([0] * n)}
    for k in range(n):
        if rs.highest_root_coeffs[k] == 1:
            w = tuple(int(i == k) for i in range(n))
            reps.setdefault(group.coordinates(w), w)
    if len(reps) != group.order:
        raise AssertionError("minuscule coweights do not exhaust the centre")
    return list(reps.values())


def in_coroot_lattice(rs: RootSystem, x: Vector) -> bool:
    """True iff the coweight ``x`` lies in ``Q^vee`` (so ``exp(2 pi i x) = 1``)."""
    if any(Fraction(c).denominator != 1 for c in x):
        return False
    group = fundamental_group(rs)
    if not group.invariant_factors:
        return True
    return all(c == 0 for c in group.coordinates(tuple(int(c) for c in x)))
