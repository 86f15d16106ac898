"""Partition calculus for nilpotent orbits, plus exceptional Bala-Carter data.

Classical orbits are labelled by partitions of the natural representation:
``A_n`` by partitions of ``n+1``, ``B_n`` of ``2n+1``, ``C_n`` and ``D_n`` of ``2n``.
Small ranks (``B_0``, ``B_1``, ``C_1``, ``D_1``, ``D_2``, ...) are accepted so that
factors of pseudo-Levi subgroups can be handled by the same code.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import cache

from .rootcore import check_type, lie_algebra_dimension


class OrbitError(ValueError):
    """Invalid partition, label or context."""


# partitions ------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise OrbitError(f"parts must be positive: {parts}")
        if list(parts) != sorted(parts, reverse=True):
            raise OrbitError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def from_multiplicities(cls, pairs: list[tuple[int, int]]) -> "Partition":
        """``[(2, 3), (1, 4)]`` gives ``[2^3, 1^4]``; zero multiplicities are dropped."""
        parts: list[int] = []
        for value, mult in pairs:
            if mult < 0:
                raise OrbitError(f"negative multiplicity for part {value}")
            parts += [value] * mult
        return cls.of(*parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"[3,2^2,1^4]"`` or ``"3,2,2,1"``."""
        body = text.strip().strip("[]").replace(" ", "")
        if not body:
            return cls(())
        pairs = []
        for token in body.split(","):
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", token)
            if not m:
                raise OrbitError(f"cannot parse partition {text!r}")
            pairs.append((int(m.group(1)), int(m.group(2) or 1)))
        return cls.from_multiplicities(pairs)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def multiplicity(self, k: int) -> int:
        return self.parts.count(k)

    def compact(self) -> str:
        groups = sorted(Counter(self.parts).items(), reverse=True)
        return "[" + ",".join(f"{v}^{m}" if m > 1 else f"{v}" for v, m in groups) + "]"

    def __str__(self) -> str:
        return self.compact()


def dual_partition(d: Partition) -> Partition:
    """Transpose: ``f_i = #{j : d_j >= i}``."""
    if not d.parts:
        return d
    return Partition(tuple(sum(1 for p in d.parts if p >= i) for i in range(1, d.parts[0] + 1)))


def dominates(a: Partition, b: Partition) -> bool:
    """``a`` dominates ``b`` (same size assumed)."""
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a.parts[i] if i < len(a) else 0
        sb += b.parts[i] if i < len(b) else 0
        if sa < sb:
            return False
    return sa == sb


def natural_dimension(type_label: str, rank: int) -> int:
    """Size of the partitions labelling orbits in the given classical type."""
    return {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[type_label]


def _bad_parity(type_label: str) -> int | None:
    """Parity of parts that must occur with even multiplicity."""
    return {"A": None, "B": 0, "C": 1, "D": 0}[type_label]


def validate_partition(type_label: str, rank: int, d: Partition) -> bool:
    if type_label not in "ABCD":
        raise OrbitError("unsupported; use Bala-Carter labels for exceptional types")
    if d.size != natural_dimension(type_label, rank):
        return False
    bad = _bad_parity(type_label)
    if bad is None:
        return True
    return all(m % 2 == 0 for v, m in Counter(d.parts).items() if v % 2 == bad)


def collapse(type_label: str, rank: int, d: Partition) -> Partition:
    """Largest valid partition dominated by ``d``, by the usual part-moving procedure."""
    if d.size != natural_dimension(type_label, rank):
        raise OrbitError(f"size {d.size} does not match {type_label}{rank}")
    bad = _bad_parity(type_label)
    parts = list(d.parts)
    while True:
        counts = Counter(parts)
        offenders = [v for v, m in counts.items() if bad is not None and v % 2 == bad and m % 2]
        if not offenders:
            return Partition.of(*parts)
        q = max(offenders)
        last = max(i for i, v in enumerate(parts) if v == q)
        parts[last] -= 1
        nxt = next((i for i in range(last + 1, len(parts)) if parts[i] < q - 1), None)
        if nxt is None:
            parts.append(1)
        else:
            parts[nxt] += 1
        parts = sorted((p for p in parts if p > 0), reverse=True)


# orbits ------------------------------------------------------------------------------


@dataclass(frozen=True)
class NilpotentOrbit:
    """A nilpotent orbit in a classical or exceptional simple Lie algebra.

    ``marker`` distinguishes the two orbits of a very even ``D`` partition.  The
    catalog keys it to the Richardson construction: ``"I"`` is induced from
    ``L_n`` and ``"II"`` from ``L_{n-1}``; ``"?"`` marks an undetermined choice.
    """

    type_label: str
    rank: int
    partition: Partition | None = None
    label: str | None = None
    marker: str | None = None

    def __post_init__(self):
        if self.type_label in "ABCD":
            if self.partition is None:
                raise OrbitError("classical orbits need a partition")
            if not validate_partition(self.type_label, self.rank, self.partition):
                raise OrbitError(f"{self.partition} is not an orbit of {self.type_label}{self.rank}")
            very_even = self.type_label == "D" and is_very_even(self.partition)
            if very_even and self.marker not in ("I", "II", "?"):
                raise OrbitError("very even D partition needs a marker I, II or ?")
            if not very_even and self.marker is not None:
                raise OrbitError("marker only allowed for very even D partitions")
        else:
            if self.label is None:
                raise OrbitError("exceptional orbits need a Bala-Carter label")
            name = f"{self.type_label}{self.rank}"
            if self.label not in _EXCEPTIONAL_KNOWN[name]:
                raise OrbitError(f"unknown label {self.label!r} for {name}")

    @classmethod
    def classical(cls, type_label: str, rank: int, d: Partition | str, marker: str | None = None) -> "NilpotentOrbit":
        part = Partition.parse(d) if isinstance(d, str) else d
        return cls(type_label, rank, part, None, marker)

    @classmethod
    def exceptional(cls, type_label: str, rank: int, label: str) -> "NilpotentOrbit":
        return cls(type_label, rank, None, label)

    @classmethod
    def zero(cls, type_label: str, rank: int) -> "NilpotentOrbit":
        if type_label in "ABCD":
            n = natural_dimension(type_label, rank)
            return cls(type_label, rank, Partition((1,) * n) if n else Partition(()))
        return cls(type_label, rank, None, "0")

    @property
    def is_zero(self) -> bool:
        if self.partition is not None:
            return all(p == 1 for p in self.partition.parts)
        return self.label == "0"

    def describe(self) -> str:
        if self.partition is not None:
            return self.partition.compact() + (f"{self.marker}" if self.marker else "")
        return self.label or "0"


def is_very_even(d: Partition) -> bool:
    return bool(d.parts) and all(p % 2 == 0 for p in d.parts)


def orbit_dimension(orbit: NilpotentOrbit) -> int:
    t, n = orbit.type_label, orbit.rank
    if t not in "ABCD":
        key = f"{t}{n}"
        try:
            return _EXCEPTIONAL_DIMENSIONS[key][orbit.label]
        except KeyError:
            raise OrbitError(f"no embedded dimension for {orbit.label} in {key}") from None
    d = orbit.partition
    f = dual_partition(d)
    sq = sum(x * x for x in f.parts)
    odd = sum(1 for p in d.parts if p % 2)
    if t == "A":
        return (n + 1) ** 2 - sq
    if t == "B":
        return 2 * n * n + n - (sq - odd) // 2
    if t == "C":
        return 2 * n * n + n - (sq + odd) // 2
    return 2 * n * n - n - (sq - odd) // 2


def classical_dimension(type_label: str, rank: int) -> int:
    """Dimension of the classical Lie algebra, including degenerate small ranks."""
    if type_label == "A":
        return rank * (rank + 2)
    if type_label in "BC":
        return rank * (2 * rank + 1)
    return rank * (2 * rank - 1)


# induction -------------------------------------------------------------------------


def richardson_from_blocks(
    type_label: str,
    rank: int,
    blocks: list[int] | tuple[int, ...],
    residual: int = 0,
    node: int | None = None,
) -> NilpotentOrbit:
    """Orbit induced from the zero orbit of a Levi.

    For ``A``, ``blocks`` is the composition of ``n+1`` given by the Levi.  For
    ``B``/``C``/``D`` it lists the ``GL`` blocks and ``residual`` is the rank of the
    remaining classical factor.  ``node`` is the removed node that decides the
    marker of a very even ``D`` result (``n`` gives ``I``, ``n-1`` gives ``II``).
    """
    blocks = [int(b) for b in blocks]
    if any(b <= 0 for b in blocks):
        raise OrbitError("blocks must be positive")
    if type_label == "A":
        if sum(blocks) != rank + 1 or residual:
            raise OrbitError("blocks must sum to n+1")
        return NilpotentOrbit.classical("A", rank, dual_partition(Partition.of(*blocks)))
    if type_label not in "BCD":
        raise OrbitError("Richardson partitions only for classical types")
    if sum(blocks) + residual != rank or residual < 0:
        raise OrbitError("blocks plus residual rank must equal the rank")
    tail = {"B": 2 * residual + 1, "C": 2 * residual, "D": 2 * residual}[type_label]
    multiset = [b for b in blocks for _ in (0, 1)] + ([tail] if tail else [])
    d = collapse(type_label, rank, dual_partition(Partition.of(*multiset)))
    marker = None
    if type_label == "D" and is_very_even(d):
        marker = {rank: "I", rank - 1: "II"}.get(node, "?")
    return NilpotentOrbit.classical(type_label, rank, d, marker)


def levi_blocks(type_label: str, rank: int, removed: frozenset[int] | set[int]) -> tuple[list[int], int]:
    """GL blocks and residual rank of the standard Levi with the given simple nodes removed.

    Nodes use Bourbaki numbering ``1..rank``.
    """
    removed = sorted(set(removed))
    if any(k < 1 or k > rank for k in removed):
        raise OrbitError("removed nodes out of range")
    if type_label == "A":
        cuts = [0] + removed + [rank + 1]
        return [b - a for a, b in zip(cuts, cuts[1:])], 0
    if type_label in "BC":
        cuts = [0] + removed
        return [b - a for a, b in zip(cuts, cuts[1:])], rank - (removed[-1] if removed else 0)
    if type_label != "D":
        raise OrbitError("Levi blocks only for classical types")
    low = [k for k in removed if k <= rank - 2]
    cuts = [0] + low
    blocks = [b - a for a, b in zip(cuts, cuts[1:])]
    j = cuts[-1]
    top = {rank - 1, rank} & set(removed)
    if not top:
        return blocks, rank - j
    if len(top) == 1:
        return blocks + [rank - j], 0
    return blocks + [rank - j - 1, 1], 0


def richardson_for_levi(type_label: str, rank: int, removed: frozenset[int] | set[int]) -> NilpotentOrbit:
    blocks, residual = levi_blocks(type_label, rank, removed)
    node = None
    if type_label == "D":
        top = {rank - 1, rank} & set(removed)
        node = next(iter(top)) if len(top) == 1 else None
    return richardson_from_blocks(type_label, rank, blocks, residual, node)


def levi_dimension(type_label: str, rank: int, blocks: list[int], residual: int) -> int:
    if type_label == "A":
        return sum(b * b for b in blocks) - 1
    return sum(b * b for b in blocks) + classical_dimension(type_label, residual)


def induce_type_A(block_orbits: list[Partition]) -> Partition:
    """Induction in ``sl``: the row-wise sum of the block partitions.

    Equivalently the transpose of the union of the transposes; this is the rule
    that makes ``dim Ind O = dim O + dim G - dim L``.
    """
    width = max((len(p.parts) for p in block_orbits), default=0)
    return Partition.of(*(sum(p.parts[i] for p in block_orbits if i < len(p.parts)) for i in range(width)))


# rigidity and sphericality ----------------------------------------------------------


def has_full_members(d: Partition) -> bool:
    if not d.parts:
        return True
    if d.parts[-1] != 1:
        return False
    return all(a - b <= 1 for a, b in zip(d.parts, d.parts[1:]))


def _is_odd_d_exception(orbit: NilpotentOrbit) -> bool:
    n = orbit.rank
    if orbit.type_label != "D" or n % 2 == 0:
        return False
    return orbit.partition == Partition.from_multiplicities([(2, n - 1), (1, 2)])


def is_birationally_rigid(orbit: NilpotentOrbit) -> bool:
    t = orbit.type_label
    if t == "A":
        return orbit.is_zero
    if t in "BCD":
        return has_full_members(orbit.partition) and not _is_odd_d_exception(orbit)
    name = f"{t}{orbit.rank}"
    return orbit.label in _RIGID[name] or orbit.label in _BIRATIONAL_EXTRAS.get(name, ())


def is_spherical_nilpotent(orbit: NilpotentOrbit) -> bool:
    t = orbit.type_label
    if t in "AC":
        return all(p <= 2 for p in orbit.partition.parts)
    if t in "BD":
        parts = orbit.partition.parts
        if not parts or parts[0] <= 2:
            return True
        return parts[0] == 3 and (len(parts) < 2 or parts[1] <= 2)
    return orbit.label == "0" or orbit.label in _SPHERICAL[f"{t}{orbit.rank}"]


def spherical_nilpotent_orbits(type_label: str, rank: int) -> list[NilpotentOrbit]:
    """All spherical orbits of the type, zero orbit first."""
    check_type(type_label, rank)
    if type_label not in "ABCD":
        return [NilpotentOrbit.zero(type_label, rank)] + [
            NilpotentOrbit.exceptional(type_label, rank, lab) for lab in _SPHERICAL[f"{type_label}{rank}"]
        ]
    out = []
    for d in partitions_of(natural_dimension(type_label, rank)):
        if not validate_partition(type_label, rank, d):
            continue
        markers = ["I", "II"] if type_label == "D" and is_very_even(d) else [None]
        for mk in markers:
            orbit = NilpotentOrbit.classical(type_label, rank, d, mk)
            if is_spherical_nilpotent(orbit):
                out.append(orbit)
    return sorted(out, key=lambda o: (orbit_dimension(o), o.describe()))


@cache
def partitions_of(n: int, largest: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` with parts at most ``largest``, in reverse lexicographic order."""
    largest = n if largest is None else largest
    if n == 0:
        return (Partition(()),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition((first,) + rest.parts))
    return tuple(out)


def characteristic_in_product(labels: list[tuple[tuple[str, int], str]]) -> bool:
    """Whether an orbit on a product of simple factors is fixed by factor swaps.

    ``labels`` pairs each factor type with the orbit it carries.  Two isomorphic
    factors carrying different orbits make the product orbit non-characteristic.
    """
    seen: dict[tuple[str, int], set[str]] = {}
    for factor, lab in labels:
        seen.setdefault(factor, set()).add(lab)
    return all(len(v) == 1 for v in seen.values())


# exceptional data ---------------------------------------------------------------------

# Dimensions of the spherical orbits (and the zero orbit).
_EXCEPTIONAL_DIMENSIONS: dict[str, dict[str, int]] = {
    "E6": {"0": 0, "A1": 22, "2A1": 32, "3A1": 40},
    "E7": {"0": 0, "A1": 34, "2A1": 52, "(3A1)''": 54, "(3A1)'": 64, "4A1": 70},
    "E8": {"0": 0, "A1": 58, "2A1": 92, "3A1": 112, "4A1": 128},
    "F4": {"0": 0, "A1": 16, "~A1": 22, "A1+~A1": 28},
    "G2": {"0": 0, "A1": 6, "~A1": 8},
}

_SPHERICAL: dict[str, tuple[str, ...]] = {
    "E6": ("A1", "2A1", "3A1"),
    "E7": ("A1", "2A1", "(3A1)''", "(3A1)'", "4A1"),
    "E8": ("A1", "2A1", "3A1", "4A1"),
    "F4": ("A1", "~A1", "A1+~A1"),
    "G2": ("A1", "~A1"),
}

# Rigid orbits of the exceptional algebras.
_RIGID: dict[str, tuple[str, ...]] = {
    "G2": ("0", "A1", "~A1"),
    "F4": ("0", "A1", "~A1", "A1+~A1", "A2+~A1", "~A2+A1"),
    "E6": ("0", "A1", "3A1", "2A2+A1"),
    "E7": ("0", "A1", "2A1", "(3A1)'", "4A1", "A2+2A1", "A2+3A1", "2A2+A1"),
    "E8": (
        "0", "A1", "2A1", "3A1", "4A1", "A2+A1", "A2+2A1", "A2+3A1", "2A2+A1",
        "A3+A1", "2A2+2A1", "A3+2A1", "D4(a1)+A1", "A3+A2+A1",
    ),
}

# Birationally rigid but not rigid.
_BIRATIONAL_EXTRAS: dict[str, tuple[str, ...]] = {
    "E7": ("A2+A1", "A4+A1"),
    "E8": ("A4+A1", "A4+2A1"),
}

_EXCEPTIONAL_KNOWN: dict[str, frozenset[str]] = {
    name: frozenset(_RIGID[name]) | frozenset(_SPHERICAL[name]) | frozenset(_BIRATIONAL_EXTRAS.get(name, ()))
    for name in _RIGID
}


def exceptional_dimension_bound_ok(type_label: str, rank: int) -> bool:
    """Spherical orbits satisfy ``dim O <= |Phi+| + rank``."""
    bound = (lie_algebra_dimension(type_label, rank) - rank) // 2 + rank
    name = f"{type_label}{rank}"
    return all(_EXCEPTIONAL_DIMENSIONS[name][lab] <= bound for lab in _SPHERICAL[name])


__all__ = [
    "OrbitError",
    "Partition",
    "NilpotentOrbit",
    "dual_partition",
    "dominates",
    "validate_partition",
    "collapse",
    "orbit_dimension",
    "richardson_from_blocks",
    "richardson_for_levi",
    "levi_blocks",
    "levi_dimension",
    "induce_type_A",
    "has_full_members",
    "is_birationally_rigid",
    "is_spherical_nilpotent",
    "spherical_nilpotent_orbits",
    "partitions_of",
    "is_very_even",
    "natural_dimension",
    "classical_dimension",
    "characteristic_in_product",
]
