"""Characters of symmetric groups, Young permutation modules and Kostka numbers.

Conjugacy classes of ``S_n`` are indexed by partitions of ``n`` in the order of
:func:`~sphersheets.orbitcalc.partitions_of` (reverse lexicographic, ``[n]`` first).
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import factorial, prod

from .orbitcalc import Partition, dominates, partitions_of

CAP_VARIABLE = "SPHERSHEETS_SYMORACLE_CAP"
DEFAULT_CAP = 10


class SymOracleError(ValueError):
    pass


def size_cap() -> int:
    raw = os.environ.get(CAP_VARIABLE)
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise SymOracleError(f"{CAP_VARIABLE} must be an integer, got {raw!r}") from None


def _check_size(n: int) -> None:
    if n < 0:
        raise SymOracleError("n must be non-negative")
    if n > size_cap():
        raise SymOracleError(f"n = {n} exceeds the cap {size_cap()} (set {CAP_VARIABLE} to raise it)")


def _as_partition(p: Partition | tuple[int, ...] | list[int]) -> Partition:
    return p if isinstance(p, Partition) else Partition.of(*p)


def centraliser_order(mu: Partition) -> int:
    """``z_mu = prod i^{m_i} m_i!``."""
    return prod(i**m * factorial(m) for i, m in Counter(mu.parts).items())


def class_size(mu: Partition) -> int:
    return factorial(sum(mu.parts)) // centraliser_order(mu)


@dataclass(frozen=True)
class SymCharacter:
    n: int
    values: tuple[Fraction, ...]

    def __getitem__(self, mu: Partition) -> Fraction:
        return self.values[_class_index(self.n)[_as_partition(mu)]]

    def inner(self, other: "SymCharacter") -> Fraction:
        if other.n != self.n:
            raise SymOracleError("characters of different symmetric groups")
        classes = partitions_of(self.n)
        total = sum(Fraction(class_size(mu)) * a * b for mu, a, b in zip(classes, self.values, other.values))
        return total / factorial(self.n)


@cache
def _class_index(n: int) -> dict[Partition, int]:
    return {mu: i for i, mu in enumerate(partitions_of(n))}


# Murnaghan-Nakayama on beta-sets --------------------------------------------------------


@cache
def _mn(beta: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    """Character value on a cycle type, removing rim hooks as bead moves on an abacus."""
    if not cycles:
        return 1
    r, rest = cycles[0], cycles[1:]
    occupied = set(beta)
    total = 0
    for b in beta:
        if b - r < 0 or b - r in occupied:
            continue
        sign = -1 if sum(1 for c in beta if b - r < c < b) % 2 else 1
        moved = tuple(sorted((c if c != b else b - r) for c in beta))
        total += sign * _mn(moved, rest)
    return total


def _beta_set(lam: Partition) -> tuple[int, ...]:
    k = len(lam.parts)
    return tuple(sorted(p + (k - 1 - i) for i, p in enumerate(lam.parts)))


def irreducible_character(lam) -> SymCharacter:
    lam = _as_partition(lam)
    n = lam.size
    _check_size(n)
    beta = _beta_set(lam)
    return SymCharacter(n, tuple(Fraction(_mn(beta, mu.parts)) for mu in partitions_of(n)))


@cache
def character_table(n: int) -> tuple[SymCharacter, ...]:
    """Rows indexed like the classes, by ``partitions_of(n)``."""
    _check_size(n)
    return tuple(irreducible_character(lam) for lam in partitions_of(n))


# permutation modules ---------------------------------------------------------------------------


def _fixed_cosets(cycles: tuple[int, ...], rows: tuple[int, ...]) -> int:
    """Ways to place whole cycles into rows of the given capacities, filling them exactly."""

    @cache
    def go(i: int, remaining: tuple[int, ...]) -> int:
        if i == len(cycles):
            return int(all(r == 0 for r in remaining))
        c = cycles[i]
        count = 0
        for j, r in enumerate(remaining):
            if r >= c:
                count += go(i + 1, remaining[:j] + (r - c,) + remaining[j + 1 :])
        return count

    return go(0, rows)


def permutation_character(d) -> SymCharacter:
    """Character of ``Ind_{S_d}^{S_n}`` of the trivial module (cosets of a Young subgroup)."""
    d = _as_partition(d)
    n = d.size
    _check_size(n)
    return SymCharacter(n, tuple(Fraction(_fixed_cosets(mu.parts, d.parts)) for mu in partitions_of(n)))


# Kostka numbers --------------------------------------------------------------------------------


def _horizontal_strips(shape: tuple[int, ...], k: int):
    """Shapes ``nu`` inside ``shape`` with ``shape/nu`` a horizontal strip of size ``k``."""

    def go(i: int, left: int, acc: tuple[int, ...]):
        if i == len(shape):
            if left == 0:
                yield tuple(p for p in acc if p > 0)
            return
        lower = shape[i + 1] if i + 1 < len(shape) else 0
        for keep in range(shape[i], lower - 1, -1):
            take = shape[i] - keep
            if take > left:
                break
            yield from go(i + 1, left - take, acc + (keep,))

    yield from go(0, k, ())


@cache
def _kostka(shape: tuple[int, ...], content: tuple[int, ...]) -> int:
    if not content:
        return int(not shape)
    *rest, last = content
    return sum(_kostka(nu, tuple(rest)) for nu in _horizontal_strips(shape, last))


def kostka(f, d) -> int:
    """Number of semistandard tableaux of shape ``f`` and content ``d``."""
    f, d = _as_partition(f), _as_partition(d)
    if f.size != d.size:
        raise SymOracleError("shape and content have different sizes")
    return _kostka(f.parts, d.parts)


def kostka_by_characters(f, d) -> int:
    """``<U_d, chi^f>`` computed from character values."""
    value = permutation_character(d).inner(irreducible_character(f))
    if value.denominator != 1:
        raise AssertionError("non-integral multiplicity")
    return int(value)


def kostka_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """Rows ``f``, columns ``d``, both in the order of ``partitions_of(n)``."""
    _check_size(n)
    parts = partitions_of(n)
    return tuple(tuple(kostka(f, d) for d in parts) for f in parts)


def decompose_permutation_module(d) -> dict[Partition, int]:
    """Multiplicity of each Specht module in ``U_d`` (zero entries omitted)."""
    d = _as_partition(d)
    _check_size(d.size)
    pc = permutation_character(d)
    out = {}
    for f, chi in zip(partitions_of(d.size), character_table(d.size)):
        m = pc.inner(chi)
        if m.denominator != 1 or m < 0:
            raise AssertionError("permutation module multiplicity is not a natural number")
        if m:
            out[f] = int(m)
    return out


def is_unitriangular(n: int) -> bool:
    parts = partitions_of(n)
    for f in parts:
        for d in parts:
            k = kostka(f, d)
            if f == d and k != 1:
                return False
            if k and not dominates(f, d):
                return False
    return True


def separation_witness(d, f) -> Partition:
    """A Specht label occurring once in ``U_f`` and not at all in ``U_d``.

    The lexicographically smaller of the two partitions works: it cannot
    dominate the larger one, so its Kostka number against it vanishes.
    """
    d, f = _as_partition(d), _as_partition(f)
    if d == f:
        raise SymOracleError("the two partitions coincide")
    if d.size != f.size:
        raise SymOracleError("partitions of different sizes")
    small, large = (f, d) if d.parts > f.parts else (d, f)
    if kostka_by_characters(small, small) != 1 or kostka_by_characters(small, large) != 0:
        raise AssertionError(f"no separation between {d} and {f}")
    return small


__all__ = [
    "CAP_VARIABLE",
    "DEFAULT_CAP",
    "SymOracleError",
    "SymCharacter",
    "size_cap",
    "centraliser_order",
    "class_size",
    "irreducible_character",
    "character_table",
    "permutation_character",
    "kostka",
    "kostka_by_characters",
    "kostka_matrix",
    "decompose_permutation_module",
    "is_unitriangular",
    "separation_witness",
]
