"""Standard pseudo-Levi subgroups read off the extended Dynkin diagram.

Node ``0`` of the extended diagram is the negative highest root ``-beta``; nodes
``1..n`` are the simple roots in Bourbaki order.  ``M_k`` drops node ``k`` from the
extended diagram and ``L_k`` drops it from the ordinary one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache

from . import linalg
from .rootcore import (
    FiniteAbelianGroup,
    IntVector,
    RootSystem,
    central_coweights,
    smith_normal_form,
)
from .torus import (
    RationalCoweight,
    TorusCoset,
    alcove_reduce_word,
    apply_word_to_root,
    centralizer_subsystem,
    anchor_denominator,
    coset_key,
    conjugacy_classes,
)


class PseudoLeviError(ValueError):
    """Invalid subset of the extended diagram or incompatible coset."""


@dataclass(frozen=True)
class PseudoLeviDescriptor:
    """A standard pseudo-Levi subgroup ``L_theta``.

    ``components`` lists the nodes of each simple factor in Bourbaki order of that
    factor; factors are sorted by their smallest node.  ``component_types`` is
    parallel to it.
    """

    theta: frozenset[int]
    component_types: tuple[tuple[str, int], ...]
    components: tuple[tuple[int, ...], ...]
    torus_rank: int
    is_levi: bool

    def type_string(self) -> str:
        body = "".join(f"{t}{r}" for t, r in self.component_types) or "1"
        return body + (f"T{self.torus_rank}" if self.torus_rank else "")


@dataclass(frozen=True)
class CenterStructure:
    torus_rank: int
    component_group: FiniteAbelianGroup
    component_reps: tuple[TorusCoset, ...]


@dataclass(frozen=True)
class SphericalPseudoLevi:
    name: str
    kind: str  # "levi" or "pseudo"
    node: int
    descriptor: PseudoLeviDescriptor


# nodes and subsystems ------------------------------------------------------------------


def node_root(rs: RootSystem, i: int) -> IntVector:
    if i == 0:
        return tuple(-c for c in rs.highest_root_coeffs)
    return tuple(int(j == i - 1) for j in range(rs.rank))


def _check_theta(rs: RootSystem, theta) -> frozenset[int]:
    theta = frozenset(int(i) for i in theta)
    if any(i < 0 or i > rs.rank for i in theta):
        raise PseudoLeviError(f"nodes must lie in 0..{rs.rank}")
    if len(theta) == rs.rank + 1:
        raise PseudoLeviError("theta must be a proper subset of the extended diagram")
    return theta


@cache
def subsystem(rs: RootSystem, theta: frozenset[int]) -> frozenset[IntVector]:
    """Roots generated by the nodes in ``theta`` under their reflections."""
    gens = [node_root(rs, i) for i in sorted(theta)]
    found = set(gens) | {tuple(-x for x in g) for g in gens}
    layer = list(found)
    while layer:
        nxt = []
        for r in layer:
            for g in gens:
                s = rs.reflect_root(r, g)
                if s not in found:
                    found.add(s)
                    nxt.append(s)
        layer = nxt
    return frozenset(found)


def _components(rs: RootSystem, theta: frozenset[int]) -> list[list[int]]:
    nodes = sorted(theta)
    seen: set[int] = set()
    comps = []
    for start in nodes:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in nodes:
                if b not in seen and rs.root_on_coroot(node_root(rs, a), node_root(rs, b)) != 0:
                    seen.add(b)
                    stack.append(b)
        comps.append(sorted(comp))
    return comps


def _neighbours(rs: RootSystem, comp: list[int], a: int) -> list[int]:
    ra = node_root(rs, a)
    return [b for b in comp if b != a and rs.root_on_coroot(ra, node_root(rs, b)) != 0]


def _identify(rs: RootSystem, comp: list[int]) -> tuple[str, int, tuple[int, ...]]:
    """Dynkin type of a connected sub-diagram and its nodes in Bourbaki order."""
    r = len(comp)
    roots = subsystem(rs, frozenset(comp))
    size = len(roots)
    norms = {a: rs.norm2(node_root(rs, a)) for a in comp}
    longest = max(norms.values())
    shortest = min(norms.values())
    if r == 1:
        return "A", 1, tuple(comp)
    if longest == shortest:
        if size == r * (r + 1):
            fork = _spin_fork(rs, comp)
            if r == 3 and fork is not None:
                # a three-node chain ending in the fork of an orthogonal diagram is an SO(6) factor
                (middle,) = set(comp) - set(fork)
                return "D", 3, (middle, *fork)
            return "A", r, _path_order(rs, comp, None)
        if size == 2 * r * (r - 1):
            return "D", r, _d_order(rs, comp)
        return "E", r, tuple(comp)
    if longest == 3 * shortest:
        return "G", 2, tuple(comp)
    if size == 48:
        return "F", 4, tuple(comp)
    n_long = sum(1 for x in roots if rs.norm2(x) == longest)
    if r == 2:
        kind = "C" if rs.type_label == "C" else "B"
    else:
        kind = "B" if n_long == 2 * r * (r - 1) else "C"
    # the last Bourbaki node is the unique short node (B) or unique long node (C)
    special = [a for a in comp if norms[a] == (shortest if kind == "B" else longest)]
    if len(special) != 1:
        raise AssertionError("could not orient a doubly laced factor")
    order = _path_order(rs, comp, special[0])
    return kind, r, tuple(reversed(order))


def _is_end(rs: RootSystem, comp: list[int], a: int) -> bool:
    return len(_neighbours(rs, comp, a)) <= 1


def _path_order(rs: RootSystem, comp: list[int], start: int | None) -> tuple[int, ...]:
    ends = [a for a in comp if _is_end(rs, comp, a)]
    cur = start if start is not None else min(ends)
    order = [cur]
    prev = None
    while len(order) < len(comp):
        nxt = [b for b in _neighbours(rs, comp, cur) if b != prev]
        prev, cur = cur, nxt[0]
        order.append(cur)
    return tuple(order)


def _spin_fork(rs: RootSystem, comp: list[int]) -> tuple[int, int] | None:
    """The pair of ambient fork nodes ({0, 1} in B/D, {n-1, n} in D) lying in ``comp``."""
    n = rs.rank
    pairs = {"B": [(0, 1)], "D": [(0, 1), (n - 1, n)]}.get(rs.type_label, [])
    for pair in pairs:
        if set(pair) <= set(comp):
            return pair
    return None


def _d_order(rs: RootSystem, comp: list[int]) -> tuple[int, ...]:
    branch = next(a for a in comp if len(_neighbours(rs, comp, a)) == 3)
    nbrs = _neighbours(rs, comp, branch)
    leaves = sorted(b for b in nbrs if _is_end(rs, comp, b))
    if len(comp) == 4:
        fork = _spin_fork(rs, comp)
        fork = list(fork) if fork is not None else leaves[1:]
        arm = next(b for b in leaves if b not in fork)
    else:
        arm = next(b for b in nbrs if not _is_end(rs, comp, b))
        fork = leaves
    # walk from the branch node out along the long arm
    path = [branch, arm]
    while True:
        nxt = [b for b in _neighbours(rs, comp, path[-1]) if b != path[-2]]
        if not nxt:
            break
        path.append(nxt[0])
    return tuple(reversed(path)) + tuple(fork)


# descriptors --------------------------------------------------------------------------


@cache
def standard_pseudo_levi(rs: RootSystem, theta) -> PseudoLeviDescriptor:
    theta = _check_theta(rs, theta)
    types, comps = [], []
    for comp in _components(rs, theta):
        t, r, order = _identify(rs, comp)
        types.append((t, r))
        comps.append(order)
    torus_rank = rs.rank - len(theta)
    struct = _center(rs, theta)
    is_levi = _twist_images(rs, theta, struct) == struct[0].order
    return PseudoLeviDescriptor(theta, tuple(types), tuple(comps), torus_rank, is_levi)


def levi_theta(rs: RootSystem, k: int) -> frozenset[int]:
    return frozenset(range(1, rs.rank + 1)) - {k}


def pseudo_theta(rs: RootSystem, k: int) -> frozenset[int]:
    return frozenset(range(0, rs.rank + 1)) - {k}


def sigma_element(rs: RootSystem, k: int) -> RationalCoweight:
    """``omega_k^vee / c_k``, the coweight of ``sigma_k``."""
    if not 1 <= k <= rs.rank:
        raise PseudoLeviError("node out of range")
    c = rs.highest_root_coeffs[k - 1]
    return RationalCoweight(tuple(Fraction(int(i == k - 1), c) for i in range(rs.rank)))


def element_order(x: RationalCoweight, rs: RootSystem) -> int:
    """Order of ``exp(2 pi i x)`` in the simply connected group."""
    from .rootcore import in_coroot_lattice

    k = 1
    while not in_coroot_lattice(rs, tuple(k * c for c in x.coords)):
        k += 1
    return k


# centres --------------------------------------------------------------------------------


def _theta_matrix(rs: RootSystem, theta: frozenset[int]) -> list[IntVector]:
    return [node_root(rs, i) for i in sorted(theta)]


@cache
def _center(rs: RootSystem, theta: frozenset[int]):
    """SNF data of ``Z(M)/Z(M)° = Z^k / <theta, Q^vee>``."""
    a = _theta_matrix(rs, theta)
    if not a:
        return FiniteAbelianGroup((), (), ()), None, None, a
    b = [[int(rs.pairing(t, cor)) for cor in rs.simple_coroots] for t in a]
    u, d, _ = smith_normal_form(b)
    k = len(a)
    diag = [d[i][i] for i in range(k)]
    if any(x == 0 for x in diag):
        raise AssertionError("theta roots are not independent")
    keep = [i for i in range(k) if diag[i] != 1]
    factors = tuple(diag[i] for i in keep)
    uinv = [[int(x) for x in row] for row in linalg.inverse(u)]
    gens = tuple(tuple(uinv[r][i] for r in range(k)) for i in keep)
    projection = tuple(tuple(u[i][r] for i in keep) for r in range(k))
    group = FiniteAbelianGroup(factors, gens, projection)
    return group, u, keep, a


def _solve(a: list[IntVector], v: tuple[int, ...]) -> tuple[Fraction, ...]:
    """A rational ``x`` with ``a x = v`` (``a`` has independent rows)."""
    at = linalg.transpose(a)
    gram = linalg.mat_mul(a, at)
    w = linalg.vec_mat(v, linalg.transpose(linalg.inverse(gram)))
    return tuple(sum((Fraction(at[i][j]) * w[j] for j in range(len(w))), Fraction(0)) for i in range(len(at)))


def _component_index(rs: RootSystem, theta: frozenset[int], x) -> tuple[int, ...]:
    group, _, _, a = _center(rs, theta)
    v = tuple(int(rs.pairing(t, x)) for t in a)
    return group.coordinates(v)


def _twist_images(rs: RootSystem, theta: frozenset[int], struct) -> int:
    """Number of components of ``Z(M)`` met by ``Z(G)``."""
    if not theta:
        return 1
    return len({_component_index(rs, theta, z) for z in central_coweights(rs)})


def center_structure(rs: RootSystem, desc: PseudoLeviDescriptor) -> CenterStructure:
    theta = desc.theta
    group, _, _, a = _center(rs, theta)
    direction = tuple(linalg.nullspace(a, rs.rank)) if a else tuple(
        tuple(Fraction(int(i == j)) for j in range(rs.rank)) for i in range(rs.rank)
    )
    reps = []
    for v in group.elements():
        v = v or tuple(0 for _ in a)
        x = _solve(a, v) if a else tuple(Fraction(0) for _ in range(rs.rank))
        reps.append(TorusCoset(RationalCoweight(x), direction))
    return CenterStructure(rs.rank - len(theta), group, tuple(reps))


def in_center(rs: RootSystem, desc: PseudoLeviDescriptor, coset: TorusCoset) -> bool:
    for t in _theta_matrix(rs, desc.theta):
        if rs.pairing(t, coset.anchor.coords).denominator != 1:
            return False
        if any(rs.pairing(t, b) != 0 for b in coset.direction):
            return False
    return True


def satisfies_rp(rs: RootSystem, desc: PseudoLeviDescriptor, coset: TorusCoset) -> bool:
    """The centraliser of the coset has exactly the roots of ``M``."""
    if not in_center(rs, desc, coset):
        raise PseudoLeviError("coset is not contained in Z(M)")
    return centralizer_subsystem(rs, coset) == subsystem(rs, desc.theta)


# the spherical list ------------------------------------------------------------------------


def _spherical_nodes(rs: RootSystem) -> list[tuple[str, int]]:
    t, n = rs.type_label, rs.rank
    if t == "A":
        return [("levi", k) for k in range(1, (n + 1) // 2 + 1)]
    if t == "C":
        return [("levi", 1), ("levi", n)] + [("pseudo", k) for k in range(1, n // 2 + 1)]
    if t == "B":
        return [("levi", 1), ("levi", n)] + [("pseudo", k) for k in range(2, n + 1)]
    if t == "D":
        levis = [("levi", 1), ("levi", n)] + ([("levi", n - 1)] if n % 2 == 0 else [])
        return levis + [("pseudo", k) for k in range(2, n // 2 + 1)]
    return {
        "E6": [("levi", 1), ("pseudo", 2)],
        "E7": [("levi", 7), ("pseudo", 1), ("pseudo", 2)],
        "E8": [("pseudo", 8), ("pseudo", 1)],
        "F4": [("pseudo", 4), ("pseudo", 1)],
        "G2": [("pseudo", 2), ("pseudo", 1)],
    }[f"{t}{n}"]


def enumerate_spherical_pseudo_levis(rs: RootSystem) -> list[SphericalPseudoLevi]:
    """The spherical standard pseudo-Levis ``L_k`` and ``M_k``, one per conjugacy class."""
    out = []
    for kind, k in _spherical_nodes(rs):
        theta = levi_theta(rs, k) if kind == "levi" else pseudo_theta(rs, k)
        name = f"L_{k}" if kind == "levi" else f"M_{k}"
        out.append(SphericalPseudoLevi(name, kind, k, standard_pseudo_levi(rs, theta)))
    return out


# factor transport and d_M --------------------------------------------------------------------


def alcove_theta(rs: RootSystem, a: RationalCoweight) -> frozenset[int]:
    """Walls of the fundamental alcove containing ``a``."""
    walls = {i + 1 for i, c in enumerate(a.coords) if c == 0}
    if rs.pairing(rs.highest_root_coeffs, a.coords) == 1:
        walls.add(0)
    return frozenset(walls)


def transport_factors(
    rs: RootSystem, desc: PseudoLeviDescriptor, x: RationalCoweight
) -> tuple[RationalCoweight, PseudoLeviDescriptor, list[int], list]:
    """Move ``x`` into the alcove and match the factors of ``desc`` with those there.

    Returns the alcove point, its standard descriptor, the index of the image of
    each factor of ``desc``, and the reflection word used.
    """
    a, word = alcove_reduce_word(rs, x)
    target = standard_pseudo_levi(rs, alcove_theta(rs, a))
    target_roots = [subsystem(rs, frozenset(c)) for c in target.components]
    images = []
    for comp in desc.components:
        moved = apply_word_to_root(rs, word, node_root(rs, comp[0]))
        images.append(next(i for i, roots in enumerate(target_roots) if moved in roots))
    return a, target, images, word


def labelled_point_key(
    rs: RootSystem, desc: PseudoLeviDescriptor, x: RationalCoweight, labels: tuple[str, ...]
) -> tuple:
    """Conjugacy invariant of ``(x, O)`` with ``O`` given per factor of ``desc``.

    Requires the centraliser of ``x`` to be ``desc`` (the (RP) situation).
    """
    if len(labels) != len(desc.components):
        raise PseudoLeviError("one label per factor is required")
    a, target, images, _ = transport_factors(rs, desc, x)
    moved = [""] * len(target.components)
    for label, i in zip(labels, images):
        moved[i] = label
    return a.coords, tuple(moved)


def compute_dM(
    rs: RootSystem,
    desc: PseudoLeviDescriptor,
    coset: TorusCoset,
    labels: tuple[str, ...] | None = None,
) -> int:
    """Number of classes among the central translates ``z * (M, coset, O)``."""
    if not satisfies_rp(rs, desc, coset):
        raise PseudoLeviError("coset does not satisfy (RP)")
    shifts = [coset.shifted(z) for z in central_coweights(rs)]
    if labels is not None and len(set(labels)) > 1:
        if coset.dimension:
            raise PseudoLeviError("labelled cosets of positive dimension are assumed characteristic")
        keys = {labelled_point_key(rs, desc, c.anchor, labels) for c in shifts}
        return len(keys)
    # translates landing on the same component of Z(M) are literally equal
    den = anchor_denominator(rs, shifts)
    distinct: dict[tuple, TorusCoset] = {}
    for c in shifts:
        distinct.setdefault(coset_key(rs, c, den), c)
    if len(distinct) == 1:
        return 1
    return len(set(conjugacy_classes(rs, list(distinct.values()))))


__all__ = [
    "PseudoLeviError",
    "PseudoLeviDescriptor",
    "CenterStructure",
    "SphericalPseudoLevi",
    "node_root",
    "subsystem",
    "standard_pseudo_levi",
    "levi_theta",
    "pseudo_theta",
    "sigma_element",
    "element_order",
    "center_structure",
    "in_center",
    "satisfies_rp",
    "enumerate_spherical_pseudo_levis",
    "alcove_theta",
    "transport_factors",
    "labelled_point_key",
    "compute_dM",
]
