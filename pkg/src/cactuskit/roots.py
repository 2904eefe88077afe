"""Brute-force arithmetic in finite Coxeter groups.

Elements are realized as permutations of the root system of the geometric
representation.  This module is the independent check on the hard-coded
longest-element table in :mod:`cactuskit.coxeter`; it never consults it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import perm
from .coxeter import INF, CoxeterMatrix

ROOT_TOLERANCE = 1e-8
DEFAULT_ROOT_CAP = 1000
DEFAULT_ORDER_CAP = 10**7


class NotFiniteTypeError(RuntimeError):
    """Root closure exceeded its cap: the parabolic subgroup is (likely) infinite."""


class OracleUndecided(RuntimeError):
    """The requested conjugation does not live in a finite parabolic subgroup."""


@dataclass(frozen=True)
class OracleElement:
    perm: tuple[int, ...]

    def __mul__(self, other: "OracleElement") -> "OracleElement":
        return OracleElement(perm.compose(self.perm, other.perm))

    def inverse(self) -> "OracleElement":
        return OracleElement(perm.inverse(self.perm))

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))


@dataclass(frozen=True)
class RootSystem:
    matrix: CoxeterMatrix
    members: tuple[int, ...]  # global generator index of local simple root k
    roots: tuple[tuple[float, ...], ...]
    simple_indices: tuple[int, ...]
    gens: tuple[tuple[int, ...], ...]  # simple reflections as root permutations
    positive: tuple[bool, ...]
    tolerance: float = ROOT_TOLERANCE

    @property
    def rank(self) -> int:
        return len(self.members)

    def local(self, g: int) -> int:
        try:
            return self.members.index(g)
        except ValueError:
            raise ValueError(f"generator {g} is not part of this root system") from None

    def reflection(self, g: int) -> OracleElement:
        return OracleElement(self.gens[self.local(g)])

    def identity(self) -> OracleElement:
        return OracleElement(tuple(range(len(self.roots))))

    def negation(self) -> tuple[int, ...]:
        """Permutation sending each root to its negative."""
        arr = np.array(self.roots)
        out = []
        for r in arr:
            hit = np.flatnonzero(np.abs(arr + r).max(axis=1) < self.tolerance)
            out.append(int(hit[0]))
        return tuple(out)


def gram_matrix(m: CoxeterMatrix, members) -> np.ndarray:
    k = len(members)
    gram = np.eye(k)
    for a in range(k):
        for b in range(k):
            if a != b:
                mab = m.m(members[a], members[b])
                gram[a, b] = -1.0 if mab == INF else -math.cos(math.pi / mab)
    return gram


def build_root_system(m: CoxeterMatrix, x=None, cap: int = DEFAULT_ROOT_CAP) -> RootSystem:
    """Close the simple roots of ``W_x`` under the simple reflections."""
    members = tuple(sorted(m.full() if x is None else x))
    if not members:
        raise ValueError("empty generating set")
    if cap < 2 * len(members):
        raise ValueError(f"cap must be at least {2 * len(members)}")
    return _build(m, members, cap)


@lru_cache(maxsize=256)
def _build(m: CoxeterMatrix, members: tuple[int, ...], cap: int) -> RootSystem:
    k = len(members)
    gram = gram_matrix(m, members)
    tol = ROOT_TOLERANCE
    roots = [np.eye(k)[i] for i in range(k)]
    store = np.array(roots)

    def find(v):
        hit = np.flatnonzero(np.abs(store[: len(roots)] - v).max(axis=1) < tol)
        return int(hit[0]) if hit.size else -1

    queue = list(range(k))
    images: dict[tuple[int, int], int] = {}
    head = 0
    while head < len(queue):
        r = queue[head]
        head += 1
        v = roots[r]
        bv = gram @ v
        for i in range(k):
            w = v.copy()
            w[i] -= 2.0 * bv[i]
            j = find(w)
            if j < 0:
                if len(roots) >= cap:
                    raise NotFiniteTypeError(
                        f"not finite type at this cap ({cap} roots) for {m.names(members)}"
                    )
                roots.append(w)
                if len(roots) > store.shape[0]:
                    store = np.vstack([store, np.zeros_like(store)])
                store[len(roots) - 1] = w
                j = len(roots) - 1
                queue.append(j)
            images[(i, r)] = j
    gens = tuple(tuple(images[(i, r)] for r in range(len(roots))) for i in range(k))
    positive = tuple(bool(r.sum() > 0) for r in roots)
    return RootSystem(
        matrix=m,
        members=members,
        roots=tuple(tuple(float(c) for c in r) for r in roots),
        simple_indices=tuple(range(k)),
        gens=gens,
        positive=positive,
    )


def element_from_word(rs: RootSystem, word) -> OracleElement:
    """Product of simple reflections; ``word`` lists global generator indices."""
    local = [rs.local(g) for g in word]
    return OracleElement(perm.word_product(rs.gens, local, len(rs.roots)))


def longest_element(rs: RootSystem, subset=None) -> OracleElement:
    """Longest element of ``W_subset`` (default: the whole root system)."""
    return longest_element_word(rs, subset)[0]


def longest_element_word(rs: RootSystem, subset=None) -> tuple[OracleElement, list[int]]:
    allowed = sorted(rs.local(g) for g in (rs.members if subset is None else subset))
    w, word = perm.longest_descent(rs.gens, rs.simple_indices, rs.positive, allowed)
    return OracleElement(tuple(w)), [rs.members[i] for i in word]


def length(rs: RootSystem, w: OracleElement) -> int:
    """Number of positive roots sent to negative roots."""
    return sum(1 for r, p in enumerate(rs.positive) if p and not rs.positive[w.perm[r]])


def group_order(rs: RootSystem, cap: int = DEFAULT_ORDER_CAP) -> int:
    n = perm.group_order(rs.gens, cap)
    if n < 0:
        raise NotFiniteTypeError(f"group order exceeds cap {cap}")
    return n


def conjugate(w: OracleElement, v: OracleElement) -> OracleElement:
    """``w v w^-1``."""
    return w * v * w.inverse()


def omega_conjugation(rs: RootSystem, x) -> dict[int, int | None]:
    """``s -> w_x s w_x`` for ``s`` in the root system; None when not simple."""
    w = longest_element(rs, x)
    simple = {rs.gens[i]: rs.members[i] for i in range(rs.rank)}
    out = {}
    for i, g in enumerate(rs.members):
        out[g] = simple.get(conjugate(w, OracleElement(rs.gens[i])).perm)
    return out


def oracle_omega_action(m: CoxeterMatrix, x) -> dict[int, int]:
    x = frozenset(x)
    rs = build_root_system(m, x)
    act = omega_conjugation(rs, x)
    return {s: act[s] for s in x}


def conjugate_subset(m: CoxeterMatrix, x, y):
    """``w_x y w_x`` as a set of generators when it is one, else None.

    Raises :class:`OracleUndecided` when the root closure of ``x | y`` does
    not terminate within the default cap.
    """
    x, y = frozenset(x), frozenset(y)
    ambient = x | y
    try:
        rs = build_root_system(m, ambient)
    except NotFiniteTypeError:
        raise OracleUndecided(f"{m.names(ambient)} is not of finite type") from None
    act = omega_conjugation(rs, x)
    image = [act[s] for s in y]
    if any(t is None for t in image):
        return None
    return frozenset(image)
