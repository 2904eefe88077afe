"""The defining presentation of a cactus group and its abelianization."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .coxeter import (
    CoxeterMatrix,
    components_of,
    decompose_components,
    is_commuting_disjoint,
    is_finite_group,
    omega_image,
    recognize_finite_type,
    subset_key,
)

RELATION_TAGS = (
    "R1", "R2", "R3",
    "R1a", "R2a", "R2b", "R2c", "R3a", "R3b",
    "R2hat", "R2hat_c", "R2hat_b",
)


@dataclass(frozen=True)
class FSet:
    """Nonempty subsets generating a finite irreducible parabolic subgroup."""

    members: tuple[frozenset, ...]
    _set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_set", frozenset(self.members))

    def __iter__(self) -> Iterator[frozenset]:
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return frozenset(x) in self._set

    def position(self, x) -> int:
        return self.members.index(frozenset(x))


@dataclass(frozen=True)
class OmegaSets:
    base: frozenset
    omega0: tuple[frozenset, ...]
    omegaP: tuple[frozenset, ...]

    @property
    def omega(self) -> tuple[frozenset, ...]:
        return tuple(sorted(self.omega0 + self.omegaP, key=subset_key))


@dataclass(frozen=True)
class Relation:
    """``lhs = rhs``; words are tuples of subsets, the empty word is 1."""

    lhs: tuple[frozenset, ...]
    rhs: tuple[frozenset, ...]
    tag: str
    note: str = field(default="", compare=False)

    def letters(self) -> set[frozenset]:
        return set(self.lhs) | set(self.rhs)

    def relator(self) -> list[tuple[frozenset, int]]:
        """``lhs * rhs^-1`` as (letter, exponent) pairs."""
        return [(x, 1) for x in self.lhs] + [(x, -1) for x in reversed(self.rhs)]


@dataclass(frozen=True)
class CactusPresentation:
    generators: tuple[frozenset, ...]
    relations: tuple[Relation, ...]

    def by_tag(self, tag: str) -> list[Relation]:
        return [r for r in self.relations if r.tag == tag]

    def tags(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.relations:
            out[r.tag] = out.get(r.tag, 0) + 1
        return out


@dataclass(frozen=True)
class EquivClasses:
    classes: tuple[tuple[frozenset, ...], ...]
    class_edges: tuple[tuple[frozenset, frozenset, frozenset], ...]

    @property
    def m(self) -> int:
        return len(self.classes)

    def class_of(self, x) -> int:
        x = frozenset(x)
        for i, cls in enumerate(self.classes):
            if x in cls:
                return i
        raise KeyError(x)


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # keep the canonically smaller representative as root
        if subset_key(rb) < subset_key(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


# --------------------------------------------------------------------------

@lru_cache(maxsize=256)
def enumerate_F(m: CoxeterMatrix) -> FSet:
    """All connected finite-type subsets, ordered by size then members."""
    found = set()
    frontier = []
    for v in range(m.rank):
        x = frozenset((v,))
        found.add(x)
        frontier.append(x)
    seen = set(found)
    while frontier:
        nxt = []
        for x in frontier:
            for v in sorted({w for s in x for w in m.neighbors(s)} - x):
                y = x | {v}
                if y in seen:
                    continue
                seen.add(y)
                # any superset of an infinite parabolic is infinite, so prune here
                if recognize_finite_type(m, y) is not None:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return FSet(tuple(sorted(found, key=subset_key)))


def omega_sets(m: CoxeterMatrix, f: FSet, x) -> OmegaSets:
    x = frozenset(x)
    if x not in f:
        raise ValueError(f"{m.names(x)} is not in F")
    omega0 = tuple(y for y in f if y < x)
    omegaP = tuple(y for y in f if is_commuting_disjoint(m, x, y))
    return OmegaSets(x, omega0, omegaP)


@lru_cache(maxsize=256)
def _omega_table(m: CoxeterMatrix) -> dict[frozenset, OmegaSets]:
    f = enumerate_F(m)
    return {x: omega_sets(m, f, x) for x in f}


def omega_table(m: CoxeterMatrix) -> dict[frozenset, OmegaSets]:
    return _omega_table(m)


def in_omega(m: CoxeterMatrix, x, y) -> bool:
    """``y`` in Omega(x), decided combinatorially."""
    x, y = frozenset(x), frozenset(y)
    return y < x or is_commuting_disjoint(m, x, y)


def defining_presentation(m: CoxeterMatrix) -> CactusPresentation:
    f = enumerate_F(m)
    table = omega_table(m)
    rels = [Relation((x, x), (), "R1") for x in f]
    for x in f:
        for y in table[x].omega0:
            rels.append(Relation((x, y), (omega_image(m, x, y), x), "R2"))
    for i, x in enumerate(f.members):
        for y in f.members[i + 1:]:
            if is_commuting_disjoint(m, x, y):
                rels.append(Relation((x, y), (y, x), "R3"))
    return CactusPresentation(f.members, tuple(rels))


@lru_cache(maxsize=256)
def equivalence_classes(m: CoxeterMatrix) -> EquivClasses:
    f = enumerate_F(m)
    table = omega_table(m)
    uf = UnionFind(f.members)
    edges = []
    for x in f:
        for y in table[x].omega0:
            z = omega_image(m, x, y)
            if z != y:
                edges.append((x, y, z))
                uf.union(y, z)
    groups: dict[frozenset, list[frozenset]] = {}
    for x in f:
        groups.setdefault(uf.find(x), []).append(x)
    classes = sorted(
        (tuple(sorted(g, key=subset_key)) for g in groups.values()),
        key=lambda c: subset_key(c[0]),
    )
    return EquivClasses(tuple(classes), tuple(edges))


def abelianization(m: CoxeterMatrix) -> tuple[int, str]:
    k = equivalence_classes(m).m
    return k, f"Z2^{k}"


def canonical_transversal(e: EquivClasses) -> list[frozenset]:
    return [cls[0] for cls in e.classes]


def is_cactus_abelian(m: CoxeterMatrix) -> bool:
    return not m.edges()


# --------------------------------------------------------------------------
# Checks

def abelian_rank(p: CactusPresentation) -> int:
    """Z2-rank of the abelianization, assuming every generator is an involution.

    Each relation contributes the parity vector of its relator; the rank is the
    generator count minus the GF(2) rank of those vectors.
    """
    pos = {x: i for i, x in enumerate(p.generators)}
    basis: dict[int, int] = {}  # pivot bit -> row
    for rel in p.relations:
        row = 0
        for x, _ in rel.relator():
            row ^= 1 << pos[x]
        while row:
            pivot = row.bit_length() - 1
            if pivot not in basis:
                basis[pivot] = row
                break
            row ^= basis[pivot]
    involutions = {r.lhs[0] for r in p.relations if len(r.lhs) == 2 and r.lhs[0] == r.lhs[1] and not r.rhs}
    if set(p.generators) - involutions:
        raise ValueError("abelian_rank needs c^2 = 1 for every generator")
    return len(p.generators) - len(basis)


@dataclass
class ProjectionReport:
    available: bool
    checked: int = 0
    failures: list[Relation] = field(default_factory=list)
    notice: str = ""

    @property
    def ok(self) -> bool:
        return self.available and not self.failures


def check_projection_to_W(m: CoxeterMatrix, p: CactusPresentation) -> ProjectionReport:
    """Map ``c_X`` to the longest element of ``W_X`` and test every relation in W."""
    from . import roots

    if not is_finite_group(m):
        return ProjectionReport(False, notice="oracle unavailable: W is infinite")
    rs = roots.build_root_system(m)
    omega = {}
    for x in p.generators:
        omega[x] = roots.longest_element(rs, x)
    ident = rs.identity()

    def evaluate(word: Sequence[frozenset]):
        acc = ident
        for x in word:
            acc = acc * omega[x]
        return acc

    report = ProjectionReport(True)
    for rel in p.relations:
        report.checked += 1
        if evaluate(rel.lhs) != evaluate(rel.rhs):
            report.failures.append(rel)
    return report


def decompose_cactus(m: CoxeterMatrix) -> list[tuple[CoxeterMatrix, CactusPresentation]]:
    """One cactus presentation per connected component of the Coxeter graph."""
    comps = decompose_components(m)
    where = {}
    for k, comp in enumerate(comps):
        for g in comp:
            where[g] = k
    f = enumerate_F(m)
    for x in f:
        if len(components_of(m, x)) != 1 or len({where[g] for g in x}) != 1:
            raise AssertionError(f"{m.names(x)} straddles components")
    for rel in defining_presentation(m).relations:
        spans = {where[g] for x in rel.letters() for g in x}
        if len(spans) > 1 and rel.tag != "R3":
            raise AssertionError(f"cross-component relation {rel} is not a commutation")
    return [(m.restrict(comp), defining_presentation(m.restrict(comp))) for comp in comps]
