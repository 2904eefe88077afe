"""Coxeter matrices, the finite-type catalog and longest-element actions.

Subsets of generators are plain ``frozenset`` objects of generator indices
throughout the package; the generator order given at construction fixes every
canonical ordering downstream.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

INF = math.inf

ParabolicSubset = frozenset  # frozenset[int] of generator indices


class CoxeterInputError(ValueError):
    """Malformed Coxeter matrix description."""


def subset_key(x: Iterable[int]) -> tuple:
    """Size-then-lex ordering key used for every canonical ordering."""
    members = tuple(sorted(x))
    return (len(members), members)


class CoxeterMatrix:
    """A symmetric Coxeter matrix on an ordered generator list.

    ``bonds`` maps unordered index pairs to ``m_{s,t}``; missing pairs mean 2.
    """

    __slots__ = ("generators", "_bonds", "_index", "_adj")

    def __init__(self, generators: Sequence[str], bonds: Mapping | None = None):
        generators = tuple(str(g) for g in generators)
        if not generators:
            raise CoxeterInputError("a Coxeter matrix needs at least one generator")
        if len(set(generators)) != len(generators):
            dup = sorted({g for g in generators if generators.count(g) > 1})
            raise CoxeterInputError(f"duplicate generator name(s): {', '.join(dup)}")
        n = len(generators)
        clean: dict[frozenset, float | int] = {}
        for pair, m in (bonds or {}).items():
            i, j = tuple(pair) if len(pair) == 2 else (None, None)
            if i is None or i == j or not (0 <= i < n and 0 <= j < n):
                raise CoxeterInputError(f"bad generator pair {tuple(pair)!r}")
            m = _check_bond(m)
            if m != 2:
                clean[frozenset((i, j))] = m
        self.generators = generators
        self._bonds = clean
        self._index = {g: i for i, g in enumerate(generators)}
        adj: list[list[int]] = [[] for _ in range(n)]
        for pair in clean:
            i, j = sorted(pair)
            adj[i].append(j)
            adj[j].append(i)
        self._adj = tuple(tuple(sorted(a)) for a in adj)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise CoxeterInputError(f"unknown generator {name!r}") from None

    def m(self, i: int, j: int):
        if i == j:
            return 1
        return self._bonds.get(frozenset((i, j)), 2)

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self._adj[i]

    def edges(self) -> list[tuple[int, int, float | int]]:
        """Edges of the Coxeter graph (bond >= 3) as sorted ``(i, j, m)``."""
        return sorted((min(p), max(p), m) for p, m in self._bonds.items())

    def names(self, x: Iterable[int]) -> list[str]:
        return [self.generators[i] for i in sorted(x)]

    def subset(self, names: Iterable[str]) -> frozenset:
        return frozenset(self.index(n) for n in names)

    def full(self) -> frozenset:
        return frozenset(range(self.rank))

    def restrict(self, x: Iterable[int]) -> "CoxeterMatrix":
        """Sub-matrix on ``x``; local index k corresponds to ``sorted(x)[k]``."""
        members = sorted(x)
        local = {g: k for k, g in enumerate(members)}
        bonds = {}
        for (i, j, m) in self.edges():
            if i in local and j in local:
                bonds[(local[i], local[j])] = m
        return CoxeterMatrix([self.generators[g] for g in members], bonds)

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "bonds": [
                {"a": self.generators[i], "b": self.generators[j], "m": _bond_json(m)}
                for i, j, m in self.edges()
            ],
        }

    def __eq__(self, other):
        if not isinstance(other, CoxeterMatrix):
            return NotImplemented
        return self.generators == other.generators and self._bonds == other._bonds

    def __hash__(self):
        return hash((self.generators, frozenset(self._bonds.items())))

    def __repr__(self):
        edges = ", ".join(
            f"{self.generators[i]}-{self.generators[j]}:{_bond_json(m)}"
            for i, j, m in self.edges()
        )
        return f"CoxeterMatrix({list(self.generators)}, {{{edges}}})"


def _check_bond(m):
    if isinstance(m, str):
        if m.lower() in ("inf", "infinity", "oo"):
            return INF
        try:
            m = int(m)
        except ValueError:
            raise CoxeterInputError(f"bad bond value {m!r}") from None
    if m == INF:
        return INF
    if isinstance(m, bool) or not isinstance(m, (int, float)) or m != int(m):
        raise CoxeterInputError(f"bad bond value {m!r}")
    m = int(m)
    if m < 2:
        raise CoxeterInputError(f"bond value must be >= 2 or inf, got {m}")
    return m


def _bond_json(m):
    return "inf" if m == INF else int(m)


# --------------------------------------------------------------------------
# Presets and parsing

def _path(n: int, special: Mapping[int, int] | None = None) -> dict:
    special = special or {}
    return {(i, i + 1): special.get(i, 3) for i in range(n - 1)}


def _names(n: int) -> list[str]:
    return [f"s{i}" for i in range(1, n + 1)]


def diagram(family: str, rank: int, param: int | float | None = None) -> CoxeterMatrix:
    """Reference Coxeter matrix of a catalog type with the usual vertex numbering.

    Vertex ``s_k`` has index ``k - 1``.  D_n carries its fork tips on s1, s2
    attached to s3; E_n has the branch vertex s_n attached to s3.
    """
    n = rank
    if family == "A" and n >= 1:
        bonds = _path(n)
    elif family == "B" and n >= 2:
        bonds = _path(n, {0: 4})
    elif family == "D" and n >= 4:
        bonds = {(0, 2): 3, (1, 2): 3}
        bonds.update({(i, i + 1): 3 for i in range(2, n - 1)})
    elif family == "E" and n in (6, 7, 8):
        bonds = _path(n - 1)
        bonds[(2, n - 1)] = 3
    elif family == "F" and n == 4:
        bonds = _path(4, {1: 4})
    elif family == "H" and n == 3:
        bonds = _path(3, {1: 5})
    elif family == "H" and n == 4:
        bonds = _path(4, {2: 5})
    elif family == "I" and n == 2 and param is not None:
        bonds = {(0, 1): _check_bond(param)}
    else:
        raise CoxeterInputError(f"no such diagram: {family}{rank} {param or ''}".strip())
    return CoxeterMatrix(_names(n), bonds)


_PRESET_RE = re.compile(r"^\s*([ABDEFH])\s*(\d+)\s*$|^\s*I2\s*\(\s*(\w+)\s*\)\s*$", re.I)


def preset(name: str) -> CoxeterMatrix:
    """Named preset: ``A1``.., ``B2``.., ``D4``.., ``E6``-``E8``, ``F4``, ``H3``, ``H4``, ``I2(m)``."""
    match = _PRESET_RE.match(name)
    if not match:
        raise CoxeterInputError(f"unknown preset {name!r}")
    if match.group(3) is not None:
        m = _check_bond(match.group(3))
        if m < 3:
            raise CoxeterInputError("I2(m) needs m >= 3")
        return diagram("I", 2, m)
    family, rank = match.group(1).upper(), int(match.group(2))
    try:
        return diagram(family, rank)
    except CoxeterInputError:
        raise CoxeterInputError(f"unknown preset {name!r}") from None


def parse_coxeter(source) -> CoxeterMatrix:
    """Build a validated matrix from a preset name, JSON text or decoded JSON.

    The JSON document has the shape
    ``{"generators": [...], "bonds": [{"a": ..., "b": ..., "m": int | "inf"}]}``.
    """
    if isinstance(source, CoxeterMatrix):
        return source
    if isinstance(source, str):
        text = source.strip()
        if not text.startswith("{"):
            return preset(text)
        try:
            source = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CoxeterInputError(f"malformed JSON: {exc}") from None
    if not isinstance(source, Mapping) or "generators" not in source:
        raise CoxeterInputError("expected an object with a 'generators' list")
    gens = source["generators"]
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise CoxeterInputError("'generators' must be a list of names")
    if len(set(gens)) != len(gens):
        dup = sorted({g for g in gens if gens.count(g) > 1})
        raise CoxeterInputError(f"duplicate generator name(s): {', '.join(dup)}")
    index = {g: i for i, g in enumerate(gens)}
    seen: dict[frozenset, object] = {}
    for entry in source.get("bonds", []):
        try:
            a, b, m = entry["a"], entry["b"], entry["m"]
        except (KeyError, TypeError):
            raise CoxeterInputError(f"bond entry needs a, b, m: {entry!r}") from None
        if a not in index or b not in index:
            raise CoxeterInputError(f"bond mentions unknown generator: {entry!r}")
        if a == b:
            raise CoxeterInputError(f"diagonal entries are fixed to 1: {entry!r}")
        m = _check_bond(m)
        key = frozenset((index[a], index[b]))
        if key in seen and seen[key] != m:
            raise CoxeterInputError(f"asymmetric entries for pair {a}, {b}")
        seen[key] = m
    return CoxeterMatrix(gens, {tuple(sorted(k)): v for k, v in seen.items()})


# --------------------------------------------------------------------------
# Graph structure

def _as_subset(m: CoxeterMatrix, x) -> frozenset:
    x = frozenset(x)
    if any(not (0 <= i < m.rank) for i in x):
        raise ValueError(f"subset {sorted(x)} out of range for rank {m.rank}")
    return x


def components_of(m: CoxeterMatrix, x) -> list[frozenset]:
    """Connected components of the Coxeter graph induced on ``x``."""
    x = _as_subset(m, x)
    left = set(x)
    out = []
    for start in sorted(x):
        if start not in left:
            continue
        comp = {start}
        stack = [start]
        left.discard(start)
        while stack:
            v = stack.pop()
            for w in m.neighbors(v):
                if w in left:
                    left.discard(w)
                    comp.add(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return out


def decompose_components(m: CoxeterMatrix) -> list[frozenset]:
    return components_of(m, m.full())


def is_irreducible(m: CoxeterMatrix, x) -> bool:
    x = _as_subset(m, x)
    if not x:
        raise ValueError("irreducibility of the empty subset is undefined")
    return len(components_of(m, x)) == 1


def is_commuting_disjoint(m: CoxeterMatrix, x, y) -> bool:
    """True when ``x`` and ``y`` are disjoint and every cross bond is 2."""
    if not x.isdisjoint(y):
        return False
    return all(m.m(i, j) == 2 for i in x for j in y)


# --------------------------------------------------------------------------
# Finite-type recognition

@dataclass(frozen=True)
class FiniteTypeLabel:
    family: str
    rank: int
    param: int | None = None
    # member index -> reference vertex number in 1..rank
    reference_iso: Mapping[int, int] = field(default_factory=dict, compare=False, hash=False)

    @property
    def name(self) -> str:
        if self.family == "I":
            return f"I2({self.param})"
        return f"{self.family}{self.rank}"

    def __str__(self):
        return self.name


def _rooted_canon(m: CoxeterMatrix, x: frozenset, v: int, parent: int | None, memo: dict) -> str:
    key = (v, parent)
    if key not in memo:
        parts = sorted(
            f"{m.m(v, w)}{_rooted_canon(m, x, w, v, memo)}"
            for w in m.neighbors(v)
            if w in x and w != parent
        )
        memo[key] = "(" + "".join(parts) + ")"
    return memo[key]


def _tree_centers(m: CoxeterMatrix, x: frozenset) -> list[int]:
    degree = {v: sum(1 for w in m.neighbors(v) if w in x) for v in x}
    layer = [v for v in sorted(x) if degree[v] <= 1]
    remaining = len(x)
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in m.neighbors(v):
                if w in x and degree[w] > 1:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
            degree[v] = 0
        layer = sorted(nxt)
    return layer


def _is_tree(m: CoxeterMatrix, x: frozenset) -> bool:
    n_edges = sum(1 for v in x for w in m.neighbors(v) if w in x) // 2
    return n_edges == len(x) - 1 and len(components_of(m, x)) == 1


def _canonical_root(m: CoxeterMatrix, x: frozenset) -> tuple[str, int]:
    memo: dict = {}
    return min((_rooted_canon(m, x, c, None, memo), c) for c in _tree_centers(m, x))


def tree_canonical_form(m: CoxeterMatrix, x) -> str | None:
    """Isomorphism invariant of the labelled induced tree, or None for non-trees."""
    x = frozenset(x)
    if not x or not _is_tree(m, x):
        return None
    return _canonical_root(m, x)[0]


@lru_cache(maxsize=None)
def _reference(family: str, rank: int, param) -> tuple[CoxeterMatrix, str, int]:
    ref = diagram(family, rank, param)
    full = ref.full()
    canon, root = _canonical_root(ref, full)
    return ref, canon, root


def _candidates(x_size: int, bond: float | int | None):
    k = x_size
    if k == 1:
        yield ("A", 1, None)
        return
    if k == 2:
        if bond == 3:
            yield ("A", 2, None)
        elif bond == 4:
            yield ("B", 2, None)
        elif bond is not None and bond != INF and bond >= 5:
            yield ("I", 2, int(bond))
        return
    yield ("A", k, None)
    yield ("B", k, None)
    if k >= 4:
        yield ("D", k, None)
    if k in (6, 7, 8):
        yield ("E", k, None)
    if k == 4:
        yield ("F", 4, None)
    if k in (3, 4):
        yield ("H", k, None)


def _match(m, x, v, pv, ref, rx, w, pw, memo_a, memo_b, out):
    out[v] = w + 1
    kids_a = sorted(
        (f"{m.m(v, c)}{_rooted_canon(m, x, c, v, memo_a)}", c)
        for c in m.neighbors(v) if c in x and c != pv
    )
    kids_b = sorted(
        (f"{ref.m(w, c)}{_rooted_canon(ref, rx, c, w, memo_b)}", c)
        for c in ref.neighbors(w) if c in rx and c != pw
    )
    for (_, a), (_, b) in zip(kids_a, kids_b):
        _match(m, x, a, v, ref, rx, b, w, memo_a, memo_b, out)


def recognize_finite_type(m: CoxeterMatrix, x) -> FiniteTypeLabel | None:
    """Catalog label of the connected induced subgraph on ``x``, or None."""
    return _recognize(m, _as_subset(m, x))


@lru_cache(maxsize=65536)
def _recognize(m: CoxeterMatrix, x: frozenset) -> FiniteTypeLabel | None:
    if not x or not _is_tree(m, x):
        return None
    if any(m.m(i, j) == INF for i in x for j in m.neighbors(i) if j in x):
        return None
    bond = None
    if len(x) == 2:
        i, j = sorted(x)
        bond = m.m(i, j)
    canon, root = _canonical_root(m, x)
    for family, rank, param in _candidates(len(x), bond):
        ref, ref_canon, ref_root = _reference(family, rank, param)
        if ref_canon != canon:
            continue
        iso: dict[int, int] = {}
        _match(m, x, root, None, ref, ref.full(), ref_root, None, {}, {}, iso)
        return FiniteTypeLabel(family, rank, param, iso)
    return None


def is_finite_group(m: CoxeterMatrix, x=None) -> bool:
    """True iff every component of the graph induced on ``x`` is in the catalog."""
    x = m.full() if x is None else _as_subset(m, x)
    return all(recognize_finite_type(m, c) is not None for c in components_of(m, x))


# --------------------------------------------------------------------------
# Longest-element action

def reference_omega(family: str, rank: int, param=None) -> dict[int, int]:
    """Conjugation action of the longest element on reference vertices 1..rank."""
    n = rank
    perm = {i: i for i in range(1, n + 1)}
    if family == "A":
        perm = {i: n + 1 - i for i in range(1, n + 1)}
    elif family == "D" and n % 2 == 1:
        perm[1], perm[2] = 2, 1
    elif family == "E" and n == 6:
        perm.update({1: 5, 5: 1, 2: 4, 4: 2})
    elif family == "I" and param % 2 == 1:
        perm = {1: 2, 2: 1}
    return perm


def omega_action(m: CoxeterMatrix, x) -> dict[int, int]:
    """The involution ``s -> w_X s w_X`` on the members of ``x``."""
    return dict(_omega_cached(m, _as_subset(m, x)))


@lru_cache(maxsize=65536)
def _omega_cached(m: CoxeterMatrix, x: frozenset) -> dict[int, int]:
    label = recognize_finite_type(m, x) if x and is_irreducible(m, x) else None
    if label is None:
        raise ValueError(f"subset {m.names(x)} is not finite irreducible")
    ref = reference_omega(label.family, label.rank, label.param)
    back = {r: g for g, r in label.reference_iso.items()}
    return {g: back[ref[r]] for g, r in label.reference_iso.items()}


def omega_image(m: CoxeterMatrix, x, y) -> frozenset:
    """Image of ``y`` under conjugation by the longest element of ``x``.

    Defined for ``y`` inside ``x`` (via the action) and for ``y`` commuting
    with and disjoint from ``x`` (fixed).
    """
    x, y = frozenset(x), frozenset(y)
    if y <= x:
        act = _omega_cached(m, x)
        return frozenset(act[s] for s in y)
    if is_commuting_disjoint(m, x, y):
        return y
    raise ValueError(f"{m.names(y)} is neither inside nor commuting with {m.names(x)}")
