"""Sections, transversal sections and cross sections of the set F.

A section is a subset ``lam`` of F together with a map ``psi`` sending each X
in F to a pair ``(bar, ring)`` of members of ``lam`` with ``ring`` inside
``bar`` and ``w_bar ring w_bar = X``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .cactus import equivalence_classes, enumerate_F, in_omega, omega_table
from .coxeter import (
    CoxeterMatrix,
    FiniteTypeLabel,
    is_commuting_disjoint,
    is_irreducible,
    omega_image,
    recognize_finite_type,
    subset_key,
)

DEFAULT_BUDGET = 5_000_000


class NoTransversalSection(ValueError):
    """Raised for the E-types, which admit no transversal section."""


class SearchInconclusive(RuntimeError):
    """The search budget ran out before the search space was exhausted."""

    def __init__(self, message, stats):
        super().__init__(message)
        self.stats = stats


@dataclass
class SectionCandidate:
    lam: tuple[frozenset, ...]
    psi: dict[frozenset, tuple[frozenset, frozenset]]
    flags: dict[str, bool | None] = field(
        default_factory=lambda: {"is_section": None, "is_transversal_section": None, "is_cross_section": None}
    )

    def __post_init__(self):
        self.lam = tuple(sorted({frozenset(x) for x in self.lam}, key=subset_key))

    @property
    def lam_set(self) -> frozenset:
        return frozenset(self.lam)


@dataclass
class SectionReport:
    ok: bool
    kind: str
    condition: str | None = None
    witness: tuple = ()
    message: str = ""
    notes: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


# --------------------------------------------------------------------------
# Building candidates

def produced_by(m: CoxeterMatrix, lam, x) -> list[tuple[frozenset, frozenset]]:
    """Pairs ``(bar, ring)`` of ``lam`` with ring in Omega_0(bar) or equal, sending ring to ``x``."""
    x = frozenset(x)
    out = []
    for bar in lam:
        if bar == x:
            out.append((bar, bar))
            continue
        if not x < bar:
            continue
        for ring in lam:
            if ring < bar and omega_image(m, bar, ring) == x:
                out.append((bar, ring))
    return sorted(out, key=lambda p: (subset_key(p[0]), subset_key(p[1])))


def canonical_psi(m: CoxeterMatrix, lam, partial: bool = False) -> dict:
    """Least valid pair for every X outside ``lam``, ``(X, X)`` inside it.

    With ``partial`` an X that no pair produces maps to None instead of raising.
    """
    lam = sorted({frozenset(x) for x in lam}, key=subset_key)
    psi = {}
    for x in enumerate_F(m):
        if x in lam:
            psi[x] = (x, x)
            continue
        pairs = [p for p in produced_by(m, lam, x) if p != (x, x)]
        if not pairs:
            if not partial:
                raise ValueError(f"no pair of lambda produces {m.names(x)}")
            psi[x] = None
            continue
        psi[x] = pairs[0]
    return psi


def trivial_section(m: CoxeterMatrix) -> SectionCandidate:
    f = enumerate_F(m)
    return SectionCandidate(f.members, {x: (x, x) for x in f})


def section_from_lambda(m: CoxeterMatrix, lam, partial: bool = False) -> SectionCandidate:
    return SectionCandidate(tuple(lam), canonical_psi(m, lam, partial))


# --------------------------------------------------------------------------
# Verification

def condition_c_witness(m: CoxeterMatrix, lam, y, z):
    """Least X in ``lam`` other than y, z with y, z in Omega(X) and one image in ``lam``."""
    lam = frozenset(lam)
    for x in sorted(lam, key=subset_key):
        if x in (y, z):
            continue
        if in_omega(m, x, y) and in_omega(m, x, z):
            if omega_image(m, x, y) in lam or omega_image(m, x, z) in lam:
                return x
    return None


def _check_c(m: CoxeterMatrix, lam: frozenset, f):
    """Condition (c); returns the first failing pair or None."""
    for y, z in combinations(f.members, 2):
        if not is_commuting_disjoint(m, y, z):
            continue
        if y in lam or z in lam:
            # X = y (or z) is a witness once X itself is allowed next to Omega(X)
            continue
        if condition_c_witness(m, lam, y, z) is None:
            return (y, z)
    return None


def verify_section(m: CoxeterMatrix, c: SectionCandidate) -> SectionReport:
    f = enumerate_F(m)
    lam = c.lam_set
    missing = [x for x in f if x not in c.psi]
    if missing:
        raise ValueError(f"psi is not total: missing {m.names(missing[0])}")
    outside = [x for x in lam if x not in f]
    if outside:
        return _fail(c, "section", "lambda", (outside[0],), "lambda is not contained in F")
    for x in c.lam:
        if c.psi[x] != (x, x):
            return _fail(c, "section", "a", (x,), f"psi({_fmt(m, x)}) is not ({_fmt(m, x)}, {_fmt(m, x)})")
    for x in f:
        if c.psi[x] is None:
            return _fail(c, "section", "b", (x,), f"no pair of lambda produces {_fmt(m, x)}")
        bar, ring = c.psi[x]
        if bar not in lam or ring not in lam:
            return _fail(c, "section", "b", (x, bar, ring), f"psi({_fmt(m, x)}) leaves lambda")
        if not ring <= bar:
            return _fail(c, "section", "b", (x, bar, ring), f"ring not inside bar for {_fmt(m, x)}")
        if omega_image(m, bar, ring) != x:
            return _fail(c, "section", "b", (x, bar, ring), f"w_bar(ring) != {_fmt(m, x)}")
    bad = _check_c(m, lam, f)
    if bad is not None:
        y, z = bad
        return _fail(c, "section", "c", bad, f"no witness in lambda for the pair {_fmt(m, y)}, {_fmt(m, z)}")
    c.flags["is_section"] = True
    return SectionReport(True, "section")


def verify_transversal_section(m: CoxeterMatrix, c: SectionCandidate) -> SectionReport:
    rep = verify_section(m, c)
    if not rep.ok:
        c.flags["is_transversal_section"] = False
        rep.kind = "transversal"
        return rep
    e = equivalence_classes(m)
    lam = c.lam_set
    for cls in e.classes:
        hits = [x for x in cls if x in lam]
        if len(hits) != 1:
            return _fail(
                c, "transversal", "transversal", tuple(hits) or (cls[0],),
                f"lambda meets the class of {_fmt(m, cls[0])} {len(hits)} times",
            )
    c.flags["is_transversal_section"] = True
    return SectionReport(True, "transversal")


def verify_cross_section(m: CoxeterMatrix, c: SectionCandidate) -> SectionReport:
    """Section whose psi(X) is the only producing pair, for every X outside lambda.

    The report notes, without failing, members X of lambda that are produced by
    some pair other than (X, X).
    """
    rep = verify_section(m, c)
    if not rep.ok:
        c.flags["is_cross_section"] = False
        rep.kind = "cross"
        return rep
    f = enumerate_F(m)
    lam = c.lam
    notes = []
    for x in f:
        pairs = produced_by(m, lam, x)
        if x in c.lam_set:
            extra = [p for p in pairs if p != (x, x)]
            if extra:
                bar, ring = extra[0]
                notes.append(
                    f"literal reading fails at {_fmt(m, x)}: also produced by ({_fmt(m, bar)}, {_fmt(m, ring)})"
                )
            continue
        if pairs != [c.psi[x]]:
            return _fail(
                c, "cross", "unique", (x, *pairs),
                f"{_fmt(m, x)} is produced by {len(pairs)} pairs of lambda",
            )
    c.flags["is_cross_section"] = True
    return SectionReport(True, "cross", notes=notes)


def _fail(c, kind, condition, witness, message):
    key = {"section": "is_section", "transversal": "is_transversal_section", "cross": "is_cross_section"}[kind]
    c.flags[key] = False
    if kind == "section":
        c.flags["is_transversal_section"] = False
        c.flags["is_cross_section"] = False
    return SectionReport(False, kind, condition, tuple(witness), message)


def _fmt(m: CoxeterMatrix, x) -> str:
    return "{" + ",".join(m.names(x)) + "}"


# --------------------------------------------------------------------------
# Catalog

def _catalog_reference(label: FiniteTypeLabel) -> list[set[int]]:
    """Lambda in reference numbering 1..n."""
    n = label.rank

    def seg(a, b):
        return set(range(a, b + 1))

    fam = label.family
    if fam == "A":
        return [seg(1, j) for j in range(1, n + 1)]
    if fam == "B":
        return [seg(1, j) for j in range(1, n + 1)] + [seg(j, n) for j in range(2, n + 1)]
    if fam == "D" and n % 2 == 0:
        return (
            [seg(1, j) for j in range(3, n + 1)]
            + [seg(j, n) for j in range(2, n + 1)]
            + [{1} | seg(3, n)]
        )
    if fam == "D":
        return [seg(1, j) for j in range(3, n + 1)] + [seg(2, j) for j in range(2, n + 1)]
    if fam == "E":
        raise NoTransversalSection(f"{label.name} does not possess a transversal section")
    if fam == "I":
        if label.param % 2 == 0:
            return [{1}, {2}, {1, 2}]
        return [{1}, {1, 2}]
    if fam == "F":
        return [s for s in _all_f_reference(label) if s not in ({1}, {4})]
    if fam == "H" and n == 3:
        return [s for s in _all_f_reference(label) if s not in ({1}, {3})]
    if fam == "H" and n == 4:
        return [seg(1, 3), seg(2, 3), {3}, {3, 4}, seg(1, 4)]
    raise ValueError(f"no catalog entry for {label.name}")


def _all_f_reference(label):
    from .coxeter import diagram

    ref = diagram(label.family, label.rank, label.param)
    return [{i + 1 for i in x} for x in enumerate_F(ref)]


def catalog_lambda(m: CoxeterMatrix) -> tuple[frozenset, ...]:
    full = m.full()
    label = recognize_finite_type(m, full) if is_irreducible(m, full) else None
    if label is None:
        raise ValueError("the catalog covers finite irreducible Coxeter systems only")
    back = {r: g for g, r in label.reference_iso.items()}
    lam = [frozenset(back[r] for r in s) for s in _catalog_reference(label)]
    return tuple(sorted(set(lam), key=subset_key))


def catalog_section(m: CoxeterMatrix) -> SectionCandidate:
    """The tabulated section for the type of ``m``, with canonical psi.

    Members of F that the tabulated set cannot produce get psi None, so that
    verification reports them instead of the constructor raising.
    """
    return section_from_lambda(m, catalog_lambda(m), partial=True)


# --------------------------------------------------------------------------
# Search

@dataclass
class SearchResult:
    status: str  # "found" or "exhausted"
    candidate: SectionCandidate | None
    stats: dict

    @property
    def found(self) -> bool:
        return self.status == "found"


def _search(m: CoxeterMatrix, cross: bool, budget: int) -> SearchResult:
    f = enumerate_F(m)
    e = equivalence_classes(m)
    # Producers of X from the class representative Z: all Y strictly above X with w_Y(Z) = X.
    # Every Y strictly contains X, so deciding larger classes first fixes them.
    order = sorted(
        range(e.m),
        key=lambda i: (-len(e.classes[i][0]), len(e.classes[i]), subset_key(e.classes[i][0])),
    )
    above = {x: [y for y in f if x < y] for x in f}
    stats = {"nodes": 0, "leaves": 0, "budget": budget}
    lam: list[frozenset] = []
    lam_set: set[frozenset] = set()

    def producers(x, rep):
        return sum(1 for y in above[x] if y in lam_set and rep < y and omega_image(m, y, rep) == x)

    def rec(k):
        if k == len(order):
            stats["leaves"] += 1
            if _check_c(m, frozenset(lam_set), f) is None:
                return True
            return False
        for rep in e.classes[order[k]]:
            stats["nodes"] += 1
            if stats["nodes"] > budget:
                raise SearchInconclusive(f"budget of {budget} nodes exhausted", dict(stats))
            ok = True
            for x in e.classes[order[k]]:
                if x == rep:
                    continue
                count = producers(x, rep)
                if count == 0 or (cross and count != 1):
                    ok = False
                    break
            if not ok:
                continue
            lam.append(rep)
            lam_set.add(rep)
            if rec(k + 1):
                return True
            lam.pop()
            lam_set.discard(rep)
        return False

    if rec(0):
        cand = section_from_lambda(m, lam)
        return SearchResult("found", cand, stats)
    return SearchResult("exhausted", None, stats)


def search_transversal_section(m: CoxeterMatrix, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """First transversal section in search order, or an exhausted result.

    Raises :class:`SearchInconclusive` when ``budget`` nodes are not enough.
    """
    return _search(m, cross=False, budget=budget)


def search_cross_section(m: CoxeterMatrix, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """As :func:`search_transversal_section`, with uniqueness of producing pairs."""
    return _search(m, cross=True, budget=budget)


# --------------------------------------------------------------------------
# JSON

def section_to_json(m: CoxeterMatrix, c: SectionCandidate) -> dict:
    psi = [
        {"x": m.names(x), "bar": m.names(bar), "ring": m.names(ring)}
        for x, (bar, ring) in sorted(
            ((x, p) for x, p in c.psi.items() if p is not None), key=lambda kv: subset_key(kv[0])
        )
        if x not in c.lam_set
    ]
    return {"lambda": [m.names(x) for x in c.lam], "psi": psi}


def section_from_json(m: CoxeterMatrix, data: dict) -> SectionCandidate:
    """Inverse of :func:`section_to_json`; a missing ``psi`` is filled canonically."""
    if not isinstance(data, dict) or "lambda" not in data:
        raise ValueError("section JSON needs a 'lambda' list")
    lam = [m.subset(x) for x in data["lambda"]]
    if "psi" not in data:
        return section_from_lambda(m, lam)
    psi = {x: (x, x) for x in lam}
    for entry in data["psi"]:
        psi[m.subset(entry["x"])] = (m.subset(entry["bar"]), m.subset(entry["ring"]))
    return SectionCandidate(tuple(lam), psi)
