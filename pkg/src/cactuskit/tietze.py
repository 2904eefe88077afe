"""Presentations on a section, the rewriting pipeline that produces them, and
the free product quotients Z2 * Z2 of a nonabelian cactus group.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cactus import (
    CactusPresentation,
    Relation,
    defining_presentation,
    enumerate_F,
    omega_table,
)
from .coxeter import (
    CoxeterMatrix,
    decompose_components,
    is_commuting_disjoint,
    is_finite_group,
    omega_action,
    omega_image,
    subset_key,
)
from .sections import SectionCandidate, condition_c_witness, verify_section

Word = tuple  # of frozensets


class NotASection(ValueError):
    pass


def _require_section(m: CoxeterMatrix, c: SectionCandidate):
    rep = verify_section(m, c)
    if not rep.ok:
        raise NotASection(f"candidate is not a section: condition {rep.condition}: {rep.message}")


def _phi(c: SectionCandidate, x) -> Word:
    """Word in lambda for the generator ``c_x``."""
    if x in c.lam_set:
        return (x,)
    bar, ring = c.psi[x]
    return (bar, ring, bar)


# --------------------------------------------------------------------------
# Presentation on a section

@dataclass
class DerivedPresentation:
    generators: tuple[frozenset, ...]
    relations: tuple[Relation, ...]
    provenance: dict[Relation, str] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    remark_violations: list[str] = field(default_factory=list)

    def by_tag(self, tag: str) -> list[Relation]:
        return [r for r in self.relations if r.tag == tag]

    def families(self) -> dict[str, list[Relation]]:
        return {t: self.by_tag(t) for t in ("R1a", "R2a", "R2b", "R2c", "R3a", "R3b")}

    def as_presentation(self) -> CactusPresentation:
        return CactusPresentation(self.generators, self.relations)

    def relation_set(self) -> set[tuple]:
        return {(r.lhs, r.rhs, r.tag) for r in self.relations}


def section_presentation(m: CoxeterMatrix, c: SectionCandidate, transversal: bool | None = None,
                         cross: bool | None = None, strict: bool = True) -> DerivedPresentation:
    """Relations R1a, R2a, R2b, R2c, R3a, R3b on the generators ``c_X``, X in lambda.

    ``transversal`` and ``cross`` default to the flags recorded on ``c``; they
    switch on the shape checks for those kinds of section. ``strict=False``
    skips the section check, so that the families can be inspected for a
    candidate that fails it (the result need not present the cactus group).
    """
    if strict:
        _require_section(m, c)
    if transversal is None:
        transversal = bool(c.flags.get("is_transversal_section"))
    if cross is None:
        cross = bool(c.flags.get("is_cross_section"))
    lam = c.lam
    lam_set = c.lam_set
    table = omega_table(m)
    rels: list[Relation] = []
    prov: dict[Relation, str] = {}

    def add(rel, why):
        if rel not in prov:
            rels.append(rel)
            prov[rel] = why

    for x in lam:
        add(Relation((x, x), (), "R1a"), "involution")
    for x in lam:
        for y in table[x].omega0:
            z = omega_image(m, x, y)
            if y in lam_set and z in lam_set:
                add(Relation((x, y), (z, x), "R2a"), "R2 with every letter in lambda")
            elif y not in lam_set and z not in lam_set:
                # y runs over Omega_0(x) minus lambda; its image has psi (y', z')
                rel = Relation((x,) + _phi(c, y), _phi(c, z) + (x,), "R2b")
                add(rel, "R2 with both moved sets outside lambda, substituted")
            elif y in lam_set and c.psi[z] != (x, y):
                add(Relation((x, y, x), _phi(c, z), "R2c"), "conjugate of a lambda member leaving lambda")
    for i, x in enumerate(lam):
        for y in lam[i + 1:]:
            if is_commuting_disjoint(m, x, y):
                add(Relation((x, y, x, y), (), "R3a"), "commuting pair in lambda")
    for z in lam:
        for v in table[z].omegaP:
            if v not in lam_set:
                w = _phi(c, v) + (z,)
                add(Relation(w + w, (), "R3b"), "commuting pair with one side outside lambda")

    out = DerivedPresentation(tuple(lam), tuple(rels), prov)
    r2a, r2c = out.by_tag("R2a"), out.by_tag("R2c")
    if transversal:
        for r in r2a:
            x, y = r.lhs
            if omega_image(m, x, y) != y:
                out.remark_violations.append(f"R2a {_fmt_rel(m, r)} is not a commutation")
        for r in r2c:
            x, y, _ = r.lhs
            z = omega_image(m, x, y)
            if c.psi[z][1] != y:
                out.remark_violations.append(f"R2c {_fmt_rel(m, r)} has Y != ring of Z")
    if cross:
        if r2c:
            out.remark_violations.append(f"cross section with {len(r2c)} R2c relations")
        if r2a:
            out.warnings.append(
                f"cross section yields {len(r2a)} R2a relations (commutations c_X c_Y = c_Y c_X, Y inside X)"
            )
        if out.by_tag("R3a"):
            out.warnings.append(f"cross section yields {len(out.by_tag('R3a'))} R3a relations")
    return out


def _fmt_rel(m, r: Relation) -> str:
    from .render import format_relation

    return format_relation(m, r)


# --------------------------------------------------------------------------
# Replayable derivations

@dataclass(frozen=True)
class Step:
    rel: Relation
    forward: bool
    pos: int


@dataclass
class Trace:
    """``target.lhs`` rewritten into ``target.rhs`` one relation application at a time."""

    target: Relation
    steps: tuple[Step, ...]
    uses_lemmas: tuple[Relation, ...] = ()

    def words(self) -> list[Word]:
        out = [self.target.lhs]
        w = self.target.lhs
        for st in self.steps:
            w = _apply(w, st)
            out.append(w)
        return out


def _apply(w: Word, st: Step) -> Word:
    l, r = (st.rel.lhs, st.rel.rhs) if st.forward else (st.rel.rhs, st.rel.lhs)
    if w[st.pos: st.pos + len(l)] != l:
        raise ValueError("step does not match the word")
    return w[: st.pos] + r + w[st.pos + len(l):]


def replay(trace: Trace, allowed) -> bool:
    allowed = set(allowed)
    w = trace.target.lhs
    for st in trace.steps:
        if st.rel not in allowed:
            return False
        try:
            w = _apply(w, st)
        except ValueError:
            return False
    return w == trace.target.rhs


class _Chain:
    def __init__(self, start: Word):
        self.word = tuple(start)
        self.steps: list[Step] = []

    def use(self, rel: Relation, forward: bool = True, pos: int | None = None):
        l = rel.lhs if forward else rel.rhs
        if pos is None:
            pos = _find(self.word, l)
            if pos < 0:
                raise AssertionError("relation side not found in word")
        st = Step(rel, forward, pos)
        self.word = _apply(self.word, st)
        self.steps.append(st)
        return self

    def insert(self, x, pos: int):
        return self.use(_r1(x), False, pos)

    def insert_word(self, w: Word, pos: int):
        """Insert ``w w^-1`` where every letter of ``w`` is an involution."""
        for k, x in enumerate(w):
            self.insert(x, pos + k)
        return self

    def cancel(self, pos: int):
        x = self.word[pos]
        return self.use(_r1(x), True, pos)

    def cancel_all(self):
        """Remove adjacent equal pairs left to right until none remain."""
        while True:
            for i in range(len(self.word) - 1):
                if self.word[i] == self.word[i + 1]:
                    self.cancel(i)
                    break
            else:
                return self

    def trace(self, target: Relation, lemmas=()) -> Trace:
        if self.word != target.rhs:
            raise AssertionError("chain does not reach the target")
        return Trace(target, tuple(self.steps), tuple(lemmas))


def _find(w: Word, sub: Word) -> int:
    n = len(sub)
    for i in range(len(w) - n + 1):
        if w[i: i + n] == sub:
            return i
    return -1


def _r1(x) -> Relation:
    return Relation((x, x), (), "R1")


def _r2(m, x, y) -> Relation:
    return Relation((x, y), (omega_image(m, x, y), x), "R2")


def _r3(x, y) -> Relation:
    a, b = sorted((x, y), key=subset_key)
    return Relation((a, b), (b, a), "R3")


def _r2hat_c(m, x, y) -> Relation:
    return Relation((x, y, x), (omega_image(m, x, y),), "R2hat_c")


@dataclass
class Stage:
    name: str
    presentation: CactusPresentation
    removed: list[Relation] = field(default_factory=list)
    added: list[Relation] = field(default_factory=list)
    traces: list[Trace] = field(default_factory=list)  # removed relations from the new presentation
    back_traces: list[Trace] = field(default_factory=list)  # added relations from the old one
    lemmas: list[Trace] = field(default_factory=list)
    substitution: dict[frozenset, Word] = field(default_factory=dict)


def derive_via_steps(m: CoxeterMatrix, c: SectionCandidate) -> list[Stage]:
    """Stage 0 is the defining presentation; stages 1-4 rewrite it onto lambda."""
    _require_section(m, c)
    lam = c.lam_set
    p0 = defining_presentation(m)
    stages = [Stage("defining", p0)]

    # Stage 1: R2 relations c_X c_Y = c_Y' c_X with X outside lambda follow from
    # R2 relations of X-bar and X-ring.
    keep = [r for r in p0.relations if not (r.tag == "R2" and r.lhs[0] not in lam)]
    gone = [r for r in p0.relations if r.tag == "R2" and r.lhs[0] not in lam]
    p1 = CactusPresentation(p0.generators, tuple(keep))
    s1 = Stage("drop R2 outside lambda", p1, removed=gone)
    for rel in gone:
        s1.traces.append(_trace_stage1(m, c, rel))
    stages.append(s1)

    # Stage 2: hat-R2 (X in lambda, exactly one of Y, w_X(Y) in lambda) becomes
    # X Y X = w_X(Y) with Y in lambda; R1 outside lambda is dropped.
    def is_hat(r):
        if r.tag != "R2" or r.lhs[0] not in lam:
            return False
        return (r.lhs[1] in lam) != (r.rhs[0] in lam)

    hats = [r for r in p1.relations if is_hat(r)]
    r1_out = [r for r in p1.relations if r.tag == "R1" and r.lhs[0] not in lam]
    new_c: list[Relation] = []
    for r in hats:
        x = r.lhs[0]
        y = r.lhs[1] if r.lhs[1] in lam else r.rhs[0]
        rel = _r2hat_c(m, x, y)
        if rel not in new_c:
            new_c.append(rel)
    keep = [r for r in p1.relations if r not in hats and r not in r1_out] + new_c
    p2 = CactusPresentation(p1.generators, tuple(keep))
    s2 = Stage("hat-R2 to conjugation form", p2, removed=hats + r1_out, added=new_c)
    for r in hats:
        s2.traces.append(_trace_hat_from_c(m, lam, r))
    for r in r1_out:
        s2.traces.append(_trace_r1_outside(m, c, r))
    for rel in new_c:
        s2.back_traces.append(_trace_c_from_hat(m, rel))
    stages.append(s2)

    # Stage 3: R3 with both sides outside lambda is dropped using condition (c);
    # the rest become (c_X c_Y)^2 = 1 over lambda-words.
    r3s = [r for r in p2.relations if r.tag == "R3"]
    new3: list[Relation] = []
    for r in r3s:
        x, y = r.lhs
        if x in lam and y in lam:
            new3.append(Relation((x, y, x, y), (), "R3a"))
        elif x in lam or y in lam:
            inside, outside = (x, y) if x in lam else (y, x)
            w = _phi(c, outside) + (inside,)
            new3.append(Relation(w + w, (), "R3b"))
    keep = [r for r in p2.relations if r.tag != "R3"] + new3
    p3 = CactusPresentation(p2.generators, tuple(keep))
    s3 = Stage("R3 onto lambda", p3, removed=r3s, added=new3)
    allowed3 = set(p3.relations)
    lemma_cache: dict[Relation, Trace] = {}
    for r in r3s:
        s3.traces.append(_trace_r3(m, c, r, allowed3, lemma_cache))
    s3.lemmas = list(lemma_cache.values())
    for rel in new3:
        s3.back_traces.append(_trace_square_from_r3(m, c, rel))
    stages.append(s3)

    # Stage 4: eliminate c_X, X outside lambda, by c_X = c_bar c_ring c_bar.
    sub = {x: _phi(c, x) for x in p3.generators if x not in lam}

    def subst(w):
        out = []
        for x in w:
            out.extend(sub.get(x, (x,)))
        return tuple(out)

    final: list[Relation] = []
    changed: list[Relation] = []
    dropped: list[Relation] = []
    for r in p3.relations:
        if r.tag == "R2hat_c" and r.rhs[0] not in lam and c.psi[r.rhs[0]] == (r.lhs[0], r.lhs[1]):
            dropped.append(r)
            continue
        tag = _final_tag(r, lam)
        nr = Relation(subst(r.lhs), subst(r.rhs), tag)
        if nr not in final:
            final.append(nr)
            if (nr.lhs, nr.rhs) != (r.lhs, r.rhs):
                changed.append(nr)
    p4 = CactusPresentation(tuple(x for x in p3.generators if x in lam), tuple(final))
    s4 = Stage("eliminate generators outside lambda", p4, removed=dropped, added=changed, substitution=sub)
    stages.append(s4)
    return stages


def _final_tag(r: Relation, lam) -> str:
    if r.tag == "R1":
        return "R1a"
    if r.tag == "R2":
        return "R2a" if r.lhs[1] in lam else "R2b"
    if r.tag == "R2hat_c":
        return "R2c"
    return r.tag


def _trace_stage1(m, c, rel: Relation) -> Trace:
    x, y = rel.lhs
    y2 = rel.rhs[0]
    b, r = c.psi[x]
    ch = _Chain(rel.lhs)
    ch.insert(b, 1)                           # X B B Y
    ch.use(_r2(m, b, r), False, 0)            # B R B Y
    ch.use(_r2(m, b, y), True, 2)             # B R Y' B
    ch.use(_r2(m, r, omega_image(m, b, y)), True, 1)    # B Y2' R B
    ch.insert(b, 2)                           # B Y2' B B R B
    ch.use(_r2(m, b, y2), False, 1)           # B B Y2 B R B
    ch.cancel(0)                              # Y2 B R B
    ch.use(_r2(m, b, r), True, 1)             # Y2 X B B
    ch.cancel(2)                              # Y2 X
    return ch.trace(rel)


def _trace_hat_from_c(m, lam, rel: Relation) -> Trace:
    x, y = rel.lhs
    ch = _Chain(rel.lhs)
    if y in lam:
        ch.insert(x, 2)                       # X Y X X
        ch.use(_r2hat_c(m, x, y), True, 0)    # Y2 X
    else:
        y2 = rel.rhs[0]
        ch.use(_r2hat_c(m, x, y2), False, 1)  # X X Y2 X
        ch.cancel(0)
    return ch.trace(rel)


def _trace_r1_outside(m, c, rel: Relation) -> Trace:
    x = rel.lhs[0]
    b, r = c.psi[x]
    conj = _r2hat_c(m, b, r)
    ch = _Chain(rel.lhs)
    ch.use(conj, False, 0)
    ch.use(conj, False, 3)
    ch.cancel_all()
    return ch.trace(rel)


def _trace_c_from_hat(m, rel: Relation) -> Trace:
    x, y, _ = rel.lhs
    ch = _Chain(rel.lhs)
    ch.use(_r2(m, x, y), True, 0)
    ch.cancel(1)
    return ch.trace(rel)


def _commute_from_square(a: Word, b: Word, square: Relation, target: Relation) -> _Chain:
    """``a b -> b a`` given ``(b a)^2 = 1`` or ``(a b)^2 = 1`` over involution words."""
    ch = _Chain(target.lhs)
    sq = square.lhs
    if sq == b + a + b + a:
        # a b -> b b a b a a -> b a
        ch.insert_word(tuple(reversed(b)), 0)
        ch.insert_word(a, len(ch.word))
        ch.use(square, True, len(b))
    elif sq == a + b + a + b:
        # a b -> b a a b a b -> b a
        ch.insert_word(tuple(reversed(b)), 0)
        ch.insert_word(tuple(reversed(a)), len(b))
        ch.use(square, True, len(b) + len(a))
    else:
        raise AssertionError("square does not match the pair")
    return ch


def _phi_expand(ch: _Chain, m, c, x, pos: int, lam):
    """Rewrite the letter ``x`` at ``pos`` into its lambda word (x outside lambda)."""
    b, r = c.psi[x]
    ch.use(_r2hat_c(m, b, r), False, pos)


def _phi_collapse(ch: _Chain, m, c, x, pos: int):
    b, r = c.psi[x]
    ch.use(_r2hat_c(m, b, r), True, pos)


def _commutation_lemma(m, c, x, y, allowed, cache) -> Relation:
    """Prove ``x y = y x`` (one of them in lambda) from the stage-3 relations."""
    lam = c.lam_set
    target = Relation((x, y), (y, x), "lemma")
    if target in cache:
        return target
    if x in lam and y in lam:
        a, b = sorted((x, y), key=subset_key)
        sq = Relation((a, b, a, b), (), "R3a")
        ch = _commute_from_square((x,), (y,), sq, target)
    else:
        inside, outside = (x, y) if x in lam else (y, x)
        w = _phi(c, outside) + (inside,)
        sq = Relation(w + w, (), "R3b")
        ch = _Chain(target.lhs)
        opos = 0 if x == outside else 1
        _phi_expand(ch, m, c, outside, opos, lam)
        inner = _commute_from_square(
            _phi(c, x) if x == outside else (x,),
            _phi(c, y) if y == outside else (y,),
            sq,
            Relation(ch.word, (), "scratch"),
        )
        for st in inner.steps:
            ch.use(st.rel, st.forward, st.pos)
        npos = 0 if y == outside else 1
        _phi_collapse(ch, m, c, outside, npos)
    cache[target] = ch.trace(target)
    return target


def _conjugation_lemma(m, c, x0, v, allowed, cache) -> Relation:
    """Prove ``x0 v* x0 = v`` where v* = w_x0(v), from the stage-3 relations."""
    lam = c.lam_set
    vs = omega_image(m, x0, v)
    target = Relation((x0, vs, x0), (v,), "lemma")
    if target in cache:
        return target
    ch = _Chain(target.lhs)
    uses = []
    if is_commuting_disjoint(m, x0, v):
        lem = _commutation_lemma(m, c, x0, v, allowed, cache)
        uses.append(lem)
        ch.use(lem, True, 0)
        ch.cancel(1)
    elif (v in lam) == (vs in lam):
        ch.use(_r2(m, x0, vs), True, 0)
        ch.cancel(1)
    elif vs in lam:
        ch.use(_r2hat_c(m, x0, vs), True, 0)
    else:
        ch.use(_r2hat_c(m, x0, v), False, 1)
        ch.cancel_all()
    cache[target] = ch.trace(target, uses)
    return target


def _trace_r3(m, c, rel: Relation, allowed, cache) -> Trace:
    lam = c.lam_set
    x, y = rel.lhs
    if x in lam or y in lam:
        lem = _commutation_lemma(m, c, x, y, allowed, cache)
        t = cache[lem]
        return Trace(rel, t.steps, (lem,) + t.uses_lemmas)
    x0 = condition_c_witness(m, lam, x, y)
    if x0 is None:
        raise NotASection(f"no witness for the commuting pair {m.names(x)}, {m.names(y)}")
    xs, ys = omega_image(m, x0, x), omega_image(m, x0, y)
    lx = _conjugation_lemma(m, c, x0, x, allowed, cache)
    ly = _conjugation_lemma(m, c, x0, y, allowed, cache)
    lc = _commutation_lemma(m, c, xs, ys, allowed, cache)
    ch = _Chain(rel.lhs)                      # X Y
    ch.use(lx, False, 0)                      # x0 X* x0 Y
    ch.use(ly, False, 3)                      # x0 X* x0 x0 Y* x0
    ch.cancel(2)                              # x0 X* Y* x0
    ch.use(lc, True, 1)                       # x0 Y* X* x0
    ch.insert(x0, 2)                          # x0 Y* x0 x0 X* x0
    ch.use(ly, True, 0)
    ch.use(lx, True, 1)
    return ch.trace(rel, (lx, ly, lc))


def _trace_square_from_r3(m, c, rel: Relation) -> Trace:
    """Derive an R3a/R3b square from the stage-2 relations."""
    lam = c.lam_set
    w = rel.lhs[: len(rel.lhs) // 2]
    inside = w[-1]
    ch = _Chain(rel.lhs)
    if rel.tag == "R3a":
        a, b = w
        ch.use(_r3(a, b), True, 0)            # b a a b
        ch.cancel_all()
        return ch.trace(rel)
    outside = omega_image(m, w[0], w[1])
    k = len(w) - 1
    ch.use(_r2hat_c(m, w[0], w[1]), True, 0)              # N L P L
    ch.use(_r2hat_c(m, w[0], w[1]), True, 2)              # N L N L
    r3 = _r3(outside, inside)
    ch.use(r3, r3.lhs == (outside, inside), 0)            # L N N L
    ch.use(_r2hat_c(m, w[0], w[1]), False, 1)
    ch.use(_r2hat_c(m, w[0], w[1]), False, 1 + k)
    ch.cancel_all()
    return ch.trace(rel)


@dataclass
class ReplayReport:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def replay_pipeline(stages: Sequence[Stage]) -> ReplayReport:
    """Replay every recorded derivation against the presentation it claims to use."""
    rep = ReplayReport()
    for prev, st in zip(stages, stages[1:]):
        new_rel = set(st.presentation.relations)
        old_rel = set(prev.presentation.relations)
        proven = set()
        pending = list(st.lemmas)
        # lemmas may rely on one another; settle them in dependency order
        while pending:
            progress = False
            for t in list(pending):
                if set(t.uses_lemmas) <= proven:
                    rep.checked += 1
                    if replay(t, new_rel | proven):
                        proven.add(t.target)
                    else:
                        rep.failures.append(f"{st.name}: lemma failed")
                        proven.add(t.target)
                    pending.remove(t)
                    progress = True
            if not progress:
                rep.failures.append(f"{st.name}: circular lemmas")
                break
        for t in st.traces:
            rep.checked += 1
            if not replay(t, new_rel | proven):
                rep.failures.append(f"{st.name}: trace for {t.target} failed")
        covered = {t.target for t in st.traces}
        if st.substitution or st.name.startswith("eliminate"):
            rep.checked += 1
            if not _check_substitution(prev, st):
                rep.failures.append(f"{st.name}: substitution mismatch")
            continue
        for r in st.removed:
            if r not in covered:
                rep.failures.append(f"{st.name}: removed relation without a trace")
        for t in st.back_traces:
            rep.checked += 1
            if not replay(t, old_rel):
                rep.failures.append(f"{st.name}: back trace for {t.target} failed")
    return rep


def _check_substitution(prev: Stage, st: Stage) -> bool:
    sub = st.substitution

    def subst(w):
        out = []
        for x in w:
            out.extend(sub.get(x, (x,)))
        return tuple(out)

    produced = set()
    for r in prev.presentation.relations:
        lhs, rhs = subst(r.lhs), subst(r.rhs)
        if r in st.removed:
            if lhs != rhs:
                return False
            continue
        produced.add((lhs, rhs))
    final = {(r.lhs, r.rhs) for r in st.presentation.relations}
    if produced != final:
        return False
    return all(x not in sub for r in st.presentation.relations for x in r.letters())


def final_presentation(stages: Sequence[Stage]) -> CactusPresentation:
    return stages[-1].presentation


# --------------------------------------------------------------------------
# Z2 * Z2

@dataclass(frozen=True)
class FreeProductWord:
    letters: tuple[str, ...] = ()

    def __post_init__(self):
        out: list[str] = []
        for a in self.letters:
            if a not in ("u", "v"):
                raise ValueError(f"unknown letter {a!r}")
            if out and out[-1] == a:
                out.pop()
            else:
                out.append(a)
        object.__setattr__(self, "letters", tuple(out))

    def __mul__(self, other: "FreeProductWord") -> "FreeProductWord":
        return FreeProductWord(self.letters + other.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self):
        return "".join(self.letters) or "1"


ONE = FreeProductWord()
U = FreeProductWord(("u",))
V = FreeProductWord(("v",))


@dataclass
class QuotientAssignment:
    images: dict[frozenset, FreeProductWord]
    witness: tuple[frozenset, ...]
    case: str  # "maximal pair" or "longest element"

    def image(self, word: Sequence[frozenset]) -> FreeProductWord:
        acc = ONE
        for x in word:
            acc = acc * self.images[x]
        return acc

    def section(self) -> dict[str, frozenset]:
        """Generators hit by u and v."""
        if self.case == "maximal pair":
            return {"u": self.witness[0], "v": self.witness[1]}
        return {"u": self.witness[0], "v": self.witness[2]}


@dataclass
class AssignmentReport:
    ok: bool
    checked: int = 0
    failures: list[Relation] = field(default_factory=list)
    message: str = ""

    def __bool__(self):
        return self.ok


def _maximal_proper(f, full) -> list[frozenset]:
    rest = [x for x in f if x != full]
    return [x for x in rest if not any(x < y for y in rest)]


def find_free_product_quotient(m: CoxeterMatrix) -> QuotientAssignment:
    """A surjection of the cactus group onto Z2 * Z2, checked before it is returned."""
    comps = [comp for comp in decompose_components(m) if len(comp) > 1]
    if not comps:
        raise ValueError("no such quotient: W is abelian, so the cactus group is abelian")
    comp = comps[0]
    f = enumerate_F(m)
    inside = [x for x in f if x <= comp]
    full = frozenset(comp)
    images = {x: ONE for x in f}
    finite = is_finite_group(m, full)
    central = finite and all(a == b for a, b in omega_action(m, full).items())
    maximal = sorted(_maximal_proper(inside, full if finite else None), key=subset_key)
    if not finite or central:
        pair = None
        for i, x in enumerate(maximal):
            for y in maximal[i + 1:]:
                if not is_commuting_disjoint(m, x, y):
                    pair = (x, y)
                    break
            if pair:
                break
        if pair is None:
            raise AssertionError("no pair of non-commuting maximal elements")
        x, y = pair
        images[x], images[y] = U, V
        q = QuotientAssignment(images, (x, y), "maximal pair")
    else:
        x = next(z for z in maximal if omega_image(m, full, z) != z)
        y = omega_image(m, full, x)
        images[x], images[full], images[y] = U, V, V * U * V
        q = QuotientAssignment(images, (x, y, full), "longest element")
    rep = verify_assignment(defining_presentation(m), q)
    if not rep.ok:
        raise AssertionError(f"quotient assignment fails on {len(rep.failures)} relations")
    return q


def verify_assignment(p: CactusPresentation, q: QuotientAssignment) -> AssignmentReport:
    missing = [x for x in p.generators if x not in q.images]
    if missing:
        raise ValueError("assignment is not total on the generators")
    rep = AssignmentReport(True)
    for r in p.relations:
        rep.checked += 1
        if q.image(r.lhs) != q.image(r.rhs):
            rep.failures.append(r)
    rep.ok = not rep.failures
    return rep


def verify_splitting(m: CoxeterMatrix, q: QuotientAssignment) -> AssignmentReport:
    """u -> c_X, v -> c_Y (or c_S) followed by the quotient must fix u and v."""
    sec = q.section()
    rep = AssignmentReport(True, checked=2)
    for letter, target in (("u", U), ("v", V)):
        if q.images.get(sec[letter]) != target:
            rep.ok = False
            rep.message = f"{letter} is not recovered: not onto"
    return rep


# --------------------------------------------------------------------------
# Lower central series of the dihedral quotients

@dataclass
class LowerCentralReport:
    n: int
    order: int
    gamma_n_order: int
    gamma_next_order: int
    matches_cyclic: bool
    strict: bool

    @property
    def ok(self) -> bool:
        return self.matches_cyclic and self.strict


def lower_central_z2z2(n: int, bound: int = 8) -> tuple[int | None, LowerCentralReport]:
    """Exponent e with Gamma_n(Z2 * Z2) generated by (uv)^e, checked in a finite quotient.

    The check runs in the dihedral group of order 2^(n+2); elements are pairs
    (rotation, flip) with u = (0, 1) and uv the rotation by one. For n = 1 the
    exponent is None: Gamma_1 is the whole group.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > bound:
        raise ValueError(f"n = {n} exceeds the brute-force bound {bound}")
    N = 2 ** (n + 1)

    def mul(a, b):
        return ((a[0] + (-b[0] if a[1] else b[0])) % N, a[1] ^ b[1])

    def inv(a):
        return a if a[1] else ((-a[0]) % N, 0)

    group = {(k, f) for k in range(N) for f in (0, 1)}
    ident = (0, 0)

    def closure(gens):
        out = {ident}
        frontier = [ident]
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = mul(a, g)
                    if b not in out:
                        out.add(b)
                        nxt.append(b)
            frontier = nxt
        return out

    def commutators(hs):
        return {mul(mul(inv(g), inv(h)), mul(g, h)) for g in group for h in hs}

    gammas = [group]
    for _ in range(n):
        gammas.append(closure(commutators(gammas[-1])))
    gamma_n, gamma_next = gammas[n - 1], gammas[n]
    u = (0, 1)
    v = (N - 1, 1)  # so that u v = (1, 0)
    uv = mul(u, v)
    if n == 1:
        expected = group
        exponent = None
    else:
        exponent = 2 ** (n - 1)
        p = ident
        for _ in range(exponent):
            p = mul(p, uv)
        expected = closure([p])
    rep = LowerCentralReport(
        n=n,
        order=len(group),
        gamma_n_order=len(gamma_n),
        gamma_next_order=len(gamma_next),
        matches_cyclic=gamma_n == expected,
        strict=gamma_n != gamma_next,
    )
    return exponent, rep
