"""Text, JSON, relator export and DOT renderings."""
from __future__ import annotations

import json
from typing import Iterable, Sequence

from .cactus import CactusPresentation, Relation
from .coxeter import CoxeterMatrix, subset_key


def format_subset(m: CoxeterMatrix, x) -> str:
    return "c{" + ",".join(m.names(x)) + "}"


def format_word(m: CoxeterMatrix, word: Sequence[frozenset]) -> str:
    return " ".join(format_subset(m, x) for x in word) or "1"


def format_relation(m: CoxeterMatrix, r: Relation) -> str:
    return f"{r.tag}: {format_word(m, r.lhs)} = {format_word(m, r.rhs)}"


def presentation_text(m: CoxeterMatrix, p: CactusPresentation) -> str:
    lines = [f"generators ({len(p.generators)}): " + " ".join(format_subset(m, x) for x in p.generators)]
    lines += [format_relation(m, r) for r in p.relations]
    return "\n".join(lines) + "\n"


def presentation_json(m: CoxeterMatrix, p: CactusPresentation) -> dict:
    return {
        "generators": [m.names(x) for x in p.generators],
        "relations": [
            {"tag": r.tag, "lhs": [m.names(x) for x in r.lhs], "rhs": [m.names(x) for x in r.rhs]}
            for r in p.relations
        ],
    }


def presentation_from_json(m: CoxeterMatrix, data: dict) -> CactusPresentation:
    gens = tuple(m.subset(g) for g in data["generators"])
    rels = tuple(
        Relation(tuple(m.subset(x) for x in r["lhs"]), tuple(m.subset(x) for x in r["rhs"]), r["tag"])
        for r in data["relations"]
    )
    return CactusPresentation(gens, rels)


def relator_export(m: CoxeterMatrix, p: CactusPresentation) -> str:
    """Free group on g1..gk with relators lhs * rhs^-1, in GAP syntax."""
    index = {x: i + 1 for i, x in enumerate(p.generators)}
    k = len(p.generators)
    out = [f"# g{index[x]} = {format_subset(m, x)}" for x in p.generators]
    out.append(f"F := FreeGroup({k});")
    out.append("AssignGeneratorVariables(F);" if k else "")
    rels = []
    for r in p.relations:
        parts = []
        for x, e in r.relator():
            parts.append(f"g{index[x]}" if e == 1 else f"g{index[x]}^-1")
        rels.append("*".join(parts) or "One(F)")
    out.append("rels := [" + ", ".join(rels) + "];")
    out.append("G := F / rels;")
    return "\n".join(line for line in out if line) + "\n"


def derivation_log(m: CoxeterMatrix, stages) -> str:
    """Human-readable account of the rewriting pipeline."""
    lines = []
    for k, st in enumerate(stages):
        p = st.presentation
        lines.append(f"== stage {k}: {st.name} ({len(p.generators)} generators, {len(p.relations)} relations)")
        if k == 0:
            continue
        lines.append(f"   removed {len(st.removed)}, added {len(st.added)}")
        for t in st.lemmas:
            lines.append(f"   lemma {format_word(m, t.target.lhs)} = {format_word(m, t.target.rhs)}")
            lines += [f"      -> {format_word(m, w)}" for w in t.words()[1:]]
        for t in st.traces:
            lines.append(f"   derive {format_relation(m, t.target)}")
            lines += [f"      -> {format_word(m, w)}" for w in t.words()[1:]]
        for x, w in sorted(st.substitution.items(), key=lambda kv: subset_key(kv[0])):
            lines.append(f"   {format_subset(m, x)} := {format_word(m, w)}")
    return "\n".join(lines) + "\n"


def _dot_id(name: str) -> str:
    return json.dumps(name)


def emit_dot(m: CoxeterMatrix, lam: Iterable[frozenset] | None = None) -> str:
    """Coxeter graph; bond 3 unlabeled. ``lam`` adds one cluster per member."""
    lines = ["graph coxeter {", "  node [shape=circle];"]
    for g in m.generators:
        lines.append(f"  {_dot_id(g)};")
    for i, j, mij in m.edges():
        a, b = _dot_id(m.generators[i]), _dot_id(m.generators[j])
        if mij == 3:
            lines.append(f"  {a} -- {b};")
        else:
            label = "inf" if mij == float("inf") else str(int(mij))
            lines.append(f"  {a} -- {b} [label={_dot_id(label)}];")
    if lam is not None:
        for k, x in enumerate(sorted(lam, key=subset_key)):
            lines.append(f"  subgraph cluster_{k} {{")
            lines.append(f"    label={_dot_id(format_subset(m, x))};")
            lines.append("    " + " ".join(f"{_dot_id(n)};" for n in m.names(x)))
            lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
