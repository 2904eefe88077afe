"""Command-line front end.

Exit status: 0 success, 1 verified false, 2 usage error, 3 budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import cactus, render, roots, sections, tietze
from .coxeter import (
    CoxeterInputError,
    CoxeterMatrix,
    decompose_components,
    is_finite_group,
    omega_action,
    parse_coxeter,
    preset,
    recognize_finite_type,
)

OK, FALSE, USAGE, BUDGET = 0, 1, 2, 3
BUDGET_ENV = "CACTUSKIT_BUDGET"


class UsageError(Exception):
    pass


def _budget(value):
    if value is not None:
        return value
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{BUDGET_ENV} must be an integer") from None
    return sections.DEFAULT_BUDGET


def load_matrix(args) -> CoxeterMatrix:
    if (args.preset is None) == (args.file is None):
        raise UsageError("give exactly one of --preset and --file")
    if args.preset is not None:
        return preset(args.preset)
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    return parse_coxeter(text)


def load_section(m: CoxeterMatrix, source: str) -> sections.SectionCandidate:
    if source == "catalog":
        return sections.catalog_section(m)
    if source == "trivial":
        return sections.trivial_section(m)
    try:
        data = json.loads(Path(source).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot load section {source}: {exc}") from None
    return sections.section_from_json(m, data)


def _emit(args, text: str, data):
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _names_nested(m, x):
    # uniqueness witnesses carry (bar, ring) pairs next to plain subsets
    if isinstance(x, frozenset):
        return m.names(x)
    return [_names_nested(m, y) for y in x]


def _fmt(m, x):
    return "{" + ",".join(m.names(x)) + "}"


# --------------------------------------------------------------------------
# commands

def cmd_info(args) -> int:
    m = load_matrix(args)
    comps = decompose_components(m)
    finite = is_finite_group(m)
    labels = []
    for comp in comps:
        lab = recognize_finite_type(m, comp)
        labels.append({"generators": m.names(comp), "type": lab.name if lab else None})
    data = {
        "rank": m.rank,
        "generators": list(m.generators),
        "irreducible": len(comps) == 1,
        "finite": finite,
        "components": labels,
    }
    text = "\n".join(
        [f"rank {m.rank}", f"irreducible: {'yes' if len(comps) == 1 else 'no'}",
         f"finite: {'yes' if finite else 'no'}"]
        + [f"component {_fmt(m, c)}: {d['type'] or 'infinite'}" for c, d in zip(comps, labels)]
    )
    _emit(args, text, data)
    return OK


def cmd_enum_f(args) -> int:
    m = load_matrix(args)
    f = cactus.enumerate_F(m)
    rows = [(x, recognize_finite_type(m, x).name) for x in f]
    _emit(
        args,
        "\n".join(f"{_fmt(m, x)} {t}" for x, t in rows) + f"\n|F| = {len(f)}",
        {"F": [{"subset": m.names(x), "type": t} for x, t in rows]},
    )
    return OK


def _present(args, m, p: cactus.CactusPresentation, extra: dict | None = None) -> None:
    if args.format == "gap":
        sys.stdout.write(render.relator_export(m, p))
        return
    data = render.presentation_json(m, p)
    if extra:
        data.update(extra)
    _emit(args, render.presentation_text(m, p), data)


def cmd_presentation(args) -> int:
    m = load_matrix(args)
    _present(args, m, cactus.defining_presentation(m))
    return OK


def cmd_classes(args) -> int:
    m = load_matrix(args)
    e = cactus.equivalence_classes(m)
    text = "\n".join(" ".join(_fmt(m, x) for x in cls) for cls in e.classes) + f"\nm = {e.m}"
    _emit(args, text, {"m": e.m, "classes": [[m.names(x) for x in cls] for cls in e.classes]})
    return OK


def cmd_abelianization(args) -> int:
    m = load_matrix(args)
    k, name = cactus.abelianization(m)
    _emit(args, name, {"rank": k, "group": name})
    return OK


def cmd_verify_section(args) -> int:
    m = load_matrix(args)
    c = load_section(m, args.section)
    check = {
        "section": sections.verify_section,
        "transversal": sections.verify_transversal_section,
        "cross": sections.verify_cross_section,
    }[args.kind]
    rep = check(m, c)
    lines = [f"{args.kind}: {'true' if rep.ok else 'false'}"]
    if not rep.ok:
        lines.append(f"condition {rep.condition}: {rep.message}")
    if args.verbose:
        lines += rep.notes
    data = {
        "kind": args.kind,
        "ok": rep.ok,
        "condition": rep.condition,
        "message": rep.message,
        "witness": [_names_nested(m, x) for x in rep.witness],
        "notes": rep.notes,
    }
    _emit(args, "\n".join(lines), data)
    return OK if rep.ok else FALSE


def cmd_search_section(args) -> int:
    m = load_matrix(args)
    budget = _budget(args.budget)
    search = sections.search_cross_section if args.kind == "cross" else sections.search_transversal_section
    try:
        res = search(m, budget=budget)
    except sections.SearchInconclusive as exc:
        _emit(args, f"INCONCLUSIVE ({exc})", {"status": "inconclusive", "stats": exc.stats})
        return BUDGET
    if not res.found:
        _emit(args, "NONE (exhausted)", {"status": "exhausted", "stats": res.stats})
        return FALSE
    c = res.candidate
    text = "\n".join(_fmt(m, x) for x in c.lam)
    _emit(args, text, {"status": "found", "stats": res.stats, "section": sections.section_to_json(m, c)})
    return OK


def cmd_minimal_presentation(args) -> int:
    m = load_matrix(args)
    c = load_section(m, args.section)
    sections.verify_transversal_section(m, c)
    sections.verify_cross_section(m, c)
    try:
        d = tietze.section_presentation(m, c)
    except tietze.NotASection as exc:
        print(str(exc), file=sys.stderr)
        return FALSE
    if args.log:
        sys.stdout.write(render.derivation_log(m, tietze.derive_via_steps(m, c)))
        return OK
    for w in d.warnings + d.remark_violations:
        print(f"warning: {w}", file=sys.stderr)
    _present(args, m, d.as_presentation(), {"warnings": d.warnings, "remark_violations": d.remark_violations})
    return OK


def cmd_quotient(args) -> int:
    m = load_matrix(args)
    try:
        q = tietze.find_free_product_quotient(m)
    except ValueError as exc:
        _emit(args, str(exc), {"ok": False, "message": str(exc)})
        return FALSE
    a = tietze.verify_assignment(cactus.defining_presentation(m), q)
    s = tietze.verify_splitting(m, q)
    moved = {x: w for x, w in q.images.items() if not w.is_identity()}
    lines = [f"{render.format_subset(m, x)} -> {w}" for x, w in sorted(moved.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]
    lines.append(f"relations checked: {a.checked}, failures: {len(a.failures)}")
    lines.append(f"splitting: {'ok' if s.ok else 'fails'}")
    data = {
        "case": q.case,
        "images": {render.format_subset(m, x): str(w) for x, w in moved.items()},
        "assignment_ok": a.ok,
        "splitting_ok": s.ok,
    }
    _emit(args, "\n".join(lines), data)
    return OK if a.ok and s.ok else FALSE


def cmd_lcs(args) -> int:
    try:
        e, rep = tietze.lower_central_z2z2(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    gen = "whole group" if e is None else f"(uv)^{e}"
    text = (
        f"Gamma_{args.n} = <{gen}>\n"
        f"dihedral quotient of order {rep.order}: |Gamma_n| = {rep.gamma_n_order}, "
        f"|Gamma_n+1| = {rep.gamma_next_order}\nverified: {'yes' if rep.ok else 'no'}"
    )
    _emit(args, text, {"n": args.n, "exponent": e, "order": rep.order, "verified": rep.ok})
    return OK if rep.ok else FALSE


def cmd_oracle_check(args) -> int:
    m = load_matrix(args)
    mismatches = []
    f = cactus.enumerate_F(m)
    for x in f:
        if omega_action(m, x) != roots.oracle_omega_action(m, x):
            mismatches.append(x)
    proj = cactus.check_projection_to_W(m, cactus.defining_presentation(m))
    lines = [f"omega table: {len(f) - len(mismatches)}/{len(f)} agree"]
    lines += [f"mismatch at {_fmt(m, x)}" for x in mismatches]
    lines.append(
        f"projection to W: {proj.checked} relations, {len(proj.failures)} failures"
        if proj.available else proj.notice
    )
    ok = not mismatches and (proj.ok or not proj.available)
    data = {
        "checked": len(f),
        "mismatches": [m.names(x) for x in mismatches],
        "projection": {"available": proj.available, "checked": proj.checked, "failures": len(proj.failures)},
        "ok": ok,
    }
    _emit(args, "\n".join(lines), data)
    return OK if ok else FALSE


def cmd_emit_dot(args) -> int:
    m = load_matrix(args)
    lam = load_section(m, args.section).lam if args.section else None
    sys.stdout.write(render.emit_dot(m, lam))
    return OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cactuskit", description="Cactus groups of Coxeter systems")
    sub = parser.add_subparsers(dest="command", required=True)

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--preset", help="named type such as A3, D5, I2(5)")
    source.add_argument("--file", help="JSON Coxeter matrix")
    source.add_argument("--format", choices=["text", "json"], default="text")

    def add(name, func, help_, parents=(source,)):
        p = sub.add_parser(name, help=help_, parents=list(parents))
        p.set_defaults(func=func)
        return p

    add("info", cmd_info, "type recognition, finiteness, irreducibility")
    add("enum-f", cmd_enum_f, "list the finite irreducible subsets")
    add("presentation", cmd_presentation, "defining presentation")
    add("classes", cmd_classes, "equivalence classes of F")
    add("abelianization", cmd_abelianization, "abelianization as Z2^m")
    p = add("verify-section", cmd_verify_section, "check a section candidate")
    p.add_argument("--section", required=True, help="'catalog', 'trivial' or a JSON file")
    p.add_argument("--kind", choices=["section", "transversal", "cross"], default="cross")
    p.add_argument("--verbose", action="store_true")
    p = add("search-section", cmd_search_section, "backtracking search for a section")
    p.add_argument("--kind", choices=["cross", "transversal"], required=True)
    p.add_argument("--budget", type=int, default=None, help=f"node budget (default ${BUDGET_ENV})")
    p = add("minimal-presentation", cmd_minimal_presentation, "presentation on a section")
    p.add_argument("--section", required=True, help="'catalog', 'trivial' or a JSON file")
    p.add_argument("--log", action="store_true", help="print the rewriting derivation instead")
    add("quotient-z2z2", cmd_quotient, "surjection onto Z2 * Z2")
    p = sub.add_parser("lcs-z2z2", help="lower central series of Z2 * Z2")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_lcs)
    add("oracle-check", cmd_oracle_check, "omega table and relations against the root oracle")
    p = add("emit-dot", cmd_emit_dot, "Coxeter graph in DOT")
    p.add_argument("--section", default=None)

    # the presentation commands also take the relator export format
    for name in ("presentation", "minimal-presentation"):
        for action in sub.choices[name]._actions:
            if action.dest == "format":
                action.choices = ["text", "json", "gap"]
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, CoxeterInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except sections.NoTransversalSection as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FALSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
