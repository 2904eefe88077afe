"""One test function per acceptance criterion; conftest prints a PASS/FAIL line for each."""
import time

import pytest

from cactuskit import roots
from cactuskit.cactus import (
    abelian_rank,
    abelianization,
    check_projection_to_W,
    defining_presentation,
    enumerate_F,
    equivalence_classes,
)
from cactuskit.coxeter import omega_action, preset
from cactuskit.sections import (
    catalog_section,
    search_cross_section,
    search_transversal_section,
    trivial_section,
    verify_cross_section,
    verify_section,
    verify_transversal_section,
)
from cactuskit.tietze import (
    derive_via_steps,
    find_free_product_quotient,
    lower_central_z2z2,
    replay_pipeline,
    section_presentation,
    verify_assignment,
    verify_splitting,
)

from conftest import ORACLE_PRESETS

DIHEDRAL = [f"I2({k})" for k in range(3, 9)]


def S(*xs):
    return frozenset(i - 1 for i in xs)


# 1 ------------------------------------------------------------------------

def test_criterion_1_omega_table():
    start = time.perf_counter()
    mismatches = []
    checked = 0
    for name in ORACLE_PRESETS:
        m = preset(name)
        for x in enumerate_F(m):
            checked += 1
            if omega_action(m, x) != roots.oracle_omega_action(m, x):
                mismatches.append((name, sorted(x)))
    elapsed = time.perf_counter() - start
    print(f"criterion 1: {checked} subsets, {len(mismatches)} mismatches, {elapsed:.2f} s")
    assert mismatches == []
    assert elapsed < 60


# 2 ------------------------------------------------------------------------

def _oracle_tables(m):
    rs = roots.build_root_system(m)
    f = list(enumerate_F(m))
    w = {x: roots.longest_element(rs, x) for x in f}
    act = {x: roots.omega_conjugation(rs, x) for x in f}
    return f, w, act


def _image(act, x, y):
    out = [act[x][s] for s in y]
    assert None not in out
    return frozenset(out)


@pytest.mark.parametrize("name", ORACLE_PRESETS)
def test_criterion_2_nested_identities(name):
    m = preset(name)
    f, w, act = _oracle_tables(m)
    pairs = chains = 0
    for x in f:
        for y in f:
            if not y <= x:
                continue
            pairs += 1
            assert w[x] * w[y] * w[x] == w[_image(act, x, y)]
            for z in f:
                if z <= y:
                    chains += 1
                    lhs = _image(act, x, _image(act, y, z))
                    rhs = _image(act, _image(act, x, y), _image(act, x, z))
                    assert lhs == rhs
    assert pairs and chains


# 3 ------------------------------------------------------------------------

CATALOG_CROSS = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "F4", "H3", "H4"] + DIHEDRAL


@pytest.mark.parametrize("name", CATALOG_CROSS)
def test_criterion_3_catalog_cross_section(name):
    m = preset(name)
    rep = verify_cross_section(m, catalog_section(m))
    assert rep.ok, f"{name}: condition {rep.condition}: {rep.message}"


def test_criterion_3_D5():
    m = preset("D5")
    c = catalog_section(m)
    assert verify_transversal_section(m, c).ok
    assert not verify_cross_section(m, c).ok


@pytest.mark.parametrize("name, search", [("D5", search_cross_section), ("E6", search_transversal_section)])
def test_criterion_3_exhausted(name, search):
    start = time.perf_counter()
    res = search(preset(name))
    assert res.status == "exhausted"
    assert time.perf_counter() - start < 600


# 4 ------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 7))
def test_criterion_4_type_A(n):
    m = preset(f"A{n}")
    k, _ = abelianization(m)
    assert k == n
    assert abelian_rank(defining_presentation(m)) == n
    if n <= 5:
        assert len(catalog_section(m).lam) == n


@pytest.mark.parametrize("n", range(2, 6))
def test_criterion_4_type_B(n):
    m = preset(f"B{n}")
    k, _ = abelianization(m)
    assert k == 2 * n - 1
    assert abelian_rank(defining_presentation(m)) == 2 * n - 1
    assert len(catalog_section(m).lam) == 2 * n - 1


MINIMAL = ["A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "D5", "D7", "F4"] + DIHEDRAL


@pytest.mark.parametrize("name", MINIMAL)
def test_criterion_4_minimal_generators(name):
    m = preset(name)
    k = equivalence_classes(m).m
    candidates = [catalog_section(m)] if name != "A6" else []
    res = search_cross_section(m)
    if res.found:
        candidates.append(res.candidate)
    res = search_transversal_section(m)
    if res.found:
        candidates.append(res.candidate)
    assert candidates
    for c in candidates:
        d = section_presentation(m, c)
        assert len(d.generators) == k
        assert abelian_rank(d.as_presentation()) == k


# 5 ------------------------------------------------------------------------

SOUNDNESS = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "H3", "H4"] + DIHEDRAL + ["A5", "D5"]


@pytest.mark.parametrize("name", SOUNDNESS)
def test_criterion_5_projection(name):
    m = preset(name)
    assert check_projection_to_W(m, defining_presentation(m)).ok
    sections = [trivial_section(m)]
    c = catalog_section(m)
    if verify_section(m, c).ok:
        sections.append(c)
    for search in (search_cross_section, search_transversal_section):
        res = search(m)
        if res.found:
            sections.append(res.candidate)
    for c in sections:
        d = section_presentation(m, c)
        rep = check_projection_to_W(m, d.as_presentation())
        assert rep.ok and rep.checked == len(d.relations)
        for st in derive_via_steps(m, c):
            assert check_projection_to_W(m, st.presentation).ok


# 6 ------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["I2(3)", "I2(5)"])
def test_criterion_6_odd(name):
    m = preset(name)
    d = section_presentation(m, catalog_section(m))
    assert len(d.generators) == 2
    involutions = {((x, x), ()) for x in d.generators}
    assert {(r.lhs, r.rhs) for r in d.relations} == involutions


def test_criterion_6_even():
    m = preset("I2(4)")
    c = catalog_section(m)
    stages = derive_via_steps(m, c)
    final = stages[-1].presentation
    assert abelian_rank(final) == 3
    assert check_projection_to_W(m, final).ok
    s, t, st = S(1), S(2), S(1, 2)
    display = {
        frozenset([(s, s), ()]), frozenset([(t, t), ()]), frozenset([(st, st), ()]),
        frozenset([(s, st), (st, s)]), frozenset([(t, st), (st, t)]),
    }
    assert {frozenset([r.lhs, r.rhs]) for r in final.relations} == display
    assert len(final.relations) == len(display)


# 7 ------------------------------------------------------------------------

def test_criterion_7_lower_central():
    start = time.perf_counter()
    for n in range(2, 7):
        e, rep = lower_central_z2z2(n)
        assert e == 2 ** (n - 1)
        assert rep.matches_cyclic and rep.strict
    assert time.perf_counter() - start < 10


# 8 ------------------------------------------------------------------------

@pytest.mark.parametrize("name", [p for p in ORACLE_PRESETS if p != "A1"])
def test_criterion_8_quotient(name):
    m = preset(name)
    q = find_free_product_quotient(m)
    assert verify_assignment(defining_presentation(m), q).ok
    assert verify_splitting(m, q).ok


# 9 ------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["A3", "B3"])
def test_criterion_9_replay(name):
    m = preset(name)
    stages = derive_via_steps(m, catalog_section(m))
    rep = replay_pipeline(stages)
    assert rep.failures == []
    assert rep.checked > 0
    for st in stages[1:4]:
        covered = {t.target for t in st.traces}
        assert set(st.removed) <= covered
