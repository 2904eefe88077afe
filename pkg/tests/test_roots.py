from math import factorial

import pytest

from cactuskit import roots
from cactuskit.cactus import enumerate_F
from cactuskit.coxeter import CoxeterMatrix, omega_action, preset


def weyl_order(name):
    fam, rest = name[0], name[1:]
    if fam == "I":
        return 2 * int(rest[2:-1])
    n = int(rest)
    return {
        "A": factorial(n + 1),
        "B": 2**n * factorial(n),
        "D": 2 ** (n - 1) * factorial(n),
    }.get(fam) or {"F4": 1152, "H3": 120, "H4": 14400, "E6": 51840}[name]


@pytest.mark.parametrize("name", ["A1", "A3", "A4", "B3", "B4", "D4", "D5", "F4", "H3", "H4", "I2(5)", "I2(8)", "E6"])
def test_group_order_matches_formula(name):
    rs = roots.build_root_system(preset(name))
    assert roots.group_order(rs) == weyl_order(name)


@pytest.mark.parametrize(
    "name, n_roots",
    [("A2", 6), ("B2", 8), ("A4", 20), ("D5", 40), ("E6", 72), ("F4", 48), ("H3", 30), ("H4", 120), ("I2(7)", 14)],
)
def test_root_counts_and_longest_length(name, n_roots):
    rs = roots.build_root_system(preset(name))
    assert len(rs.roots) == n_roots
    w0 = roots.longest_element(rs)
    assert roots.length(rs, w0) == n_roots // 2
    assert (w0 * w0).is_identity()


def test_longest_element_sends_positive_to_negative():
    rs = roots.build_root_system(preset("D5"))
    w0 = roots.longest_element(rs)
    assert all(rs.positive[r] != rs.positive[w0.perm[r]] for r in range(len(rs.roots)))


def test_word_of_longest_element_is_reduced():
    rs = roots.build_root_system(preset("B3"))
    w, word = roots.longest_element_word(rs)
    assert len(word) == 9
    assert roots.element_from_word(rs, word) == w


def test_infinite_groups_hit_the_cap():
    aff = CoxeterMatrix(["a", "b", "c"], {(0, 1): 3, (1, 2): 3, (0, 2): 3})
    with pytest.raises(roots.NotFiniteTypeError):
        roots.build_root_system(aff, cap=200)
    with pytest.raises(roots.NotFiniteTypeError):
        roots.group_order(roots.build_root_system(preset("E6")), cap=1000)


def test_conjugate_subset():
    m = preset("A3")
    assert roots.conjugate_subset(m, {0, 1, 2}, {0}) == frozenset({2})
    assert roots.conjugate_subset(m, {0, 1}, {2}) is None
    assert roots.conjugate_subset(m, {0}, {2}) == frozenset({2})
    aff = CoxeterMatrix(["a", "b", "c"], {(0, 1): 3, (1, 2): 3, (0, 2): 3})
    with pytest.raises(roots.OracleUndecided):
        roots.conjugate_subset(aff, {0, 1}, {2})


def test_oracle_on_subset_of_infinite_group():
    # finite parabolic inside an infinite group: the oracle only sees W_X
    aff = CoxeterMatrix(["a", "b", "c"], {(0, 1): 3, (1, 2): 3, (0, 2): 3})
    assert roots.oracle_omega_action(aff, {0, 1}) == {0: 1, 1: 0}


def test_negation_is_an_involution():
    rs = roots.build_root_system(preset("H3"))
    neg = rs.negation()
    assert all(neg[neg[r]] == r and neg[r] != r for r in range(len(rs.roots)))


def test_omega_table_matches_oracle_e_types():
    for name in ("E6", "E7"):
        m = preset(name)
        for x in enumerate_F(m):
            assert omega_action(m, x) == roots.oracle_omega_action(m, x)
