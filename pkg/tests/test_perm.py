import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from cactuskit import perm, roots
from cactuskit.coxeter import preset

BACKENDS = perm.backends()
needs_compiled = pytest.mark.skipif("compiled" not in BACKENDS, reason="compiled kernels not built")


@st.composite
def perm_pair(draw):
    n = draw(st.integers(1, 40))
    a = draw(st.permutations(range(n)))
    b = draw(st.permutations(range(n)))
    return tuple(a), tuple(b)


@pytest.mark.parametrize("impl", list(BACKENDS.values()), ids=list(BACKENDS))
@settings(max_examples=50, deadline=None)
@given(perm_pair())
def test_compose_inverse(impl, pair):
    a, b = pair
    ab = impl.compose(a, b)
    assert tuple(ab) == tuple(a[b[i]] for i in range(len(a)))
    assert tuple(impl.compose(a, impl.inverse(a))) == tuple(range(len(a)))


@needs_compiled
@pytest.mark.parametrize("name", ["A3", "B4", "F4", "H3", "D5"])
def test_backends_agree(name):
    rs = roots.build_root_system(preset(name))
    py, cy = BACKENDS["python"], BACKENDS["compiled"]
    assert py.group_order(rs.gens, 10**6) == cy.group_order(rs.gens, 10**6)
    allowed = list(range(rs.rank))
    w1, word1 = py.longest_descent(rs.gens, rs.simple_indices, rs.positive, allowed)
    w2, word2 = cy.longest_descent(rs.gens, rs.simple_indices, rs.positive, allowed)
    assert tuple(w1) == tuple(w2) and list(word1) == list(word2)
    word = [0, 1, 0, 2, 1] if rs.rank > 2 else [0, 1, 0]
    n = len(rs.roots)
    assert tuple(py.word_product(rs.gens, word, n)) == tuple(cy.word_product(rs.gens, word, n))


@pytest.mark.parametrize("impl", list(BACKENDS.values()), ids=list(BACKENDS))
def test_group_order_cap(impl):
    rs = roots.build_root_system(preset("F4"))
    assert impl.group_order(rs.gens, 100) == -1


def test_env_var_selects_python():
    env = dict(os.environ, CACTUSKIT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from cactuskit import perm; print(perm.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
