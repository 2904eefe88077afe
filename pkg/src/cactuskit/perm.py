"""Permutation kernels, compiled when available.

The compiled ``_perm`` extension is used unless it failed to build or the
environment variable ``CACTUSKIT_PURE_PYTHON`` is set to a non-empty value.
``BACKEND`` names the implementation in use.
"""
import os

from . import _perm_py

if os.environ.get("CACTUSKIT_PURE_PYTHON"):
    _impl = _perm_py
else:
    try:
        from . import _perm as _impl
    except ImportError:
        _impl = _perm_py

BACKEND = "compiled" if _impl is not _perm_py else "python"

compose = _impl.compose
inverse = _impl.inverse
word_product = _impl.word_product
group_order = _impl.group_order
longest_descent = _impl.longest_descent


def backends():
    """All importable kernel implementations, keyed by name."""
    out = {"python": _perm_py}
    try:
        from . import _perm
    except ImportError:
        pass
    else:
        out["compiled"] = _perm
    return out
