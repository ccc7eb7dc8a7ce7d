"""Kernel backend selection.

Two interchangeable implementations of the hot combinatorial searches
exist: a compiled Cython module (_core) and a pure-Python reference
(_pure).  The compiled one is preferred when importable; set the
environment variable ZEROTRACE_BACKEND to "pure" or "compiled" to force
a choice.  Both expose count_restrictions, vcdim, pi, ldim and rho with
identical semantics, verified against each other in the test suite.
"""

from __future__ import annotations

import os

from . import _pure

try:
    from . import _core
except ImportError:
    _core = None

_requested = os.environ.get("ZEROTRACE_BACKEND", "").strip().lower()
if _requested == "pure":
    backend = _pure
elif _requested == "compiled":
    if _core is None:
        raise ImportError(
            "ZEROTRACE_BACKEND=compiled but the compiled kernel module is not available"
        )
    backend = _core
elif _requested:
    raise ImportError(f"unknown ZEROTRACE_BACKEND value: {_requested!r}")
else:
    backend = _core if _core is not None else _pure


def backend_name() -> str:
    return "compiled" if backend is _core else "pure"


def available_backends() -> dict:
    """Name -> module map of every importable backend (for tests/benchmarks)."""
    out = {"pure": _pure}
    if _core is not None:
        out["compiled"] = _core
    return out


count_restrictions = backend.count_restrictions
vcdim = backend.vcdim
pi = backend.pi
ldim = backend.ldim
rho = backend.rho
