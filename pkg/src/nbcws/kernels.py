"""Backend selection for the hot kernels.

The compiled module is used when it imports; setting ``NBCWS_PURE_PYTHON=1``
forces the pure-Python fallback. Both expose ``adjacency_rows`` and
``max_clique_search`` with identical semantics.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _purepy


def _load_compiled() -> ModuleType | None:
    try:
        from . import _speedups
    except ImportError:
        return None
    return _speedups


_compiled = _load_compiled()
_forced = os.environ.get("NBCWS_PURE_PYTHON", "").strip() not in ("", "0")

_impl: ModuleType = _purepy if (_forced or _compiled is None) else _compiled
BACKEND: str = _impl.NAME

adjacency_rows = _impl.adjacency_rows
max_clique_search = _impl.max_clique_search


def available_backends() -> dict[str, ModuleType]:
    out = {"python": _purepy}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


def get_backend(name: str | None = None) -> ModuleType:
    if name is None:
        return _impl
    try:
        return available_backends()[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(available_backends())}") from None
