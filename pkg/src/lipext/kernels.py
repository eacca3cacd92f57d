"""Kernel backend selection.

The compiled ``_ckernels`` module is used when it was built; otherwise the
numpy fallback.  Set ``LIPEXT_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernels_py


def _load_compiled() -> ModuleType | None:
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


def available_backends() -> dict[str, ModuleType]:
    found = {"python": _kernels_py}
    compiled = _load_compiled()
    if compiled is not None:
        found["cython"] = compiled
    return found


def get_backend(name: str | None = None) -> ModuleType:
    backends = available_backends()
    if name is None:
        if os.environ.get("LIPEXT_PURE_PYTHON"):
            return _kernels_py
        return backends.get("cython", _kernels_py)
    try:
        return backends[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} not available; have {sorted(backends)}") from None


_impl = get_backend()
BACKEND: str = _impl.NAME

max_weighted_distance = _impl.max_weighted_distance
lipschitz_scan = _impl.lipschitz_scan
triangle_violation = _impl.triangle_violation
