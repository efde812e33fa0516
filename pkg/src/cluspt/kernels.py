"""Backend selection for the hot loops.

The compiled extension is used when importable; ``CLUSPT_BACKEND=python``
forces the pure-Python fallback. Both expose ``subset_convolve_batch`` and
``fpt2_search`` with identical semantics.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def get_backend(name: str | None = None) -> ModuleType:
    """Return the kernel module ``name`` ("compiled" or "python"), or the default."""
    if name is None:
        return DEFAULT
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {available_backends()}") from None


def backend_name(module: ModuleType) -> str:
    return "compiled" if module is _ckernels else "python"


_requested = os.environ.get("CLUSPT_BACKEND", "").strip().lower()
if _requested == "python" or _ckernels is None:
    DEFAULT = _pykernels
else:
    DEFAULT = _ckernels
BACKEND = backend_name(DEFAULT)
