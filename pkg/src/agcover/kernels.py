"""Backend selection for the inner loops.

The compiled extension is used when it was built; otherwise the pure-Python
module with the same API takes over.
"""
from __future__ import annotations

from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_active: ModuleType = _ckernels if _ckernels is not None else _pykernels


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def get(name: str | None = None) -> ModuleType:
    """Kernel module by name, or the active one."""
    if name is None:
        return _active
    if name == "python":
        return _pykernels
    if name == "cython":
        if _ckernels is None:
            raise RuntimeError("the compiled kernels are not built")
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def set_backend(name: str) -> None:
    global _active
    _active = get(name)


def backend_name() -> str:
    return _active.BACKEND
