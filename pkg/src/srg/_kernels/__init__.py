"""Solver kernels: a compiled Cython core with a pure Python fallback.

The compiled backend is selected automatically when its extension module
importable; set SRG_BACKEND=fallback (or =native) to force a choice.  Both
backends implement identical semantics and produce bit-identical results.
"""

from __future__ import annotations

import os

from srg._kernels import fallback as _fallback

_requested = os.environ.get("SRG_BACKEND", "").strip().lower()
if _requested not in ("", "auto", "native", "fallback"):
    raise ImportError(f"unknown SRG_BACKEND value {_requested!r} (use native or fallback)")

_native = None
if _requested != "fallback":
    try:
        from srg._kernels import native as _native  # type: ignore[no-redef]
    except ImportError:
        _native = None
if _requested == "native" and _native is None:
    raise ImportError("SRG_BACKEND=native but the compiled kernels are not built")

_active = _native if _native is not None else _fallback

evaluate_labels = _active.evaluate_labels
ant_traverse = _active.ant_traverse


def active_backend() -> str:
    """Name of the backend in use: "native" or "fallback"."""
    return _active.BACKEND_NAME


def get_backend(name: str | None = None):
    """Return a backend module by name (None/"auto" = the active one)."""
    if name in (None, "", "auto"):
        return _active
    if name == "fallback":
        return _fallback
    if name == "native":
        if _native is None:
            raise ValueError("compiled kernels are not built")
        return _native
    raise ValueError(f"unknown backend {name!r}")
