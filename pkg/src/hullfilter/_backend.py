"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback.  ``HULLFILTER_BACKEND=python`` forces the fallback at import time,
and :func:`use_backend` switches temporarily (tests and benchmarks).
"""

import contextlib
import logging
import os

from . import _fallback

log = logging.getLogger(__name__)

try:
    from . import _kernels as _compiled
except ImportError as exc:  # extension not built
    _compiled = None
    log.debug("compiled kernels unavailable (%s); using python fallback", exc)

_BACKENDS = {"python": _fallback}
if _compiled is not None:
    _BACKENDS["cython"] = _compiled

_requested = os.environ.get("HULLFILTER_BACKEND", "").strip().lower()
if _requested and _requested not in _BACKENDS:
    log.warning("HULLFILTER_BACKEND=%s not available; falling back", _requested)
    _requested = ""
_active = _BACKENDS[_requested] if _requested else (_compiled or _fallback)


def kernels():
    return _active


def available() -> list[str]:
    return sorted(_BACKENDS)


def active_name() -> str:
    return _active.NAME


def set_backend(name: str) -> None:
    global _active
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {available()}") from None


@contextlib.contextmanager
def use_backend(name: str):
    prev = _active.NAME
    set_backend(name)
    try:
        yield _active
    finally:
        set_backend(prev)
