"""Kernel backend selection.

Prefers the compiled extension ``oametrics._accel`` and falls back to the
numpy implementation with identical semantics. ``BACKEND`` records which one
is active; both modules stay importable so they can be compared directly
(see ``benchmarks/bench_backends.py`` and the parity tests).
"""

from . import _accel_py

try:
    from . import _accel  # type: ignore[attr-defined]

    HAVE_ACCEL = True
except ImportError:  # pragma: no cover - depends on the build environment
    _accel = None
    HAVE_ACCEL = False

_impl = _accel if HAVE_ACCEL else _accel_py
BACKEND = "cython" if HAVE_ACCEL else "numpy"

cell_counts = _impl.cell_counts
scan_balance = _impl.scan_balance
coincidence_hist = _impl.coincidence_hist
