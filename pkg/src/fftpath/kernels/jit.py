"""numba-compiled variants of the scalar loops.

Importable even without numba: HAVE_NUMBA reports availability and the
compiled functions only exist when it is True.  Compilation is lazy and
cached on disk, so the first call in a fresh environment pays the JIT cost
once.
"""

from . import loops

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only on numba-less hosts
    njit = None

HAVE_NUMBA = njit is not None

if HAVE_NUMBA:
    _jit = njit(cache=True, fastmath=False)
    radix2 = _jit(loops.radix2)
    radix4 = _jit(loops.radix4)
    radix8 = _jit(loops.radix8)
    fused = _jit(loops.fused)
