"""Executable passes: radix-2/4/8, terminal fused blocks, output reorder,
and the O(n^2) reference DFT used as the correctness oracle.

Three interchangeable implementations back the passes:

- "numba":  the scalar loops compiled with numba (reference semantics, fast)
- "python": the same scalar loops uncompiled (reference semantics, slow)
- "numpy":  lane-parallel numpy slices (the vectorized path)

FFTPATH_BACKEND selects the process default (auto/numba/python/numpy, where
auto prefers numba and falls back to numpy).  Every public pass also takes
an explicit ``backend=`` override.  All passes mutate the buffer in place
and touch nothing but the buffer and the twiddle table.
"""

from __future__ import annotations

import os

import numpy as np

from ..errors import ConfigError, ShapeError, SizeError, StageError
from ..numerics import SplitComplexBuffer, TwiddleTable, log2_size
from . import jit, loops, vector

__all__ = [
    "radix2_pass",
    "radix4_pass",
    "radix8_pass",
    "fused_block_pass",
    "run_pass",
    "output_permutation",
    "bit_reversal_permutation",
    "reference_dft",
    "available_backends",
    "default_backend",
    "resolve_backend",
    "BACKEND_ENV_VAR",
]

BACKEND_ENV_VAR = "FFTPATH_BACKEND"
_IMPLS = {"python": loops, "numpy": vector}
if jit.HAVE_NUMBA:
    _IMPLS["numba"] = jit


def available_backends() -> tuple[str, ...]:
    order = ("numba", "numpy", "python")
    return tuple(name for name in order if name in _IMPLS)


def default_backend() -> str:
    """Backend named by FFTPATH_BACKEND, defaulting to numba then numpy."""
    choice = os.environ.get(BACKEND_ENV_VAR, "auto").strip().lower() or "auto"
    if choice == "auto":
        return "numba" if jit.HAVE_NUMBA else "numpy"
    if choice not in ("numba", "python", "numpy"):
        raise ConfigError(f"unknown {BACKEND_ENV_VAR} value {choice!r}")
    if choice not in _IMPLS:
        raise ConfigError(f"backend {choice!r} requested but numba is not importable")
    return choice


def resolve_backend(name: str | None):
    name = name if name is not None else default_backend()
    try:
        return _IMPLS[name]
    except KeyError:
        known = ", ".join(sorted(_IMPLS))
        raise ConfigError(f"unknown backend {name!r} (available: {known})") from None


def _check(buf: SplitComplexBuffer, tw: TwiddleTable, s: int, span: int) -> int:
    if buf.n != tw.n:
        raise ShapeError(f"buffer size {buf.n} does not match twiddle table size {tw.n}")
    L = tw.L
    if not 0 <= s <= L:
        raise StageError(f"stage {s} outside 0..{L}")
    if s + span > L:
        raise StageError(f"a span-{span} pass at stage {s} overflows L={L}")
    return L


def radix2_pass(buf, s, tw, backend=None):
    """One radix-2 DIF stage in place; advances the decomposition by 1."""
    _check(buf, tw, s, 1)
    resolve_backend(backend).radix2(buf.re, buf.im, s, tw.r2_re, tw.r2_im, tw.r2_off)


def radix4_pass(buf, s, tw, backend=None):
    """One radix-4 DIF pass in place; advances by 2 stages."""
    _check(buf, tw, s, 2)
    resolve_backend(backend).radix4(buf.re, buf.im, s, tw.r4_re, tw.r4_im, tw.r4_off)


def radix8_pass(buf, s, tw, backend=None):
    """One radix-8 DIF pass in place; advances by 3 stages."""
    _check(buf, tw, s, 3)
    resolve_backend(backend).radix8(buf.re, buf.im, s, tw.r8_re, tw.r8_im, tw.r8_off)


def fused_block_pass(buf, s, block, tw, backend=None):
    """Final log2(block) stages of each contiguous block-sized chunk.

    Fused blocks are terminal edges: s + log2(block) must equal L exactly.
    """
    if block not in (8, 16, 32):
        raise SizeError(f"fused block size must be 8, 16 or 32, got {block}")
    if block > buf.n:
        raise SizeError(f"block {block} exceeds transform size {buf.n}")
    span = block.bit_length() - 1
    L = _check(buf, tw, s, span)
    if s + span != L:
        raise StageError(
            f"fused block {block} must end the plan: stage {s} + {span} != L={L}"
        )
    resolve_backend(backend).fused(buf.re, buf.im, s, block, tw.r2_re, tw.r2_im, tw.r2_off)


def run_pass(buf, kind, s, tw, backend=None):
    """Dispatch one edge (anything with .span and .is_fused) at stage s."""
    if kind.is_fused:
        fused_block_pass(buf, s, 1 << kind.span, tw, backend)
    elif kind.span == 1:
        radix2_pass(buf, s, tw, backend)
    elif kind.span == 2:
        radix4_pass(buf, s, tw, backend)
    elif kind.span == 3:
        radix8_pass(buf, s, tw, backend)
    else:  # pragma: no cover - no such edge type exists
        raise ConfigError(f"no kernel for edge {kind!r}")


def bit_reversal_permutation(bits: int) -> np.ndarray:
    """Permutation reversing the low ``bits`` bits of each index."""
    n = 1 << bits
    perm = np.zeros(n, dtype=np.int64)
    for i in range(1, n):
        perm[i] = (perm[i >> 1] >> 1) | ((i & 1) << (bits - 1))
    return perm


def output_permutation(spans, n) -> np.ndarray:
    """Index permutation taking DIF output to natural order.

    Every edge decomposes into radix-2 stages, so regardless of the span
    sequence the required reorder is bit reversal on L bits:
    natural[perm[i]] = dif_output[i].
    """
    L = log2_size(n)
    if sum(spans) != L:
        raise ShapeError(f"spans {list(spans)} sum to {sum(spans)}, expected L={L}")
    return bit_reversal_permutation(L)


def reference_dft(buf: SplitComplexBuffer) -> np.ndarray:
    """Direct O(n^2) DFT, X[k] = sum_n x[n] exp(-2j*pi*k*n/N), in float64.

    Independent of every pass implementation; this is the oracle all plans
    are verified against.
    """
    n = buf.n
    x = buf.to_complex()
    out = np.empty(n, dtype=np.complex128)
    cols = np.arange(n, dtype=np.int64)
    rows_per_chunk = max(1, (1 << 20) // n)
    for start in range(0, n, rows_per_chunk):
        k = cols[start : start + rows_per_chunk, None]
        out[start : start + rows_per_chunk] = np.exp((-2j * np.pi / n) * (k * cols)) @ x
    return out
