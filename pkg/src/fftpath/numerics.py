"""Split-complex buffers, twiddle tables, seeded signals, and error metrics.

Working data is 32-bit: signals live in separate float32 real/imaginary
arrays so every pass reads each component at unit stride.  Error metrics are
computed in double precision against double-precision references.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, SizeError

__all__ = [
    "SplitComplexBuffer",
    "TwiddleTable",
    "make_twiddles",
    "init_signal",
    "fill_signal",
    "rel_l2_error",
    "log2_size",
]


def log2_size(n) -> int:
    """Validate n = 2**L with L >= 1 and return L."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise SizeError(f"size must be an integer power of two >= 2, got {n!r}")
    n = int(n)
    if n < 2 or n & (n - 1):
        raise SizeError(f"size must be a power of two >= 2, got {n}")
    return n.bit_length() - 1


@dataclass
class SplitComplexBuffer:
    """Complex signal held as two separate float32 arrays of equal length."""

    re: np.ndarray
    im: np.ndarray

    def __post_init__(self):
        self.re = np.ascontiguousarray(self.re, dtype=np.float32)
        self.im = np.ascontiguousarray(self.im, dtype=np.float32)
        if self.re.ndim != 1 or self.im.ndim != 1 or self.re.size != self.im.size:
            raise ShapeError("re and im must be 1-d arrays of equal length")
        log2_size(self.re.size)

    @property
    def n(self) -> int:
        return self.re.size

    @classmethod
    def from_complex(cls, values) -> "SplitComplexBuffer":
        z = np.asarray(values, dtype=np.complex128)
        return cls(z.real.astype(np.float32), z.imag.astype(np.float32))

    def to_complex(self) -> np.ndarray:
        """Promote to a complex128 vector (for reference math and metrics)."""
        return self.re.astype(np.float64) + 1j * self.im.astype(np.float64)

    def copy(self) -> "SplitComplexBuffer":
        return SplitComplexBuffer(self.re.copy(), self.im.copy())


# SplitMix64: fixed, platform-independent 64-bit generator.  The i-th draw
# depends only on (seed, i), so the whole stream vectorizes.
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK = 0xFFFFFFFFFFFFFFFF


def _splitmix_unit(seed: int, count: int) -> np.ndarray:
    """count SplitMix64 draws mapped to float64 in [-1, 1)."""
    state = np.uint64(seed & _MASK) + np.arange(1, count + 1, dtype=np.uint64) * _GOLDEN
    z = (state ^ (state >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-52 - 1.0


def fill_signal(buf: SplitComplexBuffer, seed: int) -> None:
    """Rewrite buf in place with the deterministic signal for (n, seed)."""
    n = buf.n
    vals = _splitmix_unit(int(seed), 2 * n)
    buf.re[:] = vals[:n]
    buf.im[:] = vals[n:]


def init_signal(n: int, seed: int) -> SplitComplexBuffer:
    """Deterministic pseudo-random signal with both components in [-1, 1].

    The same (n, seed) pair yields a bit-identical buffer on every platform;
    the generator is SplitMix64 with the first n draws filling re and the
    next n filling im.
    """
    log2_size(n)
    buf = SplitComplexBuffer(np.empty(n, np.float32), np.empty(n, np.float32))
    fill_signal(buf, seed)
    return buf


def _roots(numerators: np.ndarray, den: int) -> tuple[np.ndarray, np.ndarray]:
    """exp(-2j*pi*k/den) for k in numerators, exact on the real/imag axes."""
    k = np.asarray(numerators, dtype=np.int64) % den
    theta = (-2.0 * np.pi / den) * k
    re = np.cos(theta)
    im = np.sin(theta)
    quad, rem = np.divmod(4 * k, den)
    axis = rem == 0
    re[axis] = np.array([1.0, 0.0, -1.0, 0.0])[quad[axis]]
    im[axis] = np.array([0.0, -1.0, 0.0, 1.0])[quad[axis]]
    return re, im


@dataclass
class TwiddleTable:
    """Roots of unity for every pass start stage, in unit-stride layout.

    For a transform of size n = 2**L, the sub-transform size at stage s is
    m = n >> s.  Three concatenated table families cover all passes:

    - r2: per stage s in [0, L): W_m^j for j in [0, m/2).  Also feeds the
      fused terminal blocks, whose inner stages are exactly the radix-2
      stages s..L-1.
    - r4: per stage s in [0, L-1): three blocks W_m^j, W_m^(2j), W_m^(3j),
      each of length m/4.
    - r8: per stage s in [0, L-2): seven blocks W_m^(k*j) for k = 1..7,
      each of length m/8.

    Offset arrays have L+1 entries; segment s occupies [off[s], off[s+1]).
    """

    n: int
    L: int
    r2_re: np.ndarray
    r2_im: np.ndarray
    r2_off: np.ndarray
    r4_re: np.ndarray
    r4_im: np.ndarray
    r4_off: np.ndarray
    r8_re: np.ndarray
    r8_im: np.ndarray
    r8_off: np.ndarray

    def radix2_stage(self, s: int) -> tuple[np.ndarray, np.ndarray]:
        """Views of the W_m^j entries consumed by the radix-2 pass at s."""
        lo, hi = self.r2_off[s], self.r2_off[s + 1]
        return self.r2_re[lo:hi], self.r2_im[lo:hi]

    def all_entries(self) -> tuple[np.ndarray, np.ndarray]:
        re = np.concatenate([self.r2_re, self.r4_re, self.r8_re])
        im = np.concatenate([self.r2_im, self.r4_im, self.r8_im])
        return re, im


def _segment(families: list[tuple[np.ndarray, int]]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    res, ims, offs = [], [], [0]
    for numerators, den in families:
        re, im = _roots(numerators, den)
        res.append(re)
        ims.append(im)
        offs.append(offs[-1] + re.size)
    re = np.concatenate(res).astype(np.float32) if res else np.zeros(0, np.float32)
    im = np.concatenate(ims).astype(np.float32) if ims else np.zeros(0, np.float32)
    return re, im, np.asarray(offs, dtype=np.int64)


def make_twiddles(n: int) -> TwiddleTable:
    """Precompute every root of unity any radix-2/4/8 or fused pass needs.

    Forward convention: W_N^k = exp(-2j*pi*k/N).  Pure function: identical
    n yields identical tables.
    """
    L = log2_size(n)

    r2_fams = [(np.arange((n >> s) >> 1), n >> s) for s in range(L)]

    r4_parts: list[tuple[np.ndarray, int]] = []
    r4_off = [0]
    for s in range(L):
        m = n >> s
        if s + 2 <= L:
            j = np.arange(m >> 2)
            block = np.concatenate([j, 2 * j, 3 * j])
            r4_parts.append((block, m))
            r4_off.append(r4_off[-1] + block.size)
        else:
            r4_off.append(r4_off[-1])

    r8_parts: list[tuple[np.ndarray, int]] = []
    r8_off = [0]
    for s in range(L):
        m = n >> s
        if s + 3 <= L:
            j = np.arange(m >> 3)
            block = np.concatenate([k * j for k in range(1, 8)])
            r8_parts.append((block, m))
            r8_off.append(r8_off[-1] + block.size)
        else:
            r8_off.append(r8_off[-1])

    r2_re, r2_im, r2_off = _segment(r2_fams)
    r4_re, r4_im, _ = _segment(r4_parts)
    r8_re, r8_im, _ = _segment(r8_parts)
    return TwiddleTable(
        n=n,
        L=L,
        r2_re=r2_re,
        r2_im=r2_im,
        r2_off=r2_off,
        r4_re=r4_re,
        r4_im=r4_im,
        r4_off=np.asarray(r4_off, dtype=np.int64),
        r8_re=r8_re,
        r8_im=r8_im,
        r8_off=np.asarray(r8_off, dtype=np.int64),
    )


def rel_l2_error(a: SplitComplexBuffer, b) -> float:
    """||a - b||_2 / ||b||_2 with both sides treated as complex vectors.

    Computed entirely in double precision.  Returns 0.0 when both vectors
    are zero and +inf when only b is.
    """
    bz = np.asarray(b, dtype=np.complex128)
    if bz.shape != (a.n,):
        raise ShapeError(f"length mismatch: buffer has {a.n}, reference has {bz.shape}")
    num = float(np.linalg.norm(a.to_complex() - bz))
    den = float(np.linalg.norm(bz))
    if den == 0.0:
        return 0.0 if num == 0.0 else math.inf
    return num / den
