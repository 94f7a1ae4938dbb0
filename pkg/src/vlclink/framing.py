"""Per-branch physical frame: preamble, orthogonal pilots, CP, pulse shaping.

Symbol layout of every frame (identical for both branches):

    [ preamble | pilot slot 1 | pilot slot 2 | CP | payload ]

Branch 1 transmits its pilot block in slot 1 and is silent in slot 2;
branch 2 does the opposite, so the pilot blocks are time-orthogonal and
least-squares channel estimation reduces to one correlation per entry.
Both branches transmit the same preamble simultaneously.

The symbol stream is up-sampled by `sps` (zero stuffing) and shaped with a
unit-energy root-raised-cosine filter; the receiver applies the matched RRC
so the cascade sampled at symbol spacing is (truncated) raised cosine.
Symbol k of a frame starting at sample index `start` is taken from the
matched-filter output at index `start + (ntaps - 1) + k * sps`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import LengthError, ParameterError, RangeError, SchemeError, SyncNotFound

__all__ = [
    "FrameSpec",
    "FrameLayout",
    "TxFrame",
    "mseq",
    "preamble_symbols",
    "pilot_symbols",
    "rrc_taps",
    "add_cp",
    "remove_cp",
    "build_frame",
    "matched_filter_downsample",
    "synchronize",
    "SYNC_THRESHOLD",
]

SYNC_THRESHOLD = 0.6

# Feedback taps of one primitive polynomial per LFSR degree.
_PRIMITIVE_TAPS = {3: (3, 2), 4: (4, 3), 5: (5, 3), 6: (6, 5), 7: (7, 6)}

# Cyclic shift applied to the preamble m-sequence to derive pilot symbols,
# so pilot blocks do not masquerade as preamble sidelobes during sync.
_PILOT_SHIFT = 17


@dataclass(frozen=True)
class FrameSpec:
    """Frame geometry and pulse-shaping parameters."""

    preamble_len: int = 63
    pilot_len: int = 32
    payload_len: int = 4096
    cp_len: int = 8
    sps: int = 4
    rolloff: float = 0.35
    rrc_span: int = 10

    def __post_init__(self):
        if self.preamble_len not in {(1 << d) - 1 for d in _PRIMITIVE_TAPS}:
            raise ParameterError(f"preamble_len must be 2^d - 1 for d in 3..7, got {self.preamble_len}")
        if self.pilot_len < 4:
            raise ParameterError(f"pilot_len must be >= 4, got {self.pilot_len}")
        if self.payload_len < 1:
            raise ParameterError("payload_len must be >= 1")
        if not 0 <= self.cp_len < self.payload_len:
            raise ParameterError("cp_len must satisfy 0 <= cp_len < payload_len")
        if self.sps < 2:
            raise ParameterError(f"sps must be >= 2, got {self.sps}")
        if not 0.0 < self.rolloff <= 1.0:
            raise ParameterError(f"rolloff must be in (0, 1], got {self.rolloff}")
        if self.rrc_span < 4:
            raise ParameterError(f"rrc_span must be >= 4, got {self.rrc_span}")
        if (self.rrc_span * self.sps) % 2 != 0:
            raise ParameterError("rrc_span * sps must be even so the filter is symmetric")

    @property
    def n_symbols(self) -> int:
        return self.preamble_len + 2 * self.pilot_len + self.cp_len + self.payload_len

    @property
    def ntaps(self) -> int:
        return self.rrc_span * self.sps + 1

    @property
    def n_samples(self) -> int:
        # Full convolution of the zero-stuffed stream with the RRC taps.
        return self.n_symbols * self.sps + self.ntaps - 1

    def layout(self) -> "FrameLayout":
        p = self.preamble_len
        n = self.pilot_len
        return FrameLayout(
            preamble=0,
            pilot1=p,
            pilot2=p + n,
            cp=p + 2 * n,
            payload=p + 2 * n + self.cp_len,
            end=self.n_symbols,
            sps=self.sps,
            ntaps=self.ntaps,
        )


@dataclass(frozen=True)
class FrameLayout:
    """Symbol offsets of each frame segment plus the sample-domain mapping."""

    preamble: int
    pilot1: int
    pilot2: int
    cp: int
    payload: int
    end: int
    sps: int
    ntaps: int

    def mf_sample_of_symbol(self, k: int, start: int = 0) -> int:
        """Matched-filter output index that carries symbol k."""
        return start + self.ntaps - 1 + k * self.sps


@dataclass(frozen=True)
class TxFrame:
    branch_samples: np.ndarray   # (2, n_samples) complex, pulse shaped
    branch_symbols: np.ndarray   # (2, n_symbols) complex, before shaping
    layout: FrameLayout


def mseq(length: int) -> np.ndarray:
    """Maximal-length +-1 sequence from a fixed primitive polynomial.

    Circular autocorrelation is `length` at lag 0 and exactly -1 elsewhere.
    """
    degree = int(math.log2(length + 1))
    if (1 << degree) - 1 != length or degree not in _PRIMITIVE_TAPS:
        raise ParameterError(f"mseq length must be 2^d - 1 for d in 3..7, got {length}")
    taps = _PRIMITIVE_TAPS[degree]
    state = [1] * degree
    bits = []
    for _ in range(length):
        bits.append(state[-1])
        fb = 0
        for t in taps:
            fb ^= state[t - 1]
        state = [fb] + state[:-1]
    return 1.0 - 2.0 * np.array(bits, dtype=np.float64)


@lru_cache(maxsize=None)
def _cached_mseq(length: int) -> np.ndarray:
    return mseq(length)


def preamble_symbols(spec: FrameSpec) -> np.ndarray:
    return _cached_mseq(spec.preamble_len).astype(np.complex128)


def pilot_symbols(spec: FrameSpec) -> np.ndarray:
    """Unit-power BPSK pilots, a cyclic shift of the preamble sequence."""
    base = np.roll(_cached_mseq(spec.preamble_len), -_PILOT_SHIFT)
    reps = -(-spec.pilot_len // base.size)
    return np.tile(base, reps)[: spec.pilot_len].astype(np.complex128)


def rrc_taps(rolloff: float, sps: int, span: int) -> np.ndarray:
    """Unit-energy root-raised-cosine taps, length span*sps + 1, symmetric."""
    if not 0.0 < rolloff <= 1.0:
        raise ParameterError(f"rolloff must be in (0, 1], got {rolloff}")
    if sps < 2:
        raise ParameterError(f"sps must be >= 2, got {sps}")
    if span < 4:
        raise ParameterError(f"span must be >= 4, got {span}")
    n = span * sps
    t = (np.arange(n + 1) - n / 2.0) / sps
    beta = rolloff
    taps = np.empty(t.size)
    singular = np.isclose(np.abs(t), 1.0 / (4.0 * beta), rtol=0.0, atol=1e-12)
    zero = np.isclose(t, 0.0, rtol=0.0, atol=1e-12)
    regular = ~(singular | zero)
    tr = t[regular]
    num = np.sin(np.pi * tr * (1 - beta)) + 4 * beta * tr * np.cos(np.pi * tr * (1 + beta))
    den = np.pi * tr * (1 - (4 * beta * tr) ** 2)
    taps[regular] = num / den
    taps[zero] = 1.0 - beta + 4.0 * beta / np.pi
    if singular.any():
        taps[singular] = (beta / math.sqrt(2.0)) * (
            (1 + 2 / np.pi) * math.sin(np.pi / (4 * beta))
            + (1 - 2 / np.pi) * math.cos(np.pi / (4 * beta))
        )
    return taps / math.sqrt(float(np.sum(taps**2)))


@lru_cache(maxsize=None)
def _cached_taps(rolloff: float, sps: int, span: int) -> np.ndarray:
    return rrc_taps(rolloff, sps, span)


def _spec_taps(spec: FrameSpec) -> np.ndarray:
    return _cached_taps(spec.rolloff, spec.sps, spec.rrc_span)


def add_cp(symbols: np.ndarray, cp_len: int) -> np.ndarray:
    """Prepend the last `cp_len` symbols as a cyclic prefix."""
    symbols = np.asarray(symbols)
    if cp_len < 0 or cp_len >= symbols.size:
        if cp_len == 0:
            return symbols.copy()
        raise LengthError(f"cp_len {cp_len} must be in [0, {symbols.size})")
    if cp_len == 0:
        return symbols.copy()
    return np.concatenate([symbols[-cp_len:], symbols])


def remove_cp(symbols: np.ndarray, cp_len: int) -> np.ndarray:
    """Drop the first `cp_len` symbols; inverse of add_cp."""
    symbols = np.asarray(symbols)
    if cp_len < 0 or cp_len >= symbols.size:
        if cp_len == 0:
            return symbols.copy()
        raise LengthError(f"cp_len {cp_len} must be in [0, {symbols.size})")
    return symbols[cp_len:].copy()


def _upsample_and_shape(symbols: np.ndarray, spec: FrameSpec) -> np.ndarray:
    up = np.zeros(symbols.size * spec.sps, dtype=np.complex128)
    up[:: spec.sps] = symbols
    return np.convolve(up, _spec_taps(spec))


def build_frame(payload_syms: np.ndarray, spec: FrameSpec, scheme: str) -> TxFrame:
    """Assemble and pulse-shape one frame for both branches.

    `payload_syms` has shape (2, payload_len).  Under SD both rows must be
    identical (the caller provides the repetition); under SM they are the two
    independent streams.
    """
    payload_syms = np.asarray(payload_syms, dtype=np.complex128)
    if payload_syms.shape != (2, spec.payload_len):
        raise LengthError(
            f"payload must have shape (2, {spec.payload_len}), got {payload_syms.shape}"
        )
    scheme = scheme.upper()
    if scheme not in ("SM", "SD"):
        raise SchemeError(f"scheme must be 'SM' or 'SD', got {scheme!r}")
    if scheme == "SD" and not np.array_equal(payload_syms[0], payload_syms[1]):
        raise SchemeError("SD requires identical payload symbols on both branches")

    pre = preamble_symbols(spec)
    pilots = pilot_symbols(spec)
    silence = np.zeros(spec.pilot_len, dtype=np.complex128)
    symbols = np.empty((2, spec.n_symbols), dtype=np.complex128)
    for b in range(2):
        blocks = [pre]
        blocks.append(pilots if b == 0 else silence)
        blocks.append(pilots if b == 1 else silence)
        blocks.append(add_cp(payload_syms[b], spec.cp_len))
        symbols[b] = np.concatenate(blocks)

    samples = np.stack([_upsample_and_shape(symbols[b], spec) for b in range(2)])
    return TxFrame(branch_samples=samples, branch_symbols=symbols, layout=spec.layout())


def matched_filter_downsample(
    samples: np.ndarray, spec: FrameSpec, start: int, n_symbols: int | None = None
) -> np.ndarray:
    """RRC matched filter, then decimation at symbol instants after `start`."""
    samples = np.asarray(samples, dtype=np.complex128)
    if samples.ndim != 1:
        raise LengthError("matched_filter_downsample expects a 1-D sample stream")
    if not 0 <= start < max(samples.size, 1):
        raise RangeError(f"start {start} outside stream of {samples.size} samples")
    z = np.convolve(samples, _spec_taps(spec))
    first = start + spec.ntaps - 1
    available = (z.size - 1 - first) // spec.sps + 1 if z.size > first else 0
    if n_symbols is None:
        n_symbols = available
    if n_symbols > available:
        raise RangeError(f"stream holds {available} symbols after start, need {n_symbols}")
    idx = first + spec.sps * np.arange(n_symbols)
    return z[idx]


def _sync_metric(samples: np.ndarray, spec: FrameSpec) -> tuple[int, float]:
    """Best frame-start candidate and its normalised correlation in [0, 1]."""
    samples = np.asarray(samples, dtype=np.complex128)
    pre = preamble_symbols(spec)
    z = np.convolve(samples, _spec_taps(spec))
    # Symbol-spaced template over the matched-filter output.
    tpl = np.zeros((pre.size - 1) * spec.sps + 1, dtype=np.complex128)
    tpl[:: spec.sps] = pre
    if z.size < tpl.size:
        raise RangeError("stream shorter than one preamble")
    # np.correlate(z, tpl)[j] = sum_m z[j+m] conj(tpl[m])
    corr = np.abs(np.correlate(z, tpl))
    ones = np.zeros(tpl.size)
    ones[:: spec.sps] = 1.0
    energy = np.correlate(np.abs(z) ** 2, ones).real
    offset = spec.ntaps - 1
    if corr.size <= offset:
        raise RangeError("stream shorter than one preamble")
    corr = corr[offset:]
    energy = energy[offset:]
    peak = int(np.argmax(corr))
    denom = math.sqrt(max(float(energy[peak]), 1e-300) * pre.size)
    metric = float(corr[peak]) / denom if denom > 0 else 0.0
    return peak, min(metric, 1.0)


def synchronize(samples: np.ndarray, spec: FrameSpec) -> int:
    """Locate the frame start by preamble cross-correlation.

    Returns the sample index of the first preamble symbol.  The peak is
    selected on the raw correlation magnitude; detection requires the
    normalised metric at the peak to exceed SYNC_THRESHOLD, so an input with
    no frame (or a fully blocked link) raises SyncNotFound.
    """
    peak, metric = _sync_metric(samples, spec)
    if metric < SYNC_THRESHOLD:
        raise SyncNotFound(f"best correlation {metric:.3f} below threshold {SYNC_THRESHOLD}")
    return peak
