"""Link adaptation: the 8-mode table, BER-constrained selection, 3-bit codes,
and the one-frame-delayed feedback controller.

Wire code table (normative for dumps and feedback):

    0 SD-4    1 SD-16   2 SD-64   3 SD-256
    4 SM-4    5 SM-16   6 SM-64   7 SM-256
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadCode, ParameterError, SchemeMismatch
from .modem import ber_theoretical
from .receiver import ChannelEstimate, StreamSnrs, stream_snrs
from .numerics import SingularMatrix

__all__ = [
    "Mode",
    "MODES",
    "AdaptPolicy",
    "ControllerState",
    "new_controller",
    "predicted_ber",
    "select_mode",
    "encode_mode",
    "decode_mode",
    "parse_mode",
    "controller_step",
]


@dataclass(frozen=True)
class Mode:
    scheme: str   # "SM" or "SD"
    order: int    # 4, 16, 64 or 256

    def __post_init__(self):
        if self.scheme not in ("SM", "SD") or self.order not in (4, 16, 64, 256):
            raise BadCode(f"no such mode: {self.scheme}-{self.order}")

    @property
    def streams(self) -> int:
        return 2 if self.scheme == "SM" else 1

    @property
    def bits_per_symbol(self) -> int:
        return int(math.log2(self.order))

    @property
    def efficiency(self) -> float:
        """Spectral efficiency in b/s/Hz: log2(M) doubled under SM."""
        return float(self.streams * self.bits_per_symbol)

    @property
    def name(self) -> str:
        return f"{self.scheme}-{self.order}"


MODES: tuple[Mode, ...] = tuple(
    Mode(scheme, order) for scheme in ("SD", "SM") for order in (4, 16, 64, 256)
)
_CODE_BY_MODE = {mode: code for code, mode in enumerate(MODES)}


def encode_mode(mode: Mode) -> int:
    """3-bit wire code of a mode."""
    try:
        return _CODE_BY_MODE[mode]
    except KeyError:
        raise BadCode(f"unknown mode {mode!r}") from None


def decode_mode(code: int) -> Mode:
    if not 0 <= code <= 7:
        raise BadCode(f"mode code must be in [0, 7], got {code}")
    return MODES[code]


def parse_mode(name: str) -> Mode:
    try:
        scheme, order = name.strip().upper().split("-")
        return Mode(scheme, int(order))
    except (ValueError, BadCode):
        raise BadCode(f"cannot parse mode name {name!r}") from None


@dataclass(frozen=True)
class AdaptPolicy:
    ber_tgt: float = 1e-3
    margin_db: float = 0.0
    initial: Mode = Mode("SM", 64)
    fallback: Mode = Mode("SD", 4)

    def __post_init__(self):
        if not 0.0 < self.ber_tgt < 0.5:
            raise ParameterError(f"ber_tgt must be in (0, 0.5), got {self.ber_tgt}")
        if self.margin_db < 0.0:
            raise ParameterError("margin_db must be >= 0")


def predicted_ber(mode: Mode, snrs: StreamSnrs) -> float:
    """BER prediction for one mode from per-stream SNRs.

    SD uses the single combined SNR directly; SM averages the two stream BERs
    because the payload is split equally across streams.
    """
    if snrs.scheme != mode.scheme:
        raise SchemeMismatch(f"mode {mode.name} given {snrs.scheme} SNRs")
    bers = [ber_theoretical(mode.order, s) for s in snrs.snr]
    return float(np.mean(bers))


def select_mode(sm_snrs: StreamSnrs | None, sd_snrs: StreamSnrs, policy: AdaptPolicy) -> Mode:
    """Highest-efficiency mode whose predicted BER meets the target.

    SM modes are skipped when `sm_snrs` is None (rank-deficient estimate).
    Ties on efficiency resolve toward lower predicted BER, then toward SD.
    Falls back to `policy.fallback` when nothing qualifies.
    """
    sd = sd_snrs.derated(policy.margin_db)
    sm = sm_snrs.derated(policy.margin_db) if sm_snrs is not None else None
    best: tuple[float, float, int] | None = None
    best_mode: Mode | None = None
    for mode in MODES:
        snrs = sm if mode.scheme == "SM" else sd
        if snrs is None:
            continue
        ber = predicted_ber(mode, snrs)
        if ber > policy.ber_tgt:
            continue
        rank = (mode.efficiency, -ber, 1 if mode.scheme == "SD" else 0)
        if best is None or rank > best:
            best = rank
            best_mode = mode
    return best_mode if best_mode is not None else policy.fallback


@dataclass
class ControllerState:
    """Single-owner feedback state; the pending mode takes effect next frame."""

    current: Mode | None
    pending: Mode
    frame_index: int = 0
    history: list[tuple[int, Mode, float]] = field(default_factory=list)


def new_controller(policy: AdaptPolicy) -> ControllerState:
    return ControllerState(current=None, pending=policy.initial)


def controller_step(
    state: ControllerState,
    est: ChannelEstimate,
    p_total: float,
    n0: float,
    policy: AdaptPolicy,
) -> Mode:
    """Advance the controller by one received frame.

    The frame just received was transmitted in `state.pending` (the mode fed
    back one frame earlier), so that mode is applied now; the estimate from
    this frame drives the selection that becomes pending for the next frame.
    Returns the mode applied to the frame just received.
    """
    applied = state.pending
    try:
        sm = stream_snrs(est, p_total, n0, "SM")
    except SingularMatrix:
        sm = None
    sd = stream_snrs(est, p_total, n0, "SD")
    selected = select_mode(sm, sd, policy)
    chosen_snrs = sm if selected.scheme == "SM" else sd
    prediction = predicted_ber(selected, chosen_snrs.derated(policy.margin_db))
    state.history.append((state.frame_index, selected, prediction))
    state.current = applied
    state.pending = selected
    state.frame_index += 1
    return applied
