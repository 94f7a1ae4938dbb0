"""Experiment orchestration: config parsing, calibration, and the sweeps.

Transmit-power convention of the simulated chain: frames are built from
unit-reference symbols (unit-average-energy payload, unit-power pilots) and
the per-branch amplitude sqrt(p_total/2) is folded into the channel matrix
handed to `apply_channel`, with noise density fixed at n0 = 1.  The receiver
therefore sees an effective matrix that already contains the transmit
amplitude and evaluates its SNR formulas with p_total = 2 (unit symbol energy
per branch).  `snr_db` in a config means 10 log10(p_total / n0).

Config files are line-oriented `key = value` text with `#` comments.  The key
list is documented in the README; unknown keys are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import IO

import numpy as np

from .adapt import (
    AdaptPolicy,
    ControllerState,
    Mode,
    controller_step,
    new_controller,
    parse_mode,
    predicted_ber,
)
from .channel import ChannelState, Geometry, Obstacle, apply_channel, channel_matrix
from .errors import (
    BadCode,
    CalibrationImpossible,
    ParameterError,
    ParseError,
    SingularMatrix,
    SyncNotFound,
    ValidationError,
)
from .framing import (
    FrameSpec,
    SYNC_THRESHOLD,
    _sync_metric,
    build_frame,
    matched_filter_downsample,
    pilot_symbols,
    remove_cp,
)
from .metrics import LinkReport, error_free_efficiency, write_report_block
from .modem import qam_demap, qam_map
from .numerics import make_rng
from .receiver import ChannelEstimate, combine_sd_mrc, detect_sm_zf, estimate_channel, stream_snrs

__all__ = [
    "ScenarioConfig",
    "parse_config",
    "load_config",
    "calibrate",
    "run_blockage_sweep",
    "run_position",
    "run_ber_sweep",
    "BlockageSweepResult",
    "BerSweepRow",
    "write_blockage_csv",
    "write_ber_csv",
]

SETTLING_FRAMES = 2
N0 = 1.0             # noise variance per complex sample in the simulated chain
P_TOTAL_REF = 2.0    # receiver-side power argument under the folded-amplitude convention
LEAD_PAD = 257       # noise-only samples before each frame, so sync is exercised
TAIL_PAD = 63
_MAX_FRAMES_PER_POSITION = 256

_ROLE_BITS = 11
_ROLE_NOISE = 12
_BER_SWEEP_TAG = 0xB5


@dataclass(frozen=True)
class ScenarioConfig:
    led_sep: float = 5.0
    pd_sep: float = 5.0
    link_len: float = 218.0
    obstacle_diam: float = 4.5
    obstacle_z: float = 109.0
    lambert_m: float = 20000.0
    rx_area: float = 1.0
    fov_deg: float = 60.0
    beam_radius: float = 5.0

    preamble_len: int = 63
    pilot_len: int = 32
    payload_len: int = 4096
    cp_len: int = 8
    sps: int = 4
    rolloff: float = 0.35
    rrc_span: int = 10

    ber_tgt: float = 1e-3
    margin_db: float = 0.0
    initial: str = "SM-64"
    fallback: str = "SD-4"

    positions_start: float = -65.0
    positions_step: float = 5.0
    positions_stop: float = 65.0
    frames_per_position: int = 4
    payload_bits: int = 100_000

    snr_db: float | None = None
    calibrate_margin_db: float = 1.0
    base_seed: int = 1

    bersweep_snr_start: float = 8.0
    bersweep_snr_step: float = 2.0
    bersweep_snr_stop: float = 34.0
    bersweep_max_bits: int = 400_000
    bersweep_min_errors: int = 100

    def geometry(self, obstacle_x: float | None = None) -> Geometry:
        obstacle = None
        if obstacle_x is not None:
            obstacle = Obstacle(diameter_cm=self.obstacle_diam, z_cm=self.obstacle_z, x_cm=obstacle_x)
        return Geometry.from_separations(
            led_sep=self.led_sep,
            pd_sep=self.pd_sep,
            link_len=self.link_len,
            obstacle=obstacle,
            lambert_m=self.lambert_m,
            rx_area_cm2=self.rx_area,
            fov_deg=self.fov_deg,
            beam_radius_cm=self.beam_radius,
        )

    def frame_spec(self) -> FrameSpec:
        return FrameSpec(
            preamble_len=self.preamble_len,
            pilot_len=self.pilot_len,
            payload_len=self.payload_len,
            cp_len=self.cp_len,
            sps=self.sps,
            rolloff=self.rolloff,
            rrc_span=self.rrc_span,
        )

    def policy(self) -> AdaptPolicy:
        return AdaptPolicy(
            ber_tgt=self.ber_tgt,
            margin_db=self.margin_db,
            initial=parse_mode(self.initial),
            fallback=parse_mode(self.fallback),
        )

    def positions(self) -> np.ndarray:
        return np.arange(
            self.positions_start,
            self.positions_stop + self.positions_step / 2.0,
            self.positions_step,
        )


# key -> (attribute, type, validator, description)
_KEYS: dict[str, tuple[str, type, str]] = {
    "geometry.led_sep": ("led_sep", float, "positive"),
    "geometry.pd_sep": ("pd_sep", float, "positive"),
    "geometry.link_len": ("link_len", float, "positive"),
    "geometry.obstacle_diam": ("obstacle_diam", float, "positive"),
    "geometry.obstacle_z": ("obstacle_z", float, "positive"),
    "geometry.lambert_m": ("lambert_m", float, "positive"),
    "geometry.rx_area": ("rx_area", float, "positive"),
    "geometry.fov_deg": ("fov_deg", float, "fov"),
    "geometry.beam_radius": ("beam_radius", float, "nonneg"),
    "frame.preamble_len": ("preamble_len", int, "positive"),
    "frame.pilot_len": ("pilot_len", int, "pilot"),
    "frame.payload_len": ("payload_len", int, "positive"),
    "frame.cp_len": ("cp_len", int, "nonneg"),
    "frame.sps": ("sps", int, "sps"),
    "frame.rolloff": ("rolloff", float, "rolloff"),
    "frame.rrc_span": ("rrc_span", int, "span"),
    "policy.ber_tgt": ("ber_tgt", float, "ber_tgt"),
    "policy.margin_db": ("margin_db", float, "nonneg"),
    "policy.initial": ("initial", str, "mode"),
    "policy.fallback": ("fallback", str, "mode"),
    "sweep.positions.start": ("positions_start", float, "any"),
    "sweep.positions.step": ("positions_step", float, "positive"),
    "sweep.positions.stop": ("positions_stop", float, "any"),
    "sweep.frames_per_position": ("frames_per_position", int, "frames"),
    "sweep.payload_bits": ("payload_bits", int, "positive"),
    "snr_db": ("snr_db", float, "any"),
    "calibrate.margin_db": ("calibrate_margin_db", float, "any"),
    "base_seed": ("base_seed", int, "nonneg"),
    "bersweep.snr_start": ("bersweep_snr_start", float, "any"),
    "bersweep.snr_step": ("bersweep_snr_step", float, "positive"),
    "bersweep.snr_stop": ("bersweep_snr_stop", float, "any"),
    "bersweep.max_bits": ("bersweep_max_bits", int, "positive"),
    "bersweep.min_errors": ("bersweep_min_errors", int, "positive"),
}


def _build_aliases() -> dict[str, str]:
    counts: dict[str, list[str]] = {}
    for key in _KEYS:
        parts = key.split(".")
        for i in range(1, len(parts)):
            short = ".".join(parts[i:])
            counts.setdefault(short, []).append(key)
    return {short: owners[0] for short, owners in counts.items() if len(owners) == 1}


_ALIASES = _build_aliases()


def _check_range(key: str, rule: str, value) -> None:
    ok = True
    if rule == "positive":
        ok = value > 0
    elif rule == "nonneg":
        ok = value >= 0
    elif rule == "fov":
        ok = 0 < value <= 90
    elif rule == "rolloff":
        ok = 0 < value <= 1
    elif rule == "ber_tgt":
        ok = 0 < value < 0.5
    elif rule == "sps":
        ok = value >= 2
    elif rule == "span":
        ok = value >= 4
    elif rule == "pilot":
        ok = value >= 4
    elif rule == "frames":
        ok = value >= 3
    elif rule == "mode":
        try:
            parse_mode(value)
        except BadCode:
            ok = False
    if not ok:
        raise ValidationError(key, f"value {value!r} out of range")


def parse_config(text: str) -> ScenarioConfig:
    """Parse `key = value` config text into a fully validated ScenarioConfig."""
    values: dict[str, object] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(line_no, f"expected key=value, got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ParseError(line_no, "empty key or value")
        canonical = key if key in _KEYS else _ALIASES.get(key)
        if canonical is None:
            raise ValidationError(key, "unknown key")
        attr, typ, rule = _KEYS[canonical]
        try:
            parsed: object = typ(value) if typ is not str else value
        except ValueError:
            raise ValidationError(canonical, f"cannot parse {value!r} as {typ.__name__}") from None
        _check_range(canonical, rule, parsed)
        values[attr] = parsed
    cfg = ScenarioConfig(**values)
    _cross_validate(cfg)
    return cfg


def _cross_validate(cfg: ScenarioConfig) -> None:
    if not 0 < cfg.obstacle_z < cfg.link_len:
        raise ValidationError("geometry.obstacle_z", "must lie strictly inside the link")
    if cfg.positions_start > cfg.positions_stop:
        raise ValidationError("sweep.positions.start", "start must be <= stop")
    if cfg.cp_len >= cfg.payload_len:
        raise ValidationError("frame.cp_len", "must be smaller than payload_len")
    if cfg.bersweep_snr_start > cfg.bersweep_snr_stop:
        raise ValidationError("bersweep.snr_start", "start must be <= stop")
    try:
        cfg.frame_spec()
        cfg.geometry(obstacle_x=0.0)
        cfg.policy()
    except ParameterError as exc:
        raise ValidationError("config", str(exc)) from None


def load_config(path) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def _true_estimate(h: np.ndarray) -> ChannelEstimate:
    return ChannelEstimate(h_hat=np.asarray(h, dtype=np.complex128), pilot_len=0, residual_rms=0.0)


def calibrate(config: ScenarioConfig) -> float:
    """Smallest p_total/n0 at which SM-256 meets the BER target, plus margin.

    Evaluated on the unobstructed channel with exact channel knowledge; the
    result is the linear transmit SNR used by the sweeps when `snr_db` is not
    set explicitly.
    """
    h, _ = channel_matrix(config.geometry(obstacle_x=None))
    est = _true_estimate(h)
    mode = Mode("SM", 256)

    def feasible(p_lin: float) -> bool:
        try:
            snrs = stream_snrs(est, p_lin, N0, "SM")
        except SingularMatrix:
            return False
        return predicted_ber(mode, snrs) <= config.ber_tgt

    lo_db, hi_db = -20.0, 120.0
    if not feasible(10.0 ** (hi_db / 10.0)):
        raise CalibrationImpossible("SM-256 infeasible even at 120 dB transmit SNR")
    if feasible(10.0 ** (lo_db / 10.0)):
        hi_db = lo_db
    for _ in range(80):
        mid = 0.5 * (lo_db + hi_db)
        if feasible(10.0 ** (mid / 10.0)):
            hi_db = mid
        else:
            lo_db = mid
    return 10.0 ** ((hi_db + config.calibrate_margin_db) / 10.0)


def _transmit_p_total(config: ScenarioConfig) -> float:
    if config.snr_db is not None:
        return 10.0 ** (config.snr_db / 10.0)
    return calibrate(config)


@dataclass
class FrameResult:
    mode: Mode
    bits: int
    errors: int
    est: ChannelEstimate
    sm_snrs: tuple[float, ...] | None
    sd_snr: float
    err_power: float
    ref_power: float
    sync_index: int
    detected: np.ndarray   # payload symbols after ZF / MRC, one row per stream


def _frame_seeds(pos_seed: int, frame_idx: int) -> tuple[np.random.Generator, np.random.Generator]:
    bits_rng = make_rng(np.random.SeedSequence((pos_seed, frame_idx, _ROLE_BITS)))
    noise_rng = make_rng(np.random.SeedSequence((pos_seed, frame_idx, _ROLE_NOISE)))
    return bits_rng, noise_rng


def _run_frame(
    mode: Mode,
    h_eff: np.ndarray,
    spec: FrameSpec,
    bits_rng: np.random.Generator,
    noise_rng: np.random.Generator,
) -> FrameResult:
    """One frame through the whole chain: build, channel, sync, estimate, detect."""
    n_bits = mode.bits_per_symbol * spec.payload_len
    if mode.scheme == "SM":
        tx_bits = bits_rng.integers(0, 2, size=2 * n_bits)
        payload = np.stack(
            [qam_map(tx_bits[:n_bits], mode.order), qam_map(tx_bits[n_bits:], mode.order)]
        )
    else:
        tx_bits = bits_rng.integers(0, 2, size=n_bits)
        row = qam_map(tx_bits, mode.order)
        payload = np.stack([row, row])

    frame = build_frame(payload, spec, mode.scheme)
    lead = np.zeros((2, LEAD_PAD), dtype=np.complex128)
    tail = np.zeros((2, TAIL_PAD), dtype=np.complex128)
    tx = np.concatenate([lead, frame.branch_samples, tail], axis=1)
    rx = apply_channel(tx, ChannelState(h=h_eff, n0=N0), noise_rng, sps=spec.sps)

    idx0, m0 = _sync_metric(rx[0], spec)
    idx1, m1 = _sync_metric(rx[1], spec)
    if max(m0, m1) < SYNC_THRESHOLD:
        raise SyncNotFound(f"no preamble found (metrics {m0:.3f}, {m1:.3f})")
    start = idx0 if m0 >= m1 else idx1

    symbols = np.stack(
        [matched_filter_downsample(rx[j], spec, start, spec.n_symbols) for j in range(2)]
    )
    lay = frame.layout
    n_p = spec.pilot_len
    segments = symbols[:, lay.pilot1 : lay.pilot1 + 2 * n_p].reshape(2, 2, n_p)
    est = estimate_channel(segments, pilot_symbols(spec))

    with_cp = symbols[:, lay.cp : lay.end]
    rx_payload = np.stack([remove_cp(with_cp[j], spec.cp_len) for j in range(2)])

    if mode.scheme == "SM":
        detected = detect_sm_zf(rx_payload, est)
        rx_bits = np.concatenate(
            [qam_demap(detected[0], mode.order), qam_demap(detected[1], mode.order)]
        )
        err_power = float(np.sum(np.abs(detected - payload) ** 2))
        ref_power = float(np.sum(np.abs(payload) ** 2))
    else:
        combined = combine_sd_mrc(rx_payload, est)
        detected = combined[None, :]
        rx_bits = qam_demap(combined, mode.order)
        err_power = float(np.sum(np.abs(combined - payload[0]) ** 2))
        ref_power = float(np.sum(np.abs(payload[0]) ** 2))

    errors = int(np.count_nonzero(tx_bits != rx_bits))
    try:
        sm = stream_snrs(est, P_TOTAL_REF, N0, "SM").snr
    except SingularMatrix:
        sm = None
    sd = stream_snrs(est, P_TOTAL_REF, N0, "SD").snr[0]

    return FrameResult(
        mode=mode,
        bits=tx_bits.size,
        errors=errors,
        est=est,
        sm_snrs=sm,
        sd_snr=sd,
        err_power=err_power,
        ref_power=ref_power,
        sync_index=start,
        detected=detected,
    )


def _simulate_position(
    config: ScenarioConfig,
    h_norm: np.ndarray,
    p_total: float,
    position_cm: float,
    pos_seed: int,
    fixed_mode: Mode | None,
) -> LinkReport:
    """Run frames at one obstacle position; fixed mode or adaptive when None.

    The first SETTLING_FRAMES frames are transmitted but excluded from the
    report; measurement then continues until both the frames_per_position
    budget and the payload_bits budget are met.
    """
    spec = config.frame_spec()
    policy = config.policy()
    h_eff = math.sqrt(p_total / 2.0) * h_norm
    state: ControllerState | None = new_controller(policy) if fixed_mode is None else None

    min_measured = config.frames_per_position - SETTLING_FRAMES
    measured_frames = 0
    bits_total = 0
    errors_total = 0
    err_power = 0.0
    ref_power = 0.0
    snr_records: list[tuple[str, tuple[float, ...]]] = []
    last_mode: Mode | None = None

    frame_idx = 0
    while True:
        mode = state.pending if state is not None else fixed_mode
        bits_rng, noise_rng = _frame_seeds(pos_seed, frame_idx)
        result = _run_frame(mode, h_eff, spec, bits_rng, noise_rng)
        if state is not None:
            controller_step(state, result.est, P_TOTAL_REF, N0, policy)
        if frame_idx >= SETTLING_FRAMES:
            measured_frames += 1
            bits_total += result.bits
            errors_total += result.errors
            err_power += result.err_power
            ref_power += result.ref_power
            last_mode = mode
            if mode.scheme == "SM" and result.sm_snrs is not None:
                snr_records.append(("SM", result.sm_snrs))
            elif mode.scheme == "SD":
                snr_records.append(("SD", (result.sd_snr,)))
        frame_idx += 1
        if measured_frames >= min_measured and bits_total >= config.payload_bits:
            break
        if frame_idx > _MAX_FRAMES_PER_POSITION:
            raise RuntimeError(f"position {position_cm}: frame budget exhausted")

    ber = errors_total / bits_total
    matching = [snr for scheme, snr in snr_records if scheme == last_mode.scheme]
    if matching:
        mean_lin = np.mean(np.asarray(matching), axis=0)
        snrs_db = tuple(10.0 * math.log10(v) for v in mean_lin)
    else:
        snrs_db = ()
    return LinkReport(
        position_cm=position_cm,
        mode=last_mode,
        bits_sent=bits_total,
        bit_errors=errors_total,
        ber=ber,
        eff_bshz=error_free_efficiency(last_mode, ber, policy.ber_tgt),
        snrs_db=snrs_db,
        evm=math.sqrt(err_power / ref_power) if ref_power > 0 else 0.0,
    )


@dataclass
class BlockageSweepResult:
    positions: np.ndarray
    adaptive: list[LinkReport]
    fixed_sm64: list[LinkReport]
    fixed_sd64: list[LinkReport]
    averages: dict[str, float]
    p_total: float

    def average(self, which: str) -> float:
        return self.averages[which]


def run_position(
    config: ScenarioConfig, index: int, p_total: float | None = None
) -> tuple[LinkReport, LinkReport, LinkReport]:
    """Reports (adaptive, fixed SM-64, fixed SD-64) for one sweep position.

    Seeded per position, so any single position reproduces its sweep rows
    bit-exactly without running the others.
    """
    positions = config.positions()
    if not 0 <= index < positions.size:
        raise ParameterError(f"position index {index} outside sweep of {positions.size}")
    if p_total is None:
        p_total = _transmit_p_total(config)
    x = float(positions[index])
    h_norm, _ = channel_matrix(config.geometry(obstacle_x=x))
    pos_seed = config.base_seed + index
    adaptive = _simulate_position(config, h_norm, p_total, x, pos_seed, None)
    sm64 = _simulate_position(config, h_norm, p_total, x, pos_seed, Mode("SM", 64))
    sd64 = _simulate_position(config, h_norm, p_total, x, pos_seed, Mode("SD", 64))
    return adaptive, sm64, sd64


def run_blockage_sweep(config: ScenarioConfig) -> BlockageSweepResult:
    """Sweep the obstacle across the link, adaptive plus both fixed baselines.

    All three runs at a position share per-frame noise seeds, so the baseline
    comparison sees identical noise realisations.
    """
    p_total = _transmit_p_total(config)
    positions = config.positions()
    adaptive: list[LinkReport] = []
    fixed_sm64: list[LinkReport] = []
    fixed_sd64: list[LinkReport] = []
    for index in range(positions.size):
        rep_a, rep_m, rep_d = run_position(config, index, p_total=p_total)
        adaptive.append(rep_a)
        fixed_sm64.append(rep_m)
        fixed_sd64.append(rep_d)
    averages = {
        "adaptive": float(np.mean([r.eff_bshz for r in adaptive])),
        "fixed_sm64": float(np.mean([r.eff_bshz for r in fixed_sm64])),
        "fixed_sd64": float(np.mean([r.eff_bshz for r in fixed_sd64])),
    }
    return BlockageSweepResult(
        positions=positions,
        adaptive=adaptive,
        fixed_sm64=fixed_sm64,
        fixed_sd64=fixed_sd64,
        averages=averages,
        p_total=p_total,
    )


def write_blockage_csv(result: BlockageSweepResult, fh: IO[str]) -> None:
    write_report_block(result.adaptive, fh, label="adaptive")
    fh.write("\n")
    write_report_block(result.fixed_sm64, fh, label="fixed-sm64")
    fh.write("\n")
    write_report_block(result.fixed_sd64, fh, label="fixed-sd64")
    fh.write("\n")
    fh.write(
        "# average_eff_bshz adaptive={:.6f} fixed_sm64={:.6f} fixed_sd64={:.6f}\n".format(
            result.averages["adaptive"],
            result.averages["fixed_sm64"],
            result.averages["fixed_sd64"],
        )
    )
    fh.write(f"# p_total_db={10.0 * math.log10(result.p_total):.6f}\n")


@dataclass(frozen=True)
class BerSweepRow:
    scheme: str
    order: int
    snr_db: float
    ber_mc: float
    ber_theory: float
    bits: int
    errors: int
    eff_bshz: float


def measure_mode_ber(
    config: ScenarioConfig,
    mode: Mode,
    p_total: float,
    seed_tuple: tuple[int, ...],
    min_errors: int,
    max_bits: int,
) -> tuple[int, int]:
    """Monte-Carlo (errors, bits) for one fixed mode through the full chain."""
    spec = config.frame_spec()
    h_norm, _ = channel_matrix(config.geometry(obstacle_x=None))
    h_eff = math.sqrt(p_total / 2.0) * h_norm
    errors = 0
    bits = 0
    frame_idx = 0
    while bits == 0 or (errors < min_errors and bits < max_bits):
        bits_rng = make_rng(np.random.SeedSequence(seed_tuple + (frame_idx, _ROLE_BITS)))
        noise_rng = make_rng(np.random.SeedSequence(seed_tuple + (frame_idx, _ROLE_NOISE)))
        result = _run_frame(mode, h_eff, spec, bits_rng, noise_rng)
        errors += result.errors
        bits += result.bits
        frame_idx += 1
    return errors, bits


def run_ber_sweep(config: ScenarioConfig) -> list[BerSweepRow]:
    """Monte-Carlo BER against theory over the configured SNR grid.

    Runs every (scheme, order) pair through the full chain on the
    unobstructed channel; the theory column evaluates the BER prediction at
    the SNRs implied by the true channel matrix.
    """
    h_norm, _ = channel_matrix(config.geometry(obstacle_x=None))
    est_true = _true_estimate(h_norm)
    grid = np.arange(
        config.bersweep_snr_start,
        config.bersweep_snr_stop + config.bersweep_snr_step / 2.0,
        config.bersweep_snr_step,
    )
    rows: list[BerSweepRow] = []
    curves = list(product(("SD", "SM"), (4, 16, 64, 256)))
    for curve_idx, (scheme, order) in enumerate(curves):
        mode = Mode(scheme, order)
        for point_idx, snr_db in enumerate(grid):
            p_total = 10.0 ** (snr_db / 10.0)
            errors, bits = measure_mode_ber(
                config,
                mode,
                p_total,
                (config.base_seed, _BER_SWEEP_TAG, curve_idx, point_idx),
                config.bersweep_min_errors,
                config.bersweep_max_bits,
            )
            snrs = stream_snrs(est_true, p_total, N0, scheme)
            theory = predicted_ber(mode, snrs)
            rows.append(
                BerSweepRow(
                    scheme=scheme,
                    order=order,
                    snr_db=float(snr_db),
                    ber_mc=errors / bits,
                    ber_theory=theory,
                    bits=bits,
                    errors=errors,
                    eff_bshz=mode.efficiency,
                )
            )
    return rows


def write_ber_csv(rows: list[BerSweepRow], fh: IO[str]) -> None:
    fh.write("scheme,order,snr_db,ber_mc,ber_theory,bits,errors,eff_bshz\n")
    for r in rows:
        fh.write(
            f"{r.scheme},{r.order},{r.snr_db:.2f},{r.ber_mc:.6e},{r.ber_theory:.6e},"
            f"{r.bits},{r.errors},{r.eff_bshz:g}\n"
        )
