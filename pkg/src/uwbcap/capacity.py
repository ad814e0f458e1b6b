"""IR-UWB channel-capacity models and their analytic companions.

The symbol period of an impulse-radio UWB link over a multipath channel is
the pulse duration plus the RMS channel delay spread: spacing symbols any
tighter lets echoes of one symbol land inside the next.  Capacity is that
symbol rate times the bits carried per symbol, and the implementation
models differ only in which hardware parameter sets the pulse-duration
term:

* ``ideal_capacity``          -- the pulse itself (1/bandwidth), with the
                                 Shannon log term for amplitude resolution
* ``binary_capacity``         -- the pulse itself, one bit per symbol
* ``mostly_digital_capacity`` -- the data converters: n_sampling / F_s
* ``mixed_capacity``          -- the slowest analog stage: 1 / F_circuit

Whatever the model, capacity is capped by the ``multiplier / d_RMS``
asymptote: no amount of bandwidth or clock speed beats the channel's own
temporal dispersion.

All quantities are SI (seconds, hertz, bits per second).  Every function
here is a pure function of its arguments and safe to call concurrently.
"""

import math
from dataclasses import dataclass

from .errors import DomainError
from .units import db_to_linear, linear_to_db

MOSTLY_DIGITAL = "mostly_digital"
MIXED = "mixed"

#: M-ary multiplier conventions.  "paper" multiplies the binary rate by
#: M - 1, which is what the reproduced survey tables use; "log2" is the
#: information-theoretic log2(M) bits per symbol.
MARY_PAPER = "paper"
MARY_LOG2 = "log2"

#: Linear SNR that makes the Shannon factor (1/2)log2(1 + SNR) exactly one
#: bit per symbol, i.e. the binary-modulation working point.
BINARY_SNR_LINEAR = 3.0

#: Below this SNR the binary-modulation model is outside its stated
#: validity region; results are annotated, not rejected.
SNR_VALIDITY_FLOOR_DB = 3.0


@dataclass(frozen=True)
class DelaySpread:
    """RMS channel delay spread in seconds; the dominant capacity limiter."""

    value: float

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value < 0:
            raise ValueError(f"delay spread must be >= 0 s, got {self.value!r}")


@dataclass(frozen=True)
class PulseSpec:
    """Pulse duration / bandwidth pair, locked to duration * bandwidth = 1."""

    duration: float
    bandwidth: float

    def __post_init__(self):
        if self.duration <= 0 or self.bandwidth <= 0:
            raise ValueError("pulse duration and bandwidth must be > 0")
        if abs(self.duration * self.bandwidth - 1.0) > 1e-9:
            raise ValueError(
                "pulse duration and bandwidth must satisfy duration * bandwidth = 1"
            )

    @classmethod
    def from_duration(cls, duration: float) -> "PulseSpec":
        if duration <= 0:
            raise ValueError("pulse duration must be > 0 s")
        return cls(duration, 1.0 / duration)

    @classmethod
    def from_bandwidth(cls, bandwidth: float) -> "PulseSpec":
        if bandwidth <= 0:
            raise ValueError("bandwidth must be > 0 Hz")
        return cls(1.0 / bandwidth, bandwidth)


@dataclass(frozen=True)
class SamplingConfig:
    """Data-converter sampling frequency and sampling factor.

    The sampling factor is the ratio of the sampling frequency to the
    analog signal's maximum frequency; 2 is the Nyquist floor, 4 the
    customary design value.
    """

    sampling_frequency: float
    sampling_factor: float = 4.0

    def __post_init__(self):
        if self.sampling_frequency <= 0:
            raise ValueError("sampling_frequency must be > 0 Hz")
        if self.sampling_factor < 2:
            raise ValueError("sampling_factor must be >= 2 (Nyquist floor)")


@dataclass(frozen=True)
class CircuitFrequency:
    """Minimum operating frequency among a transceiver's analog stages."""

    value: float

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError("circuit frequency must be > 0 Hz")


@dataclass(frozen=True)
class SnrValue:
    """Signal-to-noise ratio stored as a linear power ratio."""

    linear_ratio: float

    def __post_init__(self):
        if self.linear_ratio <= 0:
            raise ValueError("SNR linear ratio must be > 0")

    @classmethod
    def from_db(cls, db: float) -> "SnrValue":
        return cls(db_to_linear(db))

    @property
    def db(self) -> float:
        return linear_to_db(self.linear_ratio)


@dataclass(frozen=True)
class ModulationScheme:
    """Modulation order M and the factor it applies to the binary rate."""

    order: int = 2
    convention: str = MARY_PAPER

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("modulation order must be an integer >= 2")
        if self.convention not in (MARY_PAPER, MARY_LOG2):
            raise ValueError(
                f"convention must be {MARY_PAPER!r} or {MARY_LOG2!r}"
            )

    @property
    def multiplier(self) -> float:
        if self.convention == MARY_LOG2:
            return math.log2(self.order)
        return float(self.order - 1)

    @property
    def is_extrapolated(self) -> bool:
        """True when the M - 1 rule is stretched past the tabulated 2..4."""
        return self.convention == MARY_PAPER and self.order not in (2, 3, 4)


@dataclass(frozen=True)
class CapacityResult:
    """A computed capacity plus the bound it saturates toward.

    ``limiting_asymptote`` is ``math.inf`` when the delay spread is zero
    (the bound is then unbounded).  ``inputs_echo`` repeats the exact
    parameter set used, with unit-annotated keys; ``notes`` carries
    validity annotations such as an out-of-region SNR.
    """

    rate: float
    limiting_asymptote: float
    inputs_echo: dict
    notes: tuple = ()

    def __post_init__(self):
        if not self.rate > 0:
            raise ValueError("capacity must be > 0 bit/s")
        # <= tolerates float saturation when the frequency term underflows
        # next to d_RMS; strict inequality holds everywhere in-domain.
        if self.rate > self.limiting_asymptote:
            raise ValueError("capacity cannot exceed its limiting asymptote")

    @property
    def rate_mbit_s(self) -> float:
        return self.rate / 1e6

    def to_dict(self) -> dict:
        """Flat, JSON-ready mapping with unit-annotated field names."""
        asym = (
            self.limiting_asymptote
            if math.isfinite(self.limiting_asymptote)
            else "unbounded"
        )
        out = {
            "rate_bit_s": self.rate,
            "rate_mbit_s": self.rate_mbit_s,
            "limiting_asymptote_bit_s": asym,
        }
        out.update(self.inputs_echo)
        out["notes"] = list(self.notes)
        return out


def _half_log_factor(snr: SnrValue) -> float:
    return 0.5 * math.log2(1.0 + snr.linear_ratio)


def _result(base_rate, multiplier, d, echo, notes=()):
    # rate is multiplier * base so that M-ary capacity scales exactly.
    asymptote_ = math.inf if d.value == 0 else multiplier * (1.0 / d.value)
    return CapacityResult(
        rate=multiplier * base_rate,
        limiting_asymptote=asymptote_,
        inputs_echo=echo,
        notes=tuple(notes),
    )


def ideal_capacity(pulse: PulseSpec, d: DelaySpread, snr: SnrValue) -> CapacityResult:
    """Capacity with an ideal implementation.

    rate = 1 / (T_p + d_RMS) * (1/2) * log2(1 + SNR)

    The symbol rate comes from the no-ISI spacing T_p + d_RMS, the bits per
    symbol from the Shannon formula.  An SNR below the 3 dB floor is
    accepted but annotated as outside the binary-modulation validity
    region.

    Args:
        pulse: pulse duration / bandwidth pair.
        d:     RMS delay spread (zero permitted; the asymptote is then
               unbounded).
        snr:   linear signal-to-noise ratio.
    """
    base = 1.0 / (pulse.duration + d.value)
    factor = _half_log_factor(snr)
    notes = []
    if snr.db < SNR_VALIDITY_FLOOR_DB:
        notes.append(
            f"snr {snr.db:.6g} dB is below the 3 dB validity floor for "
            "binary modulations"
        )
    echo = {
        "pulse_duration_s": pulse.duration,
        "bandwidth_hz": pulse.bandwidth,
        "rms_delay_spread_s": d.value,
        "snr_linear": snr.linear_ratio,
        "snr_db": snr.db,
    }
    return _result(base, factor, d, echo, notes)


def binary_capacity(pulse: PulseSpec, d: DelaySpread) -> CapacityResult:
    """Binary-modulation capacity: rate = 1 / (T_p + d_RMS) = 1 / (1/B + d_RMS).

    Equals ``ideal_capacity`` at SNR = 3 (linear), where the Shannon factor
    is exactly one bit per symbol.
    """
    base = 1.0 / (pulse.duration + d.value)
    echo = {
        "pulse_duration_s": pulse.duration,
        "bandwidth_hz": pulse.bandwidth,
        "rms_delay_spread_s": d.value,
    }
    return _result(base, 1.0, d, echo)


def _modulation_echo(m: ModulationScheme) -> dict:
    return {
        "modulation_order": m.order,
        "modulation_convention": m.convention,
        "capacity_multiplier": m.multiplier,
    }


def _modulation_notes(m: ModulationScheme) -> list:
    if m.is_extrapolated:
        return [
            f"multiplier for M={m.order} extrapolated as M-1 beyond the "
            "tabulated orders 2..4"
        ]
    return []


def mostly_digital_capacity(
    s: SamplingConfig,
    d: DelaySpread,
    m: ModulationScheme = ModulationScheme(),
) -> CapacityResult:
    """Capacity of a mostly digital radio, limited by its data converters.

    rate = multiplier(M) / (n_sampling / F_s + d_RMS)

    The converters must run ``n_sampling`` times faster than the analog
    signal's maximum frequency, so the pulse can be no shorter than
    n_sampling / F_s.  With M = 2 the multiplier is 1.
    """
    base = 1.0 / (s.sampling_factor / s.sampling_frequency + d.value)
    echo = {
        "sampling_frequency_hz": s.sampling_frequency,
        "sampling_factor": s.sampling_factor,
        "rms_delay_spread_s": d.value,
    }
    echo.update(_modulation_echo(m))
    return _result(base, m.multiplier, d, echo, _modulation_notes(m))


def mixed_capacity(
    f: CircuitFrequency,
    d: DelaySpread,
    m: ModulationScheme = ModulationScheme(),
) -> CapacityResult:
    """Capacity of a mixed analog/digital radio.

    rate = multiplier(M) / (1 / F_circuit + d_RMS)

    Only the most constraining analog frequency (the minimum one across
    the pulse generator and both front-ends) matters; it bounds the pulse
    duration at 1 / F_circuit.
    """
    base = 1.0 / (1.0 / f.value + d.value)
    echo = {
        "circuit_frequency_hz": f.value,
        "rms_delay_spread_s": d.value,
    }
    echo.update(_modulation_echo(m))
    return _result(base, m.multiplier, d, echo, _modulation_notes(m))


def asymptote(d: DelaySpread, m: ModulationScheme | None = None) -> float:
    """Hard upper bound multiplier(M) / d_RMS on the capacity (default M = 2).

    Raises:
        DomainError: the bound is unbounded when the delay spread is zero.
    """
    if d.value == 0:
        raise DomainError("asymptote is unbounded when the delay spread is zero")
    multiplier = 1.0 if m is None else m.multiplier
    return multiplier * (1.0 / d.value)


def _overhead_factor(mode: str, sampling_factor) -> float:
    """Per-symbol time overhead is factor/frequency; returns the factor."""
    if mode == MOSTLY_DIGITAL:
        if sampling_factor is None:
            raise ValueError("sampling_factor is required in mostly_digital mode")
        if sampling_factor < 2:
            raise ValueError("sampling_factor must be >= 2 (Nyquist floor)")
        return float(sampling_factor)
    if mode == MIXED:
        if sampling_factor not in (None, 1, 1.0):
            raise ValueError("mixed mode has no sampling factor (implicitly 1)")
        return 1.0
    raise ValueError(f"mode must be {MOSTLY_DIGITAL!r} or {MIXED!r}, got {mode!r}")


def capacity_derivative(
    mode: str,
    frequency: float,
    d: DelaySpread,
    sampling_factor: float | None = None,
) -> float:
    """Analytic sensitivity of the binary capacity to its frequency knob.

    For mostly_digital:  dC/dF_s = (n / F_s^2) / (n / F_s + d)^2
    For mixed:           dC/dF   = (1 / F^2)  / (1 / F  + d)^2

    Strictly positive, strictly decreasing in frequency, and tending to
    zero as the capacity flattens onto the 1/d_RMS asymptote -- which is
    why chasing ever-higher sampling or clock rates stops paying off.
    """
    if frequency <= 0:
        raise ValueError("frequency must be > 0 Hz")
    n = _overhead_factor(mode, sampling_factor)
    overhead = n / frequency
    return (overhead / frequency) / (overhead + d.value) ** 2


def percent_of_max(
    mode: str,
    frequency: float,
    d: DelaySpread,
    sampling_factor: float | None = None,
) -> float:
    """Capacity at the given frequency as a fraction of its asymptote.

    Equals d / (n/F + d): strictly increasing in frequency, always < 1,
    independent of the modulation order (the multiplier cancels).

    Raises:
        DomainError: undefined when the delay spread is zero.
    """
    if frequency <= 0:
        raise ValueError("frequency must be > 0 Hz")
    if d.value == 0:
        raise DomainError(
            "percent of max is undefined when the delay spread is zero "
            "(the asymptote is unbounded)"
        )
    n = _overhead_factor(mode, sampling_factor)
    return d.value / (n / frequency + d.value)


def required_frequency(
    mode: str,
    target_fraction: float,
    d: DelaySpread,
    sampling_factor: float | None = None,
) -> float:
    """Frequency at which the capacity reaches a given fraction of its max.

    Inverts ``percent_of_max``:  F = n * p / (d * (1 - p)), with n = 1 in
    mixed mode.  Round-trips through ``percent_of_max`` to float precision.

    Raises:
        DomainError: for p outside (0, 1) or a zero delay spread.
    """
    if not 0.0 < target_fraction < 1.0:
        raise DomainError(
            f"target fraction must lie strictly in (0, 1), got {target_fraction!r}"
        )
    if d.value == 0:
        raise DomainError(
            "required frequency is undefined when the delay spread is zero"
        )
    n = _overhead_factor(mode, sampling_factor)
    return n * target_fraction / (d.value * (1.0 - target_fraction))
