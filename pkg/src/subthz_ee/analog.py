"""Power models of data converters, RFICs and phased-array front ends."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, OutOfRangeError


def dbm_to_watts(p_dbm):
    return 10.0 ** ((np.asarray(p_dbm, dtype=float) - 30.0) / 10.0)


def watts_to_dbm(p_w):
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(np.asarray(p_w, dtype=float)) + 30.0


def walden_adc_power(fom: float, fs: float, enob: float) -> float:
    """ADC power from the Walden figure of merit.

    Parameters
    ----------
    fom : float
        Energy per conversion step [J].
    fs : float
        Sampling rate [Hz].
    enob : float
        Effective number of bits.

    Returns
    -------
    float
        ``fom * fs * 2**enob`` in Watts.
    """
    if fom < 0 or fs < 0:
        raise DomainError("FOM and sampling rate must be non-negative")
    if enob < 0:
        raise DomainError("ENOB must be non-negative")
    return fom * fs * 2.0 ** enob


def enob_from_resolution(bits: float) -> float:
    """Nominal converter resolution to ENOB (half a bit below nominal)."""
    return bits - 0.5


@dataclass(frozen=True)
class ConverterModel:
    """DAC/ADC parameters.

    ``adc_fom_curve`` optionally tabulates the figure of merit against
    sampling rate as ``((fs_Hz, fom_J), ...)``; it is interpolated linearly
    and held constant beyond its end points.  When empty, ``adc_fom`` is used
    at every rate.
    """
    dac_power: float = 1.25
    adc_fom: float = 6.2e-15
    adc_sample_rate: float = 10e9
    adc_enob: float = 11.5
    adc_fom_curve: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.dac_power <= 0:
            raise DomainError("dac_power must be positive")
        if self.adc_fom <= 0 or self.adc_sample_rate <= 0:
            raise DomainError("adc_fom and adc_sample_rate must be positive")
        if self.adc_enob < 0:
            raise DomainError("adc_enob must be non-negative")
        if self.adc_fom_curve:
            rates = [r for r, _ in self.adc_fom_curve]
            if any(b <= a for a, b in zip(rates, rates[1:])):
                raise DomainError("adc_fom_curve rates must be strictly increasing")
            if min(f for _, f in self.adc_fom_curve) <= 0:
                raise DomainError("adc_fom_curve values must be positive")

    def fom_at(self, fs: float) -> float:
        if not self.adc_fom_curve:
            return self.adc_fom
        rates, foms = zip(*self.adc_fom_curve)
        return float(np.interp(fs, rates, foms))


def adc_power(m: ConverterModel) -> float:
    return walden_adc_power(m.fom_at(m.adc_sample_rate), m.adc_sample_rate, m.adc_enob)


def dac_power(m: ConverterModel) -> float:
    if m.dac_power <= 0:
        raise DomainError("dac_power must be positive")
    return m.dac_power


def efficiency_curve(efficiency: float, lo_dbm: float = -10.0, hi_dbm: float = 30.0,
                     step_db: float = 1.0) -> tuple[tuple[float, float], ...]:
    """Tabulate DC power drawn by an amplifier of fixed efficiency.

    Returns ``(psat_dBm, watts)`` knots with ``watts = P_out / efficiency``.
    """
    knots = np.arange(lo_dbm, hi_dbm + step_db / 2, step_db)
    return tuple((float(p), float(dbm_to_watts(p) / efficiency)) for p in knots)


@dataclass(frozen=True)
class RficModel:
    """Tx/Rx RFIC power.

    The Tx side is a fixed share (analog baseband, LO, mixer) plus a
    piecewise-linear, output-power dependent part given as ``(dBm, W)``
    knots.  ``tx_drive_dbm`` is the saturated output the RFIC must deliver
    into the phased-array splitter.
    """
    tx_fixed: float = 0.3
    tx_psat_curve: tuple[tuple[float, float], ...] = field(
        default_factory=lambda: efficiency_curve(0.10))
    tx_drive_dbm: float = 10.0
    rx_power: float = 0.96

    def __post_init__(self):
        if self.tx_fixed < 0:
            raise DomainError("tx_fixed must be non-negative")
        if self.rx_power <= 0:
            raise DomainError("rx_power must be positive")
        if len(self.tx_psat_curve) < 2:
            raise DomainError("tx_psat_curve needs at least two knots")
        psat = [p for p, _ in self.tx_psat_curve]
        watts = [w for _, w in self.tx_psat_curve]
        if any(b <= a for a, b in zip(psat, psat[1:])):
            raise DomainError("tx_psat_curve must be strictly increasing in dBm")
        if any(b < a for a, b in zip(watts, watts[1:])) or min(watts) < 0:
            raise DomainError("tx_psat_curve must be non-negative and non-decreasing")


def rfic_tx_power(m: RficModel, psat_dbm: float | None = None) -> float:
    """Tx RFIC power at saturated output ``psat_dbm`` (default: the drive level)."""
    if psat_dbm is None:
        psat_dbm = m.tx_drive_dbm
    psat, watts = zip(*m.tx_psat_curve)
    if not psat[0] <= psat_dbm <= psat[-1]:
        raise OutOfRangeError(
            f"psat {psat_dbm} dBm outside curve range [{psat[0]}, {psat[-1]}] dBm")
    return m.tx_fixed + float(np.interp(psat_dbm, psat, watts))


def rfic_rx_power(m: RficModel) -> float:
    if m.rx_power <= 0:
        raise DomainError("rx_power must be positive")
    return m.rx_power


@dataclass(frozen=True)
class PhasedArrayModel:
    """Per-element front-end power.

    Tx: vector modulator and splitter share (fixed) plus a PA of constant
    efficiency.  Rx: LNA, vector modulator and combiner share (fixed).
    """
    tx_vm_power: float = 0.02
    pa_efficiency: float = 0.10
    rx_element_power: float = 0.24

    def __post_init__(self):
        if self.tx_vm_power < 0:
            raise DomainError("tx_vm_power must be non-negative")
        if not 0 < self.pa_efficiency <= 1:
            raise DomainError("pa_efficiency must lie in (0, 1]")
        if self.rx_element_power <= 0:
            raise DomainError("rx_element_power must be positive")


def phased_array_tx_element_power(m: PhasedArrayModel, psat_per_element_dbm: float) -> float:
    return m.tx_vm_power + float(dbm_to_watts(psat_per_element_dbm)) / m.pa_efficiency


def phased_array_rx_element_power(m: PhasedArrayModel) -> float:
    if m.rx_element_power <= 0:
        raise DomainError("rx_element_power must be positive")
    return m.rx_element_power


def split_bs_power(total_psat_dbm: float, n_subpanels: int,
                   n_elements_per_subpanel: int) -> tuple[float, float]:
    """Split a BS's total saturated output evenly over subpanels and elements.

    Returns ``(per_subpanel_dbm, per_element_dbm)``.
    """
    if n_subpanels < 1 or n_elements_per_subpanel < 1:
        raise DomainError("subpanel and element counts must be >= 1")
    per_subpanel = total_psat_dbm - 10.0 * math.log10(n_subpanels)
    per_element = per_subpanel - 10.0 * math.log10(n_elements_per_subpanel)
    return per_subpanel, per_element


@dataclass(frozen=True)
class DeviceModels:
    converter: ConverterModel = field(default_factory=ConverterModel)
    rfic: RficModel = field(default_factory=RficModel)
    phased_array: PhasedArrayModel = field(default_factory=PhasedArrayModel)
