"""Operation-count model of the digital baseband.

Each ``*_complexity`` function returns the processing load of one functional
block in GFLOPS: an operation count per symbol (or per sample for the
filters) multiplied by the symbol rate ``fc`` (or sample rate ``fs``) and by
the number of streams ``K`` (or RF chains ``M``).  Baseband power follows by
applying the data-transfer overhead ``OV`` and dividing by the intrinsic
processing efficiency ``E_intr`` [GFLOPS/W].

All defaults describe a 5 GHz single-carrier system with roll-off 0.3,
i.e. a symbol rate of 3.93216 GHz.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .errors import DomainError

GIGA = 1e9

MODULATIONS = {"QPSK": 2, "16QAM": 4, "64QAM": 6, "256QAM": 8}
SPECTRAL_EFFICIENCIES = tuple(MODULATIONS.values())

EQUALIZERS = ("ZF", "MMSE")
DEMAPPERS = ("MaxLogMap", "NN")

# Network & control processing load for K = 1, indexed by bits per symbol.
NETCTRL_DL = (669.0, 1336.0, 2002.0, 2669.0)
NETCTRL_UL = (443.0, 884.0, 1326.0, 1768.0)

TX_BLOCKS = ("ldpc_enc", "mapping", "ptrs_cp_ins", "tx_filter", "netctrl_dl")
# Channel estimation is reported per block but is not part of the Rx sum.
RX_BLOCKS = ("rx_filter", "fft", "ifft", "equalizer", "pn_comp", "demapper",
             "ldpc_dec", "netctrl_ul")
BLOCKS = ("ldpc_enc", "ldpc_dec", "mapping", "ptrs_cp_ins", "tx_filter",
          "rx_filter", "fft", "ifft", "chan_est", "equalizer", "pn_comp",
          "demapper", "netctrl_dl", "netctrl_ul")


@dataclass(frozen=True)
class ModulationScheme:
    name: str

    def __post_init__(self):
        if self.name not in MODULATIONS:
            raise DomainError(f"unknown modulation {self.name!r}; "
                              f"expected one of {sorted(MODULATIONS)}")

    @property
    def s(self) -> int:
        """Bits per constellation symbol."""
        return MODULATIONS[self.name]

    @classmethod
    def from_bits(cls, s: int) -> "ModulationScheme":
        for name, bits in MODULATIONS.items():
            if bits == s:
                return cls(name)
        raise DomainError(f"no modulation with s={s}")


@dataclass(frozen=True)
class WaveformNumerology:
    """Rates and block structure of the single-carrier waveform.

    ``fs`` defaults to 4x oversampling of the symbol rate.  Lengths are in
    symbols.
    """
    fc: float = 3.93216e9
    fs: float = 4 * 3.93216e9
    n_FFT: int = 4096
    n_block: int = 4384
    n_CP: int = 288
    n_PTRS: int = 128
    n_dbps: int = 13
    n_bps: int = 14
    rolloff: float = 0.3

    def __post_init__(self):
        if self.fc < 0:
            raise DomainError("fc must be non-negative")
        if self.fs < self.fc:
            raise DomainError("fs must be >= fc")
        if min(self.n_FFT, self.n_block, self.n_bps) <= 0:
            raise DomainError("n_FFT, n_block and n_bps must be positive")
        if self.n_CP < 0 or self.n_PTRS < 0 or self.n_dbps < 0:
            raise DomainError("n_CP, n_PTRS and n_dbps must be non-negative")
        if self.n_CP + self.n_PTRS > self.n_block:
            raise DomainError("n_CP + n_PTRS exceeds n_block")
        if self.n_dbps > self.n_bps:
            raise DomainError("n_dbps exceeds n_bps")
        if self.rolloff < 0:
            raise DomainError("rolloff must be non-negative")


@dataclass(frozen=True)
class ComplexityParams:
    """Per-block operation counts and scaling factors.

    Counts may be zero (a block that is switched off); they may not be
    negative.  ``r_DMRS``/``n_op_div`` are calibrated so that channel
    estimation costs about 0.4 GFLOPS at the default symbol rate.
    ``n_op_MMSE`` of ``None`` means ``2 * n_FFT``.  ``n_op_filt_rx`` and
    ``n_taps_rx`` of ``None`` reuse the Tx filter values.
    """
    # LDPC
    dc: float = 14
    dsc: float = 8
    n_bits_enc: float = 3
    n_it: float = 50
    n_op_real: float = 35
    sc_compl: float = 2
    n_bits_dec: float = 3
    # CP / PTRS insertion
    n_op_ins: float = 1
    # FIR filters
    n_op_filt: float = 2
    n_taps: float = 40
    n_op_filt_rx: float | None = None
    n_taps_rx: float | None = None
    # FFT
    n_stages: float = 13
    n_op_bfl: float = 3
    n_sym_bfl: float = 2
    # estimation / equalization
    r_DMRS: float = 1 / 14
    n_op_div: float = 1.4
    r_data: float = 13 / 14
    n_op_ZF: float = 1
    n_op_MMSE: float | None = None
    # phase-noise compensation
    n_op_interp: float = 4
    n_comp_sample: float = 1
    # NN demapper hidden layers (n_L1, n_L2, n_L3)
    nn_layers: tuple[int, int, int] = (2, 64, 64)
    # network & control
    netctrl_dl: tuple[float, ...] = NETCTRL_DL
    netctrl_ul: tuple[float, ...] = NETCTRL_UL
    netctrl_scale: float = 1.0
    OV: float = 1.5
    E_intr: float = 4000.0

    def __post_init__(self):
        for name in ("dc", "n_it", "n_op_real", "n_op_ins", "n_op_filt", "n_taps",
                     "n_stages", "n_op_bfl", "n_op_div", "n_op_ZF",
                     "n_op_interp", "n_comp_sample", "netctrl_scale"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be non-negative")
        for name in ("dsc", "n_bits_enc", "sc_compl", "n_bits_dec", "n_sym_bfl"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be positive")
        for name in ("n_op_filt_rx", "n_taps_rx", "n_op_MMSE"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise DomainError(f"{name} must be non-negative")
        if not 0 < self.r_DMRS <= 1:
            raise DomainError("r_DMRS must lie in (0, 1]")
        if not 0 <= self.r_data <= 1:
            raise DomainError("r_data must lie in [0, 1]")
        if len(self.nn_layers) != 3 or min(self.nn_layers) <= 0:
            raise DomainError("nn_layers needs three positive neuron counts")
        for name in ("netctrl_dl", "netctrl_ul"):
            table = getattr(self, name)
            if len(table) != len(SPECTRAL_EFFICIENCIES) or min(table) < 0:
                raise DomainError(f"{name} needs four non-negative entries")
        if self.OV < 1:
            raise DomainError("OV must be >= 1")
        if self.E_intr <= 0:
            raise DomainError("E_intr must be positive")


@dataclass(frozen=True)
class StreamConfig:
    K: int = 1
    M: int = 1

    def __post_init__(self):
        if self.K < 1 or self.M < 1:
            raise DomainError("K and M must be >= 1")


def _check_s(s):
    if s not in SPECTRAL_EFFICIENCIES:
        raise DomainError(f"s must be one of {SPECTRAL_EFFICIENCIES}, got {s!r}")


def ldpc_enc_complexity(p: ComplexityParams, s: int, sc: StreamConfig,
                        w: WaveformNumerology) -> float:
    _check_s(s)
    return p.dc / (p.dsc * p.n_bits_enc) * s * sc.K * w.fc / GIGA


def ldpc_dec_complexity(p: ComplexityParams, s: int, sc: StreamConfig,
                        w: WaveformNumerology) -> float:
    _check_s(s)
    return p.n_it * p.n_op_real / (p.sc_compl * p.n_bits_dec) * s * sc.K * w.fc / GIGA


def mapping_complexity(s: float, sc: StreamConfig, w: WaveformNumerology) -> float:
    return s ** 1.5 * sc.K * w.fc / GIGA


def ptrs_cp_insertion_complexity(p: ComplexityParams, w: WaveformNumerology,
                                 sc: StreamConfig) -> float:
    return (w.n_CP + w.n_PTRS) / w.n_block * p.n_op_ins * sc.K * w.fc / GIGA


def filter_complexity(p: ComplexityParams, sc: StreamConfig, w: WaveformNumerology,
                      side: str = "tx") -> float:
    """FIR pulse-shaping / matched filter, evaluated at the oversampled rate."""
    n_op, n_taps = p.n_op_filt, p.n_taps
    if side == "rx":
        if p.n_op_filt_rx is not None:
            n_op = p.n_op_filt_rx
        if p.n_taps_rx is not None:
            n_taps = p.n_taps_rx
    elif side != "tx":
        raise DomainError(f"side must be 'tx' or 'rx', got {side!r}")
    return n_op * n_taps * sc.M * w.fs / GIGA


def fft_complexity(p: ComplexityParams, sc: StreamConfig, w: WaveformNumerology) -> float:
    """One FFT (or IFFT); the receiver pays it twice."""
    return p.n_stages * p.n_op_bfl / p.n_sym_bfl * sc.K * w.fc / GIGA


def channel_est_complexity(p: ComplexityParams, sc: StreamConfig,
                           w: WaveformNumerology) -> float:
    if not 0 < p.r_DMRS <= 1:
        raise DomainError("r_DMRS must lie in (0, 1]")
    return p.r_DMRS * p.n_op_div * sc.K * w.fc / GIGA


def mmse_ops(p: ComplexityParams, w: WaveformNumerology) -> float:
    return 2.0 * w.n_FFT if p.n_op_MMSE is None else p.n_op_MMSE


def equalizer_complexity(p: ComplexityParams, kind: str, sc: StreamConfig,
                         w: WaveformNumerology) -> float:
    if kind == "ZF":
        n_op = p.n_op_ZF
    elif kind == "MMSE":
        n_op = mmse_ops(p, w)
    else:
        raise DomainError(f"equalizer must be one of {EQUALIZERS}, got {kind!r}")
    return p.r_data * n_op * sc.K * w.fc / GIGA


def pn_comp_complexity(p: ComplexityParams, w: WaveformNumerology,
                       sc: StreamConfig) -> float:
    """Time-domain phase-noise compensation.

    Interpolates between adjacent PTRS symbols and corrects every payload
    sample; only data blocks (``n_dbps`` of ``n_bps``) are compensated.
    """
    ops = ((w.n_PTRS - 1) * p.n_op_interp
           + (w.n_block - w.n_PTRS - w.n_CP) * p.n_comp_sample)
    return ops * w.n_dbps / (w.n_bps * w.n_block) * sc.K * w.fc / GIGA


def maxlogmap_ops(s: int) -> float:
    """Operations per received symbol of the max-log-MAP demapper."""
    return (4 * 2 ** s - 2) * s


def nn_demapper_ops(p: ComplexityParams, s: int) -> float:
    """Operations per received symbol of the three-layer NN demapper.

    The output layer has one neuron per bit, so it grows affinely in ``s``.
    """
    n1, n2, n3 = p.nn_layers
    return (2 * n1 + 1) * n2 + (2 * n2 + 2) * n3 + (2 * n3 + 1) * s


def demapper_complexity(p: ComplexityParams, kind: str, s: int, sc: StreamConfig,
                        w: WaveformNumerology) -> float:
    if kind == "MaxLogMap":
        ops = maxlogmap_ops(s)
    elif kind == "NN":
        ops = nn_demapper_ops(p, s)
    else:
        raise DomainError(f"demapper must be one of {DEMAPPERS}, got {kind!r}")
    return ops * sc.K * w.fc / GIGA


def netctrl_complexity(p: ComplexityParams, direction: str, s: int,
                       sc: StreamConfig) -> float:
    """Tabulated platform-control and network load, scaled by ``K``.

    No interpolation between modulation orders; ``netctrl_scale`` rescales
    the whole table (e.g. for a bandwidth other than 5 GHz).
    """
    _check_s(s)
    if direction == "DL":
        table = p.netctrl_dl
    elif direction == "UL":
        table = p.netctrl_ul
    else:
        raise DomainError(f"direction must be 'DL' or 'UL', got {direction!r}")
    return table[SPECTRAL_EFFICIENCIES.index(s)] * p.netctrl_scale * sc.K


@dataclass
class ComplexityReport:
    """GFLOPS per functional block plus the Tx/Rx totals (before overhead)."""
    blocks: dict[str, float]
    s: int
    eq_kind: str = "ZF"
    demap_kind: str = "MaxLogMap"
    tx_gflops: float = field(init=False)
    rx_gflops: float = field(init=False)

    def __post_init__(self):
        self.tx_gflops = sum(self.blocks[b] for b in TX_BLOCKS)
        self.rx_gflops = sum(self.blocks[b] for b in RX_BLOCKS)

    def rows(self):
        return [{"block": b, "gflops": self.blocks[b]} for b in BLOCKS]

    def to_json(self) -> str:
        return json.dumps({
            "s": self.s, "eq_kind": self.eq_kind, "demap_kind": self.demap_kind,
            "blocks": {b: self.blocks[b] for b in BLOCKS},
            "tx_gflops": self.tx_gflops, "rx_gflops": self.rx_gflops,
        }, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["block", "gflops"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows())
        return buf.getvalue()


def complexity_report(p: ComplexityParams, s: int, sc: StreamConfig | None = None,
                      w: WaveformNumerology | None = None, eq_kind: str = "ZF",
                      demap_kind: str = "MaxLogMap") -> ComplexityReport:
    sc = sc or StreamConfig()
    w = w or WaveformNumerology()
    c_fft = fft_complexity(p, sc, w)
    blocks = {
        "ldpc_enc": ldpc_enc_complexity(p, s, sc, w),
        "ldpc_dec": ldpc_dec_complexity(p, s, sc, w),
        "mapping": mapping_complexity(s, sc, w),
        "ptrs_cp_ins": ptrs_cp_insertion_complexity(p, w, sc),
        "tx_filter": filter_complexity(p, sc, w, "tx"),
        "rx_filter": filter_complexity(p, sc, w, "rx"),
        "fft": c_fft,
        "ifft": c_fft,
        "chan_est": channel_est_complexity(p, sc, w),
        "equalizer": equalizer_complexity(p, eq_kind, sc, w),
        "pn_comp": pn_comp_complexity(p, w, sc),
        "demapper": demapper_complexity(p, demap_kind, s, sc, w),
        "netctrl_dl": netctrl_complexity(p, "DL", s, sc),
        "netctrl_ul": netctrl_complexity(p, "UL", s, sc),
    }
    return ComplexityReport(blocks, s, eq_kind, demap_kind)


def _to_watts(gflops: float, p: ComplexityParams) -> float:
    if p.E_intr <= 0:
        raise DomainError("E_intr must be positive")
    return gflops * p.OV / p.E_intr


def bb_tx_power(p: ComplexityParams, s: int, sc: StreamConfig | None = None,
                w: WaveformNumerology | None = None) -> float:
    """Transmit baseband power [W]: summed GFLOPS x OV / E_intr."""
    sc = sc or StreamConfig()
    w = w or WaveformNumerology()
    gflops = (ldpc_enc_complexity(p, s, sc, w)
              + mapping_complexity(s, sc, w)
              + ptrs_cp_insertion_complexity(p, w, sc)
              + filter_complexity(p, sc, w, "tx")
              + netctrl_complexity(p, "DL", s, sc))
    return _to_watts(gflops, p)


def bb_rx_power(p: ComplexityParams, s: int, eq_kind: str = "ZF",
                demap_kind: str = "MaxLogMap", sc: StreamConfig | None = None,
                w: WaveformNumerology | None = None) -> float:
    """Receive baseband power [W]; the FFT/IFFT pair is counted twice."""
    sc = sc or StreamConfig()
    w = w or WaveformNumerology()
    gflops = (filter_complexity(p, sc, w, "rx")
              + 2 * fft_complexity(p, sc, w)
              + equalizer_complexity(p, eq_kind, sc, w)
              + pn_comp_complexity(p, w, sc)
              + demapper_complexity(p, demap_kind, s, sc, w)
              + ldpc_dec_complexity(p, s, sc, w)
              + netctrl_complexity(p, "UL", s, sc))
    return _to_watts(gflops, p)
