"""Deployment geometry, antenna patterns and the link-budget channel.

Coordinates: ``x`` across the room (width), ``y`` along it (length), ``z``
up.  Each BS panel has a local frame whose ``x`` axis is the (down-tilted)
broadside, ``y`` runs horizontally along the panel columns and ``z`` along
the rows.  Azimuth/elevation pairs in that frame are what the element
pattern and the grid of beams are defined on.

Propagation follows the 3GPP TR 38.901 indoor-hotspot (InH) office model,
evaluated at 140 GHz, with log-normal shadowing.  There is no small-scale
fading.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError

SUBPANEL_SPLITS = (1, 2, 4)
LOS_MODELS = ("open", "mixed")
SHADOWING_STD_LOS = 3.0
SHADOWING_STD_NLOS = 8.03
BOLTZMANN_DBM_HZ = -174.0


@dataclass(frozen=True)
class Area:
    width: float = 30.0
    length: float = 60.0

    def __post_init__(self):
        if self.width <= 0 or self.length <= 0:
            raise DomainError("area dimensions must be positive")


@dataclass(frozen=True)
class BsSite:
    position: tuple[float, float, float]
    boresight_azimuth: float  # degrees, counter-clockwise from +x
    downtilt: float = 21.0    # degrees below the horizon

    def rotation(self) -> np.ndarray:
        """Rows are the panel's local x, y, z axes in global coordinates."""
        a = math.radians(self.boresight_azimuth)
        t = math.radians(self.downtilt)
        ca, sa, ct, st = math.cos(a), math.sin(a), math.cos(t), math.sin(t)
        return np.array([
            [ca * ct, sa * ct, -st],
            [-sa, ca, 0.0],
            [ca * st, sa * st, ct],
        ])


@dataclass(frozen=True)
class PanelConfig:
    """Uniform planar array, optionally split into 1, 2 or 4 subpanels.

    A 2-way split halves the rows (4x8 for the 8x8 panel), a 4-way split
    halves rows and columns (4x4).
    """
    rows: int = 8
    cols: int = 8
    element_spacing: float = 0.5  # wavelengths
    subpanel_split: int = 1
    element_max_gain: float = 8.0
    element_hpbw: float = 65.0
    front_to_back: float = 30.0

    def __post_init__(self):
        if self.subpanel_split not in SUBPANEL_SPLITS:
            raise ConfigError("geometry.panel.subpanel_split",
                              f"must be one of {SUBPANEL_SPLITS}, got {self.subpanel_split}")
        if self.rows < 1 or self.cols < 1:
            raise DomainError("rows and cols must be >= 1")
        r, c = self._split()
        if self.rows % r or self.cols % c:
            raise DomainError(f"{self.rows}x{self.cols} panel cannot be split "
                              f"{self.subpanel_split} ways")
        if self.element_spacing <= 0 or self.element_hpbw <= 0 or self.front_to_back < 0:
            raise DomainError("element spacing and HPBW must be positive, FBR >= 0")

    def _split(self):
        return {1: (1, 1), 2: (2, 1), 4: (2, 2)}[self.subpanel_split]

    @property
    def subpanel_shape(self) -> tuple[int, int]:
        r, c = self._split()
        return self.rows // r, self.cols // c

    @property
    def elements_per_subpanel(self) -> int:
        r, c = self.subpanel_shape
        return r * c


@dataclass(frozen=True)
class Geometry:
    """Everything about the deployment that the link budget depends on.

    ``bs_sites`` overrides automatic wall placement; each entry is
    ``(x, y, z, boresight_azimuth_deg)``.
    """
    area: Area = field(default_factory=Area)
    panel: PanelConfig = field(default_factory=PanelConfig)
    bs_height: float = 4.0
    downtilt: float = 21.0
    ue_height: float = 1.5
    carrier: float = 140e9
    bandwidth: float = 5e9
    noise_figure: float = 9.0
    ue_gain: float = 0.0
    gob_n_az: int = 8
    gob_n_el: int = 8
    gob_az_range: float = 60.0
    gob_el_range: float = 15.0
    los_model: str = "open"
    bs_sites: tuple[tuple[float, float, float, float], ...] = ()

    def __post_init__(self):
        if self.carrier <= 0 or self.bandwidth <= 0:
            raise DomainError("carrier and bandwidth must be positive")
        if self.gob_n_az < 1 or self.gob_n_el < 1:
            raise DomainError("grid-of-beams counts must be >= 1")
        if self.los_model not in LOS_MODELS:
            raise DomainError(f"los_model must be one of {LOS_MODELS}")
        if any(len(site) != 4 for site in self.bs_sites):
            raise DomainError("bs_sites entries are (x, y, z, azimuth)")

    def sites(self, n_bs: int) -> list[BsSite]:
        if self.bs_sites:
            if len(self.bs_sites) != n_bs:
                raise ConfigError("geometry.bs_sites",
                                  f"{len(self.bs_sites)} sites given for n_bs={n_bs}")
            return [BsSite((x, y, z), az, self.downtilt) for x, y, z, az in self.bs_sites]
        return place_bs(self.area, n_bs, self.bs_height, self.downtilt)

    def gob(self) -> "GridOfBeams":
        return generate_gob(self.gob_n_az, self.gob_n_el, self.gob_az_range,
                            self.gob_el_range, self.downtilt)


def place_bs(area: Area, n_bs: int, height: float = 4.0,
             downtilt: float = 21.0) -> list[BsSite]:
    """Mount ``n_bs`` stations evenly on the two long walls, facing inward.

    Half the stations sit on the ``x = 0`` wall (boresight +x), half on the
    ``x = width`` wall (boresight -x), at the centres of equal segments of
    the wall length.
    """
    if n_bs not in (4, 8):
        raise ConfigError("scenario.n_bs", f"automatic placement supports 4 or 8 BS, got {n_bs}")
    per_wall = n_bs // 2
    ys = (np.arange(per_wall) + 0.5) * area.length / per_wall
    sites = [BsSite((0.0, float(y), height), 0.0, downtilt) for y in ys]
    sites += [BsSite((area.width, float(y), height), 180.0, downtilt) for y in ys]
    return sites


def unit_vector(az_deg, el_deg) -> np.ndarray:
    az = np.radians(az_deg)
    el = np.radians(el_deg)
    return np.stack([np.cos(el) * np.cos(az), np.cos(el) * np.sin(az), np.sin(el)], axis=-1)


def direction_angles(u) -> tuple[np.ndarray, np.ndarray]:
    """Azimuth and elevation [deg] of (not necessarily unit) vectors ``u[..., 3]``."""
    u = np.asarray(u, dtype=float)
    az = np.degrees(np.arctan2(u[..., 1], u[..., 0]))
    el = np.degrees(np.arctan2(u[..., 2], np.hypot(u[..., 0], u[..., 1])))
    return az, el


def element_gain(az_deg, el_deg, max_gain: float = 8.0, hpbw: float = 65.0,
                 front_to_back: float = 30.0):
    """Parabolic element pattern [dBi] in the element's own frame.

    Horizontal and vertical cuts each lose ``12 (angle / HPBW)^2`` dB, capped
    at the front-to-back ratio; the combined loss is capped again.
    """
    az = np.asarray(az_deg, dtype=float)
    el = np.asarray(el_deg, dtype=float)
    a_h = np.minimum(12.0 * (az / hpbw) ** 2, front_to_back)
    a_v = np.minimum(12.0 * (el / hpbw) ** 2, front_to_back)
    return max_gain - np.minimum(a_h + a_v, front_to_back)


def _ula_sum(n: int, spacing: float, delta):
    k = np.arange(n)
    return np.exp(2j * np.pi * spacing * np.multiply.outer(delta, k)).sum(axis=-1)


def array_factor(rows: int, cols: int, spacing: float, beam_dirs, dirs):
    """Complex array factor of a steered ``rows x cols`` UPA.

    Parameters
    ----------
    beam_dirs : array_like, shape (B, 3)
        Steering directions as unit vectors in the panel frame.
    dirs : array_like, shape (..., 3)
        Observation directions (unit vectors, panel frame).

    Returns
    -------
    ndarray, shape (..., B)
        Normalised by ``1/sqrt(rows*cols)`` so that the on-beam magnitude
        squared equals the number of elements.
    """
    beam_dirs = np.atleast_2d(beam_dirs)
    dirs = np.asarray(dirs, dtype=float)
    dy = dirs[..., None, 1] - beam_dirs[:, 1]
    dz = dirs[..., None, 2] - beam_dirs[:, 2]
    return _ula_sum(cols, spacing, dy) * _ula_sum(rows, spacing, dz) / math.sqrt(rows * cols)


def beam_gain(panel: PanelConfig, beam_dirs, dirs, subarray: tuple[int, int] | None = None):
    """Gain [dBi] of every beam towards every direction, element pattern included.

    ``subarray`` defaults to the panel's subpanel shape.  Returns an array of
    shape ``dirs.shape[:-1] + (B,)``.
    """
    rows, cols = subarray or panel.subpanel_shape
    af = array_factor(rows, cols, panel.element_spacing, beam_dirs, dirs)
    af_db = 10.0 * np.log10(np.maximum(np.abs(af) ** 2, 1e-30))
    az, el = direction_angles(dirs)
    g_el = element_gain(az, el, panel.element_max_gain, panel.element_hpbw,
                        panel.front_to_back)
    return g_el[..., None] + af_db


@dataclass(frozen=True)
class GridOfBeams:
    """Fixed beam codebook of one subpanel.

    ``azimuth`` is relative to boresight, ``tilt`` is the absolute downward
    pointing angle, so a beam with ``tilt == downtilt`` is on the panel's
    broadside.  Beam ``k`` sits at tilt index ``k // n_az`` and azimuth index
    ``k % n_az``.
    """
    azimuth: np.ndarray
    tilt: np.ndarray
    downtilt: float

    def __len__(self):
        return len(self.azimuth)

    @property
    def local_elevation(self) -> np.ndarray:
        return self.downtilt - self.tilt

    def directions(self) -> np.ndarray:
        return unit_vector(self.azimuth, self.local_elevation)


def _bin_centres(n: int, half_range: float) -> np.ndarray:
    width = 2.0 * half_range / n
    return -half_range + width * (np.arange(n) + 0.5)


def generate_gob(n_az: int = 8, n_el: int = 8, az_range: float = 60.0,
                 el_range: float = 15.0, downtilt: float = 21.0) -> GridOfBeams:
    """Beams at the bin centres of ``[-az_range, az_range]`` x
    ``[downtilt - el_range, downtilt + el_range]``, uniform in angle."""
    az = _bin_centres(n_az, az_range)
    tilt = downtilt + _bin_centres(n_el, el_range)
    tt, aa = np.meshgrid(tilt, az, indexing="ij")
    return GridOfBeams(aa.ravel(), tt.ravel(), downtilt)


def los_probability(d2d, model: str = "open"):
    """InH-Office LOS probability versus horizontal distance [m]."""
    d = np.asarray(d2d, dtype=float)
    if model == "open":
        p = np.where(d <= 5.0, 1.0,
                     np.where(d <= 49.0, np.exp(-(d - 5.0) / 70.8),
                              0.54 * np.exp(-(d - 49.0) / 211.7)))
    elif model == "mixed":
        p = np.where(d <= 1.2, 1.0,
                     np.where(d < 6.5, np.exp(-(d - 1.2) / 4.7),
                              0.32 * np.exp(-(d - 6.5) / 32.6)))
    else:
        raise DomainError(f"los model must be one of {LOS_MODELS}")
    return p if p.ndim else float(p)


def pathloss(d3d, carrier: float, los):
    """InH pathloss [dB]; NLOS is never below the LOS value.

    Distances under 1 m are clamped to 1 m with a ``RuntimeWarning``.
    """
    d = np.asarray(d3d, dtype=float)
    if np.any(d < 1.0):
        warnings.warn("3D distance below 1 m clamped to 1 m", RuntimeWarning, stacklevel=2)
        d = np.maximum(d, 1.0)
    f_ghz = carrier / 1e9
    pl_los = 32.4 + 17.3 * np.log10(d) + 20.0 * np.log10(f_ghz)
    pl_nlos = np.maximum(pl_los, 17.3 + 38.3 * np.log10(d) + 24.9 * np.log10(f_ghz))
    pl = np.where(los, pl_los, pl_nlos)
    return pl if pl.ndim else float(pl)


def shadowing_std(los):
    return np.where(los, SHADOWING_STD_LOS, SHADOWING_STD_NLOS)


def noise_power(bandwidth: float, nf: float) -> float:
    """Receiver noise floor [dBm]."""
    return BOLTZMANN_DBM_HZ + 10.0 * math.log10(bandwidth) + nf


@dataclass(frozen=True)
class LinkState:
    los: bool
    pathloss: float
    shadowing: float = 0.0
    tx_beam_gain: float = 0.0
    rx_gain: float = 0.0
    carrier: float = 140e9
    noise_figure: float = 9.0

    def __post_init__(self):
        if self.pathloss <= 0:
            raise DomainError("pathloss must be positive")

    def received_power(self, tx_dbm: float) -> float:
        return tx_dbm + self.tx_beam_gain + self.rx_gain - self.pathloss - self.shadowing


def db_to_lin(x):
    return 10.0 ** (np.asarray(x, dtype=float) / 10.0)


def lin_to_db(x):
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(x)


def sinr(serving: LinkState, tx_dbm: float, interferers, noise_dbm: float) -> float:
    """SINR [dB] of ``serving`` against ``(LinkState, tx_dbm)`` interferers."""
    s = db_to_lin(serving.received_power(tx_dbm))
    i = sum(float(db_to_lin(link.received_power(p))) for link, p in interferers)
    return float(lin_to_db(s / (i + db_to_lin(noise_dbm))))
