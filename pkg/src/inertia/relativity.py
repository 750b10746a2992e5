"""Closed-form kinematic formulas of special relativity and the ship-drop check."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SuperluminalBeta
from .groups import compose, make_galilei, standard_boost
from .motions import motion_from_state
from .spacetime import Event
from .verify import OracleReport


@dataclass(frozen=True)
class InterferometerSpec:
    arm_length: float
    beta: float

    def __post_init__(self):
        if not self.arm_length > 0:
            raise ValueError(f"arm_length must be positive, got {self.arm_length!r}")
        if not 0 <= self.beta < 1:
            raise ValueError(f"beta must lie in [0, 1), got {self.beta!r}")


@dataclass(frozen=True)
class PathReport:
    transverse: float
    longitudinal: float

    @property
    def difference(self) -> float:
        return self.longitudinal - self.transverse

    def to_dict(self) -> dict:
        return {"d_t": self.transverse, "d_l": self.longitudinal, "delta": self.difference}


def michelson_paths(spec: InterferometerSpec) -> PathReport:
    """Round-trip optical paths of the two arms in the aether frame.

    ``d_t = 2d / sqrt(1 - b^2)`` across the motion and ``d_l = 2d / (1 - b^2)``
    along it.
    """
    d, b2 = spec.arm_length, spec.beta ** 2
    return PathReport(2 * d / math.sqrt(1 - b2), 2 * d / (1 - b2))


def length_contraction(d: float, beta: float) -> float:
    if not d > 0:
        raise ValueError(f"d must be positive, got {d!r}")
    if not 0 <= beta < 1:
        raise ValueError(f"beta must lie in [0, 1), got {beta!r}")
    return d * math.sqrt(1 - beta ** 2)


def time_dilation(t: float, v: float, V: float = 1.0) -> float:
    """Proper time ``t * sqrt(1 - (v/V)^2)`` of a clock moving at speed ``v``."""
    if not V > 0:
        raise ValueError("light speed V must be positive")
    if abs(v) >= V:
        raise SuperluminalBeta(f"|v| = {abs(v):g} must be below V = {V:g}")
    r = v / V
    # 1 - sqrt(1 - r^2) written without cancellation
    lag = r * r / (1 + math.sqrt(1 - r * r))
    return t - t * lag


def velocity_addition(v: float, w: float, V: float = 1.0) -> float:
    """Collinear relativistic sum ``(v + w) / (1 + v w / V^2)``."""
    if not V > 0:
        raise ValueError("light speed V must be positive")
    if abs(v) > V or abs(w) > V:
        raise SuperluminalBeta(f"velocities must satisfy |v|, |w| <= V = {V:g}")
    denom = 1 + v * w / V ** 2
    if denom == 0:
        # v = -w = +-V: opposite light rays
        raise SuperluminalBeta("sum of opposite light-speed velocities is undefined")
    return (v + w) / denom


def lorentz_map(eps: float, q: Event) -> Event:
    """Boost along x: ``x' = k(x + eps t)``, ``t' = k(t + eps x)``."""
    if not abs(eps) < 1:
        raise SuperluminalBeta(f"|eps| = {abs(eps):g} must be < 1")
    k = 1 / math.sqrt(1 - eps * eps)
    return Event(k * (q.x + eps * q.t), q.y, q.z, k * (q.t + eps * q.x))


def lorentz_factor(beta) -> float:
    b = np.asarray(beta, dtype=float)
    b2 = float(b @ b) if b.ndim else float(b * b)
    if not b2 < 1:
        raise SuperluminalBeta(f"|beta| = {math.sqrt(b2):g} must be < 1")
    return 1 / math.sqrt(1 - b2)


def composed_boost_velocity(v: float, w: float) -> float:
    """x-velocity of the product of two x-boosts, read from the matrix."""
    L = standard_boost((v, 0, 0)) @ standard_boost((w, 0, 0))
    return float(L[0, 3] / L[3, 3])


# ---------------------------------------------------------------------------
# ship drop


@dataclass(frozen=True)
class ShipDropSpec:
    boost: tuple
    mast_height: float
    fall_duration: float

    def __post_init__(self):
        object.__setattr__(self, "boost", tuple(float(b) for b in np.reshape(self.boost, 3)))
        if not self.mast_height > 0:
            raise ValueError("mast_height must be positive")
        if not self.fall_duration > 0:
            raise ValueError("fall_duration must be positive")


def _ship_drop_worldlines(spec: ShipDropSpec, samples: int = 9):
    """Rest-frame samples of the mast base and the falling stone.

    The stone's height decreases linearly from ``mast_height`` to 0; only the
    horizontal coordinates matter and no force law is modelled.
    """
    ts = np.linspace(0.0, spec.fall_duration, samples)
    mast = motion_from_state((0, 0, 0), (0, 0, 0))
    base = np.array([mast.point(t).as_array() for t in ts])
    stone = base.copy()
    stone[:, 2] = spec.mast_height * (1 - ts / spec.fall_duration)
    return base, stone


def ship_drop(spec: ShipDropSpec, shore_thrown: bool = False, extra=None) -> OracleReport:
    """Horizontal offset between stone and mast base when the stone lands.

    With ``shore_thrown=False`` both worldlines are carried by the ship's
    Galilei boost and the offset is 0. With ``shore_thrown=True`` only the
    ship moves and the stone misses by ``|B| * fall_duration``. ``extra`` is
    an optional Galilei element applied to everything afterwards.
    """
    B = np.array(spec.boost)
    g_ship = make_galilei(np.eye(3), B, np.zeros(3), 0.0)
    if extra is not None:
        g_ship = compose(extra, g_ship)
    base, stone = _ship_drop_worldlines(spec)
    base_img = g_ship.apply(base)
    if shore_thrown:
        g_stone = extra if extra is not None else make_galilei(np.eye(3), np.zeros(3), np.zeros(3))
        stone_img = g_stone.apply(stone)
    else:
        stone_img = g_ship.apply(stone)
    # at the landing instant both points are at height 0 in the ship frame
    landing = float(np.linalg.norm(stone_img[-1, :3] - base_img[-1, :3]))
    if shore_thrown:
        expected = float(np.linalg.norm(B)) * spec.fall_duration
        ok = abs(landing - expected) <= 1e-12 * max(1.0, expected)
    else:
        # during the fall the stone stays on the (transformed) mast
        mast_offsets = (stone - base)[:, :3] @ g_ship.rotation.T
        drift = stone_img[:, :3] - base_img[:, :3] - mast_offsets
        expected = 0.0
        scale = max(1.0, float(np.abs(base_img).max()))
        ok = landing <= 1e-12 * scale and float(np.abs(drift).max()) <= 1e-12 * scale
    return OracleReport(
        "pass" if ok else "fail",
        witness={"offset": landing, "expected": expected},
        detail=("shore-thrown stone misses the mast base" if shore_thrown
                else "stone lands at the foot of the mast"),
    )
