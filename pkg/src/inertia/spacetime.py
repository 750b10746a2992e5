"""Affine spacetime, its canonical clock and the metric structures on it.

Coordinates are ``(x, y, z, t)`` with the speed of light set to 1. The
clock is the coordinate projection onto ``t``; sheets of simultaneous
events are the hyperplanes ``t = const``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotSimultaneous

#: Gram matrix of the Minkowski form x^2 + y^2 + z^2 - t^2.
MINKOWSKI_GRAM = np.diag([1.0, 1.0, 1.0, -1.0])
MINKOWSKI_GRAM.setflags(write=False)

DEFAULT_SIMULTANEITY_TOL = 1e-9


def _check_finite(name, values):
    for label, v in zip(name, values):
        if not math.isfinite(v):
            raise ValueError(f"{label} must be finite, got {v!r}")


@dataclass(frozen=True)
class FourVector:
    """Displacement between two events."""

    dx: float
    dy: float
    dz: float
    dt: float

    def __post_init__(self):
        for f in ("dx", "dy", "dz", "dt"):
            object.__setattr__(self, f, float(getattr(self, f)))
        _check_finite(("dx", "dy", "dz", "dt"), self.as_array())

    @classmethod
    def from_array(cls, a) -> FourVector:
        a = np.asarray(a, dtype=float).reshape(4)
        return cls(*a)

    def as_array(self) -> np.ndarray:
        return np.array([self.dx, self.dy, self.dz, self.dt])

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.dx, self.dy, self.dz])

    def __add__(self, other):
        if isinstance(other, FourVector):
            return FourVector.from_array(self.as_array() + other.as_array())
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, FourVector):
            return FourVector.from_array(self.as_array() - other.as_array())
        return NotImplemented

    def __neg__(self):
        return FourVector.from_array(-self.as_array())

    def __mul__(self, s):
        return FourVector.from_array(float(s) * self.as_array())

    __rmul__ = __mul__

    def to_dict(self) -> dict:
        return {"dx": self.dx, "dy": self.dy, "dz": self.dz, "dt": self.dt}

    @classmethod
    def from_dict(cls, d: dict) -> FourVector:
        return cls(d["dx"], d["dy"], d["dz"], d["dt"])


@dataclass(frozen=True)
class Event:
    """A point of spacetime."""

    x: float
    y: float
    z: float
    t: float

    def __post_init__(self):
        for f in ("x", "y", "z", "t"):
            object.__setattr__(self, f, float(getattr(self, f)))
        _check_finite(("x", "y", "z", "t"), self.as_array())

    @classmethod
    def from_array(cls, a) -> Event:
        a = np.asarray(a, dtype=float).reshape(4)
        return cls(*a)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z, self.t])

    @property
    def position(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __add__(self, v):
        if isinstance(v, FourVector):
            return Event.from_array(self.as_array() + v.as_array())
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Event):
            return FourVector.from_array(self.as_array() - other.as_array())
        if isinstance(other, FourVector):
            return Event.from_array(self.as_array() - other.as_array())
        return NotImplemented

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "z": self.z, "t": self.t}

    @classmethod
    def from_dict(cls, d: dict) -> Event:
        return cls(d["x"], d["y"], d["z"], d["t"])


@dataclass(frozen=True)
class Instant:
    """A date, i.e. a point of the time axis."""

    t: float

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        _check_finite(("t",), (self.t,))


def quadratic_form(v) -> float:
    """Minkowski form ``dx^2 + dy^2 + dz^2 - dt^2`` of a displacement.

    Accepts a :class:`FourVector` or any length-4 array.
    """
    a = v.as_array() if isinstance(v, FourVector) else np.asarray(v, dtype=float)
    return float(a[0] ** 2 + a[1] ** 2 + a[2] ** 2 - a[3] ** 2)


def clock_project(q: Event) -> Instant:
    return Instant(q.t)


def duration(q: Event, q2: Event) -> float:
    """Absolute time elapsed between two events."""
    return abs(q2.t - q.t)


def are_simultaneous(q: Event, q2: Event, tol: float = DEFAULT_SIMULTANEITY_TOL) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return abs(q.t - q2.t) <= tol


def sheet_distance(q: Event, q2: Event, tol: float = DEFAULT_SIMULTANEITY_TOL) -> float:
    """Euclidean distance between two simultaneous events.

    Raises
    ------
    NotSimultaneous
        If the events lie on different sheets (beyond ``tol``).
    """
    if not are_simultaneous(q, q2, tol):
        raise NotSimultaneous(f"events at t={q.t!r} and t={q2.t!r} are not simultaneous")
    return float(np.linalg.norm(q2.position - q.position))


def sheet_distance_via(q: Event, q2: Event, K: FourVector,
                       tol: float = DEFAULT_SIMULTANEITY_TOL) -> float:
    """Sheet distance computed by first translating both events by ``-K``.

    ``K`` must be transverse to the clock and carry the sheet of ``q`` onto
    the origin sheet; the result does not depend on which such ``K`` is used.
    """
    if K.dt == 0.0:
        raise ValueError("K must be transverse to the clock (dt != 0)")
    p, p2 = q - K, q2 - K
    if not are_simultaneous(p, Event(0.0, 0.0, 0.0, 0.0), tol):
        raise ValueError("K does not translate the events onto the origin sheet")
    return sheet_distance(p, p2, tol)
