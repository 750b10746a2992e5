"""Inertial motions (affine lines of spacetime) and piecewise-inertial worldlines."""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import MixedFamilies, SpacelikeSegment
from .groups import Element, embed_aristotle
from .spacetime import Event, FourVector, quadratic_form

TOL_CLASS = 1e-12


class MotionClass(enum.Enum):
    RESTING = "resting"
    UNIFORM_FINITE = "uniform-finite"
    INSTANTANEOUS_LIGHT = "instantaneous-light"
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"

    def __str__(self):
        return self.value


GALILEAN_CLASSES = frozenset({MotionClass.RESTING, MotionClass.UNIFORM_FINITE,
                              MotionClass.INSTANTANEOUS_LIGHT})
MINKOWSKI_CLASSES = frozenset({MotionClass.SPACELIKE, MotionClass.TIMELIKE,
                               MotionClass.LIGHTLIKE})
MECHANICS = ("aristotle", "galilei", "minkowski")


def _is_transverse(d: np.ndarray) -> bool:
    return abs(d[3]) > TOL_CLASS * np.linalg.norm(d)


@dataclass(frozen=True)
class InertialMotion:
    """An affine line ``{base + s * direction}`` in canonical form.

    Transverse lines (``dt != 0``) are normalized to ``dt = 1`` with the base
    on the ``t = 0`` sheet, so ``base`` is the initial position and the
    spatial direction is the velocity. Lines inside a sheet get a unit
    spatial direction whose first non-zero component is positive, and the
    base point closest to the time axis.
    """

    base: Event
    direction: FourVector

    def __post_init__(self):
        p = self.base.as_array()
        d = self.direction.as_array()
        n = np.linalg.norm(d)
        if n == 0:
            raise ValueError("direction of a motion must be non-zero")
        if _is_transverse(d):
            d = d / d[3]
            d[3] = 1.0
            p = p - p[3] * d
            p[3] = 0.0
        else:
            d = d.copy()
            d[3] = 0.0
            d = d / np.linalg.norm(d[:3])
            lead = d[np.flatnonzero(np.abs(d) > TOL_CLASS)[0]]
            if lead < 0:
                d = -d
            p = p - (p[:3] @ d[:3]) * d
        object.__setattr__(self, "base", Event.from_array(p))
        object.__setattr__(self, "direction", FourVector.from_array(d))

    @property
    def transverse(self) -> bool:
        return self.direction.dt != 0.0

    def point(self, s: float) -> Event:
        return self.base + s * self.direction

    def contains(self, q: Event, tol: float = 1e-10) -> bool:
        """Whether ``q`` lies on the line (distance at most ``tol``)."""
        d = self.direction.as_array()
        w = q.as_array() - self.base.as_array()
        w_perp = w - (w @ d) / (d @ d) * d
        return float(np.linalg.norm(w_perp)) <= tol * max(1.0, np.linalg.norm(w))

    def isclose(self, other: InertialMotion, tol: float = 1e-10) -> bool:
        return (np.allclose(self.base.as_array(), other.base.as_array(), atol=tol, rtol=0)
                and np.allclose(self.direction.as_array(), other.direction.as_array(),
                                atol=tol, rtol=0))


def motion_from_state(r0, v) -> InertialMotion:
    """Motion ``t -> r0 + v t``."""
    r0 = np.asarray(r0, dtype=float).reshape(3)
    v = np.asarray(v, dtype=float).reshape(3)
    return InertialMotion(Event(*r0, 0.0), FourVector(*v, 1.0))


def state_from_motion(m: InertialMotion) -> tuple[np.ndarray, np.ndarray]:
    """Initial position and velocity of a transverse motion."""
    if not m.transverse:
        raise ValueError("instantaneous motions have no finite velocity")
    return m.base.position, m.direction.spatial


def act_motion(g: Element, m: InertialMotion) -> InertialMotion:
    """Image of the line ``m`` under ``g``, re-canonicalized."""
    p0 = g.apply(m.base.as_array())
    d = g.matrix[:4, :4] @ m.direction.as_array()
    return InertialMotion(Event.from_array(p0), FourVector.from_array(d))


def classify_galilean(m: InertialMotion) -> MotionClass:
    d = m.direction
    if not m.transverse:
        return MotionClass.INSTANTANEOUS_LIGHT
    if np.all(d.spatial == 0.0):
        return MotionClass.RESTING
    return MotionClass.UNIFORM_FINITE


def classify_minkowski(m: InertialMotion, tol: float = TOL_CLASS) -> MotionClass:
    """Sign of the Minkowski form on the direction of ``m``.

    Zero is decided relative to the squared Euclidean norm of the direction.
    """
    d = m.direction.as_array()
    q = quadratic_form(d)
    if abs(q) <= tol * float(d @ d):
        return MotionClass.LIGHTLIKE
    return MotionClass.SPACELIKE if q > 0 else MotionClass.TIMELIKE


def orbit_invariant(m: InertialMotion, mechanics: str) -> MotionClass:
    """Class of ``m`` that is constant along the orbit of the mechanics' group.

    Galilean boosts merge resting and uniform motions into a single orbit, so
    in ``"galilei"`` mode every transverse line reports ``UNIFORM_FINITE``.
    """
    if mechanics == "aristotle":
        return classify_galilean(m)
    if mechanics == "galilei":
        if m.transverse:
            return MotionClass.UNIFORM_FINITE
        return MotionClass.INSTANTANEOUS_LIGHT
    if mechanics == "minkowski":
        return classify_minkowski(m)
    raise ValueError(f"unknown mechanics {mechanics!r}; expected one of {MECHANICS}")


def check_mechanics(g: Element, mechanics: str) -> Element:
    """Return ``g`` in the form acting in ``mechanics``, promoting if needed."""
    allowed = {"aristotle": ("aristotle",), "galilei": ("aristotle", "galilei"),
               "minkowski": ("poincare",)}[mechanics]
    if g.family not in allowed:
        raise MixedFamilies(f"{g.family} element does not act in {mechanics} mechanics")
    if mechanics == "galilei" and g.family == "aristotle":
        return embed_aristotle(g)
    return g


# ---------------------------------------------------------------------------
# worldlines


@dataclass(frozen=True)
class Worldline:
    """Future-directed chain of events joined by inertial segments."""

    vertices: tuple[Event, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(vs) < 2:
            raise ValueError("a worldline needs at least two vertices")
        for a, b in zip(vs, vs[1:]):
            if not b.t > a.t:
                raise ValueError(f"vertex times must strictly increase ({a.t!r} -> {b.t!r})")
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def from_points(cls, points: Sequence) -> Worldline:
        """Build from ``(x, y, z, t)`` rows."""
        return cls(tuple(Event.from_array(p) for p in points))

    def as_array(self) -> np.ndarray:
        return np.array([v.as_array() for v in self.vertices])

    @property
    def coordinate_duration(self) -> float:
        return self.vertices[-1].t - self.vertices[0].t

    def transformed(self, g: Element) -> Worldline:
        return Worldline.from_points(g.apply(self.as_array()))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "x", "y", "z"])
        for v in self.vertices:
            w.writerow([repr(v.t), repr(v.x), repr(v.y), repr(v.z)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> Worldline:
        """Parse the ``t,x,y,z`` CSV format; rows must be sorted by ``t``."""
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["t", "x", "y", "z"]:
            raise ValueError(f"worldline CSV header must be 't,x,y,z', got {reader.fieldnames}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            try:
                rows.append([float(row[k]) for k in ("x", "y", "z", "t")])
            except (TypeError, ValueError) as exc:
                raise ValueError(f"worldline CSV line {lineno}: {exc}") from None
        return cls.from_points(rows)


def proper_time(w: Worldline, tol: float = 1e-9) -> float:
    """Sum of ``sqrt(dt^2 - |dr|^2)`` over the segments of ``w``.

    Raises
    ------
    SpacelikeSegment
        If some segment has Minkowski form above ``tol``.
    """
    total = 0.0
    for i, (a, b) in enumerate(zip(w.vertices, w.vertices[1:])):
        q = quadratic_form(b - a)
        if q > tol:
            raise SpacelikeSegment(f"segment {i} is spacelike (form = {q:g})")
        total += np.sqrt(max(0.0, -q))
    return float(total)
