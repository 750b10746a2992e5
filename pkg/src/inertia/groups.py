"""The three inertia groups as validated matrix groups acting on spacetime.

Aristotle and Galilei elements are stored by their blocks and act through
the 5x5 homogeneous matrix::

    [[A, B, C],
     [0, s, e],
     [0, 0, 1]]      (r, t, 1) -> (A r + B t + C, s t + e, 1)

with ``B = 0`` for Aristotle. Poincare elements act as ``X -> L X + C`` with
``L`` preserving ``diag(1, 1, 1, -1)``.

By default every constructor validates against the identity component
(``det A = +1``, ``s = +1``, proper orthochronous ``L``). Pass
``full_group=True`` to admit reflections and time reversal. Elements are
never silently re-orthonormalized; use :func:`renormalize` for that.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np
import scipy.linalg
from scipy.spatial.transform import Rotation

from .errors import (
    MixedFamilies,
    NotIdentityComponent,
    NotLorentz,
    NotOrthogonal,
    SuperluminalBeta,
)
from .spacetime import MINKOWSKI_GRAM, Event, FourVector

TOL_GROUP = 1e-9

G = MINKOWSKI_GRAM


def _frozen(a, shape) -> np.ndarray:
    a = np.array(a, dtype=float).reshape(shape)
    if not np.all(np.isfinite(a)):
        raise ValueError(f"non-finite entries in array of shape {shape}")
    a.setflags(write=False)
    return a


# ---------------------------------------------------------------------------
# matrix-level validation


def check_rotation(A, full_group: bool = False, tol: float = TOL_GROUP) -> np.ndarray:
    """Validate a 3x3 orthogonal matrix and return it as a read-only array."""
    A = _frozen(A, (3, 3))
    residual = np.max(np.abs(A.T @ A - np.eye(3)))
    if residual > tol:
        raise NotOrthogonal(f"|A^T A - I| = {residual:.3e} exceeds {tol:g}")
    if not full_group and np.linalg.det(A) < 0:
        raise NotIdentityComponent("det A = -1 is outside the identity component")
    return A


def check_lorentz(L, full_group: bool = False, tol: float = TOL_GROUP) -> np.ndarray:
    """Validate a 4x4 Lorentz matrix (``L^T G L = G``)."""
    L = _frozen(L, (4, 4))
    residual = np.max(np.abs(L.T @ G @ L - G))
    if residual > tol:
        raise NotLorentz(f"|L^T G L - G| = {residual:.3e} exceeds {tol:g}")
    if not full_group:
        if np.linalg.det(L) < 0:
            raise NotIdentityComponent("det L = -1 is outside the identity component")
        if L[3, 3] < 1.0 - tol:
            raise NotIdentityComponent(f"L[3,3] = {L[3, 3]:g} < 1: not orthochronous")
    return L


def _check_sign(s, full_group):
    if s not in (1, -1):
        raise ValueError(f"time_sign must be +1 or -1, got {s!r}")
    if s == -1 and not full_group:
        raise NotIdentityComponent("time reversal is outside the identity component")
    return int(s)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Rotation by ``angle`` radians about ``axis`` (right-hand rule)."""
    axis = np.asarray(axis, dtype=float)
    n = np.linalg.norm(axis)
    if n == 0:
        raise ValueError("rotation axis must be non-zero")
    return Rotation.from_rotvec(axis / n * angle).as_matrix()


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    return Rotation.random(random_state=rng).as_matrix()


def renormalize(m) -> np.ndarray:
    """Project a drifted 3x3 or 4x4 group matrix back onto its group.

    A 3x3 matrix is replaced by the orthogonal factor of its polar
    decomposition. A 4x4 matrix is split as ``boost @ R`` with the boost
    read off the image of the time axis, and ``R`` is cleaned the same way.
    """
    m = np.asarray(m, dtype=float)
    if m.shape == (3, 3):
        u, _ = scipy.linalg.polar(m)
        return u
    if m.shape == (4, 4):
        velocity = m[:3, 3] / m[3, 3]
        boost = standard_boost(velocity)
        r = inverse_lorentz(boost) @ m
        out = np.zeros((4, 4))
        out[:3, :3] = renormalize(r[:3, :3])
        out[3, 3] = np.sign(r[3, 3])
        return boost @ out
    raise ValueError(f"cannot renormalize a matrix of shape {m.shape}")


def inverse_lorentz(L) -> np.ndarray:
    """Exact inverse ``G L^T G`` of a Lorentz matrix."""
    L = np.asarray(L, dtype=float)
    return G @ L.T @ G


def standard_boost(beta) -> np.ndarray:
    """Pure boost with velocity ``beta`` (c = 1).

    Along x this is ``x' = k(x + b t)``, ``t' = k(t + b x)`` with
    ``k = 1/sqrt(1 - b^2)``; a general direction is the same map conjugated
    by a rotation taking ``beta`` onto the x-axis.
    """
    beta = np.asarray(beta, dtype=float).reshape(3)
    b2 = float(beta @ beta)
    if not b2 < 1.0:
        raise SuperluminalBeta(f"|beta| = {np.sqrt(b2):g} must be < 1")
    k = 1.0 / np.sqrt(1.0 - b2)
    L = np.eye(4)
    if b2 > 0:
        L[:3, :3] += (k - 1.0) * np.outer(beta, beta) / b2
    L[:3, 3] = k * beta
    L[3, :3] = k * beta
    L[3, 3] = k
    return L


def lorentz_rotation(A) -> np.ndarray:
    """Embed a 3x3 rotation as ``diag(A, 1)``."""
    L = np.eye(4)
    L[:3, :3] = A
    return L


def random_lorentz(rng: np.random.Generator, max_factors: int = 5,
                   max_speed: float = 0.8) -> np.ndarray:
    """Product of between 1 and ``max_factors`` random boosts and rotations."""
    L = np.eye(4)
    for _ in range(rng.integers(1, max_factors + 1)):
        if rng.random() < 0.5:
            direction = rng.normal(size=3)
            direction /= np.linalg.norm(direction)
            L = L @ standard_boost(direction * rng.uniform(0, max_speed))
        else:
            L = L @ lorentz_rotation(random_rotation(rng))
    return L


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True, eq=False)
class AristotleElement:
    """``(r, t) -> (A r + C, s t + e)``."""

    rotation: np.ndarray
    space_translation: np.ndarray
    time_translation: float = 0.0
    time_sign: int = 1
    full_group: bool = False
    tol: float = field(default=TOL_GROUP, repr=False)

    family = "aristotle"

    def __post_init__(self):
        object.__setattr__(self, "rotation", check_rotation(self.rotation, self.full_group, self.tol))
        object.__setattr__(self, "space_translation", _frozen(self.space_translation, (3,)))
        object.__setattr__(self, "time_translation", float(self.time_translation))
        object.__setattr__(self, "time_sign", _check_sign(self.time_sign, self.full_group))
        if not np.isfinite(self.time_translation):
            raise ValueError("time_translation must be finite")

    @property
    def boost_velocity(self) -> np.ndarray:
        return np.zeros(3)

    @property
    def matrix(self) -> np.ndarray:
        return _galilean_matrix(self.rotation, np.zeros(3), self.space_translation,
                                self.time_sign, self.time_translation)

    def apply(self, points) -> np.ndarray:
        return _apply_homogeneous(self.matrix, points)

    def to_dict(self) -> dict:
        return {
            "A": self.rotation.tolist(),
            "C": self.space_translation.tolist(),
            "e": self.time_translation,
            "sign": self.time_sign,
        }


@dataclass(frozen=True, eq=False)
class GalileiElement:
    """``(r, t) -> (A r + B t + C, s t + e)``."""

    rotation: np.ndarray
    boost_velocity: np.ndarray
    space_translation: np.ndarray
    time_translation: float = 0.0
    time_sign: int = 1
    full_group: bool = False
    tol: float = field(default=TOL_GROUP, repr=False)

    family = "galilei"

    def __post_init__(self):
        object.__setattr__(self, "rotation", check_rotation(self.rotation, self.full_group, self.tol))
        object.__setattr__(self, "boost_velocity", _frozen(self.boost_velocity, (3,)))
        object.__setattr__(self, "space_translation", _frozen(self.space_translation, (3,)))
        object.__setattr__(self, "time_translation", float(self.time_translation))
        object.__setattr__(self, "time_sign", _check_sign(self.time_sign, self.full_group))
        if not np.isfinite(self.time_translation):
            raise ValueError("time_translation must be finite")

    @property
    def matrix(self) -> np.ndarray:
        return _galilean_matrix(self.rotation, self.boost_velocity, self.space_translation,
                                self.time_sign, self.time_translation)

    def apply(self, points) -> np.ndarray:
        return _apply_homogeneous(self.matrix, points)

    def to_dict(self) -> dict:
        return {
            "A": self.rotation.tolist(),
            "B": self.boost_velocity.tolist(),
            "C": self.space_translation.tolist(),
            "e": self.time_translation,
            "sign": self.time_sign,
        }


@dataclass(frozen=True, eq=False)
class PoincareElement:
    """``X -> L X + C``."""

    lorentz: np.ndarray
    translation: np.ndarray
    full_group: bool = False
    tol: float = field(default=TOL_GROUP, repr=False)

    family = "poincare"

    def __post_init__(self):
        object.__setattr__(self, "lorentz", check_lorentz(self.lorentz, self.full_group, self.tol))
        C = self.translation
        if isinstance(C, FourVector):
            C = C.as_array()
        object.__setattr__(self, "translation", _frozen(C, (4,)))

    @property
    def matrix(self) -> np.ndarray:
        M = np.eye(5)
        M[:4, :4] = self.lorentz
        M[:4, 4] = self.translation
        return M

    def apply(self, points) -> np.ndarray:
        return _apply_homogeneous(self.matrix, points)

    def to_dict(self) -> dict:
        return {"L": self.lorentz.tolist(), "C": self.translation.tolist()}


Element = Union[AristotleElement, GalileiElement, PoincareElement]
FAMILIES = ("aristotle", "galilei", "poincare")


def _galilean_matrix(A, B, C, s, e) -> np.ndarray:
    M = np.eye(5)
    M[:3, :3] = A
    M[:3, 3] = B
    M[:3, 4] = C
    M[3, 3] = s
    M[3, 4] = e
    return M


def _apply_homogeneous(M, points) -> np.ndarray:
    P = np.asarray(points, dtype=float)
    single = P.ndim == 1
    P = np.atleast_2d(P)
    out = P @ M[:4, :4].T + M[:4, 4]
    return out[0] if single else out


# ---------------------------------------------------------------------------
# constructors


def make_aristotle(A, C, e: float = 0.0, time_sign: int = 1, *,
                   full_group: bool = False, tol: float = TOL_GROUP) -> AristotleElement:
    return AristotleElement(A, C, e, time_sign, full_group, tol)


def make_galilei(A, B, C, e: float = 0.0, time_sign: int = 1, *,
                 full_group: bool = False, tol: float = TOL_GROUP) -> GalileiElement:
    return GalileiElement(A, B, C, e, time_sign, full_group, tol)


def make_poincare(L, C=None, *, full_group: bool = False,
                  tol: float = TOL_GROUP) -> PoincareElement:
    if C is None:
        C = np.zeros(4)
    return PoincareElement(L, C, full_group, tol)


def boost(beta) -> PoincareElement:
    """Poincare element for the pure boost :func:`standard_boost`."""
    return make_poincare(standard_boost(beta))


def identity(family: str) -> Element:
    if family == "aristotle":
        return make_aristotle(np.eye(3), np.zeros(3))
    if family == "galilei":
        return make_galilei(np.eye(3), np.zeros(3), np.zeros(3))
    if family == "poincare":
        return make_poincare(np.eye(4))
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def embed_aristotle(g: AristotleElement) -> GalileiElement:
    """View an Aristotle element as a Galilei element with zero boost."""
    return GalileiElement(g.rotation, np.zeros(3), g.space_translation,
                          g.time_translation, g.time_sign, g.full_group, g.tol)


def project_aristotle(g: GalileiElement, tol: float = 0.0) -> AristotleElement:
    """Inverse of :func:`embed_aristotle`; the boost must vanish."""
    if np.max(np.abs(g.boost_velocity)) > tol:
        raise ValueError("element has a non-zero boost and is not an Aristotle element")
    return AristotleElement(g.rotation, g.space_translation, g.time_translation,
                            g.time_sign, g.full_group, g.tol)


def _from_matrix(family, M, full_group, tol):
    if family == "poincare":
        return PoincareElement(M[:4, :4], M[:4, 4], full_group, tol)
    s = 1 if M[3, 3] > 0 else -1
    if family == "aristotle":
        return AristotleElement(M[:3, :3], M[:3, 4], M[3, 4], s, full_group, tol)
    return GalileiElement(M[:3, :3], M[:3, 3], M[:3, 4], M[3, 4], s, full_group, tol)


def _common_family(g1, g2):
    f1, f2 = g1.family, g2.family
    if f1 == f2:
        return g1, g2
    if {f1, f2} == {"aristotle", "galilei"}:
        if f1 == "aristotle":
            return embed_aristotle(g1), g2
        return g1, embed_aristotle(g2)
    raise MixedFamilies(f"cannot combine {f1} and {f2} elements")


def compose(g1: Element, g2: Element) -> Element:
    """Element acting as ``g1`` after ``g2``.

    Aristotle elements are promoted to Galilei when mixed with one; the
    product is re-validated.
    """
    g1, g2 = _common_family(g1, g2)
    full = g1.full_group or g2.full_group
    return _from_matrix(g1.family, g1.matrix @ g2.matrix, full, max(g1.tol, g2.tol))


def inverse(g: Element) -> Element:
    if isinstance(g, PoincareElement):
        Li = inverse_lorentz(g.lorentz)
        return PoincareElement(Li, -Li @ g.translation, g.full_group, g.tol)
    At = g.rotation.T
    s, e = g.time_sign, g.time_translation
    C = g.space_translation
    if isinstance(g, AristotleElement):
        return AristotleElement(At, -At @ C, -s * e, s, g.full_group, g.tol)
    AtB = At @ g.boost_velocity
    return GalileiElement(At, -s * AtB, s * e * AtB - At @ C, -s * e, s,
                          g.full_group, g.tol)


def act_event(g: Element, q: Event) -> Event:
    return Event.from_array(g.apply(q.as_array()))


def act_vector(g: Element, v: FourVector) -> FourVector:
    """Linear part of ``g`` applied to a displacement."""
    return FourVector.from_array(g.matrix[:4, :4] @ v.as_array())


def element_from_dict(family: str, d: dict, *, full_group: bool = False,
                      tol: float = TOL_GROUP) -> Element:
    """Decode the JSON encoding produced by ``to_dict``."""
    if family == "aristotle":
        return make_aristotle(d["A"], d["C"], d["e"], d.get("sign", 1),
                              full_group=full_group, tol=tol)
    if family == "galilei":
        return make_galilei(d["A"], d["B"], d["C"], d["e"], d.get("sign", 1),
                            full_group=full_group, tol=tol)
    if family == "poincare":
        return make_poincare(d["L"], d["C"], full_group=full_group, tol=tol)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def random_element(family: str, rng: np.random.Generator, scale: float = 5.0) -> Element:
    """Random identity-component element, used by the oracles and tests."""
    A = random_rotation(rng)
    C = rng.uniform(-scale, scale, size=3)
    e = rng.uniform(-scale, scale)
    if family == "aristotle":
        return make_aristotle(A, C, e)
    if family == "galilei":
        return make_galilei(A, rng.uniform(-scale, scale, size=3), C, e)
    if family == "poincare":
        return make_poincare(random_lorentz(rng), rng.uniform(-scale, scale, size=4))
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


# ---------------------------------------------------------------------------
# Lorentz decomposition


@dataclass(frozen=True, eq=False)
class BoostDecomposition:
    """``L = [[I, beta], [beta^T, 1]] @ [[inv(B), 0], [0, a]]``."""

    beta: np.ndarray
    rot_inverse: np.ndarray
    time_factor: float

    def reconstruct(self) -> np.ndarray:
        left = np.eye(4)
        left[:3, 3] = self.beta
        left[3, :3] = self.beta
        right = np.zeros((4, 4))
        right[:3, :3] = np.linalg.inv(self.rot_inverse)
        right[3, 3] = self.time_factor
        return left @ right

    def condition_residual(self) -> float:
        """``max |B^T B + beta beta^T - I|``."""
        B, b = self.rot_inverse, self.beta
        return float(np.max(np.abs(B.T @ B + np.outer(b, b) - np.eye(3))))

    def to_dict(self) -> dict:
        return {"beta": self.beta.tolist(), "B": self.rot_inverse.tolist(),
                "a": self.time_factor}


def boost_decompose(L, *, full_group: bool = True, tol: float = TOL_GROUP) -> BoostDecomposition:
    """Split a Lorentz matrix into its velocity ``beta``, ``B`` and ``a``.

    ``a`` is ``L[3,3]``, ``beta`` the last column's spatial part divided by
    ``a`` and ``B`` the inverse of the spatial block. The four connected
    components are all accepted unless ``full_group=False``.
    """
    if isinstance(L, PoincareElement):
        L = L.lorentz
    L = check_lorentz(L, full_group, tol)
    a = float(L[3, 3])
    beta = _frozen(L[:3, 3] / a, (3,))
    B = _frozen(np.linalg.inv(L[:3, :3]), (3, 3))
    return BoostDecomposition(beta, B, a)


def boost_velocity(g: PoincareElement) -> np.ndarray:
    """Velocity ``beta`` of the boost factor of a Poincare element."""
    return boost_decompose(g.lorentz).beta
