"""Finite, executable checks behind the structural no-go results.

The oracles work on generator sets rather than whole groups. This is enough
because every group element is a product of generators: a line fixed by
each generator is fixed by every product of them, and a commutator subalgebra
computed from a basis is the commutator subalgebra of the whole Lie algebra.
Conversely a line moved by some generator is not invariant under the group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np
import scipy.linalg

from .errors import (
    DegenerateSpan,
    NotClosed,
    NotDistancePreserving,
    SuperluminalBeta,
)
from .groups import Element, make_galilei, rotation_matrix, standard_boost
from .spacetime import Event, FourVector, quadratic_form, sheet_distance_via

RANK_CUTOFF = 1e-9
LINE_TOL = 1e-9


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


@dataclass(frozen=True)
class OracleReport:
    verdict: str
    witness: Any = None
    detail: str = ""

    def __post_init__(self):
        if self.verdict not in ("pass", "fail"):
            raise ValueError(f"verdict must be 'pass' or 'fail', got {self.verdict!r}")
        if self.verdict == "fail" and self.witness is None:
            raise ValueError("a failing report must carry a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "witness": _jsonable(self.witness),
                "detail": self.detail}


def numerical_rank(M, cutoff: float = RANK_CUTOFF) -> int:
    """Rank with singular values below ``cutoff * s_max`` treated as zero."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > cutoff * s[0]))


# ---------------------------------------------------------------------------
# Euclidean isometries


def fit_isometry(pairs: Sequence, tol: float = 1e-9):
    """Recover ``r -> A r + C`` from point correspondences.

    Parameters
    ----------
    pairs : sequence of (source, image)
        At least four 3-vectors pairs whose sources affinely span space.
    tol : float
        Allowed mismatch between corresponding pairwise distances.

    Returns
    -------
    A : ndarray, shape (3, 3)
        Orthogonal linear part.
    C : ndarray, shape (3,)
    residual : float
        ``max |A src + C - dst|`` over the pairs.
    """
    src = np.array([p[0] for p in pairs], dtype=float).reshape(-1, 3)
    dst = np.array([p[1] for p in pairs], dtype=float).reshape(-1, 3)
    if len(src) < 4:
        raise DegenerateSpan(f"need at least 4 point pairs, got {len(src)}")
    X = src - src[0]
    Y = dst - dst[0]
    if numerical_rank(X) < 3:
        raise DegenerateSpan("source points do not affinely span 3-space")
    for i, j in itertools.combinations(range(len(src)), 2):
        d_src = np.linalg.norm(src[i] - src[j])
        d_dst = np.linalg.norm(dst[i] - dst[j])
        if abs(d_src - d_dst) > tol * (1 + d_src):
            raise NotDistancePreserving(
                f"pair ({i}, {j}): source distance {d_src:g} vs image distance {d_dst:g}")
    At, *_ = np.linalg.lstsq(X, Y, rcond=None)
    A, _ = scipy.linalg.polar(At.T)
    C = dst[0] - A @ src[0]
    residual = float(np.max(np.linalg.norm(src @ A.T + C - dst, axis=1)))
    return A, C, residual


# ---------------------------------------------------------------------------
# invariant lines of a linear representation


@dataclass(frozen=True, eq=False)
class LinearRep:
    generators: tuple
    label: str = ""

    def __post_init__(self):
        gens = tuple(np.array(g, dtype=float) for g in self.generators)
        if not gens:
            raise ValueError("a representation needs at least one generator")
        n = gens[0].shape[0]
        for g in gens:
            if g.shape != (n, n):
                raise ValueError("generators must be square matrices of equal size")
            if abs(np.linalg.det(g)) <= 1e-12:
                raise ValueError("generators must be invertible")
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self) -> int:
        return self.generators[0].shape[0]


def _stabilizer_rotation(axis):
    g = np.eye(4)
    g[:3, :3] = rotation_matrix(np.eye(3)[axis], np.pi / 2)
    return g


def _stabilizer_boost(axis):
    g = np.eye(4)
    g[axis, 3] = 1.0
    return g


def galilean_stabilizer_rep() -> LinearRep:
    """Linear action of the stabilizer of the origin on ``(v, eps)``.

    Generators: quarter turns about x, y, z as ``diag(A, 1)`` and unit boosts
    ``[[I, e_i], [0, 1]]``.
    """
    gens = [_stabilizer_rotation(i) for i in range(3)] + [_stabilizer_boost(i) for i in range(3)]
    return LinearRep(tuple(gens), "galilean stabilizer")


def rotations_only_rep() -> LinearRep:
    return LinearRep(tuple(_stabilizer_rotation(i) for i in range(3)), "rotations only")


@dataclass(frozen=True, eq=False)
class InvariantLines:
    """Common invariant lines of a representation.

    ``degenerate`` is set when some common eigenspace has dimension above
    one; every line inside it is invariant and ``lines`` then only lists a
    basis of it.
    """

    lines: tuple
    subspaces: tuple
    degenerate: bool

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __getitem__(self, i):
        return self.lines[i]


def _real_eigenvalues(g, tol=1e-7):
    vals = np.linalg.eigvals(g)
    real = sorted(v.real for v in vals if abs(v.imag) <= tol * max(1.0, abs(v)))
    clustered = []
    for v in real:
        if not clustered or abs(v - clustered[-1]) > tol * max(1.0, abs(v)):
            clustered.append(v)
    return clustered


def _canonical_sign(v):
    lead = v[np.flatnonzero(np.abs(v) > LINE_TOL)[0]]
    return (v if lead > 0 else -v) + 0.0


def _moves_line(g, v, tol=LINE_TOL):
    w = g @ v
    w_perp = w - (w @ v) * v
    return np.linalg.norm(w_perp) > tol * max(1.0, np.linalg.norm(w))


def invariant_lines(rep: LinearRep) -> InvariantLines:
    """All lines mapped to themselves by every generator.

    A line is invariant under ``g`` iff it is spanned by a real eigenvector
    of ``g``. Starting from the eigenspaces of the first generator, each
    candidate subspace is intersected with the real eigenspaces of the next
    generator; what survives consists of common eigenvectors.
    """
    n = rep.dim
    subspaces = [np.eye(n)]
    for g in rep.generators:
        refined = []
        for W in subspaces:
            for lam in _real_eigenvalues(g):
                N = scipy.linalg.null_space((g - lam * np.eye(n)) @ W, rcond=LINE_TOL)
                if N.shape[1]:
                    refined.append(scipy.linalg.orth(W @ N))
        subspaces = refined
        if not subspaces:
            break
    lines = []
    for W in subspaces:
        for v in W.T:
            v = _canonical_sign(v / np.linalg.norm(v))
            if not any(_moves_line(g, v) for g in rep.generators):
                lines.append(v)
    degenerate = any(W.shape[1] > 1 for W in subspaces)
    return InvariantLines(tuple(lines), tuple(subspaces), degenerate)


# ---------------------------------------------------------------------------
# Lie algebras in the 5x5 affine representation


@dataclass(frozen=True, eq=False)
class LieAlgebraBasis:
    elements: tuple
    names: tuple = ()

    def __post_init__(self):
        els = tuple(np.array(e, dtype=float).reshape(5, 5) for e in self.elements)
        for e in els:
            if np.any(e[4] != 0):
                raise ValueError("affine Lie algebra elements must have a zero last row")
        if numerical_rank(np.array([e.ravel() for e in els])) != len(els):
            raise ValueError("basis elements are linearly dependent")
        object.__setattr__(self, "elements", els)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"X{i}" for i in range(len(els))))

    def __len__(self):
        return len(self.elements)

    def subset(self, names: Iterable[str]) -> LieAlgebraBasis:
        names = list(names)
        idx = [self.names.index(n) for n in names]
        return LieAlgebraBasis(tuple(self.elements[i] for i in idx), tuple(names))


def _unit(i, j):
    m = np.zeros((5, 5))
    m[i, j] = 1.0
    return m


def _rotation_generators():
    # d/dtheta of the rotation about axis i at theta = 0
    return [_unit(2, 1) - _unit(1, 2), _unit(0, 2) - _unit(2, 0), _unit(1, 0) - _unit(0, 1)]


def _translation_generators():
    return [_unit(i, 4) for i in range(3)] + [_unit(3, 4)]


_NAMES = ("J1", "J2", "J3", "K1", "K2", "K3", "P1", "P2", "P3", "H")


def poincare_lie_basis() -> LieAlgebraBasis:
    boosts = [_unit(i, 3) + _unit(3, i) for i in range(3)]
    return LieAlgebraBasis(tuple(_rotation_generators() + boosts + _translation_generators()), _NAMES)


def galilei_lie_basis() -> LieAlgebraBasis:
    boosts = [_unit(i, 3) for i in range(3)]
    return LieAlgebraBasis(tuple(_rotation_generators() + boosts + _translation_generators()), _NAMES)


def bracket(X, Y) -> np.ndarray:
    return X @ Y - Y @ X


def derived_algebra_rank(basis: LieAlgebraBasis, cutoff: float = RANK_CUTOFF) -> int:
    """Dimension of the span of all brackets ``[X, Y]`` of basis elements.

    Raises
    ------
    NotClosed
        If some bracket is not in the span of ``basis``.
    """
    V = np.array([e.ravel() for e in basis.elements]).T
    brackets = []
    for (i, X), (j, Y) in itertools.combinations(enumerate(basis.elements), 2):
        b = bracket(X, Y).ravel()
        coeffs, *_ = np.linalg.lstsq(V, b, rcond=None)
        if np.linalg.norm(V @ coeffs - b) > cutoff * max(1.0, np.linalg.norm(b)):
            raise NotClosed(f"[{basis.names[i]}, {basis.names[j]}] leaves the span")
        brackets.append(b)
    if not brackets:
        return 0
    return numerical_rank(np.array(brackets), cutoff)


def abelian_character_dimension(basis: LieAlgebraBasis) -> int:
    """Dimension of the space of linear functionals that vanish on brackets.

    These are the candidate differentials of homomorphisms onto ``(R, +)``.
    """
    return len(basis) - derived_algebra_rank(basis)


def galilei_time_homomorphism(g: Element) -> float:
    """``g -> e``: the date shift of an orientation-preserving Galilei element."""
    if g.family not in ("aristotle", "galilei"):
        raise ValueError("the time homomorphism is defined on Galilei elements only")
    if g.time_sign != 1:
        raise ValueError("the time homomorphism is only additive on time_sign = +1")
    return g.time_translation


# ---------------------------------------------------------------------------
# translation functionals


CANONICAL_FUNCTIONAL_PAIRS = (
    ((0, 0, 0, 0), (0, 0, 0, 0)),
    ((1, 0, 0, 0), (-1, 0, 0, 0)),
    ((1, 0, 0, 0), (0, 1, 0, 0)),
    ((0, 0, 0, 1), (0, 0, 0, -1)),
    ((0, 0, 0, 1), (0, 0, 0, 1)),
    ((1, 0, 0, 0), (0, 0, 0, 1)),
)


def _as4(v):
    return v.as_array() if isinstance(v, FourVector) else np.asarray(v, dtype=float).reshape(4)


def functional_constraints(pairs: Iterable, digits: int = 12):
    """Linear system ``F(Q(C + C')) - F(Q(C)) - F(Q(C')) = 0``.

    Unknowns are the values of ``F`` at each distinct form value (rounded
    to ``digits``), which already identifies vectors in one Lorentz orbit.

    Returns
    -------
    values : list of float
        Form values indexing the columns.
    M : ndarray, shape (len(pairs), len(values))
    """
    rows = []
    index: dict[float, int] = {}
    for C, C2 in pairs:
        C, C2 = _as4(C), _as4(C2)
        terms = [(round(quadratic_form(C + C2), digits), 1.0),
                 (round(quadratic_form(C), digits), -1.0),
                 (round(quadratic_form(C2), digits), -1.0)]
        row = {}
        for s, coef in terms:
            s = s + 0.0  # fold -0.0 into 0.0
            index.setdefault(s, len(index))
            row[index[s]] = row.get(index[s], 0.0) + coef
        rows.append(row)
    M = np.zeros((len(rows), len(index)))
    for r, row in enumerate(rows):
        for c, coef in row.items():
            M[r, c] = coef
    return list(index), M


def translation_functional_obstruction(samples: Iterable = (), *,
                                       include_canonical: bool = True) -> OracleReport:
    """Pass iff additivity forces ``F = 0`` at every sampled form value."""
    pairs = list(CANONICAL_FUNCTIONAL_PAIRS) if include_canonical else []
    pairs += list(samples)
    values, M = functional_constraints(pairs)
    rank = numerical_rank(M)
    if rank == len(values):
        return OracleReport("pass", {"values": values, "rank": rank},
                            "additivity forces F = 0 on every sampled form value")
    kernel = scipy.linalg.null_space(M)[:, 0]
    return OracleReport("fail", {"values": values, "kernel": kernel},
                        "a non-zero assignment of F satisfies every sampled constraint")


# ---------------------------------------------------------------------------
# simultaneity


def simultaneity_gap(beta, separation) -> float:
    """Date difference after boosting two events that were simultaneous.

    The events are the origin and ``(separation, 0)``; the gap equals
    ``k * (beta . separation)``.
    """
    L = standard_boost(beta)
    q2 = np.append(np.asarray(separation, dtype=float).reshape(3), 0.0)
    return float((L @ q2)[3] - (L @ np.zeros(4))[3])


def simultaneity_counterexample(beta, family: str = "poincare") -> OracleReport:
    """Search for simultaneous events whose images are not simultaneous.

    For ``"poincare"`` the report passes when such a pair is found (the
    candidate separations are the coordinate axes; a separation orthogonal
    to ``beta`` yields no gap). For ``"galilei"`` the boost ``beta`` may be
    any velocity and the report passes when no pair exists, which holds for
    every pair at once since the time row of the matrix has no spatial part.
    """
    beta = np.asarray(beta, dtype=float).reshape(3)
    if family == "galilei":
        g = make_galilei(np.eye(3), beta, np.zeros(3), 0.0)
        time_row = g.matrix[3, :4]
        ok = np.all(time_row[:3] == 0.0) and abs(time_row[3]) == 1.0
        return OracleReport("pass" if ok else "fail", {"time_row": time_row},
                            "Galilei boosts keep every sheet of simultaneous events")
    if family != "poincare":
        raise ValueError(f"family must be 'poincare' or 'galilei', got {family!r}")
    b = float(np.linalg.norm(beta))
    if b == 0:
        raise ValueError("beta must be non-zero")
    if b >= 1:
        raise SuperluminalBeta(f"|beta| = {b:g} must be < 1")
    k = 1 / np.sqrt(1 - b * b)
    for axis in range(3):
        u = np.eye(3)[axis]
        gap = simultaneity_gap(beta, u)
        if gap != 0.0:
            predicted = k * float(beta @ u)
            ok = abs(gap - predicted) <= 1e-12 * max(1.0, abs(predicted))
            witness = {"q": Event(0, 0, 0, 0).to_dict(), "q2": Event(*u, 0).to_dict(),
                       "dt_before": 0.0, "dt_after": gap, "k": k}
            return OracleReport("pass" if ok else "fail", witness,
                                "boost separates simultaneous events")
    return OracleReport("fail", {"beta": beta}, "no counterexample found on the axes")


# ---------------------------------------------------------------------------
# distance family


def distance_family_consistency(trials: int = 1000, seed: int = 0,
                                tol: float = 1e-12) -> OracleReport:
    """Sheet distances do not depend on the transverse vector used to reach t = 0."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    worst = 0.0
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        t = rng.uniform(-10, 10)
        q = Event(*rng.uniform(-10, 10, 3), t)
        q2 = Event(*rng.uniform(-10, 10, 3), t)
        K = FourVector(*rng.uniform(-10, 10, 3), t)
        K2 = K + FourVector(*rng.uniform(-10, 10, 3), 0.0)
        diff = abs(sheet_distance_via(q, q2, K) - sheet_distance_via(q, q2, K2))
        if diff > tol:
            return OracleReport("fail", {"trial": i, "difference": diff, "q": q.to_dict(),
                                         "q2": q2.to_dict()},
                                "sheet distance depends on the translation")
        worst = max(worst, diff)
    return OracleReport("pass", {"trials": trials, "max_difference": worst},
                        "sheet distance independent of the transverse translation")
