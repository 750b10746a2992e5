"""The full battery of oracles run by ``inertia verify``."""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import groups, verify
from .relativity import ShipDropSpec, ship_drop
from .verify import OracleReport


def _rng(seed, *key):
    # one independent stream per (oracle, trial) so order never matters
    return np.random.default_rng([seed, *key])


def _isometries(trials, seed):
    worst = 0.0
    for i in range(trials):
        rng = _rng(seed, 0, i)
        A = groups.random_rotation(rng)
        if rng.random() < 0.5:
            A = A @ np.diag([1.0, 1.0, -1.0])
        C = rng.uniform(-10, 10, 3)
        src = rng.normal(size=(6, 3)) * 5
        A_fit, C_fit, residual = verify.fit_isometry([(p, A @ p + C) for p in src])
        err = max(residual, np.max(np.abs(A_fit - A)), np.max(np.abs(C_fit - C)))
        if err > 1e-8:
            return OracleReport("fail", {"trial": i, "error": err}, "isometry not recovered")
        worst = max(worst, err)
    try:
        src = np.vstack([np.zeros(3), np.eye(3)])
        verify.fit_isometry([(p, 2 * p) for p in src])
    except verify.NotDistancePreserving:
        return OracleReport("pass", {"trials": trials, "max_error": worst},
                            "isometries recovered; scaling rejected")
    return OracleReport("fail", {"map": "r -> 2r"}, "scaling accepted as an isometry")


def _no_space(trials, seed):
    full = verify.invariant_lines(verify.galilean_stabilizer_rep())
    control = verify.invariant_lines(verify.rotations_only_rep())
    eps_axis = np.array([0.0, 0.0, 0.0, 1.0])
    ok = (len(full) == 0 and len(control) == 1 and not control.degenerate
          and np.allclose(control[0], eps_axis, atol=1e-12))
    return OracleReport("pass" if ok else "fail",
                        {"stabilizer_lines": list(full), "rotation_lines": list(control)},
                        "no line is invariant under the Galilean stabilizer")


def _no_time(trials, seed):
    p = verify.derived_algebra_rank(verify.poincare_lie_basis())
    g = verify.derived_algebra_rank(verify.galilei_lie_basis())
    ok = (p, g) == (10, 9)
    for i in range(trials):
        rng = _rng(seed, 2, i)
        a, b = groups.random_element("galilei", rng), groups.random_element("galilei", rng)
        lhs = verify.galilei_time_homomorphism(groups.compose(a, b))
        rhs = verify.galilei_time_homomorphism(a) + verify.galilei_time_homomorphism(b)
        if lhs != rhs:
            ok = False
            break
    return OracleReport("pass" if ok else "fail",
                        {"poincare_derived_rank": p, "galilei_derived_rank": g,
                         "poincare_characters": 10 - p, "galilei_characters": 10 - g},
                        "Poincare algebra is perfect; Galilei keeps the time character")


def _simultaneity(trials, seed):
    witnesses = []
    for b in np.round(np.arange(1, 10) / 10, 1):
        r = verify.simultaneity_counterexample((b, 0.0, 0.0))
        if not r.passed:
            return r
        witnesses.append(r.witness["dt_after"])
        rg = verify.simultaneity_counterexample((b * 10, 0.0, 0.0), family="galilei")
        if not rg.passed:
            return rg
    return OracleReport("pass", {"gaps": witnesses},
                        "Lorentz boosts break simultaneity; Galilei boosts do not")


def _decomposition(trials, seed):
    worst = 0.0
    for i in range(trials):
        L = groups.random_lorentz(_rng(seed, 4, i))
        d = groups.boost_decompose(L)
        b2 = float(d.beta @ d.beta)
        errs = (d.condition_residual(), abs(d.time_factor - 1 / np.sqrt(1 - b2)))
        rec = float(np.max(np.abs(d.reconstruct() - L)))
        if not (b2 < 1 and max(errs) <= 1e-9 and rec <= 1e-10):
            return OracleReport("fail", {"trial": i, "L": L}, "decomposition conditions violated")
        worst = max(worst, rec)
    return OracleReport("pass", {"trials": trials, "max_reconstruction_error": worst},
                        "every Lorentz matrix splits into boost and rotation")


def _ship(trials, seed):
    for i in range(trials):
        rng = _rng(seed, 5, i)
        spec = ShipDropSpec(rng.uniform(-20, 20, 3), rng.uniform(1, 50), rng.uniform(0.1, 5))
        for shore in (False, True):
            r = ship_drop(spec, shore_thrown=shore)
            if not r.passed:
                return r
    return OracleReport("pass", {"trials": trials},
                        "the stone lands at the mast whatever the ship's speed")


def _functional(trials, seed):
    return verify.translation_functional_obstruction()


def _distances(trials, seed):
    return verify.distance_family_consistency(trials, seed)


ORACLES: list[tuple[str, Callable[[int, int], OracleReport]]] = [
    ("isometry-characterization", _isometries),
    ("no-galilean-space", _no_space),
    ("no-einsteinian-time", _no_time),
    ("translation-functional", _functional),
    ("simultaneity-breaking", _simultaneity),
    ("distance-family", _distances),
    ("lorentz-decomposition", _decomposition),
    ("ship-drop", _ship),
]


def run_all(trials: int = 200, seed: int = 0) -> list[tuple[str, OracleReport]]:
    """Run every oracle in a fixed order."""
    return [(name, fn(trials, seed)) for name, fn in ORACLES]
