"""Exit criteria: one test per criterion, each reporting a PASS/FAIL line."""

import json
import math

import numpy as np
import pytest
import scipy.linalg

from inertia import groups, motions, relativity, verify
from inertia.cli import CliConfig, parse_element, run
from inertia.groups import act_event, compose, identity, inverse
from inertia.spacetime import Event, FourVector, are_simultaneous, duration, quadratic_form, sheet_distance

from conftest import ACCEPTANCE_LINES

N = 500
GRID = [round(0.1 * i, 1) for i in range(1, 10)]


@pytest.fixture
def record(request):
    def _record(number, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        assert ok, line
    return _record


def maxdiff(a, b):
    return float(np.max(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))))


def test_01_group_axioms(record):
    worst = 0.0
    for family in ("aristotle", "galilei", "poincare"):
        rng = np.random.default_rng(1)
        e = identity(family)
        for _ in range(N):
            g1, g2, g3 = (groups.random_element(family, rng) for _ in range(3))
            worst = max(
                worst,
                maxdiff(compose(compose(g1, g2), g3).matrix, compose(g1, compose(g2, g3)).matrix),
                maxdiff(compose(g1, e).matrix, g1.matrix),
                maxdiff(compose(e, g1).matrix, g1.matrix),
                maxdiff(compose(g1, inverse(g1)).matrix, np.eye(5)),
                maxdiff(compose(inverse(g1), g1).matrix, np.eye(5)),
            )
    record(1, worst <= 1e-10, f"group axioms, 3 x {N} triples, max error {worst:.2e} <= 1e-10")


def test_02_structure_preservation(record):
    rng = np.random.default_rng(2)
    worst = {"aristotle": 0.0, "galilei": 0.0, "poincare": 0.0}
    for _ in range(N):
        a = groups.random_element("aristotle", rng)
        r = rng.normal(size=3)
        rest = [act_event(a, Event(*r, t)).position for t in rng.normal(size=3)]
        t = rng.normal()
        q, q2 = Event(*rng.normal(size=3), t), Event(*rng.normal(size=3), t)
        worst["aristotle"] = max(
            worst["aristotle"], maxdiff(rest[0], rest[1]), maxdiff(rest[0], rest[2]),
            abs(sheet_distance(act_event(a, q), act_event(a, q2), 1e-9) - sheet_distance(q, q2)))

        g = groups.random_element("galilei", rng)
        q3 = Event(*rng.normal(size=4))
        gq, gq2, gq3 = act_event(g, q), act_event(g, q2), act_event(g, q3)
        worst["galilei"] = max(
            worst["galilei"], abs(gq.t - gq2.t),
            abs(sheet_distance(gq, gq2, 1e-9) - sheet_distance(q, q2)),
            abs(duration(gq, gq3) - duration(q, q3)))

        p = groups.random_element("poincare", rng)
        x, y = Event(*rng.normal(size=4)), Event(*rng.normal(size=4))
        qf = quadratic_form(y - x)
        worst["poincare"] = max(
            worst["poincare"],
            abs(quadratic_form(act_event(p, y) - act_event(p, x)) - qf) / (1 + abs(qf)))
    ok = max(worst.values()) <= 1e-9
    record(2, ok, "structure preservation, " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))


def test_03_lorentz_decomposition(record):
    worst_cond = worst_a = worst_rec = 0.0
    max_beta = 0.0
    for i in range(N):
        L = groups.random_lorentz(np.random.default_rng([3, i]), max_factors=5)
        d = groups.boost_decompose(L)
        b2 = float(d.beta @ d.beta)
        max_beta = max(max_beta, math.sqrt(b2))
        worst_cond = max(worst_cond, d.condition_residual())
        worst_a = max(worst_a, abs(d.time_factor - 1 / math.sqrt(1 - b2)))
        worst_rec = max(worst_rec, maxdiff(d.reconstruct(), L))
    ok = max_beta < 1 and worst_cond <= 1e-9 and worst_a <= 1e-9 and worst_rec <= 1e-10
    record(3, ok, f"decomposition of {N} L: condition {worst_cond:.1e}, a {worst_a:.1e}, "
                  f"reconstruction {worst_rec:.1e}, max |beta| {max_beta:.3f}")


def test_04_velocity_addition(record):
    worst = 0.0
    for v in GRID:
        for w in GRID:
            g = compose(groups.boost([v, 0, 0]), groups.boost([w, 0, 0]))
            beta = float(groups.boost_velocity(g)[0])
            worst = max(worst, abs(beta - (v + w) / (1 + v * w)))
    desk = float(groups.boost_velocity(compose(groups.boost([0.5, 0, 0]), groups.boost([0.5, 0, 0])))[0])
    formula = relativity.velocity_addition(0.5, 0.5, 1.0)
    ok = worst <= 1e-12 and abs(desk - 0.8) <= 1e-15 and abs(formula - 0.8) <= 1e-15
    record(4, ok, f"9x9 boost composition vs (v+w)/(1+vw) max {worst:.1e}; 0.5+0.5 -> {desk!r}")


def test_05_proper_time(record):
    twin = motions.Worldline.from_points([(0, 0, 0, 0), (3, 0, 0, 5), (0, 0, 0, 10)])
    tau = motions.proper_time(twin)
    dil = 2 * relativity.time_dilation(5, 0.6, 1)
    light = [motions.proper_time(motions.Worldline.from_points([(0, 0, 0, 0), p]))
             for p in [(1, 0, 0, 1), (0, -2, 0, 2), (0.6, 0, 0.8, 1)]]
    ok = abs(tau - 8.0) <= 1e-12 and abs(tau - dil) <= 1e-12 and all(x == 0.0 for x in light)
    record(5, ok, f"twin proper time {tau!r} vs 2*dilation {dil!r}; light segments {light}")


def test_06_michelson_compensation(record):
    worst_comp = worst_ratio = 0.0
    for beta in [0.0] + GRID:
        d = 1.0
        report = relativity.michelson_paths(relativity.InterferometerSpec(d, beta))
        contracted = relativity.michelson_paths(
            relativity.InterferometerSpec(relativity.length_contraction(d, beta), beta))
        worst_comp = max(worst_comp, abs(contracted.longitudinal - report.transverse) / report.transverse)
        worst_ratio = max(worst_ratio, abs(report.longitudinal / report.transverse
                                           - 1 / math.sqrt(1 - beta ** 2)))
    ok = worst_comp <= 1e-12 and worst_ratio <= 1e-12
    record(6, ok, f"contracted d_l vs d_t rel {worst_comp:.1e}; ratio {worst_ratio:.1e}")


def test_07_no_space(record):
    full = verify.invariant_lines(verify.galilean_stabilizer_rep())
    control = verify.invariant_lines(verify.rotations_only_rep())
    ok = (len(full) == 0 and not full.degenerate and len(control) == 1
          and not control.degenerate and maxdiff(control[0], [0, 0, 0, 1]) <= 1e-12)
    record(7, ok, f"stabilizer invariant lines: {len(full)}; rotations-only: "
                  f"{[np.round(v, 12).tolist() for v in control]}")


def test_08_no_time(record):
    p_basis, g_basis = verify.poincare_lie_basis(), verify.galilei_lie_basis()
    p_rank, g_rank = verify.derived_algebra_rank(p_basis), verify.derived_algebra_rank(g_basis)

    def character_dim(basis):
        # functionals on the algebra (coordinates in the basis) killing every bracket
        V = np.array([e.ravel() for e in basis.elements]).T
        coords = [np.linalg.lstsq(V, verify.bracket(X, Y).ravel(), rcond=None)[0]
                  for X in basis.elements for Y in basis.elements]
        return scipy.linalg.null_space(np.array(coords), rcond=1e-9).shape[1]

    p_dim, g_dim = character_dim(p_basis), character_dim(g_basis)
    rng = np.random.default_rng(8)
    additive = True
    for _ in range(N):
        a, b = groups.random_element("galilei", rng), groups.random_element("galilei", rng)
        phi = verify.galilei_time_homomorphism
        additive &= phi(compose(a, b)) == phi(a) + phi(b)
    ok = (p_rank, g_rank, p_dim, g_dim) == (10, 9, 0, 1) and additive
    record(8, ok, f"derived ranks Poincare {p_rank}, Galilei {g_rank}; character dims "
                  f"{p_dim}, {g_dim}; time homomorphism additive on {N} pairs: {additive}")


def test_09_simultaneity(record):
    worst = 0.0
    pre_ok = galilei_ok = True
    for beta in GRID:
        r = verify.simultaneity_counterexample([beta, 0, 0])
        w = r.witness
        pre_ok &= r.passed and w["dt_before"] == 0.0 and w["q"]["t"] == w["q2"]["t"]
        dx = w["q2"]["x"] - w["q"]["x"]
        k = 1 / math.sqrt(1 - beta ** 2)
        worst = max(worst, abs(w["dt_after"] - k * beta * dx))
        pre_ok &= w["dt_after"] != 0.0
        # Galilei: the date row of the action has no spatial part, so every pair keeps its gap
        g = groups.make_galilei(np.eye(3), [beta * 30, 0, 0], np.zeros(3))
        galilei_ok &= verify.simultaneity_counterexample([beta * 30, 0, 0], "galilei").passed
        galilei_ok &= bool(np.all(g.matrix[3, :3] == 0))
    ok = pre_ok and galilei_ok and worst <= 1e-12
    record(9, ok, f"Lorentz gap vs k*beta*dx max {worst:.1e}; Galilei keeps sheets: {galilei_ok}")


def test_10_isometry(record):
    worst = 0.0
    for i in range(1000):
        rng = np.random.default_rng([10, i])
        A = groups.random_rotation(rng) @ np.diag([1, 1, rng.choice([-1.0, 1.0])])
        C = rng.uniform(-10, 10, 3)
        src = rng.normal(size=(5, 3)) * 3
        A_fit, C_fit, res = verify.fit_isometry([(p, A @ p + C) for p in src])
        worst = max(worst, res, maxdiff(A_fit, A), maxdiff(C_fit, C))
    try:
        verify.fit_isometry([(p, 2 * p) for p in np.vstack([np.zeros(3), np.eye(3)])])
        rejected = False
    except verify.NotDistancePreserving:
        rejected = True
    record(10, worst <= 1e-8 and rejected,
           f"1000 isometries recovered, max error {worst:.1e}; scaling rejected: {rejected}")


def test_11_ship_drop(record):
    rng = np.random.default_rng(11)
    worst_boosted = worst_shore = 0.0
    for _ in range(100):
        spec = relativity.ShipDropSpec(rng.uniform(-30, 30, 3), rng.uniform(1, 50), rng.uniform(0.1, 5))
        worst_boosted = max(worst_boosted, relativity.ship_drop(spec).witness["offset"])
        shore = relativity.ship_drop(spec, shore_thrown=True).witness["offset"]
        worst_shore = max(worst_shore, abs(shore - np.linalg.norm(spec.boost) * spec.fall_duration))
    ok = worst_boosted <= 1e-12 and worst_shore <= 1e-12
    record(11, ok, f"boosted stone offset max {worst_boosted:.1e}; shore contrast error {worst_shore:.1e}")


def test_12_cli_contract(record, tmp_path, capsys):
    rng = np.random.default_rng(12)
    worst = 0.0
    for i in range(100):
        family = ("aristotle", "galilei", "poincare")[i % 3]
        g = groups.random_element(family, rng)
        h = parse_element(family, json.loads(json.dumps(g.to_dict())), "element", CliConfig())
        for _ in range(5):
            q = Event(*rng.normal(size=4) * 10)
            worst = max(worst, maxdiff(act_event(g, q).as_array(), act_event(h, q).as_array()))
    verify_code = run(["verify", "--seed", "42"])

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"A": np.eye(3).tolist(), "C": [0, 0], "e": 0}))
    corpus = [
        (["classify", "minkowski", "--direction", "1,2"], "--direction"),
        (["act", "aristotle", str(bad), "--event", "0,0,0,0"], "'C'"),
        (["add-velocities", "--v", "0.5"], "--w"),
        (["ship-drop", "--boost", "a,b,c"], "--boost"),
    ]
    malformed_ok = True
    capsys.readouterr()
    for argv, field in corpus:
        code = run(argv)
        err = capsys.readouterr().err
        malformed_ok &= code == 2 and field in err
    ok = worst <= 1e-12 and verify_code == 0 and malformed_ok
    record(12, ok, f"JSON round trip max {worst:.1e}; verify --seed 42 exit {verify_code}; "
                   f"malformed corpus exits 2 naming fields: {malformed_ok}")
