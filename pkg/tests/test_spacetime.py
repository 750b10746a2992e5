import numpy as np
import pytest
from hypothesis import given, strategies as st

from inertia import groups
from inertia.errors import NotSimultaneous
from inertia.spacetime import (
    Event,
    FourVector,
    Instant,
    are_simultaneous,
    clock_project,
    duration,
    quadratic_form,
    sheet_distance,
    sheet_distance_via,
)

coord = st.floats(-1e3, 1e3, allow_nan=False)


@pytest.mark.parametrize("v, expected", [
    ((1, 0, 0, 0), 1.0),
    ((0, 0, 0, 1), -1.0),
    ((1, 0, 0, 1), 0.0),
])
def test_quadratic_form(v, expected):
    assert quadratic_form(FourVector(*v)) == expected
    assert quadratic_form(np.array(v)) == expected


@pytest.mark.parametrize("q, t", [
    ((1, 2, 3, 5), 5.0),
    ((0, 0, 0, 0), 0.0),
    ((-1, 0, 4, -2.5), -2.5),
])
def test_clock_project(q, t):
    assert clock_project(Event(*q)) == Instant(t)


@pytest.mark.parametrize("q, q2, expected", [
    ((0, 0, 0, 1), (9, 9, 9, 1), 0.0),
    ((0, 0, 0, 0), (0, 0, 0, 3), 3.0),
    ((1, 1, 1, -2), (0, 0, 0, 2), 4.0),
])
def test_duration(q, q2, expected):
    assert duration(Event(*q), Event(*q2)) == expected


def test_sheet_distance_examples():
    assert sheet_distance(Event(0, 0, 0, 7), Event(3, 4, 0, 7)) == 5.0
    assert sheet_distance(Event(1, 1, 1, 0), Event(1, 1, 1, 0)) == 0.0
    with pytest.raises(NotSimultaneous):
        sheet_distance(Event(0, 0, 0, 0), Event(0, 0, 0, 1))


@pytest.mark.parametrize("q, q2, tol, expected", [
    ((0, 0, 0, 1), (5, 5, 5, 1), 0.0, True),
    ((0, 0, 0, 0), (0, 0, 0, 1e-3), 1e-9, False),
    ((0, 0, 0, 0), (1, 0, 0, 1e-12), 1e-9, True),
])
def test_are_simultaneous(q, q2, tol, expected):
    assert are_simultaneous(Event(*q), Event(*q2), tol) is expected


def test_negative_tolerance_rejected():
    with pytest.raises(ValueError):
        are_simultaneous(Event(0, 0, 0, 0), Event(0, 0, 0, 0), -1)


def test_events_must_be_finite():
    with pytest.raises(ValueError):
        Event(0, 0, float("nan"), 0)
    with pytest.raises(ValueError):
        FourVector(float("inf"), 0, 0, 0)


def test_event_vector_arithmetic():
    q = Event(1, 2, 3, 4)
    v = FourVector(1, 1, 1, 1)
    assert q + v == Event(2, 3, 4, 5)
    assert (q + v) - q == v
    assert q - v == Event(0, 1, 2, 3)
    assert Event.from_dict(q.to_dict()) == q
    assert FourVector.from_dict(v.to_dict()) == v


@given(st.lists(coord, min_size=4, max_size=4), st.integers(0, 2**32 - 1))
def test_form_invariant_under_lorentz(v, seed):
    L = groups.random_lorentz(np.random.default_rng(seed))
    v = np.array(v)
    q, q_img = quadratic_form(v), quadratic_form(L @ v)
    scale = np.max(np.abs(L)) ** 2 * (v @ v)
    # relative to the size of the inputs: rounding in L @ v is O(eps * |L|^2 |v|^2)
    assert abs(q_img - q) <= 1e-9 * (1 + abs(q)) + 1e-14 * scale


@given(st.lists(coord, min_size=3, max_size=3), st.lists(coord, min_size=3, max_size=3),
       coord, st.lists(coord, min_size=3, max_size=3), st.floats(-1e3, 1e3).filter(lambda k: k != 0))
def test_sheet_distance_time_translation_invariant(r, r2, t, Ks, Kt):
    q, q2 = Event(*r, t), Event(*r2, t)
    K = FourVector(*Ks, Kt)
    assert abs(sheet_distance(q + K, q2 + K) - sheet_distance(q, q2)) <= 1e-12 * max(
        1.0, sheet_distance(q, q2))


def test_sheet_distance_independent_of_translation(rng):
    for _ in range(100):
        t = rng.uniform(-5, 5)
        q, q2 = Event(*rng.normal(size=3), t), Event(*rng.normal(size=3), t)
        K = FourVector(*rng.normal(size=3), t)
        K2 = K + FourVector(*rng.normal(size=3), 0)
        d = sheet_distance(q, q2)
        assert abs(sheet_distance_via(q, q2, K) - d) <= 1e-12
        assert abs(sheet_distance_via(q, q2, K2) - d) <= 1e-12


def test_sheet_distance_via_requires_transverse_vector():
    with pytest.raises(ValueError):
        sheet_distance_via(Event(0, 0, 0, 0), Event(1, 0, 0, 0), FourVector(1, 0, 0, 0))


@given(st.lists(coord, min_size=4, max_size=4), st.lists(coord, min_size=4, max_size=4))
def test_duration_symmetric_nonnegative(a, b):
    q, q2 = Event(*a), Event(*b)
    assert duration(q, q2) == duration(q2, q) >= 0
    assert (duration(q, q2) == 0) == are_simultaneous(q, q2, 0.0)
