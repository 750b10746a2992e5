"""Inertia groups of Aristotelian, Galilean and Einsteinian mechanics."""

from .errors import (
    DegenerateSpan,
    KinematicsError,
    MixedFamilies,
    NotClosed,
    NotDistancePreserving,
    NotIdentityComponent,
    NotLorentz,
    NotOrthogonal,
    NotSimultaneous,
    SpacelikeSegment,
    SuperluminalBeta,
)
from .groups import (
    AristotleElement,
    BoostDecomposition,
    GalileiElement,
    PoincareElement,
    act_event,
    boost,
    boost_decompose,
    compose,
    embed_aristotle,
    identity,
    inverse,
    make_aristotle,
    make_galilei,
    make_poincare,
    standard_boost,
)
from .motions import (
    InertialMotion,
    MotionClass,
    Worldline,
    act_motion,
    classify_galilean,
    classify_minkowski,
    motion_from_state,
    proper_time,
)
from .spacetime import (
    Event,
    FourVector,
    Instant,
    are_simultaneous,
    clock_project,
    duration,
    quadratic_form,
    sheet_distance,
)

__version__ = "0.1.0"
