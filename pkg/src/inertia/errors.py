"""Exception hierarchy shared by every module of the package."""


class KinematicsError(ValueError):
    """Base class for all validation failures raised by :mod:`inertia`."""


class NotSimultaneous(KinematicsError):
    """Two events were expected on the same sheet but have different dates."""


class NotOrthogonal(KinematicsError):
    """A 3x3 block fails ``A.T @ A == I`` within tolerance."""


class NotLorentz(KinematicsError):
    """A 4x4 matrix does not preserve the Minkowski form."""


class NotIdentityComponent(KinematicsError):
    """Element is valid in the full group but not in the identity component."""


class SuperluminalBeta(KinematicsError):
    """A velocity reached or exceeded the speed of light."""


class MixedFamilies(KinematicsError):
    """Elements of incompatible groups were combined."""


class SpacelikeSegment(KinematicsError):
    """A worldline segment lies outside the light cone."""


class DegenerateSpan(KinematicsError):
    """Sample points do not affinely span 3-space."""


class NotDistancePreserving(KinematicsError):
    """Point correspondences are not congruent."""


class NotClosed(KinematicsError):
    """A Lie bracket left the span of the supplied basis."""
