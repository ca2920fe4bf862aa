"""Exception hierarchy.

Every error carries a module-qualified ``code`` (``"maxplus.NoCycle"``) that the
command line surfaces verbatim.  Errors deriving from :class:`Falsified` mean an
internal consistency check failed; they indicate a bug or an invalid model and
map to exit status 3.
"""

from __future__ import annotations


class WeakKamError(Exception):
    module = "weakkam"

    @property
    def code(self) -> str:
        return f"{self.module}.{type(self).__name__}"


class Falsified(WeakKamError):
    """A proven inequality failed to hold on a computed instance."""


# shift
class NotFinitelyPrimitive(WeakKamError):
    module = "shift"


class EmptyShift(WeakKamError):
    module = "shift"


class BeyondExplicitRegion(WeakKamError):
    module = "shift"


# potential
class DisallowedWord(WeakKamError):
    module = "potential"


class IncompletePotential(WeakKamError):
    module = "potential"


class InvalidModel(WeakKamError):
    module = "potential"


# maxplus
class NoCycle(WeakKamError):
    module = "maxplus"


class NotStronglyConnected(WeakKamError):
    module = "maxplus"


class PositiveCycle(WeakKamError):
    module = "maxplus"


class InvalidSubAction(WeakKamError):
    module = "maxplus"


# truncation
class ExplicitRegionTooSmall(WeakKamError):
    module = "truncation"


class NoCoerciveTail(WeakKamError):
    module = "truncation"


class NoThreshold(WeakKamError):
    module = "truncation"


class PlateauViolation(Falsified):
    module = "truncation"


# measures
class UnsupportedEdge(WeakKamError):
    module = "measures"


class EmptyCritical(Falsified):
    module = "measures"


class CharacterizationViolation(Falsified):
    module = "measures"


# oracle
class TooLarge(WeakKamError):
    module = "oracle"


# cli
class ConfigError(WeakKamError):
    module = "cli"
