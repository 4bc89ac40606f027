"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class RotcutError(Exception):
    """Base class for every error raised by this package."""


class DegenerateInput(RotcutError, ValueError):
    """The scene violates a general-position invariant."""


class DegenerateArrangement(RotcutError):
    """A dual arrangement is degenerate (coincident lines, overlapping levels)."""


class EndpointTie(DegenerateArrangement):
    """Two level curves become parallel at x = +-inf.

    Happens only at the isolated slopes where two cross-section points share
    their u-coordinate; callers re-evaluate at an infinitesimally shifted slope.
    """


class InternalInconsistency(RotcutError, AssertionError):
    """A proven invariant failed; indicates a bug, never bad input."""


class InvalidEdit(RotcutError, ValueError):
    """A sign-sequence edit is not applicable at the requested position."""


class VerificationFailed(RotcutError):
    """A claimed solution does not bisect some color class."""

    def __init__(self, color: str, counts: tuple[int, int, int], size: int):
        self.color = color
        self.counts = counts
        self.size = size
        above, on, below = counts
        super().__init__(
            f"color {color}: above={above} on={on} below={below} exceeds "
            f"floor({size}/2)={size // 2}"
        )
