"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class TieBreakError(Exception):
    """Base class for all errors raised by :mod:`tiebreak`."""


class DegreeMismatch(TieBreakError, ValueError):
    """Two objects that must live on the same ground set do not."""


class GroupTooLarge(TieBreakError):
    def __init__(self, cap: int):
        super().__init__(f"group closure exceeded the cap of {cap} elements")
        self.cap = cap


class DegreeTooLarge(TieBreakError):
    def __init__(self, m: int, cap: int):
        super().__init__(f"degree {m} exceeds the brute-force cap {cap}")
        self.m = m
        self.cap = cap


class ProfileSpaceTooLarge(TieBreakError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"profile space of size {size} exceeds the cap {cap}")
        self.size = size
        self.cap = cap


class NotAnOrder(TieBreakError, ValueError):
    """The relation is not complete and transitive."""


class InvalidK(TieBreakError, ValueError):
    """Committee size outside ``1 <= k <= n - 1``."""


class NotRegular(TieBreakError):
    """The symmetry group is not regular; no symmetric resolute rule exists."""

    def __init__(self, witness=None):
        msg = "symmetry group is not regular"
        if witness is not None:
            msg += f" (witness profile {witness})"
        super().__init__(msg)
        self.witness = witness


class NotSymmetric(TieBreakError):
    def __init__(self, counterexample=None):
        super().__init__(f"correspondence is not U-symmetric: {counterexample}")
        self.counterexample = counterexample


class NotConsistent(TieBreakError):
    def __init__(self, counterexample=None):
        super().__init__(f"correspondence is not U-consistent: {counterexample}")
        self.counterexample = counterexample


class NotDecisive(TieBreakError):
    def __init__(self, profile_index: int):
        super().__init__(f"correspondence is empty at profile {profile_index}")
        self.profile_index = profile_index


class NoRefinement(TieBreakError):
    """No resolute refinement with the requested properties exists.

    ``orbit`` is the orbit id of the representative at which the obstruction
    was found and ``reason`` a short machine-readable tag.
    """

    def __init__(self, orbit: int, reason: str, rep_index: int | None = None):
        super().__init__(f"no refinement: {reason} at orbit {orbit}"
                         + (f" (representative {rep_index})" if rep_index is not None else ""))
        self.orbit = orbit
        self.reason = reason
        self.rep_index = rep_index


class EmptyIntersection(NoRefinement):
    def __init__(self, orbit: int, rep_index: int | None = None):
        super().__init__(orbit, "EmptyIntersection", rep_index)


class HypothesisViolated(TieBreakError, ValueError):
    def __init__(self, which: str, detail=None):
        super().__init__(f"{which}: {detail}" if detail is not None else which)
        self.which = which
        self.detail = detail


class InternalInvariantBroken(TieBreakError, AssertionError):
    """A property guaranteed by the theory failed at runtime."""


class ParseError(TieBreakError, ValueError):
    def __init__(self, source: str, line: int, message: str):
        super().__init__(f"{source}:{line}: {message}")
        self.source = source
        self.line = line
        self.message = message
