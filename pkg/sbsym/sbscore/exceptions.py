"""Error hierarchy shared by the core engine and the CLI.

Every class carries the process exit code the CLI uses when the error
escapes a command.
"""

from __future__ import annotations


class SbsError(Exception):
    """Base class for all sbsym failures."""

    exit_code: int = 1


# ── exit 2: names, parameters, inputs ─────────────────────────────────────────


class UnknownName(SbsError, ValueError):
    exit_code = 2


class BadParameter(SbsError, ValueError):
    exit_code = 2


class UnsupportedIrrep(SbsError, ValueError):
    exit_code = 2


# ── exit 3: violated preconditions ────────────────────────────────────────────


class NotSymmetryBreaking(SbsError):
    exit_code = 3


class NotNested(SbsError):
    exit_code = 3


class NotPartialBreaking(SbsError):
    exit_code = 3


class NotPartialSBS(SbsError):
    exit_code = 3


class HypothesisUnmet(SbsError):
    exit_code = 3


# ── exit 4: symbolic (infinite) groups ────────────────────────────────────────


class InfiniteNormalizer(SbsError):
    exit_code = 4


class SymbolicGroup(SbsError):
    exit_code = 4


class Unsupported(SbsError):
    exit_code = 4


# ── exit 5: identification ────────────────────────────────────────────────────


class NotAPointGroup(SbsError):
    exit_code = 5


# ── exit 1: internal consistency ──────────────────────────────────────────────


class ClosureOverflow(SbsError):
    pass


class NotInvertible(SbsError):
    pass


class SubgroupOverflow(SbsError):
    pass


class NotNormal(SbsError):
    pass


class RelatorViolation(SbsError):
    pass


class GroupNotClosed(SbsError):
    pass
