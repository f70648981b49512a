"""Exceptions shared across the solver suite."""

from __future__ import annotations


class GapSchedError(Exception):
    """Base class for all solver errors."""


class InfeasibleError(GapSchedError):
    """No schedule satisfies the stated constraints.

    ``witness`` carries problem-specific evidence: an overfull window
    (u, v) for deadline instances, or the id of a job whose flow bound
    cannot be met.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class OracleCapError(GapSchedError):
    """Exhaustive search refused: instance exceeds the configured caps."""
