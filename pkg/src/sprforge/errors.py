"""Exception types raised across the package."""
from __future__ import annotations


class SprForgeError(Exception):
    """Base class for package errors."""


class NotHurwitzError(SprForgeError, ValueError):
    """A polynomial required to be Hurwitz stable is not."""


class PreconditionError(SprForgeError, ValueError):
    """Inputs violate a documented precondition."""


class ConsistencyAlarm(SprForgeError, RuntimeError):
    """Two results that theory ties together disagree numerically."""


class DegenerateConicError(SprForgeError, ValueError):
    """A quadratic curve expected to be an ellipse is not bounded."""


class SegmentUnstable(SprForgeError):
    """The polynomial segment leaves the Hurwitz set; carries the witness."""

    def __init__(self, verdict):
        self.verdict = verdict
        lam = verdict.witness_lambda
        root = verdict.witness_root
        super().__init__(f"segment unstable at lambda={lam!r} (root {root!r})")


class SearchExhausted(SprForgeError, RuntimeError):
    """A bounded search ran out of budget; ``diagnostics`` says how far it got."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
