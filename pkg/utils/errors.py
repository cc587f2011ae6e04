"""
Exception hierarchy shared by the numerical modules, the lab and the CLI.
"""
from typing import Optional


class StrongSumError(ValueError):
    """Base class for every error raised on purpose by this package."""


class PreconditionError(StrongSumError):
    """An operation was called outside its stated domain."""


class HypothesisViolation(StrongSumError):
    """A sweep configuration lies outside the hypotheses of the inequality it targets."""

    def __init__(self, inequality_id: str, constraint: str, configuration: Optional[dict] = None):
        self.inequality_id = inequality_id
        self.constraint = constraint
        self.configuration = configuration or {}
        super().__init__(f"{inequality_id}: requires {constraint} (got {self.configuration})")


class TruncationError(StrongSumError):
    """A lambda-weighted sum could not be truncated with a certified tail."""


class ConfigError(StrongSumError):
    """Invalid run configuration; names the offending key and the violated constraint."""

    def __init__(self, key: str, constraint: str):
        self.key = key
        self.constraint = constraint
        super().__init__(f"{key}: {constraint}")
