"""Shared exception types."""


class PosetError(ValueError):
    """Input does not describe a finite poset, or refers to unknown elements."""


class VerificationError(RuntimeError):
    """A machine-checked identity failed; signals a bug or a violated claim."""


class BudgetExceeded(RuntimeError):
    """A Buchberger or marked-reduction run exceeded its step budget."""
