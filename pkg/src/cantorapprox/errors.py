"""Exception types shared across the package.

The split mirrors the CLI exit codes: validation problems exit 2,
resource/precision problems exit 3.
"""


class InputError(ValueError):
    """Rejected input: malformed, out of domain, or violating a precondition."""


class HypothesisViolation(InputError):
    """A required structural hypothesis (e.g. a monotonicity witness) is missing."""


class ResourceBudgetError(RuntimeError):
    """An enumeration or recursion would exceed its configured budget."""


class PrecisionError(RuntimeError):
    """Enclosure refinement hit its step cap before a decision was reached."""


class UndecidableFloorError(PrecisionError):
    """A floor could not be certified: the enclosure straddles an integer at the cap."""
