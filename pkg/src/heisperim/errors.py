"""Exception types shared across the package.

The CLI maps these onto its exit-code contract, so library code should
raise the most specific one that applies.
"""


class HeisperimError(Exception):
    """Base class for all package errors."""


class GraphValidationError(HeisperimError):
    """Graph function violates G' >= 0, or a graph spec string is malformed."""


class QuadratureError(HeisperimError):
    """A quadrature routine failed to converge or two paths disagree."""


class DomainError(HeisperimError):
    """Input outside the mathematical domain (ball exits the strip,
    evaluation at a singular point, off-axis center, eps >= r, ...)."""


class CharacteristicPointError(DomainError):
    """Horizontal normal vanishes: the horizontal Gauss map is undefined."""
