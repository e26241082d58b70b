"""Exception types shared across the package.

Domain errors use the stdlib ``ValueError`` / ``ZeroDivisionError`` /
``OverflowError``; the classes here cover the two remaining contract
categories (resource limits, numerical failure).
"""


class ResourceLimitError(RuntimeError):
    """An operation was asked to exceed its documented resource budget."""


class QuadratureError(RuntimeError):
    """Numerical integration failed to reach the requested accuracy."""
