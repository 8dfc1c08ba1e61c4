"""Exceptions shared across the package.

The CLI maps these to exit codes: DomainError -> 2, SizeLimitError -> 3,
I/O problems -> 4.
"""


class DomainError(ValueError):
    """Input is structurally valid but outside a mathematical precondition
    (odd degree, wrong parity, disconnected graph, ...)."""


class SizeLimitError(ValueError):
    """Input exceeds a hard size cap that keeps exhaustive computations at
    desk scale."""
