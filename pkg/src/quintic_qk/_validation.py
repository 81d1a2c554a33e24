"""Input validation shared by the estimators and the CLI."""
from __future__ import annotations

from numbers import Integral


class ReconstructionError(RuntimeError):
    """An internal consistency assertion of a reconstruction failed.

    Carries the Novikov degree (and component, when known) so the failure
    can be reproduced.
    """

    def __init__(self, message: str, degree: int | None = None, component: int | None = None):
        super().__init__(message)
        self.degree = degree
        self.component = component


def check_degree(value, name: str = "max_degree", minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_root_order(r, degree: int) -> int:
    r = check_degree(r, "root_order")
    if r > degree:
        raise ValueError(f"root_order {r} exceeds degree {degree}")
    return r
