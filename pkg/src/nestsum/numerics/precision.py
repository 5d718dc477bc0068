from __future__ import annotations

from dataclasses import dataclass

from ..errors import DomainError

GUARD_DIGITS = 10
MAX_TARGET = 32


@dataclass(frozen=True)
class Precision:
    """Target decimal digits; internal work uses ``target + guard`` digits."""

    target: int = 16
    guard: int = GUARD_DIGITS

    def __post_init__(self):
        if not 1 <= self.target <= MAX_TARGET:
            raise DomainError(f"precision target must be in 1..{MAX_TARGET}")
        if self.guard < GUARD_DIGITS:
            raise DomainError(f"guard digits must be >= {GUARD_DIGITS}")

    @property
    def work(self) -> int:
        return self.target + self.guard

    @property
    def tol(self) -> float:
        return 10.0 ** (-self.target)


def as_precision(p) -> Precision:
    if p is None:
        return Precision()
    if isinstance(p, Precision):
        return p
    return Precision(int(p))
