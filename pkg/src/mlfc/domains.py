"""Integration domains: finite intervals and the (truncated) real line."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not (self.a < self.b):
            raise ValueError(f"interval needs a < b, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class WholeLine:
    """The real line, integrated over [-R, R] with a certified amplitude tail.

    ``truncation`` of None means the radius is derived from the amplitude's
    closed-form tail bound at integration time.
    """

    truncation: float | None = None

    def __post_init__(self):
        if self.truncation is not None and self.truncation <= 0:
            raise ValueError("truncation radius must be positive")


Domain = Interval | WholeLine
