"""Lift classes and figure-8 terms emitted at inter-component double points."""

from __future__ import annotations

import dataclasses
from typing import Union

from .extension import EVFiberElement, Pi1MElement


@dataclasses.dataclass(frozen=True)
class FiberPower:
    """Lift of a curve homotopic to f^p: the element f~^p F^r of pi_1(E_V)."""

    element: EVFiberElement

    def __str__(self) -> str:
        return str(self.element)


@dataclasses.dataclass(frozen=True)
class Opaque:
    """Lift of a curve that is not a fiber power; only its base class and F-offset are tracked."""

    base: Pi1MElement
    central: int

    def __str__(self) -> str:
        return f"[{self.base}; F^{self.central:+d}]"


LiftClass = Union[FiberPower, Opaque]


@dataclasses.dataclass(frozen=True)
class Fig8Term:
    sign: int
    left: LiftClass
    right: LiftClass
    pair: tuple[str, str] = ("K1", "K2")
    at: int | None = dataclasses.field(default=None, compare=False)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"figure-8 sign must be +1 or -1, got {self.sign}")

    def negated(self) -> Fig8Term:
        return dataclasses.replace(self, sign=-self.sign)

    def __str__(self) -> str:
        s = "+" if self.sign > 0 else "-"
        return f"{s}[{self.pair[0]}.{self.pair[1]}] left={self.left} right={self.right}"
