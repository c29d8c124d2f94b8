"""
Arithmetic in pi_1(M) for a circle bundle M -> F, and in the part of pi_1(E_V) that
the link invariants need.

E_V is the unit circle bundle of the plane field V-perp.  Only the abelian subgroup
generated by the lifted fiber f~ and the E_V fiber F is modelled, together with the
conjugation action of pi_1(M) on it.  Conjugating f~^p by gamma multiplies it by
F^(p * e(gamma x f)), where e(gamma x f) is the Euler class of V-perp evaluated on
the torus swept by dragging the fiber around gamma.

Sign convention: with e(V-perp) dual to 2k*[d], dragging a fiber around rho sweeps
a torus on which the Euler class evaluates to 2k * <dual, rho>.  This makes the
drag around B2 against dual = A2 (k = 1) raise the stabilization level by +1.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Union

from .errors import GenusMismatch, MalformedLoop, UnsupportedBundleArithmetic
from .surface import H1Class, SurfaceBase, SurfaceWord, abelianize, intersection_number, is_trivial


@dataclasses.dataclass(frozen=True)
class BundleData:
    base: SurfaceBase
    euler: int = 0  # Euler number of M -> F; 0 is the product F x S^1

    @property
    def genus(self) -> int:
        return self.base.genus

    def identity(self) -> Pi1MElement:
        return Pi1MElement(self.base.identity(), 0)

    def fiber(self, n: int = 1) -> Pi1MElement:
        return Pi1MElement(self.base.identity(), n)

    def multiply(self, x: Pi1MElement, y: Pi1MElement) -> Pi1MElement:
        self._require_product("multiplication")
        return Pi1MElement(x.base_word * y.base_word, x.fiber_exp + y.fiber_exp)

    def invert(self, x: Pi1MElement) -> Pi1MElement:
        self._require_product("inversion")
        return Pi1MElement(~x.base_word, -x.fiber_exp)

    def _require_product(self, what: str) -> None:
        if self.euler != 0:
            raise UnsupportedBundleArithmetic(
                f"unsupported bundle arithmetic: {what} in pi_1(M) is only implemented "
                f"for the product bundle (Euler number {self.euler} given)"
            )

    def fiber_power(self, x: Pi1MElement) -> int | None:
        """p if x is the fiber power f^p, else None."""
        if not x.base_word.letters:
            return x.fiber_exp
        if self.euler == 0 and is_trivial(x.base_word):
            return x.fiber_exp
        if self.euler != 0 and is_trivial(x.base_word):
            raise UnsupportedBundleArithmetic(
                "unsupported bundle arithmetic: a nonempty base word that is trivial in "
                "pi_1(F) picks up an undetermined fiber power when the Euler number is nonzero"
            )
        return None


@dataclasses.dataclass(frozen=True)
class FieldData:
    k: int
    dual: H1Class  # [pi(d)]; e(V-perp) is Poincare dual to 2k*[d]

    def check_base(self, base: SurfaceBase) -> None:
        if self.dual.genus != base.genus:
            raise GenusMismatch(f"dual class has genus {self.dual.genus}, surface has genus {base.genus}")

    def shift_generator(self) -> int:
        """Nonnegative generator s of the central shift set s*Z = {2k <dual, x> : x in H1(F)}."""
        return abs(2 * self.k * self.dual.content())


@dataclasses.dataclass(frozen=True)
class Pi1MElement:
    base_word: SurfaceWord
    fiber_exp: int = 0

    def __str__(self) -> str:
        parts = [str(self.base_word)] if self.base_word.letters else []
        if self.fiber_exp:
            parts.append("f" if self.fiber_exp == 1 else f"f^{self.fiber_exp}")
        return " ".join(parts) if parts else "1"


@dataclasses.dataclass(frozen=True, order=True)
class EVFiberElement:
    """f~^fiber_power * F^central, written additively as a pair of integers."""

    fiber_power: int
    central: int

    def __mul__(self, other: EVFiberElement) -> EVFiberElement:
        return EVFiberElement(self.fiber_power + other.fiber_power, self.central + other.central)

    def inverse(self) -> EVFiberElement:
        return EVFiberElement(-self.fiber_power, -self.central)

    def is_identity(self) -> bool:
        return self.fiber_power == 0 and self.central == 0

    def __str__(self) -> str:
        return f"({self.fiber_power:+d},{self.central:+d})"


IDENTITY = EVFiberElement(0, 0)


def central_fiber(n: int) -> EVFiberElement:
    """F^n."""
    return EVFiberElement(0, n)


def fiber_order_check(field: FieldData) -> bool:
    # F generates a free Z factor: pi_2(M) = 0, so the circle bundle sequence is injective.
    return True


# --------------------------------------------------------------------------- #
# Torus evaluations and h_V
# --------------------------------------------------------------------------- #


@dataclasses.dataclass(frozen=True)
class Drag:
    rho: H1Class
    fiber_power: int = 1  # the dragged curve is f^fiber_power


@dataclasses.dataclass(frozen=True)
class Fib:
    curve_class: H1Class  # projection of the curve to H1(F)
    n: int = 1


@dataclasses.dataclass(frozen=True)
class Rot:
    n: int = 1


TorusKind = Union[Drag, Fib, Rot]


def euler_eval_torus(field: FieldData, kind: TorusKind) -> int:
    if isinstance(kind, Rot):
        return 0
    if isinstance(kind, Drag):
        return 2 * field.k * kind.fiber_power * intersection_number(field.dual, kind.rho)
    if isinstance(kind, Fib):
        return 2 * field.k * kind.n * intersection_number(field.dual, kind.curve_class)
    raise MalformedLoop(f"not a loop generator: {kind!r}")


def h_V(field: FieldData, loop: Iterable[TorusKind]) -> int:
    """Kink-cancelling homomorphism: half the Euler evaluation, summed over the loop word."""
    total = 0
    for kind in loop:
        value = euler_eval_torus(field, kind)
        if value % 2:
            raise AssertionError(f"odd Euler evaluation {value} on {kind!r}")
        total += value // 2
    return total


def conj_act(field: FieldData, gamma: Pi1MElement, x: EVFiberElement) -> EVFiberElement:
    """gamma x gamma^-1 inside <f~, F>."""
    shift = euler_eval_torus(field, Drag(abelianize(gamma.base_word), fiber_power=1))
    return EVFiberElement(x.fiber_power, x.central + x.fiber_power * shift)


def shift_set_contains(field: FieldData, m: int) -> bool:
    s = field.shift_generator()
    return m == 0 if s == 0 else m % s == 0


