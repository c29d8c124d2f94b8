"""
The finite-type invariant nu: a signed sum of figure-8 classes over the
inter-component double points of a generic V-transverse homotopy.

Two figure-8 terms are equal when their pairs of E_V lifts are simultaneously
conjugate.  For components homotopic to fiber powers this is decided exactly:
conjugation by gamma fixes the fiber power p and shifts the F-exponent by p*m,
with m ranging over the shift set s*Z (s = 2k * content(dual)).
"""

from __future__ import annotations

import dataclasses
import enum

from .errors import FieldMismatch, ScriptError
from .extension import FieldData, shift_set_contains
from .moves import HomotopyScript, run
from .surface import Conjugacy, conjugate_in_F
from .terms import FiberPower, Fig8Term, LiftClass, Opaque


class Fig8Equality(enum.Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


class ZeroVerdict(enum.Enum):
    ZERO = "ZERO"
    NONZERO = "NONZERO"
    UNKNOWN = "UNKNOWN"


@dataclasses.dataclass(frozen=True)
class NuValue:
    terms: tuple[Fig8Term, ...]
    field: FieldData | None = None

    def __add__(self, other: NuValue) -> NuValue:
        if self.field is not None and other.field is not None and self.field != other.field:
            raise FieldMismatch("cannot add nu values computed for different vector fields")
        return NuValue(self.terms + other.terms, self.field or other.field)

    def __len__(self) -> int:
        return len(self.terms)


def _fiber_shift(p: int, q: int, dl: int, dr: int, field: FieldData) -> bool:
    """Is there m in the shift set with dl = p*m and dr = q*m?"""
    if p == 0 and q == 0:
        return dl == 0 and dr == 0
    lead, d = (p, dl) if p != 0 else (q, dr)
    if d % lead:
        return False
    m = d // lead
    return p * m == dl and q * m == dr and shift_set_contains(field, m)


def fig8_equal(t1: Fig8Term, t2: Fig8Term, field: FieldData) -> Fig8Equality:
    if t1.pair != t2.pair:
        return Fig8Equality.DISTINCT
    if (t1.left, t1.right) == (t2.left, t2.right):
        return Fig8Equality.EQUAL
    kinds = {type(x) for x in (t1.left, t1.right, t2.left, t2.right)}
    if kinds == {FiberPower}:
        (p, r1), (q, r2) = _pr(t1.left), _pr(t1.right)
        (p2, s1), (q2, s2) = _pr(t2.left), _pr(t2.right)
        if (p, q) != (p2, q2):
            return Fig8Equality.DISTINCT
        return Fig8Equality.EQUAL if _fiber_shift(p, q, s1 - r1, s2 - r2, field) else Fig8Equality.DISTINCT
    for a, b in ((t1.left, t2.left), (t1.right, t2.right)):
        if _bases_distinct(a, b):
            return Fig8Equality.DISTINCT
    return Fig8Equality.UNKNOWN


def _pr(x: FiberPower) -> tuple[int, int]:
    return x.element.fiber_power, x.element.central


def _bases_distinct(a: LiftClass, b: LiftClass) -> bool:
    # Projection E_V -> M is a homomorphism: conjugate lifts have conjugate bases.
    if isinstance(a, FiberPower) != isinstance(b, FiberPower):
        return True
    if isinstance(a, FiberPower):
        return a.element.fiber_power != b.element.fiber_power
    assert isinstance(a, Opaque) and isinstance(b, Opaque)
    if a.base.fiber_exp != b.base.fiber_exp:
        return True
    return conjugate_in_F(a.base.base_word, b.base.base_word) is Conjugacy.NO


def nu(script: HomotopyScript) -> NuValue:
    if len(script.components) < 2:
        raise ScriptError("nu needs a link with at least two components")
    return NuValue(run(script).terms, script.field)


def obstruction_valid(script: HomotopyScript) -> bool:
    """nu obstructs link-homotopy when every component is homotopic to a nontrivial fiber power."""
    return all(c.fiber_power not in (None, 0) for c in script.components)


def is_zero(value: NuValue, field: FieldData) -> ZeroVerdict:
    """
    Decide whether the formal sum vanishes.

    Terms are grouped into classes along EQUAL edges (a sound relation, hence
    transitive).  The sum is zero when every class has signed multiplicity zero.
    A class with nonzero multiplicity settles NONZERO only if all of its
    comparisons with terms outside it came back DISTINCT.
    """
    if value.field is not None and value.field != field:
        raise FieldMismatch("nu value was computed for a different vector field")
    terms = value.terms
    n = len(terms)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    undecided: list[tuple[int, int]] = []
    for i in range(n):
        for j in range(i + 1, n):
            if find(i) == find(j):
                continue
            eq = fig8_equal(terms[i], terms[j], field)
            if eq is Fig8Equality.EQUAL:
                parent[find(i)] = find(j)
            elif eq is Fig8Equality.UNKNOWN:
                undecided.append((i, j))

    weight: dict[int, int] = {}
    for i, t in enumerate(terms):
        weight[find(i)] = weight.get(find(i), 0) + t.sign
    nonzero = {root for root, w in weight.items() if w != 0}
    if not nonzero:
        return ZeroVerdict.ZERO
    touched = set()
    for i, j in undecided:
        if find(i) != find(j):
            touched.update((find(i), find(j)))
    if nonzero - touched:
        return ZeroVerdict.NONZERO
    return ZeroVerdict.UNKNOWN

