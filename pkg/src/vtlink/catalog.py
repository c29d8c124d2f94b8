"""
The three example link families, witness checking, verdicts and Legendrian promotion.

Every family lives in F x S^1 with both components homotopic to the fiber f, and
compares K1 u K2 with K1^i1 u K2^i2 for a field V_k whose Euler class is dual to
2k[d].  Verdict slots are three-valued.  A YES always comes from a witness script
that is replayed and checked; a NO comes from the nu obstruction or from the
imported rigidity axiom for clasped fibers; everything else stays UNKNOWN.
"""

from __future__ import annotations

import dataclasses
import enum
from typing import Iterable, Sequence

from .errors import ParameterError, ScriptError, VTLinkError
from .extension import BundleData, FieldData, Pi1MElement
from .moves import (
    Clasp,
    ComponentState,
    Cross,
    DragEvent,
    HomotopyScript,
    LegStab,
    LinkState,
    MoveEvent,
    SELF_EVENTS,
    Unclasp,
    VStab,
    apply_event,
    make_component,
    run,
)
from .nu import ZeroVerdict, is_zero, nu, obstruction_valid
from .surface import H1Class, SurfaceBase, intersection_number


class Family(enum.Enum):
    PARALLEL = "parallel"  # two parallel, once-linked fibers
    CLASPED = "clasped"  # K1 has a self-clasp; K2 is a parallel fiber
    BRAIDED = "braided"  # K1 has a self-clasp and is linked once with K2


class Answer(enum.Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


class WitnessKind(enum.Enum):
    HOMOTOPY = "V-transverse homotopy"
    LINK_HOMOTOPY = "V-transverse link-homotopy"
    COMPONENTWISE = "component-wise V-transverse isotopy"
    ISOTOPY = "V-transverse isotopy"


class InconsistentVerdict(VTLinkError):
    pass


SLOTS = ("framed_isotopic", "v_homotopic", "v_link_homotopic", "v_componentwise", "v_isotopic")

JUMP_EVENTS = (VStab, LegStab)  # change the curve by fiat, not by a homotopy

RIGIDITY_AXIOM = (
    "imported axiom: a clasped fiber K admits no V-transverse isotopy to K^i for i != 0"
)


# --------------------------------------------------------------------------- #
# Verdicts
# --------------------------------------------------------------------------- #


@dataclasses.dataclass(frozen=True)
class Verdict:
    framed_isotopic: Answer
    v_homotopic: Answer
    v_link_homotopic: Answer
    v_componentwise: Answer
    v_isotopic: Answer
    provenance: tuple[str, ...] = ()
    flags: tuple[str, ...] = ()

    def slots(self) -> dict[str, Answer]:
        return {s: getattr(self, s) for s in SLOTS}

    def as_tuple(self) -> tuple[Answer, ...]:
        return tuple(getattr(self, s) for s in SLOTS)


@dataclasses.dataclass(frozen=True)
class LegendrianVerdict:
    framed_isotopic: Answer
    homotopic: Answer
    link_homotopic: Answer
    componentwise: Answer
    isotopic: Answer
    loose_components: bool
    loose_link: bool
    provenance: tuple[str, ...] = ()

    def as_tuple(self) -> tuple[Answer, ...]:
        return (self.framed_isotopic, self.homotopic, self.link_homotopic, self.componentwise, self.isotopic)


class _SlotBook:
    """Collects YES/NO claims per slot with their reasons; conflicting claims raise."""

    def __init__(self):
        self.values = {s: Answer.UNKNOWN for s in SLOTS}
        self.reasons: list[str] = []

    def claim(self, slot: str, answer: Answer, reason: str) -> None:
        current = self.values[slot]
        if current is not Answer.UNKNOWN and current is not answer:
            raise InconsistentVerdict(f"{slot}: {reason} contradicts an earlier {current.value}")
        if current is Answer.UNKNOWN:
            self.values[slot] = answer
            self.reasons.append(f"{slot}: {answer.value} by {reason}")

    def close(self) -> None:
        v = self.values
        if v["v_isotopic"] is Answer.YES:
            for s in SLOTS:
                self.claim(s, Answer.YES, "closure (V-transverse isotopy implies every weaker relation)")
        if v["v_link_homotopic"] is Answer.YES or v["v_componentwise"] is Answer.YES:
            self.claim("v_homotopic", Answer.YES, "closure (a link-homotopy or component-wise isotopy is a homotopy)")
        if v["v_link_homotopic"] is Answer.NO or v["v_componentwise"] is Answer.NO:
            self.claim("v_isotopic", Answer.NO, "closure (an isotopy is both a link-homotopy and component-wise)")

    def verdict(self, flags: Iterable[str] = ()) -> Verdict:
        self.close()
        return Verdict(**self.values, provenance=tuple(self.reasons), flags=tuple(flags))


def close_verdict(v: Verdict) -> Verdict:
    """Re-apply the logical closure; raises InconsistentVerdict on contradictions."""
    book = _SlotBook()
    for slot, answer in v.slots().items():
        if answer is not Answer.UNKNOWN:
            book.claim(slot, answer, "given")
    closed = book.verdict(v.flags)
    return dataclasses.replace(closed, provenance=v.provenance + tuple(
        r for r in closed.provenance if not r.endswith("by given")
    ))


# --------------------------------------------------------------------------- #
# Witnesses
# --------------------------------------------------------------------------- #


def witness_kinds(script: HomotopyScript) -> set[WitnessKind]:
    """What a script proves about its two endpoints, read off from its events."""
    events = script.events
    if any(isinstance(e, JUMP_EVENTS) for e in events):
        return set()
    kinds = {WitnessKind.HOMOTOPY}
    crosses = any(isinstance(e, Cross) for e in events)
    selfs = any(isinstance(e, SELF_EVENTS) for e in events)
    if not crosses:
        kinds.add(WitnessKind.LINK_HOMOTOPY)
    if not selfs:
        kinds.add(WitnessKind.COMPONENTWISE)
    if not crosses and not selfs:
        kinds.add(WitnessKind.ISOTOPY)
    return kinds


def check_witness(script: HomotopyScript, kind: WitnessKind, target: LinkState) -> bool:
    """Replay `script` and confirm it is a homotopy of the given kind ending at `target`."""
    try:
        final = run(script).final
    except ScriptError:
        return False
    return kind in witness_kinds(script) and final.endpoint() == target.endpoint()


_WITNESS_SLOT = {
    WitnessKind.HOMOTOPY: "v_homotopic",
    WitnessKind.LINK_HOMOTOPY: "v_link_homotopic",
    WitnessKind.COMPONENTWISE: "v_componentwise",
    WitnessKind.ISOTOPY: "v_isotopic",
}


# --------------------------------------------------------------------------- #
# Example families
# --------------------------------------------------------------------------- #


def dual_partner(dual: H1Class) -> H1Class:
    """A class w with <dual, w> = content(dual), found by extended Euclid."""
    c = dual.coords
    # <dual, x> = sum_i (c[2i] x[2i+1] - c[2i+1] x[2i]) is linear in x with these coefficients.
    coeffs = []
    for i in range(0, len(c), 2):
        coeffs += [-c[i + 1], c[i]]
    g, xs = 0, [0] * len(coeffs)
    for j, a in enumerate(coeffs):
        if a == 0:
            continue
        g2, s, t = _egcd(g, a)
        xs = [s * x for x in xs]
        xs[j] += t
        g = g2
    if g < 0:
        g, xs = -g, [-x for x in xs]
    w = H1Class(tuple(xs))
    assert intersection_number(dual, w) == g
    return w


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


@dataclasses.dataclass(frozen=True)
class ExampleSetup:
    family: Family
    bundle: BundleData
    field: FieldData
    i1: int
    i2: int

    def components(self, levels: tuple[int, int] = (0, 0)) -> tuple[ComponentState, ComponentState]:
        f = self.bundle.fiber(1)
        clasped = self.family in (Family.CLASPED, Family.BRAIDED)
        return (
            make_component(self.bundle, "K1", f, level=levels[0], clasped=clasped),
            make_component(self.bundle, "K2", f, level=levels[1]),
        )

    def start(self) -> LinkState:
        return LinkState(self.bundle, self.field, self.components())

    def target(self) -> LinkState:
        return LinkState(self.bundle, self.field, self.components((self.i1, self.i2)))

    def path(self, i: int) -> H1Class:
        """A loop class rho whose drag moves a fiber from level 0 to level i."""
        k, dual = self.field.k, self.field.dual
        step = k * dual.content()
        return dual_partner(dual) * (i // step)

    def script(self, events: Sequence[MoveEvent], name: str) -> HomotopyScript:
        return HomotopyScript(self.bundle, self.field, self.components(), tuple(events), name)

    def drag(self, comps: tuple[str, ...], i: int) -> list[MoveEvent]:
        return [DragEvent(comps, self.path(i))] if i else []


def setup_example(family: Family | str, g: int, k: int, i1: int, i2: int, dual: H1Class | None = None) -> ExampleSetup:
    family = Family(family)
    if g < 2:
        raise ParameterError(f"the example families need genus >= 2, got {g}")
    if k == 0:
        raise ParameterError("k = 0 gives a field with torsion Euler class; the families need k != 0")
    dual = H1Class.basis(g, f"A{g}") if dual is None else dual
    if dual.genus != g:
        raise ParameterError("dual class has the wrong genus")
    if dual.is_zero():
        raise ParameterError("the dual class must be nonzero")
    step = k * dual.content()
    for name, i in (("i1", i1), ("i2", i2)):
        if i % step:
            raise ParameterError(
                f"{name} = {i} is not a multiple of {step}: the two links are then not "
                "homotopic as V_k-transverse multi-curves"
            )
    return ExampleSetup(family, BundleData(SurfaceBase(g)), FieldData(k, dual), i1, i2)


def build_example(family: Family | str, g: int, k: int, i1: int, i2: int, dual: H1Class | None = None) -> HomotopyScript:
    """The homotopy from K1 u K2 to K1^i1 u K2^i2 used to evaluate nu."""
    ex = setup_example(family, g, k, i1, i2, dual)
    drags = ex.drag(("K1",), i1) + ex.drag(("K2",), i2)
    if ex.family is Family.PARALLEL:
        # K2 passes through K1 to a second fiber, both are dragged, K2 passes back.
        events = [Cross("K1", "K2", 1), *drags, Cross("K1", "K2", -1)]
    elif ex.family is Family.CLASPED:
        events = [Unclasp("K1"), *drags, Clasp("K1")]
    else:
        events = [Cross("K1", "K2", 1), Unclasp("K1"), *drags, Clasp("K1"), Cross("K1", "K2", -1)]
    return ex.script(events, f"{ex.family.value}-nu")


def catalog_witnesses(ex: ExampleSetup) -> list[tuple[WitnessKind, HomotopyScript, str]]:
    """Constructive witnesses asserted for each regime of each family."""
    i1, i2 = ex.i1, ex.i2
    out: list[tuple[WitnessKind, HomotopyScript, str]] = []
    primary = build_example(ex.family, ex.bundle.genus, ex.field.k, i1, i2, ex.field.dual)
    out.append((WitnessKind.HOMOTOPY, primary, "the nu-evaluation homotopy reaches the target levels"))

    if i1 == 0 and i2 == 0:
        out.append((WitnessKind.ISOTOPY, ex.script([], "identity"), "identical links"))
        return out

    if ex.family is Family.PARALLEL:
        if i1 == i2:
            s = ex.script(ex.drag(("K1", "K2"), i1), "drag-together")
            out.append((WitnessKind.ISOTOPY, s, "dragging the common torus neighborhood of both fibers"))
        else:
            out.append((WitnessKind.COMPONENTWISE, primary, "separate, drag each fiber, re-link"))
    elif ex.family is Family.CLASPED:
        if i1 != 0:
            out.append((WitnessKind.LINK_HOMOTOPY, primary, "unclasp K1, drag both fibers, re-clasp"))
        else:
            # K2 threads the clasp of K1: freeing it takes a canceling pair of crossings.
            events = [Cross("K1", "K2", 1), Cross("K1", "K2", -1), *ex.drag(("K2",), i2),
                      Cross("K1", "K2", 1), Cross("K1", "K2", -1)]
            s = ex.script(events, "free-drag-rethread")
            out.append((WitnessKind.COMPONENTWISE, s, "free K2 from the clasp, drag it, thread it back"))
    else:
        if i1 == i2:
            events = [Unclasp("K1"), *ex.drag(("K1", "K2"), i1), Clasp("K1")]
            s = ex.script(events, "unclasp-drag-together")
            out.append((WitnessKind.LINK_HOMOTOPY, s, "unclasp K1, drag the linked pair together, re-clasp"))
        elif i1 == 0:
            events = [Cross("K1", "K2", 1), *ex.drag(("K2",), i2), Cross("K1", "K2", -1)]
            s = ex.script(events, "unlink-drag-relink")
            out.append((WitnessKind.COMPONENTWISE, s, "unlink K2, drag it, re-link"))
    return out


def table_verdict(family: Family | str, g: int, k: int, i1: int, i2: int, dual: H1Class | None = None) -> Verdict:
    ex = setup_example(family, g, k, i1, i2, dual)
    script = build_example(ex.family, g, k, i1, i2, ex.field.dual)
    book = _SlotBook()
    flags = []

    book.claim("framed_isotopic", Answer.YES,
               "stabilization: K^i is framed isotopic to K for every i")

    target = ex.target()
    for kind, witness, how in catalog_witnesses(ex):
        if not check_witness(witness, kind, target):
            raise InconsistentVerdict(f"catalog witness {witness.name!r} fails as a {kind.value}")
        book.claim(_WITNESS_SLOT[kind], Answer.YES, f"witness script {witness.name!r} ({how})")

    valid = obstruction_valid(script)
    z = is_zero(nu(script), ex.field)
    if z is ZeroVerdict.NONZERO:
        if valid:
            book.claim("v_link_homotopic", Answer.NO,
                       "nu obstruction (nu = NONZERO, every component a fiber power)")
        else:
            flags.append("invariance unverified")

    if ex.family in (Family.CLASPED, Family.BRAIDED) and i1 != 0:
        book.claim("v_componentwise", Answer.NO, RIGIDITY_AXIOM)

    if book.values["v_link_homotopic"] is Answer.UNKNOWN and WitnessKind.LINK_HOMOTOPY in witness_kinds(script):
        flags.append("nu-evaluation homotopy has no inter-component double points; "
                     "not asserted as a link-homotopy witness in this regime")
    return book.verdict(flags)


# --------------------------------------------------------------------------- #
# Verdicts for user scripts
# --------------------------------------------------------------------------- #


def _signed_sums(script: HomotopyScript) -> dict[tuple[str, ...], int]:
    sums: dict[tuple[str, ...], int] = {}
    names = script.component_names()
    for e in script.events:
        if isinstance(e, Cross):
            key = tuple(sorted((e.a, e.b), key=names.index))
            sums[key] = sums.get(key, 0) + e.sign
    return sums


def verdict_for_scripts(scripts: Sequence[HomotopyScript]) -> Verdict:
    """
    Verdict for the two ends of a family of homotopies that share both endpoints.

    The first script is the one nu is evaluated on.  Every script is also read as
    a witness for whatever its events allow (no inter-component double points,
    no self double points, neither).
    """
    if not scripts:
        raise ScriptError("no homotopy given")
    primary = scripts[0]
    start = primary.initial_state()
    target = run(primary).final
    for s in scripts[1:]:
        if s.initial_state().endpoint() != start.endpoint():
            raise ScriptError(f"homotopy {s.name!r} starts from a different link")
        if run(s).final.endpoint() != target.endpoint():
            raise ScriptError(f"homotopy {s.name!r} ends at a different link")

    book = _SlotBook()
    flags = []
    same_frame = all(
        a.base == b.base and a.clasped == b.clasped and a.writhe_offset == b.writhe_offset
        for a, b in zip(start.components, target.components)
    )
    if same_frame and not any(_signed_sums(primary).values()) and not any(
        isinstance(e, LegStab) for e in primary.events
    ):
        book.claim("framed_isotopic", Answer.YES,
                   "stabilization: the ends differ only by V-transverse stabilization levels")

    for s in scripts:
        for kind in sorted(witness_kinds(s), key=list(WitnessKind).index):
            book.claim(_WITNESS_SLOT[kind], Answer.YES, f"witness script {s.name!r} ({kind.value})")

    if len(primary.components) >= 2:
        valid = obstruction_valid(primary)
        z = is_zero(nu(primary), primary.field)
        if z is ZeroVerdict.NONZERO:
            if valid:
                book.claim("v_link_homotopic", Answer.NO,
                           "nu obstruction (nu = NONZERO, every component a fiber power)")
            else:
                flags.append("invariance unverified")

    for a, b in zip(start.components, target.components):
        if a.clasped and a.fiber_power is not None and a.level != b.level:
            book.claim("v_componentwise", Answer.NO, f"{RIGIDITY_AXIOM} (component {a.name})")
    return book.verdict(flags)


# --------------------------------------------------------------------------- #
# Table
# --------------------------------------------------------------------------- #


@dataclasses.dataclass(frozen=True)
class TableRow:
    family: Family
    regime: str
    i1: int
    i2: int


# Representative levels (in units of k) for each row, in table order.
TABLE_ROWS = (
    TableRow(Family.PARALLEL, "i1 != i2", 1, 2),
    TableRow(Family.PARALLEL, "i1 = i2 != 0", 1, 1),
    TableRow(Family.CLASPED, "i1 != 0", 1, 0),
    TableRow(Family.CLASPED, "i1 = 0 and i2 != 0", 0, 1),
    TableRow(Family.BRAIDED, "i1 != 0 and i1 != i2", 1, 2),
    TableRow(Family.BRAIDED, "i1 = 0 and i2 != 0", 0, 1),
    TableRow(Family.BRAIDED, "i1 = i2 != 0", 1, 1),
)

_CELL = {Answer.YES: "yes", Answer.NO: "no", Answer.UNKNOWN: "?"}
TABLE_HEADER = "family,regime,i1,i2,link_homotopic,componentwise_isotopic,isotopic"


def regime_of(family: Family | str, i1: int, i2: int) -> str:
    family = Family(family)
    if i1 == 0 and i2 == 0:
        return "i1 = i2 = 0"
    if family is Family.PARALLEL:
        return "i1 = i2 != 0" if i1 == i2 else "i1 != i2"
    if family is Family.CLASPED:
        return "i1 != 0" if i1 != 0 else "i1 = 0 and i2 != 0"
    if i1 == 0:
        return "i1 = 0 and i2 != 0"
    return "i1 = i2 != 0" if i1 == i2 else "i1 != 0 and i1 != i2"


def table_line(family: Family | str, g: int, k: int, i1: int, i2: int) -> str:
    v = table_verdict(family, g, k, i1, i2)
    cells = [_CELL[v.v_link_homotopic], _CELL[v.v_componentwise], _CELL[v.v_isotopic]]
    return ",".join([Family(family).value, regime_of(family, i1, i2), f"{i1:+d}", f"{i2:+d}", *cells])


def table_all(g: int = 2, k: int = 1) -> list[str]:
    return [table_line(r.family, g, k, r.i1 * k, r.i2 * k) for r in TABLE_ROWS]


# --------------------------------------------------------------------------- #
# Simplicity, Legendrian promotion, stabilization bookkeeping
# --------------------------------------------------------------------------- #


class Simplicity(enum.Enum):
    SIMPLE = "SIMPLE"
    NOT_GUARANTEED = "NOT_GUARANTEED"


@dataclasses.dataclass(frozen=True)
class SimplicityReport:
    result: Simplicity
    reason: str
    unevaluated: tuple[str, ...] = (
        "complement atoroidal: not evaluable from inputs",
        "V co-orients a tight contact structure: not evaluable from inputs",
    )


def simplicity_check(bundle: BundleData, field: FieldData) -> SimplicityReport:
    """Torsion criterion: 2k[d] is torsion in H1(M) iff k = 0 or dual = 0 (dual is horizontal)."""
    field.check_base(bundle.base)
    if field.k == 0 or field.dual.is_zero():
        return SimplicityReport(Simplicity.SIMPLE, "Euler class of V-perp is torsion")
    return SimplicityReport(Simplicity.NOT_GUARANTEED, "Euler class of V-perp has infinite order")


def promote_to_legendrian(v: Verdict, loose_components: bool = False, loose_link: bool = False) -> LegendrianVerdict:
    """
    Transfer a V-transverse verdict to Legendrian links co-oriented by V.

    Homotopy and link-homotopy transfer both ways.  Component-wise isotopy and
    isotopy transfer upward only with an overtwisted disk in the complement of
    the components (resp. of the link).  A NO always transfers, because every
    Legendrian homotopy of any kind is a V-transverse one of the same kind.
    """
    loose_components = loose_components or loose_link  # one disk for the link serves every component
    reasons = [
        "homotopic: Legendrian and V-transverse multi-curve homotopy coincide",
        "link_homotopic: Legendrian and V-transverse link-homotopy coincide",
    ]

    def upward(answer: Answer, loose: bool, what: str) -> Answer:
        if answer is Answer.NO:
            reasons.append(f"{what}: NO transfers (Legendrian {what} is V-transverse {what})")
            return Answer.NO
        if answer is Answer.YES and loose:
            reasons.append(f"{what}: YES transfers (overtwisted disk in the complement)")
            return Answer.YES
        if answer is Answer.YES:
            reasons.append(f"{what}: UNKNOWN (promotion needs an overtwisted disk in the complement)")
        return Answer.UNKNOWN

    cw = upward(v.v_componentwise, loose_components, "componentwise")
    iso = upward(v.v_isotopic, loose_link, "isotopic")
    if iso is Answer.YES:
        cw = Answer.YES
    if cw is Answer.NO or v.v_link_homotopic is Answer.NO:
        iso = Answer.NO
    return LegendrianVerdict(
        framed_isotopic=v.framed_isotopic,
        homotopic=v.v_homotopic,
        link_homotopic=v.v_link_homotopic,
        componentwise=cw,
        isotopic=iso,
        loose_components=loose_components,
        loose_link=loose_link,
        provenance=tuple(reasons),
    )


@dataclasses.dataclass(frozen=True)
class StabCorrespondence:
    i: int
    positive_only: ComponentState  # L_{i,0}
    negative_then_vstab: ComponentState  # (L_{0,i})^i

    @property
    def holds(self) -> bool:
        a, b = self.positive_only, self.negative_then_vstab
        return (a.writhe_offset, a.ev_central, a.rot_offset) == (b.writhe_offset, b.ev_central, b.rot_offset)


def stab_correspondence(i: int, genus: int = 2) -> StabCorrespondence:
    """Compare L_{i,0} with the V-stabilized (L_{0,i})^i starting from a fiber."""
    if i < 0:
        raise ParameterError("stabilization counts are nonnegative")
    bundle = BundleData(SurfaceBase(genus))
    field = FieldData(0, H1Class.zero(genus))
    fresh = LinkState(bundle, field, (make_component(bundle, "L", bundle.fiber(1)),))
    a, _ = apply_event(fresh, LegStab("L", i, 0))
    b, _ = apply_event(fresh, LegStab("L", 0, i))
    b, _ = apply_event(b, VStab("L", i))
    return StabCorrespondence(i, a["L"], b["L"])


def stab_tuple_consistent(n1: int, n2: int, n3: int, n4: int) -> bool:
    """(A)_{n1,n2} Legendrian homotopic to (B)_{n3,n4} forces equal framing and equal lift."""
    return n1 + n2 == n3 + n4 and n1 - n2 == n3 - n4
