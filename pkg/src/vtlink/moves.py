"""
State machine for multi-component V-transverse curves under generic homotopies.

A homotopy is a sequence of elementary events applied to an ordered tuple of
components.  Components are never permuted.  Kinks are typed by their local
(rotation, writhe) contribution; a V-transverse stabilization adds pairs of kinks
with equal rotation and opposite writhe, so it never changes the framing.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Sequence, Union

from . import extension as ext
from .errors import NotRealizable, ScriptError
from .extension import BundleData, EVFiberElement, FieldData, Pi1MElement
from .surface import H1Class, abelianize
from .terms import FiberPower, Fig8Term, LiftClass, Opaque

# (rotation, writhe) of the four kink types.
KINK_TYPES: tuple[tuple[int, int], ...] = ((1, -1), (-1, 1), (1, 1), (-1, -1))
_POS_STAB_PAIR = (0, 2)  # (1,-1) + (1,1): net rotation +2, writhe 0
_NEG_STAB_PAIR = (1, 3)  # (-1,1) + (-1,-1): net rotation -2, writhe 0
KINK_PAIRS = {"-": (0, 1), "+": (2, 3)}  # opposite pairs, keyed by the writhe of the rot +1 kink
_LEG_POS_KINK = 0  # positive Legendrian stabilization: rotation +1, writhe -1
_LEG_NEG_KINK = 3  # negative Legendrian stabilization: rotation -1, writhe -1


# --------------------------------------------------------------------------- #
# Events
# --------------------------------------------------------------------------- #


@dataclasses.dataclass(frozen=True)
class Cross:
    a: str
    b: str
    sign: int

    def names(self):
        return (self.a, self.b)

    def inverse(self):
        return Cross(self.a, self.b, -self.sign)


@dataclasses.dataclass(frozen=True)
class SelfCross:
    comp: str
    sign: int

    def names(self):
        return (self.comp,)

    def inverse(self):
        return SelfCross(self.comp, -self.sign)


@dataclasses.dataclass(frozen=True)
class DragEvent:
    """Drag the torus neighborhood holding `comps` around a loop with class rho."""

    comps: tuple[str, ...]
    rho: H1Class

    def names(self):
        return self.comps

    def inverse(self):
        return DragEvent(self.comps, -self.rho)


@dataclasses.dataclass(frozen=True)
class RotEvent:
    comp: str
    n: int

    def names(self):
        return (self.comp,)

    def inverse(self):
        return RotEvent(self.comp, -self.n)


@dataclasses.dataclass(frozen=True)
class FibEvent:
    comp: str
    n: int

    def names(self):
        return (self.comp,)

    def inverse(self):
        return FibEvent(self.comp, -self.n)


@dataclasses.dataclass(frozen=True)
class KinkSlide:
    comp: str
    n: int

    def names(self):
        return (self.comp,)

    def inverse(self):
        return KinkSlide(self.comp, -self.n)


@dataclasses.dataclass(frozen=True)
class VStab:
    comp: str
    i: int

    def names(self):
        return (self.comp,)

    def inverse(self):
        return VStab(self.comp, -self.i)


@dataclasses.dataclass(frozen=True)
class KinkPair:
    comp: str
    kind: str  # "+" or "-", see KINK_PAIRS
    create: bool = True

    def names(self):
        return (self.comp,)

    def inverse(self):
        return KinkPair(self.comp, self.kind, not self.create)


@dataclasses.dataclass(frozen=True)
class Clasp:
    comp: str

    def names(self):
        return (self.comp,)

    def inverse(self):
        return Unclasp(self.comp)


@dataclasses.dataclass(frozen=True)
class Unclasp:
    comp: str

    def names(self):
        return (self.comp,)

    def inverse(self):
        return Clasp(self.comp)


@dataclasses.dataclass(frozen=True)
class LegStab:
    comp: str
    pos: int
    neg: int

    def names(self):
        return (self.comp,)

    def inverse(self):
        return LegStab(self.comp, -self.pos, -self.neg)


MoveEvent = Union[
    Cross, SelfCross, DragEvent, RotEvent, FibEvent, KinkSlide, VStab, KinkPair, Clasp, Unclasp, LegStab
]

SELF_EVENTS = (SelfCross, Clasp, Unclasp)


# --------------------------------------------------------------------------- #
# State
# --------------------------------------------------------------------------- #


def _add_kinks(kinks: tuple[int, ...], idx: Iterable[int], n: int) -> tuple[int, ...]:
    out = list(kinks)
    for j in idx:
        out[j] += n
    return tuple(out)


def stabilization_kinks(i: int) -> tuple[int, int, int, int]:
    """Kink ledger of i V-transverse stabilization pairs (mirrored pairs for i < 0)."""
    return _add_kinks((0, 0, 0, 0), _POS_STAB_PAIR if i >= 0 else _NEG_STAB_PAIR, abs(i))


@dataclasses.dataclass(frozen=True)
class ComponentState:
    name: str
    base: Pi1MElement
    fiber_power: int | None  # p when base is f^p, else None
    ev_central: int = 0  # r in the lift F^r f~^p
    kinks: tuple[int, int, int, int] = (0, 0, 0, 0)  # counts per KINK_TYPES
    level: int = 0  # V-transverse stabilization level i of K^i
    leg_stabs: tuple[int, int] = (0, 0)
    clasped: bool = False
    self_double_points: int = 0
    self_parity: int = 0
    rot_loops: int = 0
    fib_loops: int = 0
    kink_slides: int = 0

    @property
    def kink_ledger(self) -> dict[tuple[int, int], int]:
        return dict(zip(KINK_TYPES, self.kinks))

    @property
    def rot_offset(self) -> int:
        return sum(n * r for n, (r, _) in zip(self.kinks, KINK_TYPES))

    @property
    def writhe_offset(self) -> int:
        return sum(n * w for n, (_, w) in zip(self.kinks, KINK_TYPES))

    def lift(self) -> LiftClass:
        if self.fiber_power is not None:
            return FiberPower(EVFiberElement(self.fiber_power, self.ev_central))
        return Opaque(self.base, self.ev_central)

    def endpoint(self) -> tuple:
        """The data that identifies the V-transverse curve up to the moves modelled here."""
        return (self.name, self.base, self.ev_central, self.writhe_offset, self.clasped)


def make_component(
    bundle: BundleData,
    name: str,
    base: Pi1MElement,
    level: int = 0,
    clasped: bool = False,
) -> ComponentState:
    """A component K^level: `level` stabilization pairs put the lift at F^(2 level)."""
    if base.base_word.genus != bundle.genus:
        raise ScriptError(f"component {name}: base word has genus {base.base_word.genus}")
    p = bundle.fiber_power(base)
    return ComponentState(
        name=name,
        base=base,
        fiber_power=p,
        ev_central=2 * level,
        kinks=stabilization_kinks(level),
        level=level,
        clasped=clasped,
    )


@dataclasses.dataclass(frozen=True)
class LinkState:
    bundle: BundleData
    field: FieldData
    components: tuple[ComponentState, ...]

    def index(self, name: str) -> int:
        for i, c in enumerate(self.components):
            if c.name == name:
                return i
        raise ScriptError(f"unknown component {name!r}")

    def __getitem__(self, name: str) -> ComponentState:
        return self.components[self.index(name)]

    def replace(self, comp: ComponentState) -> LinkState:
        i = self.index(comp.name)
        comps = self.components[:i] + (comp,) + self.components[i + 1:]
        return dataclasses.replace(self, components=comps)

    def endpoint(self) -> tuple:
        return tuple(c.endpoint() for c in self.components)


@dataclasses.dataclass(frozen=True)
class HomotopyScript:
    bundle: BundleData
    field: FieldData
    components: tuple[ComponentState, ...]
    events: tuple[MoveEvent, ...] = ()
    name: str = "main"

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "events", tuple(self.events))
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            raise ScriptError(f"duplicate component names in {names}")
        self.field.check_base(self.bundle.base)

    def initial_state(self) -> LinkState:
        return LinkState(self.bundle, self.field, self.components)

    def component_names(self) -> list[str]:
        return [c.name for c in self.components]

    def with_events(self, events: Sequence[MoveEvent], name: str | None = None) -> HomotopyScript:
        return dataclasses.replace(self, events=tuple(events), name=name or self.name)


# --------------------------------------------------------------------------- #
# Applying events
# --------------------------------------------------------------------------- #


def drag_level(field: FieldData, comp: ComponentState, rho: H1Class) -> int:
    return ext.h_V(field, [ext.Drag(rho, comp.fiber_power)])


def apply_event(state: LinkState, event: MoveEvent) -> tuple[LinkState, Fig8Term | None]:
    for name in event.names():
        state.index(name)

    if isinstance(event, Cross):
        if event.a == event.b:
            raise ScriptError("cross needs two distinct components; use a self crossing")
        _check_sign(event.sign)
        i, j = sorted((state.index(event.a), state.index(event.b)))
        first, second = state.components[i], state.components[j]
        term = Fig8Term(event.sign, first.lift(), second.lift(), (first.name, second.name))
        return state, term

    if isinstance(event, SelfCross):
        _check_sign(event.sign)
        c = state[event.comp]
        return state.replace(dataclasses.replace(
            c, self_double_points=c.self_double_points + 1, self_parity=c.self_parity ^ 1,
        )), None

    if isinstance(event, (Clasp, Unclasp)):
        c = state[event.comp]
        want = isinstance(event, Unclasp)
        if c.clasped != want:
            raise ScriptError(f"{event.comp} is {'already' if c.clasped else 'not'} clasped")
        # Two self double points of opposite sign; parity is unchanged.
        return state.replace(dataclasses.replace(
            c, clasped=not c.clasped, self_double_points=c.self_double_points + 2,
        )), None

    if isinstance(event, DragEvent):
        if len(set(event.comps)) != len(event.comps):
            raise ScriptError("drag lists a component twice")
        if event.rho.genus != state.bundle.genus:
            raise ScriptError("drag path has the wrong genus")
        for name in event.comps:
            c = state[name]
            if c.fiber_power is None:
                raise ScriptError(
                    f"drag on {name}: dragging a torus neighborhood needs a curve homotopic "
                    "to a power of the fiber (use fib for other curves)"
                )
            h = drag_level(state.field, c, event.rho)
            if c.clasped and h != 0:
                raise ScriptError(
                    f"drag on clasped {name} would be a V-transverse isotopy to K^{h}; "
                    "unclasp first (clasped-fiber rigidity axiom)"
                )
            state = state.replace(dataclasses.replace(
                c,
                ev_central=c.ev_central + 2 * h,
                level=c.level + h,
                kinks=_add_kinks(c.kinks, _POS_STAB_PAIR if h >= 0 else _NEG_STAB_PAIR, abs(h)),
            ))
        return state, None

    if isinstance(event, RotEvent):
        c = state[event.comp]
        return state.replace(dataclasses.replace(c, rot_loops=c.rot_loops + event.n)), None

    if isinstance(event, FibEvent):
        c = state[event.comp]
        if c.fiber_power is not None:
            raise ScriptError(
                f"fib on {event.comp}: the fiber-rotation loop is only defined for curves "
                "not homotopic to a power of the fiber (use drag instead)"
            )
        return state.replace(dataclasses.replace(c, fib_loops=c.fib_loops + event.n)), None

    if isinstance(event, KinkSlide):
        c = state[event.comp]
        return state.replace(dataclasses.replace(c, kink_slides=c.kink_slides + event.n)), None

    if isinstance(event, VStab):
        c = state[event.comp]
        return state.replace(dataclasses.replace(
            c,
            ev_central=c.ev_central + 2 * event.i,
            level=c.level + event.i,
            kinks=_add_kinks(c.kinks, _POS_STAB_PAIR if event.i >= 0 else _NEG_STAB_PAIR, abs(event.i)),
        )), None

    if isinstance(event, KinkPair):
        if event.kind not in KINK_PAIRS:
            raise ScriptError(f"unknown kink pair type {event.kind!r}")
        c = state[event.comp]
        idx = KINK_PAIRS[event.kind]
        kinks = _add_kinks(c.kinks, idx, 1 if event.create else -1)
        if min(kinks) < 0:
            raise ScriptError(f"no kink pair of type {event.kind} to cancel on {event.comp}")
        return state.replace(dataclasses.replace(c, kinks=kinks)), None

    if isinstance(event, LegStab):
        c = state[event.comp]
        pos, neg = c.leg_stabs[0] + event.pos, c.leg_stabs[1] + event.neg
        kinks = _add_kinks(_add_kinks(c.kinks, (_LEG_POS_KINK,), event.pos), (_LEG_NEG_KINK,), event.neg)
        if pos < 0 or neg < 0 or min(kinks) < 0:
            raise ScriptError(f"cannot destabilize {event.comp} below zero stabilizations")
        return state.replace(dataclasses.replace(
            c, leg_stabs=(pos, neg), kinks=kinks, ev_central=c.ev_central + event.pos - event.neg,
        )), None

    raise ScriptError(f"unknown event {event!r}")


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise ScriptError(f"crossing sign must be + or -, got {sign}")


@dataclasses.dataclass(frozen=True)
class TraceEntry:
    index: int
    event: MoveEvent
    term: Fig8Term | None


@dataclasses.dataclass(frozen=True)
class RunResult:
    final: LinkState
    terms: tuple[Fig8Term, ...]
    trace: tuple[TraceEntry, ...]


def run(script: HomotopyScript) -> RunResult:
    state = script.initial_state()
    terms: list[Fig8Term] = []
    trace: list[TraceEntry] = []
    for i, event in enumerate(script.events):
        try:
            state, term = apply_event(state, event)
        except ScriptError as exc:
            raise ScriptError(exc.message, index=i) from None
        if term is not None:
            term = dataclasses.replace(term, at=i)
            terms.append(term)
        trace.append(TraceEntry(i, event, term))
    return RunResult(state, tuple(terms), tuple(trace))


def validate(script: HomotopyScript) -> ScriptError | None:
    try:
        run(script)
    except ScriptError as exc:
        return exc
    return None


def reverse(script: HomotopyScript) -> HomotopyScript:
    """The reverse homotopy, starting where `script` ends."""
    final = run(script).final
    events = tuple(e.inverse() for e in reversed(script.events))
    return dataclasses.replace(script, components=final.components, events=events, name=script.name + "~")


def concatenate(first: HomotopyScript, second_events: Sequence[MoveEvent]) -> HomotopyScript:
    return first.with_events(first.events + tuple(second_events))


# --------------------------------------------------------------------------- #
# Loops and normal forms
# --------------------------------------------------------------------------- #


class NotRealizableWord(ScriptError):
    """A loop word using events that are not loop generators for the component."""


def loop_torus_kinds(comp: ComponentState, events: Sequence[MoveEvent]) -> list[ext.TorusKind]:
    """Translate a one-component event word into loop generators for h_V."""
    out: list[ext.TorusKind] = []
    for e in events:
        if isinstance(e, RotEvent):
            out.append(ext.Rot(e.n))
        elif isinstance(e, FibEvent):
            if comp.fiber_power is not None:
                raise NotRealizableWord(f"fib on fiber-power component {comp.name}")
            out.append(ext.Fib(abelianize(comp.base.base_word), e.n))
        elif isinstance(e, DragEvent):
            if comp.fiber_power is None:
                raise NotRealizableWord(f"drag on non-fiber component {comp.name}")
            out.append(ext.Drag(e.rho, comp.fiber_power))
        elif isinstance(e, KinkSlide):
            continue  # gamma_kink is trivial after forgetting V-transversality
        else:
            raise NotRealizableWord(f"{type(e).__name__} is not a loop generator")
    return out


def loop_h_V(script: HomotopyScript, comp_name: str, events: Sequence[MoveEvent]) -> int:
    comp = script.initial_state()[comp_name]
    for e in events:
        if comp_name not in e.names() or len(e.names()) != 1:
            raise NotRealizableWord("loop events must all act on the one chosen component")
    return ext.h_V(script.field, loop_torus_kinds(comp, events))


@dataclasses.dataclass(frozen=True)
class NormalForm:
    """rot^a fib^b kink^c (non-fiber case) or rot^a gamma_rho kink^c (fiber case)."""

    rot: int
    fib: int | None
    rho: H1Class | None
    kink: int

    def __str__(self) -> str:
        middle = str(self.fib) if self.rho is None else f"rho={self.rho}"
        return f"({self.rot}, {middle}, {self.kink})"


def normal_form_loop(script: HomotopyScript, comp_name: str, events: Sequence[MoveEvent] | None = None) -> NormalForm:
    events = script.events if events is None else tuple(events)
    h = loop_h_V(script, comp_name, events)
    if h != 0:
        raise NotRealizable(h)
    comp = script.initial_state()[comp_name]
    a = sum(e.n for e in events if isinstance(e, RotEvent))
    c = sum(e.n for e in events if isinstance(e, KinkSlide))
    if comp.fiber_power is None:
        b = sum(e.n for e in events if isinstance(e, FibEvent))
        return NormalForm(a, b, None, c)
    rho = H1Class.zero(script.bundle.genus)
    for e in events:
        if isinstance(e, DragEvent):
            rho = rho + e.rho
    return NormalForm(a, None, rho, c)
