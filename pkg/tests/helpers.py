"""Random valid scripts and small oracles shared by the test modules."""

from __future__ import annotations

import random

from vtlink.errors import ScriptError
from vtlink.extension import BundleData, FieldData, Pi1MElement
from vtlink.moves import (
    Clasp,
    Cross,
    DragEvent,
    FibEvent,
    HomotopyScript,
    KinkPair,
    KinkSlide,
    LegStab,
    RotEvent,
    SelfCross,
    Unclasp,
    VStab,
    apply_event,
    make_component,
)
from vtlink.surface import H1Class, SurfaceBase, SurfaceWord, free_reduce

HOMOTOPY_KINDS = ("cross", "self", "drag", "rot", "fib", "kinkslide", "kinkpair", "clasp")
JUMP_KINDS = ("vstab", "legstab")


def random_h1(rng: random.Random, genus: int, bound: int = 2) -> H1Class:
    return H1Class(tuple(rng.randint(-bound, bound) for _ in range(2 * genus)))


def random_letters(rng: random.Random, genus: int, n: int) -> tuple[int, ...]:
    alphabet = [s * i for i in range(1, 2 * genus + 1) for s in (1, -1)]
    return free_reduce(rng.choice(alphabet) for _ in range(n))


def random_field(rng: random.Random, genus: int, k: int | None = None) -> FieldData:
    k = rng.choice((-2, -1, 0, 1, 2)) if k is None else k
    return FieldData(k, random_h1(rng, genus))


def random_components(rng: random.Random, bundle: BundleData, n: int, nonfiber: bool = True):
    comps = []
    for j in range(n):
        name = f"K{j + 1}"
        if nonfiber and rng.random() < 0.25:
            letters = ()
            while not letters:
                letters = random_letters(rng, bundle.genus, rng.randint(1, 4))
            base = Pi1MElement(SurfaceWord(bundle.genus, letters), rng.randint(-1, 1))
            comps.append(make_component(bundle, name, base, level=rng.randint(-1, 2)))
        else:
            p = rng.choice((1, 1, 2, -1))
            comps.append(make_component(
                bundle, name, bundle.fiber(p), level=rng.randint(-1, 2), clasped=rng.random() < 0.3,
            ))
    return tuple(comps)


def random_event(rng: random.Random, state, kinds):
    names = [c.name for c in state.components]
    kind = rng.choice(kinds)
    a = rng.choice(names)
    if kind == "cross":
        b = rng.choice([n for n in names if n != a])
        return Cross(a, b, rng.choice((1, -1)))
    if kind == "self":
        return SelfCross(a, rng.choice((1, -1)))
    if kind == "drag":
        comps = (a,) if rng.random() < 0.8 or len(names) < 2 else tuple(rng.sample(names, 2))
        return DragEvent(comps, random_h1(rng, state.bundle.genus))
    if kind == "rot":
        return RotEvent(a, rng.randint(-3, 3))
    if kind == "fib":
        return FibEvent(a, rng.randint(-3, 3))
    if kind == "kinkslide":
        return KinkSlide(a, rng.randint(-3, 3))
    if kind == "kinkpair":
        return KinkPair(a, rng.choice("+-"), rng.random() < 0.6)
    if kind == "clasp":
        return Unclasp(a) if state[a].clasped else Clasp(a)
    if kind == "vstab":
        return VStab(a, rng.randint(-2, 2))
    if kind == "legstab":
        return LegStab(a, rng.randint(0, 2), rng.randint(0, 2))
    raise AssertionError(kind)


def random_events(rng: random.Random, script: HomotopyScript, length: int, kinds=HOMOTOPY_KINDS + JUMP_KINDS):
    """Events that apply in sequence from the script's initial state (invalid draws are skipped)."""
    state = script.initial_state()
    events = []
    attempts = 0
    while len(events) < length and attempts < 20 * length + 20:
        attempts += 1
        e = random_event(rng, state, kinds)
        try:
            state, _ = apply_event(state, e)
        except ScriptError:
            continue
        events.append(e)
    return tuple(events)


def random_script(
    rng: random.Random,
    genus: int | None = None,
    k: int | None = None,
    n_comps: int | None = None,
    length: int | None = None,
    kinds=HOMOTOPY_KINDS + JUMP_KINDS,
    nonfiber: bool = True,
) -> HomotopyScript:
    genus = rng.choice((2, 3)) if genus is None else genus
    bundle = BundleData(SurfaceBase(genus))
    field = random_field(rng, genus, k)
    comps = random_components(rng, bundle, rng.randint(2, 3) if n_comps is None else n_comps, nonfiber)
    script = HomotopyScript(bundle, field, comps, ())
    n = rng.randint(0, 16) if length is None else length
    return script.with_events(random_events(rng, script, n, kinds))


def has_signed_pairing(terms, equal) -> bool:
    """Exhaustive search: can the terms be split into (+, -) pairs with equal(a, b)?"""
    terms = list(terms)
    if not terms:
        return True
    first, rest = terms[0], terms[1:]
    for j, other in enumerate(rest):
        if other.sign == -first.sign and equal(first, other):
            if has_signed_pairing(rest[:j] + rest[j + 1:], equal):
                return True
    return False
