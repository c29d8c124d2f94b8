"""
Line-oriented script files: parse, serialize, and parse single loop words.

    manifold genus=2 euler=0
    field k=1 dual="A2"
    component K1 base="f" kinks=0
    component K2 base="f" kinks=0
    begin homotopy main
      cross K1 K2 sign=+
      drag K1 path="B2"
      cross K1 K2 sign=-
    end

Syntax errors carry the line number and offending token.  Semantic problems
(unknown component names, events that do not apply) surface when a homotopy
is validated, and are mapped back to their source line.
"""

from __future__ import annotations

import dataclasses
import re
import shlex
from pathlib import Path
from typing import Callable

from .errors import ParseError, ScriptError, VTLinkError
from .extension import BundleData, FieldData, Pi1MElement
from .moves import (
    Clasp,
    ComponentState,
    Cross,
    DragEvent,
    FibEvent,
    HomotopyScript,
    KinkPair,
    KinkSlide,
    LegStab,
    MoveEvent,
    RotEvent,
    SelfCross,
    Unclasp,
    VStab,
    make_component,
    validate,
)
from .surface import SurfaceBase, parse_h1, parse_word

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_BLOCK_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.~-]*")
_FIBER = re.compile(r"f(?:\^(-?[0-9]+))?")


@dataclasses.dataclass(frozen=True)
class ScriptFile:
    bundle: BundleData
    field: FieldData
    components: tuple[ComponentState, ...]
    homotopies: tuple[HomotopyScript, ...]
    event_lines: dict[str, tuple[int, ...]] = dataclasses.field(default_factory=dict, compare=False)

    def homotopy(self, name: str | None = None) -> HomotopyScript:
        if not self.homotopies:
            raise ScriptError("the file declares no homotopy block")
        if name is None:
            return self.homotopies[0]
        for h in self.homotopies:
            if h.name == name:
                return h
        raise ScriptError(f"no homotopy named {name!r}")

    def validate(self) -> ScriptError | None:
        """First semantic error over all homotopies, located by source line when known."""
        for h in self.homotopies:
            err = validate(h)
            if err is not None:
                lines = self.event_lines.get(h.name, ())
                if err.index is not None and err.index < len(lines):
                    err.line = lines[err.index]
                return err
        return None


# --------------------------------------------------------------------------- #
# Tokens
# --------------------------------------------------------------------------- #


def _split(text: str, lineno: int) -> list[str]:
    lex = shlex.shlex(text, posix=True)
    lex.whitespace_split = True
    lex.commenters = "#"
    try:
        return list(lex)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def _options(tokens: list[str], lineno: int, allowed: set[str], required: set[str]) -> dict[str, str]:
    opts: dict[str, str] = {}
    for tok in tokens:
        key, eq, value = tok.partition("=")
        if not eq:
            raise ParseError("expected key=value", lineno, tok)
        if key not in allowed:
            raise ParseError(f"unknown option {key!r}", lineno, tok)
        if key in opts:
            raise ParseError(f"option {key!r} given twice", lineno, tok)
        opts[key] = value
    missing = sorted(required - opts.keys())
    if missing:
        raise ParseError(f"missing option {missing[0]}=", lineno)
    return opts


def _int(opts: dict[str, str], key: str, lineno: int, default: int | None = None) -> int:
    if key not in opts:
        assert default is not None
        return default
    try:
        return int(opts[key])
    except ValueError:
        raise ParseError(f"{key} must be an integer", lineno, f"{key}={opts[key]}") from None


def _sign(opts: dict[str, str], lineno: int) -> int:
    v = opts["sign"]
    if v in ("+", "+1"):
        return 1
    if v in ("-", "-1"):
        return -1
    raise ParseError("sign must be + or -", lineno, f"sign={v}")


def _name(tok: str, lineno: int) -> str:
    if not _NAME.fullmatch(tok):
        raise ParseError("bad component name", lineno, tok)
    return tok


def _literal(fn: Callable, text: str, genus: int, lineno: int, key: str):
    try:
        return fn(text, genus)
    except (VTLinkError, ValueError) as exc:
        raise ParseError(str(exc), lineno, f'{key}="{text}"') from None


def _base(text: str, genus: int, lineno: int) -> Pi1MElement:
    """`f`, `f^n`, a surface word, or a word followed by a fiber power."""
    words, fiber = [], 0
    for tok in text.split():
        m = _FIBER.fullmatch(tok)
        if m:
            fiber += int(m.group(1)) if m.group(1) else 1
        else:
            words.append(tok)
    w = _literal(parse_word, " ".join(words), genus, lineno, "base")
    return Pi1MElement(w, fiber)


# --------------------------------------------------------------------------- #
# Events
# --------------------------------------------------------------------------- #

_EVENT_ARITY = {
    "cross": 2, "self": 1, "drag": 1, "rot": 1, "fib": 1, "kinkslide": 1,
    "vstab": 1, "clasp": 1, "unclasp": 1, "legstab": 1, "kinkpair": 1,
}


def parse_event(tokens: list[str], genus: int, lineno: int = 0) -> MoveEvent:
    kw = tokens[0]
    if kw not in _EVENT_ARITY:
        raise ParseError("unknown directive", lineno, kw)
    n = _EVENT_ARITY[kw]
    if len(tokens) < 1 + n or "=" in "".join(tokens[1:1 + n]):
        raise ParseError(f"{kw} needs {n} component name{'s' if n > 1 else ''}", lineno, kw)
    args, rest = tokens[1:1 + n], tokens[1 + n:]

    if kw == "cross":
        o = _options(rest, lineno, {"sign"}, {"sign"})
        return Cross(_name(args[0], lineno), _name(args[1], lineno), _sign(o, lineno))
    if kw == "drag":
        o = _options(rest, lineno, {"path"}, {"path"})
        comps = tuple(_name(c, lineno) for c in args[0].split(","))
        return DragEvent(comps, _literal(parse_h1, o["path"], genus, lineno, "path"))

    comp = _name(args[0], lineno)
    if kw == "self":
        return SelfCross(comp, _sign(_options(rest, lineno, {"sign"}, {"sign"}), lineno))
    if kw in ("clasp", "unclasp"):
        _options(rest, lineno, set(), set())
        return Clasp(comp) if kw == "clasp" else Unclasp(comp)
    if kw == "vstab":
        return VStab(comp, _int(_options(rest, lineno, {"i"}, {"i"}), "i", lineno))
    if kw == "legstab":
        o = _options(rest, lineno, {"pos", "neg"}, set())
        return LegStab(comp, _int(o, "pos", lineno, 0), _int(o, "neg", lineno, 0))
    if kw == "kinkpair":
        o = _options(rest, lineno, {"type", "op"}, {"type"})
        if o["type"] not in ("+", "-"):
            raise ParseError("kink pair type must be + or -", lineno, f"type={o['type']}")
        op = o.get("op", "create")
        if op not in ("create", "cancel"):
            raise ParseError("op must be create or cancel", lineno, f"op={op}")
        return KinkPair(comp, o["type"], op == "create")
    o = _options(rest, lineno, {"n"}, set())
    cls = {"rot": RotEvent, "fib": FibEvent, "kinkslide": KinkSlide}[kw]
    return cls(comp, _int(o, "n", lineno, 1))


def parse_loop(text: str, genus: int) -> tuple[MoveEvent, ...]:
    """A loop word: events in the script syntax, separated by `;` or newlines."""
    events = []
    for part in re.split(r"[;\n]", text):
        tokens = _split(part, 0)
        if tokens:
            events.append(parse_event(tokens, genus))
    if not events:
        raise ParseError("empty loop word", 0)
    return tuple(events)


def format_event(e: MoveEvent) -> str:
    sign = lambda s: "+" if s > 0 else "-"  # noqa: E731
    if isinstance(e, Cross):
        return f"cross {e.a} {e.b} sign={sign(e.sign)}"
    if isinstance(e, SelfCross):
        return f"self {e.comp} sign={sign(e.sign)}"
    if isinstance(e, DragEvent):
        return f'drag {",".join(e.comps)} path="{e.rho}"'
    if isinstance(e, RotEvent):
        return f"rot {e.comp} n={e.n}"
    if isinstance(e, FibEvent):
        return f"fib {e.comp} n={e.n}"
    if isinstance(e, KinkSlide):
        return f"kinkslide {e.comp} n={e.n}"
    if isinstance(e, VStab):
        return f"vstab {e.comp} i={e.i}"
    if isinstance(e, Clasp):
        return f"clasp {e.comp}"
    if isinstance(e, Unclasp):
        return f"unclasp {e.comp}"
    if isinstance(e, LegStab):
        return f"legstab {e.comp} pos={e.pos} neg={e.neg}"
    if isinstance(e, KinkPair):
        return f"kinkpair {e.comp} type={e.kind} op={'create' if e.create else 'cancel'}"
    raise TypeError(f"cannot format {e!r}")


# --------------------------------------------------------------------------- #
# Files
# --------------------------------------------------------------------------- #


def parse(text: str) -> ScriptFile:
    bundle: BundleData | None = None
    field: FieldData | None = None
    comps: list[ComponentState] = []
    blocks: list[tuple[str, list[MoveEvent], list[int]]] = []
    current: tuple[str, list[MoveEvent], list[int]] | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _split(raw, lineno)
        if not tokens:
            continue
        kw = tokens[0]

        if current is not None:
            if kw == "end":
                if len(tokens) > 1:
                    raise ParseError("unexpected token after end", lineno, tokens[1])
                blocks.append(current)
                current = None
            elif kw in ("begin", "manifold", "field", "component"):
                raise ParseError(f"{kw} inside a homotopy block", lineno, kw)
            else:
                current[1].append(parse_event(tokens, bundle.genus, lineno))
                current[2].append(lineno)
            continue

        if kw == "manifold":
            if bundle is not None:
                raise ParseError("second manifold line", lineno, kw)
            o = _options(tokens[1:], lineno, {"genus", "euler"}, {"genus"})
            genus = _int(o, "genus", lineno)
            if genus < 1:
                raise ParseError("genus must be positive", lineno, f"genus={genus}")
            bundle = BundleData(SurfaceBase(genus), _int(o, "euler", lineno, 0))
        elif kw == "field":
            if bundle is None:
                raise ParseError("field before manifold", lineno, kw)
            if field is not None:
                raise ParseError("second field line", lineno, kw)
            o = _options(tokens[1:], lineno, {"k", "dual"}, {"k"})
            dual = _literal(parse_h1, o.get("dual", "0"), bundle.genus, lineno, "dual")
            field = FieldData(_int(o, "k", lineno), dual)
        elif kw == "component":
            if bundle is None:
                raise ParseError("component before manifold", lineno, kw)
            if len(tokens) < 2 or "=" in tokens[1]:
                raise ParseError("component needs a name", lineno, kw)
            name = _name(tokens[1], lineno)
            if any(c.name == name for c in comps):
                raise ParseError("duplicate component name", lineno, name)
            o = _options(tokens[2:], lineno, {"base", "kinks", "clasped"}, {"base"})
            clasped = o.get("clasped", "false")
            if clasped not in ("true", "false"):
                raise ParseError("clasped must be true or false", lineno, f"clasped={clasped}")
            base = _base(o["base"], bundle.genus, lineno)
            try:
                comps.append(make_component(bundle, name, base, _int(o, "kinks", lineno, 0), clasped == "true"))
            except VTLinkError as exc:
                raise ParseError(str(exc), lineno, name) from None
        elif kw == "begin":
            if len(tokens) != 3 or tokens[1] != "homotopy":
                raise ParseError("expected: begin homotopy NAME", lineno, " ".join(tokens[1:]) or kw)
            if bundle is None:
                raise ParseError("homotopy before manifold", lineno, kw)
            name = tokens[2]
            if not _BLOCK_NAME.fullmatch(name):
                raise ParseError("bad homotopy name", lineno, name)
            if any(b[0] == name for b in blocks):
                raise ParseError("duplicate homotopy name", lineno, name)
            current = (name, [], [])
        elif kw == "end":
            raise ParseError("end without begin", lineno, kw)
        else:
            raise ParseError("unknown directive", lineno, kw)

    if current is not None:
        raise ParseError(f"homotopy {current[0]!r} is not closed with end", len(text.splitlines()))
    if bundle is None:
        raise ParseError("missing manifold line", 1)
    if field is None:
        raise ParseError("missing field line", 1)

    homs = tuple(HomotopyScript(bundle, field, tuple(comps), tuple(ev), name) for name, ev, _ in blocks)
    lines = {name: tuple(ln) for name, _, ln in blocks}
    return ScriptFile(bundle, field, tuple(comps), homs, lines)


def parse_file(path: str | Path) -> ScriptFile:
    return parse(Path(path).read_text(encoding="utf-8"))


def _format_base(base: Pi1MElement) -> str:
    parts = [str(base.base_word)] if base.base_word.letters else []
    if base.fiber_exp or not parts:
        parts.append("f" if base.fiber_exp == 1 else f"f^{base.fiber_exp}")
    return " ".join(parts)


def dump(sf: ScriptFile) -> str:
    out = [
        f"manifold genus={sf.bundle.genus} euler={sf.bundle.euler}",
        f'field k={sf.field.k} dual="{sf.field.dual}"',
    ]
    for c in sf.components:
        line = f'component {c.name} base="{_format_base(c.base)}" kinks={c.level}'
        out.append(line + (" clasped=true" if c.clasped else ""))
    for h in sf.homotopies:
        out.append(f"begin homotopy {h.name}")
        out += [f"  {format_event(e)}" for e in h.events]
        out.append("end")
    return "\n".join(out) + "\n"


def script_file(scripts: list[HomotopyScript] | tuple[HomotopyScript, ...]) -> ScriptFile:
    """Wrap homotopies sharing one header into a ScriptFile (for serialization)."""
    first = scripts[0]
    return ScriptFile(first.bundle, first.field, first.components, tuple(scripts))
