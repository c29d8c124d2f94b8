"""Command-line entry point.  Exit status: 0 success, 1 domain or validation error, 2 usage."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import catalog
from .errors import NotRealizable, VTLinkError
from .moves import loop_h_V, normal_form_loop
from .nu import is_zero, nu, obstruction_valid
from .script import ScriptFile, dump, parse_file, parse_loop, script_file


def _load(path: str) -> ScriptFile:
    try:
        sf = parse_file(path)
    except OSError as exc:
        raise VTLinkError(f"cannot read {path}: {exc.strerror}") from None
    err = sf.validate()
    if err is not None:
        raise err
    return sf


def _loop_component(events) -> str:
    names = {n for e in events for n in e.names()}
    if len(names) != 1:
        raise VTLinkError("a loop word must act on exactly one component")
    return names.pop()


def cmd_validate(args) -> list[str]:
    sf = _load(args.file)
    n = sum(len(h.events) for h in sf.homotopies)
    def count(m: int, word: str, plural: str) -> str:
        return f"{m} {word if m == 1 else plural}"

    parts = (count(len(sf.components), "component", "components"),
             count(len(sf.homotopies), "homotopy", "homotopies"), count(n, "event", "events"))
    return [f"OK ({', '.join(parts)})"]


def cmd_nu(args) -> list[str]:
    sf = _load(args.file)
    h = sf.homotopy(args.homotopy)
    value = nu(h)
    verdict = is_zero(value, sf.field)
    lines = ["[nu]", f"homotopy: {h.name}", f"terms: {len(value)}"]
    src = sf.event_lines.get(h.name, ())
    for j, t in enumerate(value.terms, start=1):
        at = f" line {src[t.at]}" if t.at is not None and t.at < len(src) else ""
        lines.append(f"term {j}: {t}{at}")
    lines.append(f"obstruction_valid: {'yes' if obstruction_valid(h) else 'no (invariance unverified)'}")
    if not value.terms:
        lines.append(f"nu = {verdict.value} (no inter-component double points)")
    else:
        lines.append(f"nu = {verdict.value}")
    return lines


def cmd_hv(args) -> list[str]:
    sf = _load(args.file)
    events = parse_loop(args.loop, sf.bundle.genus)
    h = sf.homotopy() if sf.homotopies else _bare(sf)
    return [str(loop_h_V(h, _loop_component(events), events))]


def cmd_normal_form(args) -> list[str]:
    sf = _load(args.file)
    events = parse_loop(args.loop, sf.bundle.genus)
    h = sf.homotopy() if sf.homotopies else _bare(sf)
    return [str(normal_form_loop(h, _loop_component(events), events))]


def _bare(sf: ScriptFile):
    from .moves import HomotopyScript

    return HomotopyScript(sf.bundle, sf.field, sf.components, (), "loop")


def _verdict_lines(slots: Sequence[tuple[str, catalog.Answer]], flags, provenance, extra=()) -> list[str]:
    lines = ["[verdict]"]
    lines += [f"{k}: {v.value}" for k, v in slots]
    lines += list(extra)
    lines.append(f"flags: {'; '.join(flags) if flags else 'none'}")
    lines.append("[provenance]")
    lines += [f"- {p}" for p in provenance]
    return lines


def cmd_verdict(args) -> list[str]:
    v = catalog.verdict_for_scripts(_load(args.file).homotopies)
    return _verdict_lines(list(v.slots().items()), v.flags, v.provenance)


def cmd_legendrian(args) -> list[str]:
    v = catalog.verdict_for_scripts(_load(args.file).homotopies)
    lv = catalog.promote_to_legendrian(v, args.loose_components, args.loose_link)
    slots = list(zip(("framed_isotopic", "homotopic", "link_homotopic", "componentwise", "isotopic"), lv.as_tuple()))
    extra = [f"loose_components: {'yes' if lv.loose_components else 'no'}",
             f"loose_link: {'yes' if lv.loose_link else 'no'}"]
    return _verdict_lines(slots, v.flags, v.provenance + lv.provenance, extra)


def cmd_table(args, parser) -> list[str]:
    lines = [catalog.TABLE_HEADER] if args.header else []
    if args.all:
        return lines + catalog.table_all(args.g, args.k)
    missing = [f"--{n}" for n in ("family", "i1", "i2") if getattr(args, n) is None]
    if missing:
        parser.error(f"table needs --all or {', '.join(missing)}")
    return lines + [catalog.table_line(args.family, args.g, args.k, args.i1, args.i2)]


def cmd_example(args) -> list[str]:
    s = catalog.build_example(args.family, args.g, args.k, args.i1, args.i2)
    return dump(script_file([s])).splitlines()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vtlink", description="V-transverse link invariants in circle bundles over surfaces")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="parse and replay every homotopy in a script file")
    s.add_argument("file")

    s = sub.add_parser("nu", help="the figure-8 sum nu of a homotopy and its zero test")
    s.add_argument("file")
    s.add_argument("--homotopy", metavar="NAME")

    for name, helptext in (("hv", "kink-cancelling value h_V of a loop word"),
                           ("normal-form", "normal form of a closed loop word")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.add_argument("--loop", required=True, metavar="WORD", help='events separated by ";"')

    s = sub.add_parser("verdict", help="five-slot verdict for the two ends of the homotopies")
    s.add_argument("file")

    s = sub.add_parser("legendrian", help="verdict promoted to Legendrian links")
    s.add_argument("file")
    s.add_argument("--loose-components", action="store_true")
    s.add_argument("--loose-link", action="store_true")

    families = [f.value for f in catalog.Family]
    s = sub.add_parser("table", help="rows of the non-simplicity table")
    s.add_argument("--all", action="store_true", help="one representative row per regime")
    s.add_argument("--family", choices=families)
    s.add_argument("--g", type=int, default=2)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--i1", type=int)
    s.add_argument("--i2", type=int)
    s.add_argument("--header", action="store_true", help="print the column header first")

    s = sub.add_parser("example", help="print the script file of an example family")
    s.add_argument("--family", choices=families, required=True)
    s.add_argument("--g", type=int, default=2)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--i1", type=int, required=True)
    s.add_argument("--i2", type=int, required=True)
    return p


_COMMANDS = {
    "validate": cmd_validate,
    "nu": cmd_nu,
    "hv": cmd_hv,
    "normal-form": cmd_normal_form,
    "verdict": cmd_verdict,
    "legendrian": cmd_legendrian,
    "example": cmd_example,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "table":
            lines = cmd_table(args, parser)
        else:
            lines = _COMMANDS[args.command](args)
    except NotRealizable as exc:
        print(str(exc))
        return 1
    except VTLinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print("\n".join(lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
