"""hallpi command line: analyze, criterion, reproduce, corpus.

Exit codes: 0 success, 1 failed claim or property, 2 input error,
3 resource error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .catalog import builtin, parse_group_file
from .corpus import DEFAULT_MAX_ORDER, DEFAULT_PI_MENU, parse_pi_menu, run_corpus
from .criterion import CriterionReport, _check_almost_simple, epi_criterion, failing_layer_section, obstruction_element
from .errors import InputError, ResourceError
from .group import PermutationGroup
from .hall import D_BOUND, classify_ECD
from .primes import PrimeSet
from .reproduce import reproduce

SCHEMA_ID = "hallpi-report-v1"

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class _Timer:
    def __init__(self):
        self.phases: dict[str, float] = {}

    def run(self, phase: str, fn, *args, **kw):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kw)
        finally:
            self.phases[phase] = round(time.perf_counter() - t0, 4)


def _base_report(command: str) -> dict:
    return {"schema": SCHEMA_ID, "tool": {"name": "hallpi", "version": __version__},
            "command": command}


def load_group(file: str | None, spec: str | None) -> tuple[PermutationGroup, dict]:
    if (file is None) == (spec is None):
        raise InputError("give exactly one of a group file or --builtin family:param")
    if spec is not None:
        return builtin(spec), {"kind": "builtin", "name": spec}
    path = Path(file)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {file}: {exc.strerror or exc}") from None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise InputError(f"{file} is not UTF-8 text") from None
    gs = parse_group_file(text, name=path.name)
    return gs.group(), {"kind": "file", "name": path.name,
                        "sha256": hashlib.sha256(data).hexdigest()}


def _group_block(G: PermutationGroup) -> dict:
    return {"order": G.order(), "degree": G.degree}


def _criterion_block(rep: CriterionReport) -> dict:
    return rep.to_dict()


def _obstruction(G: PermutationGroup, rep: CriterionReport, pi: PrimeSet) -> dict:
    if rep.witness is None:
        return {"status": "none", "reason": "the criterion holds"}
    if 2 not in pi or 3 not in pi:
        return {"status": "skipped", "reason": "the obstruction search needs 2 and 3 in pi"}
    # work in G itself when G is almost simple over the failing layer
    lo, _ = rep.series.layer_bounds(rep.witness)
    B, A = rep.series.terms[lo], rep.series.terms[lo + 1]
    H, S, where = None, None, "induced automorphism group"
    if B.is_trivial() and G.is_normal_subgroup(A):
        try:
            _check_almost_simple(G, A)
            H, S, where = G, A, "input group"
        except InputError:
            pass
    if H is None:
        H, S = failing_layer_section(rep)
    ob = obstruction_element(H, S, pi)
    if ob is None:
        return {"status": "none", "reason": "socle class action has a fixed class", "acting_on": where}
    return {"status": "found", "acting_on": where, **ob}


def write_json(report: dict, path: str | None) -> None:
    if path is None:
        return
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _printer(args):
    """print, unless the JSON report itself goes to stdout."""
    if getattr(args, "json", None) == "-":
        return lambda *a, **k: None
    return print


def _fmt_ecd(c: dict) -> str:
    return f"E={c['E']} C={c['C']} D={c['D']}"


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    say = _printer(args)
    timer = _Timer()
    G, prov = timer.run("load", load_group, args.file, args.builtin)
    pi = PrimeSet.parse(args.pi)
    cls = timer.run("classify", classify_ECD, G, pi, D_BOUND, args.force_d)
    summary = cls.summary()
    report = _base_report("analyze")
    report.update({"input": prov, "group": _group_block(G), "pi": list(pi.primes),
                   "classification": summary, "criterion": None, "timings": timer.phases})
    say(f"group: {prov['name']}  order {G.order()}  degree {G.degree}")
    say(f"pi = {pi}  method {summary['method']}")
    say(f"k_pi = {summary['k_pi']}  Hall order {summary['hall_order']}  {_fmt_ecd(summary)}")
    for i, r in enumerate(summary["representatives"], 1):
        say(f"  class {i}: order {r['order']} orbit lengths {r['orbit_lengths']}")
    write_json(report, args.json)
    return EXIT_OK


def cmd_criterion(args) -> int:
    say = _printer(args)
    timer = _Timer()
    G, prov = timer.run("load", load_group, args.file, args.builtin)
    pi = PrimeSet.parse(args.pi)
    rep = timer.run("criterion", epi_criterion, G, pi)
    block = _criterion_block(rep)
    if args.obstruction:
        block["obstruction"] = timer.run("obstruction", _obstruction, G, rep, pi)
    report = _base_report("criterion")
    report.update({"input": prov, "group": _group_block(G), "pi": list(pi.primes),
                   "classification": None, "criterion": block, "timings": timer.phases})
    say(f"group: {prov['name']}  order {G.order()}  degree {G.degree}  pi = {pi}")
    say(f"chief series orders: {rep.chief.orders()}")
    say(f"{'layer':>5}  {'factor':>10}  {'|Aut_G|':>10}  {'verdict':>7}  method")
    for e in rep.layers:
        aut = "-" if e.aut_order is None else str(e.aut_order)
        say(f"{e.layer:>5}  {e.factor_order:>10}  {aut:>10}  {str(e.verdict):>7}  {e.method}")
    say(f"overall: {rep.overall}" + ("" if rep.witness is None else f"  (witness layer {rep.witness})"))
    ob = block.get("obstruction")
    if ob is not None:
        if ob["status"] == "found":
            say(f"obstruction: x = {ob['element']} of order {ob['order']} "
                f"(class action {ob['class_action']}, |<x,S>| = {ob['join_order']})")
        else:
            say(f"obstruction: {ob['status']} ({ob['reason']})")
    write_json(report, args.json)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    say = _printer(args)
    try:
        example = int(args.example)
    except ValueError:
        raise InputError(f"unknown example {args.example!r}; expected 1 or 2") from None
    t0 = time.perf_counter()
    rep = reproduce(example)
    for c in rep.claims:
        say(c.line())
        if not c.passed:
            say(f"      expected {c.expected!r}, observed {c.observed!r}")
    for n in rep.notes:
        say(f"NOTE  {n['quantity']}: reference value {n['reference_value']}, "
            f"derived {n['derived_value']} = {n['factorization']}; {n['resolution']}")
    passed = sum(c.passed for c in rep.claims)
    say(f"example {example}: {passed}/{len(rep.claims)} claims verified")
    report = _base_report("reproduce")
    report.update(rep.to_dict())
    report["timings"] = {**rep.timings, "total": round(time.perf_counter() - t0, 4)}
    write_json(report, args.json)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_corpus(args) -> int:
    say = _printer(args)
    menu = parse_pi_menu(args.pi_menu) if args.pi_menu else [PrimeSet.parse(p) for p in DEFAULT_PI_MENU]
    if args.max_order < 1:
        raise InputError("--max-order must be positive")
    run = run_corpus(max_order=args.max_order, pi_menu=menu)
    say(f"corpus: {len(run.groups)} groups, pi menu {'; '.join(run.menu)}")
    say(f"{'property':<22} {'run':>6} {'passed':>7}  seconds")
    for prop, (n, ok) in run.table().items():
        say(f"{prop:<22} {n:>6} {ok:>7}  {run.timings.get(prop, 0):.1f}")
    for f in run.failures:
        print(f"FAIL ({f.group}, {f.pi}, {f.prop}): {f.detail}", file=sys.stderr)
    report = _base_report("corpus")
    report.update(run.to_dict())
    report["timings"] = run.timings
    write_json(report, args.json)
    return EXIT_OK if run.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hallpi", description="Hall subgroups of permutation groups")
    ap.add_argument("--version", action="version", version=f"hallpi {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def group_args(p):
        p.add_argument("file", nargs="?", help="group file in permgroup v1 format")
        p.add_argument("--builtin", metavar="FAMILY:PARAM", help="e.g. sym:4, gl2:3, ghat:3")
        p.add_argument("--pi", required=True, help="comma-separated primes, e.g. 2,3")
        p.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")

    a = sub.add_parser("analyze", help="Hall classes and E/C/D verdicts")
    group_args(a)
    a.add_argument("--force-d", action="store_true", help=f"decide D even above order {D_BOUND}")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("criterion", help="layer-by-layer existence criterion")
    group_args(c)
    c.add_argument("--obstruction", action="store_true", help="search an obstruction element on the failing layer")
    c.set_defaults(func=cmd_criterion)

    r = sub.add_parser("reproduce", help="verify the worked examples claim by claim")
    r.add_argument("example", help="1 or 2")
    r.add_argument("--json", metavar="PATH")
    r.set_defaults(func=cmd_reproduce)

    k = sub.add_parser("corpus", help="run the property suite over the group corpus")
    k.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    k.add_argument("--pi-menu", metavar="SETS", help="pi sets separated by ';', e.g. '2,3;3,5'")
    k.add_argument("--json", metavar="PATH")
    k.set_defaults(func=cmd_corpus)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"hallpi: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"hallpi: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
