"""Command line front end.

    toroidal validate FILE            graph, level knot or surface JSON
    toroidal normalize FILE [--trace]
    toroidal enumerate --type N --bound B [--p P --q Q]
    toroidal random {graph,knot,surface} --seed S
    toroidal synthesize FILE          graph or level knot JSON

FILE may be a path, ``-`` for stdin, or an inline JSON object.
Exit status: 0 success, 2 domain-level rejection, 1 malformed input.
An engine defect (a descent or classification failure that should be
impossible) exits with 3 and prints the offending surface.
"""

from __future__ import annotations

import argparse
import json
import sys

from toroidal.graph import (
    Exhausted,
    GraphError,
    InvalidGraph,
    boundary_genus,
    graph_from_json,
    iter_valid,
    random_graph,
    validate_graph,
)
from toroidal.level_knot import (
    LevelKnotError,
    is_well_wrapped,
    level_knot_from_json,
    one_bridge_form,
    random_level_knot,
    wrapping_certificate,
)
from toroidal.morse import (
    EngineDefect,
    IllegalEvent,
    MalformedSurface,
    complexity,
    euler_characteristic,
    extract_graph,
    fold_states,
    normalize,
    random_surface,
    surface_from_json,
    synthesize,
)
from toroidal.slopes import ManifoldFrame, Slope, SlopeError, make_frame

OK, MALFORMED, REJECTED, DEFECT = 0, 1, 2, 3

# base classes signal structurally broken input; subclasses are domain verdicts
_SCHEMA_ERRORS = (SlopeError, GraphError, LevelKnotError)


class InputError(Exception):
    pass


def _load(source: str):
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno} column {exc.colno} "
                         f"(char {exc.pos}): {exc.msg}") from exc


def _kind(doc) -> str:
    if not isinstance(doc, dict):
        raise InputError("top-level JSON value must be an object")
    if "end_windings" in doc:
        return "knot"
    if "gammas" in doc:
        return "graph"
    if "events" in doc or "bottom" in doc or "top" in doc:
        return "surface"
    raise InputError("cannot tell graph, level knot or surface apart: "
                     "expected 'gammas', 'end_windings' or 'events'")


def _exit_for(exc: Exception) -> int:
    if isinstance(exc, (InputError, MalformedSurface)):
        return MALFORMED
    if type(exc) in _SCHEMA_ERRORS:
        return MALFORMED
    return REJECTED


def _emit(obj, fmt: str, text: str | None = None):
    if fmt == "json" or text is None:
        print(json.dumps(obj, sort_keys=False))
    else:
        print(text)


def _fmt_slopes(gammas) -> str:
    return " ".join(f"{g.a}/{g.b}" for g in gammas)


# -- subcommands ------------------------------------------------------------

def cmd_validate(args) -> int:
    doc = _load(args.input)
    kind = _kind(doc)
    if kind == "graph":
        try:
            g = graph_from_json(doc)
            frame, gammas = g.frame, g.gammas
            report = validate_graph(frame, gammas)
        except InvalidGraph as exc:
            frame = ManifoldFrame.from_json(doc["frame"])
            gammas = [Slope.from_json(x) for x in doc["gammas"]]
            report = exc.report
        out = {"kind": "graph", "type": len(gammas), **report.to_json()}
        if report.valid:
            out["boundary_genus"] = boundary_genus(g)
        lines = [f"graph type {len(gammas)} in {frame.name}: "
                 f"{'valid' if report.valid else 'invalid'}"]
        lines += [f"  fails {f.condition} (delta {f.observed})" for f in report.failures]
        _emit(out, args.format, "\n".join(lines))
        return OK if report.valid else REJECTED
    if kind == "knot":
        knot = level_knot_from_json(doc)
        cert = wrapping_certificate(knot)
        witness = one_bridge_form(knot)
        out = {"kind": "level-knot", "type": knot.n, "valid": True,
               "wrapping": cert.to_json(), "well_wrapped": is_well_wrapped(knot),
               "one_bridge": witness.to_json()}
        text = (f"level knot over a type-{knot.n} graph: valid\n"
                f"  wrapping {cert.to_json()}\n  well wrapped: {is_well_wrapped(knot)}")
        _emit(out, args.format, text)
        return OK
    surface = surface_from_json(doc)
    states = fold_states(surface)
    c = complexity(surface)
    chi = euler_characteristic(surface)
    out = {"kind": "surface", "valid": True, "levels": len(states),
           "complexity": c.to_json(), "euler_characteristic": chi}
    _emit(out, args.format, f"surface: legal, {len(states)} levels, "
          f"complexity {tuple(c.to_json())}, chi {chi}")
    return OK


def cmd_normalize(args) -> int:
    doc = _load(args.input)
    if _kind(doc) != "surface":
        raise InputError("normalize expects a surface description")
    surface = surface_from_json(doc)
    result = normalize(surface)
    out = {"verdict": result.verdict.value, "reason": result.reason}
    lines = [result.verdict.value, f"  {result.reason}"]
    if args.trace:
        out["trace"] = [t.to_json() for t in result.trace]
        for t in result.trace:
            lines.append(f"  {t.claim:32s} {tuple(t.before.to_json())} -> "
                         f"{tuple(t.after.to_json())}")
    if result.canonical:
        g = extract_graph(result)
        out["graph"] = g.to_json()
        lines.append(f"  graph type {g.n}: {_fmt_slopes(g.gammas)}")
    out["surface"] = result.surface.to_json()
    _emit(out, args.format, "\n".join(lines))
    return OK


def cmd_enumerate(args) -> int:
    frame = make_frame(args.p, args.q)
    count = 0
    # bound 0 admits no slope at all; iter_valid insists on a positive bound
    stream = iter_valid(frame, args.type, args.bound) if args.bound > 0 else ()
    for seq in stream:
        count += 1
        if not args.count_only:
            _emit({"gammas": [g.to_json() for g in seq]}, args.format, _fmt_slopes(seq))
    _emit({"count": count}, args.format, f"count {count}")
    return OK


def cmd_random(args) -> int:
    frame = make_frame(args.p, args.q)
    if args.kind == "graph":
        obj = random_graph(frame, args.type, args.bound, args.seed).to_json()
    elif args.kind == "knot":
        obj = random_level_knot(frame, args.type, args.bound, args.seed).to_json()
    else:
        obj = random_surface(frame, args.max_events, args.seed,
                             coefficient_bound=args.bound).to_json()
    print(json.dumps(obj))
    return OK


def cmd_synthesize(args) -> int:
    doc = _load(args.input)
    kind = _kind(doc)
    if kind == "knot":
        knot = level_knot_from_json(doc)
        surface = synthesize(knot.graph, knot)
    elif kind == "graph":
        g = graph_from_json(doc)
        surface = synthesize(g)
    else:
        raise InputError("synthesize expects a graph or level knot")
    print(json.dumps(surface.to_json()))
    return OK


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toroidal",
        description="Toroidal graphs, level knots and Morse surface normalization.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", help="JSON file, '-' for stdin, or an inline JSON object")
        p.add_argument("--format", choices=("json", "text"), default="json")

    def frame_args(p):
        p.add_argument("--p", type=int, default=1, help="lens parameter p (1 = S^3, 0 = S^1xS^2)")
        p.add_argument("--q", type=int, default=0, help="lens parameter q")

    p = sub.add_parser("validate", help="validate a graph, level knot or surface")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("normalize", help="normalize a Morse surface description")
    common(p)
    p.add_argument("--trace", action="store_true", help="list every move with its claim")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("enumerate", help="stream valid slope sequences")
    common(p, with_input=False)
    frame_args(p)
    p.add_argument("--type", type=int, default=1, help="graph type n")
    p.add_argument("--bound", type=int, default=2, help="coefficient bound")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("random", help="emit a random instance")
    p.add_argument("kind", choices=("graph", "knot", "surface"))
    frame_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--type", type=int, default=2, help="graph type n")
    p.add_argument("--bound", type=int, default=4, help="coefficient bound")
    p.add_argument("--max-events", type=int, default=12)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("synthesize", help="canonical Morse surface of a graph or level knot")
    common(p)
    p.set_defaults(func=cmd_synthesize)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("type", "bound", "max_events"):
        value = getattr(args, name, None)
        if value is not None and value < (0 if name == "bound" else 1):
            print(f"error: --{name.replace('_', '-')} must be positive", file=sys.stderr)
            return MALFORMED
    try:
        return args.func(args)
    except EngineDefect as exc:
        print(f"engine defect: {exc}", file=sys.stderr)
        print(json.dumps(exc.surface.to_json()), file=sys.stderr)
        return DEFECT
    except IllegalEvent as exc:
        print(f"illegal event {exc.index}: {exc.reason}", file=sys.stderr)
        return REJECTED
    except Exhausted as exc:
        print(f"exhausted: {exc}", file=sys.stderr)
        return REJECTED
    except (InputError, MalformedSurface, SlopeError, GraphError, LevelKnotError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_for(exc)


if __name__ == "__main__":
    sys.exit(main())
