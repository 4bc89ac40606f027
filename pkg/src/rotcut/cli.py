"""Command-line entry point: ``rotcut gen|solve|verify|trace|render|events``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .bruteforce import brute_solution, brute_solve, dumps_events, rotate_to, verify_solution
from .errors import DegenerateInput, InternalInconsistency, RotcutError, VerificationFailed
from .exact import NEG_INF, POS_INF, Perturbed, as_rational, to_float
from .geometry import Scene, generate_scene, validate_and_normalize
from .oracle import Witness, sidedness
from .render import RenderSpec, render_svg
from .signseq import format_seq
from .solution import Solution
from .solver import solve

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _seed(value):
    env = os.environ.get("ROTCUT_SEED")
    if env is not None:
        return int(env)
    return value if value is not None else 0


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read {path}: {e}") from e


def _load_scene(path: str) -> Scene:
    try:
        return Scene.from_json(_read_json(path))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, RotcutError):
            raise
        raise UsageError(f"malformed scene file {path}: {e}") from e


def _emit(text: str, path) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_slope(text: str):
    t = text.strip().lower()
    if t in ("-inf", "neg-inf"):
        return NEG_INF
    if t in ("inf", "+inf", "pos-inf"):
        return POS_INF
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"slope must be an exact rational p/q, got {text!r}") from e


def cmd_gen(args) -> int:
    try:
        scene = generate_scene(args.reds, args.greens, args.blues, args.bound, _seed(args.seed))
    except ValueError as e:
        raise UsageError(str(e)) from e
    _emit(scene.dumps(), args.output)
    return EXIT_OK


def cmd_solve(args) -> int:
    scene = _load_scene(args.scene)
    if args.method == "brute":
        sol = brute_solution(validate_and_normalize(scene, _seed(args.seed)))
    else:
        sol = solve(scene, _seed(args.seed))
    _emit(sol.dumps(), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    scene = _load_scene(args.scene)
    try:
        sol = Solution.from_json(_read_json(args.solution))
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed solution file: {e}") from e
    try:
        counts = verify_solution(scene, sol)
    except VerificationFailed as e:
        print(f"FAILED: {e}")
        return EXIT_FAILED
    for c in "RGB":
        above, on, below = counts[c]
        print(f"{c}: above={above} on={on} below={below}")
    print("verified")
    return EXIT_OK


def cmd_trace(args) -> int:
    scene = validate_and_normalize(_load_scene(args.scene), _seed(args.seed))
    slope = _parse_slope(args.slope)
    if args.side:
        if not isinstance(slope, Fraction):
            raise UsageError("--side needs a finite slope")
        slope = Perturbed(slope, -1 if args.side == "before" else 1)
    try:
        res = sidedness(scene, slope)
    except ValueError as e:
        if isinstance(e, RotcutError):
            raise
        raise UsageError(str(e)) from e
    if isinstance(res, Witness):
        x, y = res.point
        ids = " ".join(f"{c}={res.ids[c]}" for c in "RGB")
        print(f"solution: bisector z = {to_float(-x):.12g} u + {to_float(y):.12g} ({ids})")
        return EXIT_OK
    print(format_seq(res.seq))
    print(res.value)
    return EXIT_OK


def cmd_render(args) -> int:
    scene = validate_and_normalize(_load_scene(args.scene), _seed(args.seed))
    bisector, label = None, args.slope
    if args.solution:
        sol = Solution.from_json(_read_json(args.solution))
        scene = rotate_to(scene, sol.rotation)
        slope, bisector = sol.slope, sol.bisector
        label = f"{to_float(slope):.12g}"
    elif args.slope:
        slope = _parse_slope(args.slope)
    else:
        raise UsageError("render needs --slope or --solution")
    spec = RenderSpec(args.width, args.height, args.precision, args.dual)
    _emit(render_svg(scene, slope, spec, None if args.dual else bisector, label), args.output)
    return EXIT_OK


def cmd_events(args) -> int:
    scene = validate_and_normalize(_load_scene(args.scene), _seed(args.seed))
    _emit(dumps_events(brute_solve(scene)), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rotcut",
        description="Bisect three colored line families in 3-space by a line in a plane through the z-axis.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random scene")
    g.add_argument("--reds", type=int, default=1)
    g.add_argument("--greens", type=int, default=1)
    g.add_argument("--blues", type=int, default=1)
    g.add_argument("--bound", type=int, default=10, help="coordinate bound")
    g.add_argument("--seed", type=int)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="find a bisecting cross-section")
    s.add_argument("scene")
    s.add_argument("--method", choices=("fast", "brute"), default="fast")
    s.add_argument("--seed", type=int, help="seed for the normalizing rotation")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution exactly")
    v.add_argument("scene")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("trace", help="sign sequence and trace at a slope")
    t.add_argument("scene")
    t.add_argument("--slope", required=True, help="p/q, or -inf / +inf for the endpoint charts")
    t.add_argument("--side", choices=("before", "after"))
    t.add_argument("--seed", type=int)
    t.set_defaults(func=cmd_trace)

    r = sub.add_parser("render", help="SVG of a cross-section or its dual levels")
    r.add_argument("scene")
    r.add_argument("--slope")
    r.add_argument("--solution", help="render at a solution's slope with its bisector")
    r.add_argument("--dual", action="store_true")
    r.add_argument("--width", type=int, default=640)
    r.add_argument("--height", type=int, default=480)
    r.add_argument("--precision", type=int, default=6)
    r.add_argument("--seed", type=int)
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_render)

    e = sub.add_parser("events", help="export every brute-force event as JSON")
    e.add_argument("scene")
    e.add_argument("--seed", type=int)
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_events)
    return p


def _join_negative_slope(argv: list[str]) -> list[str]:
    # argparse reads "--slope -inf" as two options
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--slope" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--slope={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_slope(argv))
    try:
        return args.func(args)
    except InternalInconsistency as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, DegenerateInput) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT
    except RotcutError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
