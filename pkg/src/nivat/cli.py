"""Command-line front end.

Exit codes: 0 the analysis ran, 1 usage or parse error, 2 precondition
violation (no annihilator on the sample, infeasible window, ...).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .annihilator import annihilates, find_affine_annihilator, reflected_support
from .complexity import census, is_generated
from .config import ConfigSpec, fmt_vec, load_config, parse_vec_list
from .decomposition import Rect, decompose_window, verify_decomposition
from .errors import ConfigError, InfeasibleWindowError, NoAnnihilatorError
from .expansiveness import classify, szabados_report
from .geometry import rectangle, yx_key

DEFAULT_RADIUS = 64
EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2


class UsageError(Exception):
    pass


def _digest(args, text: str) -> str:
    h = hashlib.sha256()
    h.update(text.encode("utf-8"))
    for key in sorted(vars(args)):
        if key in ("func", "machine", "seed_file"):
            continue
        h.update(f"\0{key}={getattr(args, key)!r}".encode("utf-8"))
    return h.hexdigest()[:16]


def _sampling(args, src):
    """``(radius, exact)`` for a census; exact sources are always exact."""
    if src.exact:
        return None, True
    if args.exact:
        print("warning: exactness unavailable for this source; using a sampled census", file=sys.stderr)
    return (args.radius if args.radius is not None else DEFAULT_RADIUS), False


def _pts(points) -> list:
    return [list(g) for g in sorted(points, key=yx_key)]


def read_shape(path) -> list:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace("(", " ").replace(")", " ").replace(",", " ").split()
        if len(parts) != 2:
            raise ConfigError("expected one point 'x y' per line", lineno)
        try:
            pts.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ConfigError("non-integer coordinate", lineno) from None
    if not pts:
        raise ConfigError("empty shape file")
    return pts


def _shape(args):
    if args.shape_file:
        return read_shape(args.shape_file), None
    if args.n is None or args.k is None:
        raise UsageError("give N K or --shape-file")
    if args.n < 1 or args.k < 1:
        raise UsageError("N and K must be positive")
    return sorted(rectangle(args.n, args.k).points, key=yx_key), (args.n, args.k)


def cmd_complexity(args, spec: ConfigSpec):
    src = spec.main()
    radius, exact = _sampling(args, src)
    pts, nk = _shape(args)
    cen = census(src, pts, radius)
    bound = nk[0] * nk[1] if nk else len(pts)
    label = "nk" if nk else "|S|"
    holds = cen.count <= bound
    if exact:
        line = f"P = {cen.count} (exact), {label} = {bound}, hypothesis {'holds' if holds else 'fails'}"
    elif holds:
        line = f"P ≥ {cen.count} (sampled, radius {radius}), {label} = {bound}, hypothesis holds on the sample"
    else:
        line = f"P ≥ {cen.count}, {label} = {bound}, hypothesis fails"
    result = {
        "count": cen.count, "exact": exact, "radius": radius, "bound": bound,
        "shape": _pts(pts), "hypothesis": "holds" if holds else "fails",
        "sample": cen.sample_region,
    }
    return [line], result, EXIT_OK


def cmd_annihilate(args, spec: ConfigSpec):
    src = spec.main()
    radius, exact = _sampling(args, src)
    check = args.radius if args.radius is not None else (10 if exact else DEFAULT_RADIUS)
    if spec.annihilator is not None and not (args.shape_file or args.n):
        poly, ring = spec.annihilator
        v = annihilates(poly, src, check)
        lines = [f"phi = {poly} over {ring}", f"region {v.tested_region}: " + (
            "annihilates" if v.holds else f"fails at {fmt_vec(v.counterexample[0])} (value {v.counterexample[1]})")]
        result = {"phi": str(poly), "ring": str(ring), "holds": v.holds, "region": v.tested_region,
                  "counterexample": None if v.holds else [list(v.counterexample[0]), v.counterexample[1]]}
        return lines, result, EXIT_OK if v.holds else EXIT_PRECONDITION
    pts, _ = _shape(args)
    try:
        res = find_affine_annihilator(src, pts, radius)
    except NoAnnihilatorError as exc:
        return [str(exc)], {"error": str(exc)}, EXIT_PRECONDITION
    s_psi = reflected_support(res.psi)
    cen = census(src, s_psi, radius)
    gen = [(v, is_generated(src, s_psi, v, cen=cen)) for v in s_psi.vertices]
    lines = [
        f"sigma = {res.sigma}",
        f"c = {res.c}",
        f"psi = {res.psi}",
        f"verified on {res.verified.tested_region}"
        + ("" if exact else f", rank stable from radius {res.stable_radius}"),
        "S_psi vertices: " + " ".join(f"{fmt_vec(v)}:{'generated' if g else 'not generated'}" for v, g in gen),
    ]
    result = {
        "sigma": str(res.sigma), "c": res.c, "psi": str(res.psi), "u": list(res.u),
        "exact": exact, "radius": radius, "stable_radius": res.stable_radius,
        "rank": res.rank, "patterns": res.pattern_count, "region": res.verified.tested_region,
        "vertices": [{"point": list(v), "generated": g} for v, g in gen],
    }
    return lines, result, EXIT_OK


def cmd_decompose(args, spec: ConfigSpec):
    src = spec.main()
    if args.periods is None:
        d = spec.build_decomposition()
        if d is None:
            raise UsageError("no [decomposition] section; give --periods to solve on a window")
        region = args.radius if args.radius is not None else 20
        rep = verify_decomposition(src, d, region)
        lines = [f"verify on {rep.region}"] + [
            f"  {c.name}: {'pass' if c.passed else 'fail'} ({c.detail})" for c in rep.checks]
        result = {"mode": "verify", "region": rep.region, "ok": rep.ok,
                  "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in rep.checks]}
        return lines, result, EXIT_OK
    try:
        periods = parse_vec_list(args.periods)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not periods:
        raise UsageError("--periods needs at least one vector")
    try:
        win = Rect.parse(args.window)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad --window: {exc}") from None
    try:
        sol = decompose_window(src, periods, win)
    except InfeasibleWindowError as exc:
        lines = [str(exc)] + [f"  {m:+d} * {fmt_vec(g)}" for g, m in exc.witness]
        result = {"mode": "solve", "feasible": False,
                  "witness": [[list(g), m] for g, m in exc.witness]}
        return lines, result, EXIT_PRECONDITION
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"solve on window {win}, periods " + " ".join(fmt_vec(h) for h in periods),
             f"gauge: {sol.gauge}", f"integral: {'yes' if sol.integral else 'no'}"]
    comps = []
    for i, h in enumerate(periods):
        grid = sol.grid(i)
        lines.append(f"component {i + 1} (period {fmt_vec(h)}):")
        lines += ["  " + " ".join(str(v) for v in row) for row in reversed(grid)]
        comps.append({"period": list(h), "rows": [[str(v) for v in row] for row in grid]})
    result = {"mode": "solve", "feasible": True, "window": [win.x0, win.y0, win.width, win.height],
              "gauge": sol.gauge, "integral": sol.integral, "components": comps}
    return lines, result, EXIT_OK


def _status_rows(statuses):
    return [{"line": list(s.line.dir), "role": s.role, "status": s.status, "radius": s.radius}
            for s in statuses]


def cmd_directions(args, spec: ConfigSpec):
    src = spec.main()
    phi = spec.annihilator[0] if spec.annihilator and spec.annihilator[1].p is None else None
    cls = classify(src, args.budget, phi, args.radius)
    lines = []
    if cls.note:
        lines.append(cls.note)
    if cls.candidates is not None:
        lines.append(f"candidates from {cls.candidates.source}")
    lines += [f"{str(s.line):>8}  {s.role:<9}  {s.describe()}" for s in cls.statuses]
    result = {"budget": args.budget, "sample_radius": cls.sample_radius,
              "candidates": None if cls.candidates is None else cls.candidates.source,
              "directions": _status_rows(cls.statuses)}
    return lines, result, EXIT_OK


def cmd_szabados(args, spec: ConfigSpec):
    d = spec.build_decomposition()
    if d is None:
        raise UsageError("szabados needs a [decomposition] section")
    src = spec.main()
    rep = szabados_report(src, d, args.budget, args.radius)
    lines = ["period lines: " + " ".join(fmt_vec(u) for u in rep.period_lines),
             "witnessed: " + (" ".join(f"{l}@r={r}" for l, r in rep.detected_nonexpansive) or "none")]
    lines += [f"{v.claim}: {v.outcome} ({v.evidence})" for v in rep.verdicts]
    result = {
        "budget": args.budget,
        "period_lines": [list(u) for u in rep.period_lines],
        "witnessed": [{"line": list(l.dir), "radius": r} for l, r in rep.detected_nonexpansive],
        "verdicts": [{"claim": v.claim, "outcome": v.outcome, "evidence": v.evidence} for v in rep.verdicts],
        "directions": _status_rows(rep.classification.statuses),
    }
    return lines, result, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed-file", required=True, help="configuration file")
    common.add_argument("--radius", type=int, default=None, help="sampling radius")
    common.add_argument("--exact", action="store_true", help="require an exact census")
    common.add_argument("--machine", action="store_true", help="print JSON")

    parser = argparse.ArgumentParser(prog="nivat", description="Pattern complexity and periodicity tools.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complexity", parents=[common], help="count patterns on R_{n,k} or a shape")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("k", type=int, nargs="?")
    p.add_argument("--shape-file")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("annihilate", parents=[common], help="find or verify an annihilator")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("k", type=int, nargs="?")
    p.add_argument("--shape-file")
    p.set_defaults(func=cmd_annihilate)

    p = sub.add_parser("decompose", parents=[common], help="verify or solve a periodic decomposition")
    p.add_argument("--periods", help='e.g. "(0,1) (1,0)"')
    p.add_argument("--window", default="0,0,8,8", help="x0,y0,width,height")
    p.set_defaults(func=cmd_decompose)

    for name, fn, text in (("directions", cmd_directions, "classify oriented directions"),
                           ("szabados", cmd_szabados, "compare nonexpansive lines with periods")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--budget", type=int, default=8)
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", 1) < 1:
        parser.error("--budget must be >= 1")
    if args.radius is not None and args.radius < 0:
        parser.error("--radius must be >= 0")
    text = ""
    try:
        with open(args.seed_file, encoding="utf-8") as fh:
            text = fh.read()
        spec = load_config(args.seed_file)
        lines, result, code = args.func(args, spec)
    except (OSError, ConfigError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        lines, result, code = [], {"error": str(exc)}, EXIT_USAGE
    if args.machine:
        doc = {"command": args.command, "input_digest": _digest(args, text),
               "exit_code": code, "results": result}
        print(json.dumps(doc, sort_keys=True, indent=2))
    elif lines:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
