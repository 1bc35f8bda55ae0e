"""Command-line entry point: ``pseudomonodromy <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .circle import format_angle, parse_angle
from .coding import itinerary, kneading_of_angle
from .components import (
    ComponentPool,
    HyperbolicComponent,
    conspicuous_components,
    load_pool,
    return_times,
    validate_pair,
)
from .lamination import structural_checks
from .render import RenderSpec, render_svg
from .report import appendix_report
from .verify import (
    TheoremViolation,
    check_opposite,
    compare_codings,
    disc_entry,
    marker_decomposition,
    star_positions,
    verify_main_theorem,
    xi_contains,
)

log = logging.getLogger("pseudomonodromy")


def _angle(text: str) -> Fraction:
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pool(args, period: int) -> ComponentPool:
    n = max(period, args.max_period or 0, 2)
    path = Path(args.pool) if args.pool else None
    return load_pool(n, path=path)


def _component(args) -> tuple[HyperbolicComponent, ComponentPool]:
    pool = _pool(args, 2)
    try:
        h = validate_pair(args.theta_minus, args.theta_plus, pool)
    except ValueError as exc:
        raise SystemExit(f"error: invalid component: {exc}")
    if pool.max_period < h.period:
        pool = _pool(args, h.period)
    return h, pool


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _comp_json(h: HyperbolicComponent) -> dict:
    return {
        "theta_minus": format_angle(h.theta_minus),
        "theta_plus": format_angle(h.theta_plus),
        "period": h.period,
        "kneading": h.kneading,
        "discarded_kneading": h.discarded,
    }


# ------------------------------------------------------------------ commands

def cmd_components(args) -> int:
    pool = _pool(args, args.max_period or 5)
    rows = [h for h in pool if h.period >= 2]
    if args.format == "json":
        _emit(args, _dump({"schema_version": 1, "max_period": pool.max_period,
                           "components": [_comp_json(h) for h in rows]}))
        return 0
    lines = [f"{'per':>3}  {'theta-':>10}  {'theta+':>10}  {'K':<{pool.max_period}}  K^"]
    for h in rows:
        lines.append(f"{h.period:>3}  {format_angle(h.theta_minus):>10}  {format_angle(h.theta_plus):>10}  "
                     f"{h.kneading:<{pool.max_period}}  {h.discarded}")
    _emit(args, "\n".join(lines))
    return 0


def cmd_kneading(args) -> int:
    if args.theta_plus is None:
        theta = args.theta_minus
        w = kneading_of_angle(theta)
        if args.format == "json":
            _emit(args, _dump({"schema_version": 1, "angle": format_angle(theta), "kneading": str(w)}))
        else:
            _emit(args, f"{format_angle(theta)}: {w}")
        return 0
    h, _ = _component(args)
    if args.format == "json":
        _emit(args, _dump({"schema_version": 1, **_comp_json(h)}))
    else:
        _emit(args, f"{h.label()}: per = {h.period}, K = {h.kneading}, K^ = {h.discarded}")
    return 0


def cmd_conspicuous(args) -> int:
    h, pool = _component(args)
    fam = conspicuous_components(h, pool)
    rts = return_times(h, pool)
    if args.format == "json":
        _emit(args, _dump({"schema_version": 1, "component": _comp_json(h),
                           "conspicuous": [_comp_json(c) for c in fam], "return_times": rts}))
        return 0
    lines = [f"{h.label()} K = {h.kneading}"]
    for c in fam:
        lines.append(f"  {c.label():<16} per = {c.period:<3} K = {c.kneading}")
    lines.append(f"  return times: {', '.join(map(str, rts)) or 'none'}")
    _emit(args, "\n".join(lines))
    return 0


def _verify_one(h: HyperbolicComponent, pool: ComponentPool) -> dict:
    rep = verify_main_theorem(h, pool)
    checks = structural_checks(h, pool=pool)
    out = rep.to_json()
    out["structural"] = {
        "ok": checks.ok,
        "checks": checks.checks,
        "failures": checks.failures,
        "converse_holds": checks.converse_holds,
        "converse_counterexamples": checks.converse_counterexamples,
    }
    out["ok"] = (rep.covered and rep.residual_is_finite and all(rep.residual_in_xi) and checks.ok
                 and not (rep.remark_condition and rep.residual_points))
    return out


_WORKER_POOL: ComponentPool | None = None


def _init_worker(data: dict) -> None:
    global _WORKER_POOL
    _WORKER_POOL = ComponentPool.from_json(data)


def _verify_key(key: tuple[str, str]) -> dict:
    h = _WORKER_POOL.find(Fraction(key[0]), Fraction(key[1]))
    return _verify_one(h, _WORKER_POOL)


def verify_all(pool: ComponentPool, jobs: int | None = None) -> list[dict]:
    """Verify every component of period >= 2, results in (period, theta-) order."""
    comps = [h for h in pool if h.period >= 2]
    jobs = jobs or os.cpu_count() or 1
    if jobs == 1:
        return [_verify_one(h, pool) for h in comps]
    keys = [(str(h.theta_minus), str(h.theta_plus)) for h in comps]
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(pool.to_json(),)) as ex:
        return list(ex.map(_verify_key, keys, chunksize=16))


def _verify_text(r: dict) -> list[str]:
    res = ", ".join(f"{p['angle']}{'' if p['in_xi'] else ' (NOT in Xi)'}" for p in r["residual_points"])
    lines = [
        f"({r['theta_minus']}, {r['theta_plus']}) per = {r['period']} K = {r['kneading']}: "
        + ("covered" if r["covered"] else "NOT covered")
        + (f"; residual {{{res}}}" if res else "; residual empty"),
        "  conspicuous: " + ", ".join(f"({c['theta_minus']}, {c['theta_plus']})" for c in r["conspicuous"]),
        f"  remark condition: {'yes' if r['remark_condition'] else 'no'}",
        "  structural checks: " + ("all pass" if r["structural"]["ok"] else "; ".join(r["structural"]["failures"])),
        "  converse at return times: "
        + ("holds" if r["structural"]["converse_holds"]
           else f"fails at {r['structural']['converse_counterexamples']}"),
    ]
    return lines


def cmd_verify(args) -> int:
    if args.all:
        pool = _pool(args, args.max_period or 10)
        results = verify_all(pool, args.jobs)
        bad = [r for r in results if not r["ok"]]
        if args.format == "json":
            _emit(args, _dump({"schema_version": 1, "max_period": pool.max_period, "count": len(results),
                               "failures": len(bad), "results": results}))
        else:
            lines = []
            by_period: dict[int, list[dict]] = {}
            for r in results:
                by_period.setdefault(r["period"], []).append(r)
            for p, rs in sorted(by_period.items()):
                nb = sum(not r["ok"] for r in rs)
                conv = sum(not r["structural"]["converse_holds"] for r in rs)
                lines.append(f"period {p:>2}: {len(rs):>4} components, {nb} failures, "
                             f"converse fails for {conv}")
            for r in bad:
                lines += _verify_text(r)
            lines.append(f"total: {len(results)} components, {len(bad)} failures")
            _emit(args, "\n".join(lines))
        return 1 if bad else 0
    if args.theta_minus is None or args.theta_plus is None:
        raise SystemExit("error: verify needs THETA_MINUS THETA_PLUS or --all")
    h, pool = _component(args)
    r = _verify_one(h, pool)
    _emit(args, _dump(r) if args.format == "json" else "\n".join(_verify_text(r)))
    return 0 if r["ok"] else 1


def cmd_disc(args) -> int:
    h, _ = _component(args)
    m = disc_entry(h, args.angle)
    xi = xi_contains(h, args.angle)
    if args.format == "json":
        _emit(args, _dump({"schema_version": 1, "component": _comp_json(h), "angle": format_angle(args.angle),
                           "in_disc": m is not None, "entry": m, "in_xi": xi}))
    elif m is None:
        _emit(args, f"{format_angle(args.angle)} is not in Disc{h.label()}")
    else:
        _emit(args, f"{format_angle(args.angle)} is in Disc{h.label()}: first entry into the wake at m = {m}"
                    + ("; exceptional (in Xi)" if xi else ""))
    return 0


def cmd_marker(args) -> int:
    h, pool = _component(args)
    theta = args.angle
    try:
        chain = marker_decomposition(h, theta, pool, depth=args.depth)
    except TheoremViolation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return 1
    diffs = compare_codings(h, theta, args.depth)
    stars = star_positions(h, theta, args.depth)
    consistent = [m for m, _, _ in diffs] == stars and check_opposite(diffs)
    word = itinerary(h.star_spec, theta)
    if args.format == "json":
        _emit(args, _dump({
            "schema_version": 1,
            "component": _comp_json(h),
            "angle": format_angle(theta),
            "itinerary": str(word),
            "in_disc": chain is not None,
            "chain": chain.to_json() if chain else None,
            "chain_string": str(chain) if chain else None,
            "differences": [{"position": m, "plus": a, "minus": b} for m, a, b in diffs],
            "consistent": consistent,
        }))
    else:
        lines = [f"I_H({format_angle(theta)}) = {word}"]
        if chain is None:
            lines.append("not in Disc: the two codings agree")
        else:
            kind = "infinite" if chain.infinite else "finite"
            tag = f"{kind}, exceptional" if chain.exceptional else kind
            lines.append(f"chain: {str(chain) or '(no complete block)'} ({tag})")
            if chain.failed_at is not None:
                lines.append(f"no marker block fits at position {chain.failed_at}")
            if chain.markers():
                lines.append("markers: " + " ".join(chain.markers()))
        lines.append("I+ / I- differ at: " + (", ".join(f"{m} ({a}/{b})" for m, a, b in diffs) or "nowhere"))
        _emit(args, "\n".join(lines))
    return 0 if consistent else 1


def cmd_render(args) -> int:
    h, pool = _component(args)
    step = args.step if args.step == "all" else int(args.step)
    spec = RenderSpec(h, step=step, size=args.size, labels=not args.no_labels, leaves=args.leaves)
    try:
        svg = render_svg(spec, pool)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    _emit(args, svg)
    return 0


def cmd_report(args) -> int:
    pool = _pool(args, 6)
    out = appendix_report(pool, "json" if args.format == "json" else "text")
    _emit(args, _dump(out) if args.format == "json" else out)
    return 0


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-period", type=int, default=None, help="largest period in the component pool")
    common.add_argument("--depth", type=int, default=None, help="number of symbols to examine")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--pool", help="component pool JSON file (read, or written when missing)")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for --all (default: CPUs)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="pseudomonodromy", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("components", parents=[common], help="list components up to a period")
    s.set_defaults(func=cmd_components)

    s = sub.add_parser("kneading", parents=[common], help="kneading of a component or an angle")
    s.add_argument("theta_minus", type=_angle)
    s.add_argument("theta_plus", type=_angle, nargs="?")
    s.set_defaults(func=cmd_kneading)

    s = sub.add_parser("conspicuous", parents=[common], help="conspicuous components and return times")
    s.add_argument("theta_minus", type=_angle)
    s.add_argument("theta_plus", type=_angle)
    s.set_defaults(func=cmd_conspicuous)

    s = sub.add_parser("verify", parents=[common], help="check the cylinder cover and the structural lemmas")
    s.add_argument("theta_minus", type=_angle, nargs="?")
    s.add_argument("theta_plus", type=_angle, nargs="?")
    s.add_argument("--all", action="store_true", help="sweep the whole pool")
    s.set_defaults(func=cmd_verify)

    for name, func, text in (("disc", cmd_disc, "membership in Disc(H)"),
                             ("marker", cmd_marker, "marker chain and coding differences")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("theta_minus", type=_angle)
        s.add_argument("theta_plus", type=_angle)
        s.add_argument("angle", type=_angle)
        s.set_defaults(func=func)

    s = sub.add_parser("render", parents=[common], help="SVG of the R/Q sets")
    s.add_argument("theta_minus", type=_angle)
    s.add_argument("theta_plus", type=_angle)
    s.add_argument("--step", default="all", help="n, or 'all' for steps 1..N")
    s.add_argument("--size", type=int, default=240)
    s.add_argument("--leaves", action="store_true", help="draw the leaf system too")
    s.add_argument("--no-labels", action="store_true")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("report", parents=[common], help="the four worked examples")
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
