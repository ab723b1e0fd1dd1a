"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 bad parameters.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .checks import DEFAULT_RS, lift_checks, sweep_grid, verify_identities
from .cover import CoverParams, lift_part, lmo_theta2, lmo_theta3
from .errors import ParameterError, TorusKontsevichError
from .exact import alexander_torus, format_scalar
from .pipeline import (
    TorusParams,
    closed_theta2_z3,
    star_formula,
    z1_rational,
    z2_rational,
    z3_rational,
)

ORDER_ENV = "TORUS_KONTSEVICH_ORDER"
COMMANDS = ("invariant", "verify", "lift", "lmo", "alexander", "sweep")


@dataclass
class CliConfig:
    command: str
    p: Optional[int] = None
    q: Optional[int] = None
    r: Optional[int] = None
    order: int = 8
    sigma: Optional[int] = None
    format: str = "text"
    output: Optional[str] = None
    jobs: int = 1

    def torus(self) -> TorusParams:
        if self.p is None or self.q is None:
            raise ParameterError(f"{self.command} needs --p and --q")
        return TorusParams(self.p, self.q, self.order)

    def cover(self) -> CoverParams:
        if self.r is None:
            raise ParameterError(f"{self.command} needs --r")
        self.torus()
        return CoverParams(self.p, self.q, self.r, self.sigma)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParameterError(message)


def _default_order() -> int:
    raw = os.environ.get(ORDER_ENV)
    if raw is None:
        return 8
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(f"{ORDER_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="torus-kontsevich", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--p", type=int)
    parser.add_argument("--q", type=int)
    parser.add_argument("--r", type=int)
    parser.add_argument("--order", type=int, default=None, help="degree cap N (default 8)")
    parser.add_argument("--sigma", type=int, help="r-signature of the knot, echoed into LMO")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--output", help="write to this file instead of stdout")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for sweep")
    return parser


def parse_config(argv: Sequence[str]) -> CliConfig:
    ns = build_parser().parse_args(list(argv))
    order = ns.order if ns.order is not None else _default_order()
    return CliConfig(ns.command, ns.p, ns.q, ns.r, order, ns.sigma, ns.format, ns.output, ns.jobs)


# rendering


def _bracket_json(b) -> dict:
    return {"coef": format_scalar(b.coef), "g": b.g.to_dict(), "h": b.h.to_dict()}


def _invariant(cfg: CliConfig) -> tuple[dict, str, int]:
    params = cfg.torus()
    inv = star_formula(params)
    z2r, z3r = z2_rational(params), z3_rational(params)
    closed = closed_theta2_z3(params)
    data = {
        "p": params.p,
        "q": params.q,
        "order": params.N,
        "strut": format_scalar(inv.strut),
        "z1": inv.z1.series.to_dict(),
        "z2": inv.z2.series.to_dict(),
        "z3_chain": inv.z3_chain.series.to_dict(),
        "z3_brackets": [_bracket_json(b) for b in inv.z3_brackets],
        "closed": {"theta2": format_scalar(inv.closed.theta2), "theta3": format_scalar(inv.closed.theta3)},
        "rational": {
            "z1_alexander": z1_rational(params).to_json(),
            "z2": z2r.to_json(),
            "z3": z3r.to_json(),
            "closed_theta2": format_scalar(closed),
        },
    }
    lines = [
        f"K({params.p},{params.q}) unwheeled Kontsevich integral through loop degree 3, order {params.N}",
        f"strut: {inv.strut}",
        f"z1: {inv.z1.series}",
        f"z2: {inv.z2.series}",
        f"z3 chains: {inv.z3_chain.series}",
    ]
    for b in inv.z3_brackets:
        lines.append(f"z3 bracket: {format_scalar(b.coef)} * [{b.g}, {b.h}]")
    lines += [
        f"closed Theta2: {format_scalar(inv.closed.theta2)}",
        f"rational z1: -1/2 log({z1_rational(params).to_laurent()})",
        "rational z2:",
        str(z2r),
        "rational z3:",
        str(z3r),
    ]
    return data, "\n".join(lines), 0


def _results_payload(results) -> tuple[list, list[str], bool]:
    return [r.to_json() for r in results], [r.line() for r in results], all(r.passed for r in results)


def _verify(cfg: CliConfig) -> tuple[dict, str, int]:
    params = cfg.torus()
    js, lines, ok = _results_payload(verify_identities(params.p, params.q, params.N))
    data = {"p": params.p, "q": params.q, "order": params.N, "checks": js, "passed": ok}
    head = f"verify K({params.p},{params.q}) at order {params.N}"
    return data, "\n".join([head] + lines), 0 if ok else 1


def _lift(cfg: CliConfig) -> tuple[dict, str, int]:
    cover = cfg.cover()
    params = cover.torus
    r = cover.r
    z2l, z3l = lift_part(z2_rational(params), r), lift_part(z3_rational(params), r)
    js, lines, ok = _results_payload(lift_checks(cover.p, cover.q, r))
    data = {
        "p": cover.p, "q": cover.q, "r": r,
        "lifted_z2": z2l.to_json(), "lifted_z3": z3l.to_json(),
        "checks": js, "passed": ok,
    }
    text = "\n".join(
        [f"lift_{r} of K({cover.p},{cover.q})", "lifted z2:", str(z2l), "lifted z3:", str(z3l)] + lines
    )
    return data, text, 0 if ok else 1


def _lmo(cfg: CliConfig) -> tuple[dict, str, int]:
    cover = cfg.cover()
    t2, t3 = lmo_theta2(cover), lmo_theta3(cover)
    if cover.sigma_r is None:
        theta1 = "sigma_r/16"
    else:
        theta1 = format_scalar(Fraction(cover.sigma_r, 16))
    data = {
        "p": cover.p, "q": cover.q, "r": cover.r,
        "theta1": theta1,
        "theta2": format_scalar(t2),
        "theta3": {"value": format_scalar(t3), "conjectural": True},
    }
    text = "\n".join([
        f"LMO(Sigma({cover.p},{cover.q},{cover.r}))",
        f"Theta: {theta1}",
        f"Theta2: {format_scalar(t2)}",
        f"Theta3 (conjectural): {format_scalar(t3)}",
    ])
    return data, text, 0


def _alexander(cfg: CliConfig) -> tuple[dict, str, int]:
    if cfg.p is None or cfg.q is None:
        raise ParameterError("alexander needs --p and --q")
    rf = alexander_torus(cfg.p, cfg.q)
    poly = rf.to_laurent()
    data = {"p": cfg.p, "q": cfg.q, "factored": rf.to_json(), "laurent": poly.to_json(), "text": str(poly)}
    return data, f"D_{{{cfg.p},{cfg.q}}}(t) = {poly}", 0


def _sweep_one(args) -> dict:
    p, q, rs, order = args
    results = verify_identities(p, q, order)
    for r in rs:
        results += lift_checks(p, q, r)
    return {"p": p, "q": q, "rs": rs, "checks": [r.to_json() for r in results],
            "lines": [r.line() for r in results], "passed": all(r.passed for r in results)}


def _sweep(cfg: CliConfig) -> tuple[dict, str, int]:
    jobs = [(p, q, rs, cfg.order) for p, q, rs in sweep_grid(rs=DEFAULT_RS)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(_sweep_one, jobs))
    else:
        reports = [_sweep_one(j) for j in jobs]
    ok = all(r["passed"] for r in reports)
    lines = []
    for rep in reports:
        lines.append(f"K({rep['p']},{rep['q']}) r in {rep['rs']}: {'PASS' if rep['passed'] else 'FAIL'}")
        lines += [f"  {line}" for line in rep["lines"]]
    for rep in reports:
        rep.pop("lines")
    return {"order": cfg.order, "reports": reports, "passed": ok}, "\n".join(lines), 0 if ok else 1


_DISPATCH = {
    "invariant": _invariant,
    "verify": _verify,
    "lift": _lift,
    "lmo": _lmo,
    "alexander": _alexander,
    "sweep": _sweep,
}


def render(data: dict, text: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    return text + "\n"


def run(cfg: CliConfig) -> tuple[int, str]:
    """Execute a parsed configuration; returns the exit code and rendered output."""
    data, text, code = _DISPATCH[cfg.command](cfg)
    return code, render(data, text, cfg.format)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        code, out = run(cfg)
    except TorusKontsevichError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
