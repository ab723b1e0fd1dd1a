"""Identity suite run by ``verify`` and ``sweep``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable

from .cover import CoverParams, lift_part, lmo_theta2
from .diagrams import parity_violations
from .exact import alexander_torus
from .pipeline import (
    TorusParams,
    cancellation_chain,
    closed_theta2_z3,
    fractional_residual,
    star_formula,
    unwheel_assemble,
    verify_closed_normalization,
    z1_rational_series,
    z2_rational,
    z3_rational,
    zprime3_series,
)
from .series import ts_polar_split
from .wheels import f_series

__all__ = ["CheckResult", "verify_identities", "lift_checks", "sweep_grid", "DEFAULT_RS"]

DEFAULT_RS = (2, 3, 5)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _run(name: str, fn: Callable[[], object]) -> CheckResult:
    try:
        out = fn()
    except Exception as exc:  # a raised identity failure is a failed check
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    if isinstance(out, tuple):
        ok, detail = out
        return CheckResult(name, bool(ok), detail)
    return CheckResult(name, bool(out))


def verify_identities(p: int, q: int, N: int = 8) -> list[CheckResult]:
    """Every identity of the computation for one torus knot, exactly at cap ``N``."""
    params = TorusParams(p, q, N)

    def alexander():
        poly = alexander_torus(p, q).to_laurent()
        mirrored = poly.substitute_power(-1)
        return poly == mirrored and poly.coefficient_sum() == 1, str(poly)

    def one_loop():
        c_minus_f = star_formula(params).z1.series - f_series(N)
        return c_minus_f == z1_rational_series(params)

    def two_loop():
        z2 = z2_rational(params).hair(N)
        polar = ts_polar_split(z2, "x")[0]
        return z2 == star_formula(params).z2.series and polar.is_zero()

    def residual():
        res = fractional_residual(params).series
        zp = zprime3_series(params)
        return res == zp, res.difference_report(zp)

    def cancellation():
        res = fractional_residual(params).series
        return (cancellation_chain(params).series + res).is_zero()

    def rational_total():
        # chains + brackets together are the hair of the rational chain coloring
        star = star_formula(params)
        total = star.z3_chain.series + cancellation_chain(params).series
        return total == z3_rational(params).hair(N)

    def parity():
        bad = parity_violations(star_formula(params))
        return not bad, "; ".join(bad[:3])

    checks = [
        ("alexander polynomial symmetric with D(1)=1", alexander),
        ("1-loop part is -1/2 log D(e^x)", one_loop),
        ("step assembly equals closed formula", lambda: unwheel_assemble(params) == star_formula(params)),
        ("2-loop rational form, polar parts cancel", two_loop),
        ("3-loop fractional residual equals z'3", residual),
        ("bracket line cancels the residual", cancellation),
        ("3-loop part equals hair of rational chains", rational_total),
        ("closed Theta_2 term", lambda: closed_theta2_z3(params) == Fraction((p * p - 1) * (q * q - 1), 1152)),
        ("closed normalization <Omega,Omega> = 1/1152", lambda: verify_closed_normalization(params)),
        ("leg parity of wheels, dumb-bells, chains", parity),
    ]
    if q > 0:
        checks.append(
            ("symmetry K(p,q) = K(q,p)", lambda: star_formula(params) == star_formula(params.swapped()))
        )
    return [_run(name, fn) for name, fn in checks]


def lift_checks(p: int, q: int, r: int) -> list[CheckResult]:
    params = TorusParams(p, q, 2)
    z2, z3 = z2_rational(params), z3_rational(params)
    return [
        _run(f"lift_{r} z2 = {r} z2", lambda: lift_part(z2, r) == z2.scale(r)),
        _run(f"lift_{r} z3 = {r**2} z3", lambda: lift_part(z3, r) == z3.scale(r * r)),
        _run(f"LMO Theta_2 of Sigma({p},{q},{r})", lambda: (True, str(lmo_theta2(CoverParams(p, q, r))))),
    ]


def sweep_grid(max_q: int = 7, rs=DEFAULT_RS) -> list[tuple[int, int, list[int]]]:
    """Coprime ``1 <= p < q <= max_q`` with the covering orders coprime to both."""
    out = []
    for q in range(2, max_q + 1):
        for p in range(1, q):
            if gcd(p, q) == 1:
                out.append((p, q, [r for r in rs if gcd(r, p) == 1 and gcd(r, q) == 1]))
    return out
