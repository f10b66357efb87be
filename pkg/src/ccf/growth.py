"""Growth of |q_n| for the Eisenstein nearest-integer algorithm.

Every test is exact: ratios are compared squared, and quantities of the
form |u| - |v| with u, v in the ring are compared by repeated squaring.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

from .cf_core import ExpansionReport
from .reals import ExactReal, sqrt_sum_sign
from .rings import EISENSTEIN, RingElement, jay, rho

NINE_FOURTHS = Fraction(9, 4)


@dataclass(frozen=True)
class SuccessionVerdict:
    rule: str  # "j", "2" or "none"
    k: int | None
    x: int | None
    y: int | None
    ok: bool

    def to_json(self) -> dict:
        return {"rule": self.rule, "k": self.k, "x": self.x, "y": self.y, "ok": self.ok}


def _rotation_index(a: RingElement, base: RingElement) -> int | None:
    r = rho()
    w = base
    for k in range(6):
        if a == w:
            return k
        w = w * r
    return None


def half_coordinates(w: RingElement) -> tuple[int, int]:
    """(x, y) with w = (x + y j)/2; x and y have the same parity."""
    # X + Y rho = X + Y/2 + (Y/2) j
    return 2 * w.x + w.y, w.y


def succession_check(a_n: RingElement, a_next: RingElement) -> SuccessionVerdict:
    """Which quotient may follow j rho^k or 2 rho^k.

    After a_n = j rho^k, write a_next rho^k = (x + y j)/2; then |x/2| <= 2 - 3y/2.
    After a_n = 2 rho^k, x >= -2.  Any other a_n gives a vacuous pass.
    """
    if a_n.ring != EISENSTEIN or a_next.ring != EISENSTEIN:
        raise ValueError("succession rules are stated for the Eisenstein ring")
    for rule, base in (("j", jay()), ("2", EISENSTEIN(2))):
        k = _rotation_index(a_n, base)
        if k is None:
            continue
        x, y = half_coordinates(a_next * rho() ** k)
        if rule == "j":
            ok = abs(x) <= 4 - 3 * y
        else:
            ok = x >= -2
        return SuccessionVerdict(rule, k, x, y, ok)
    return SuccessionVerdict("none", None, None, None, True)


@dataclass
class GrowthRow:
    n: int
    ratio_sq: Fraction  # |q_{n+1}|^2 / |q_{n-1}|^2
    bound_sq: ExactReal | None  # (|a_n a_{n+1} + 1| - |a_{n+1}|)^2 when the difference is >= 0
    bound_vs_three_halves: int  # sign of |a_n a_{n+1} + 1| - |a_{n+1}| - 3/2
    bound_applies: bool  # |q_{n-2}| <= |q_{n-1}|
    bound_ok: bool  # ratio >= bound when it applies
    succession: SuccessionVerdict

    @property
    def ratio_ok(self) -> bool:
        return self.ratio_sq > NINE_FOURTHS

    def to_json(self) -> dict:
        return {"n": self.n, "ratio_sq": str(self.ratio_sq), "ratio_ok": self.ratio_ok,
                "bound_sq": None if self.bound_sq is None else str(self.bound_sq),
                "bound_vs_three_halves": self.bound_vs_three_halves,
                "bound_applies": self.bound_applies, "bound_ok": self.bound_ok,
                "succession": self.succession.to_json()}


@dataclass
class GrowthReport:
    rows: list[GrowthRow]
    min_ratio_sq: Fraction | None
    telescoping_ok: bool
    telescoping_failures: list[int] = field(default_factory=list)

    @property
    def ratios_ok(self) -> bool:
        return all(r.ratio_ok for r in self.rows)

    @property
    def succession_ok(self) -> bool:
        return all(r.succession.ok for r in self.rows)

    @property
    def bounds_ok(self) -> bool:
        return all(r.bound_ok for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.ratios_ok and self.succession_ok and self.bounds_ok and self.telescoping_ok

    def violations(self) -> list[int]:
        return [r.n for r in self.rows if not (r.ratio_ok and r.succession.ok and r.bound_ok)]

    def to_json(self) -> dict:
        return {"ok": self.ok, "ratios_ok": self.ratios_ok, "succession_ok": self.succession_ok,
                "bounds_ok": self.bounds_ok, "telescoping_ok": self.telescoping_ok,
                "min_ratio_sq": None if self.min_ratio_sq is None else str(self.min_ratio_sq),
                "rows": [r.to_json() for r in self.rows]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "ratio_sq", "remark63_bound_sq", "succession_rule_applied"])
        for r in self.rows:
            rule = "none" if r.succession.rule == "none" else f"{r.succession.rule}:{'pass' if r.succession.ok else 'fail'}"
            w.writerow([r.n, str(r.ratio_sq), "" if r.bound_sq is None else str(r.bound_sq), rule])
        return buf.getvalue()


def _difference_bound(u: RingElement, v: RingElement) -> tuple[ExactReal | None, int]:
    """(|u| - |v|)^2 when |u| >= |v|, and the sign of |u| - |v| - 3/2."""
    nu, nv = u.abs_sq(), v.abs_sq()
    vs = sqrt_sum_sign(nv, NINE_FOURTHS, nu)  # sign of |v| + 3/2 - |u|
    if nu < nv:
        return None, -vs
    diff = ExactReal.sqrt(nu) - ExactReal.sqrt(nv)
    return diff * diff, -vs


def growth_check(report: ExpansionReport) -> GrowthReport:
    """Ratios |q_{n+1}/q_{n-1}|^2, the lower bound from consecutive quotients,
    succession rules and the telescoped growth of |q_n|^2."""
    if report.ring != EISENSTEIN:
        raise ValueError(f"growth checks need the Eisenstein ring, got {report.ring.name}")
    if report.algorithm.get("variant") != "nearest":
        raise ValueError(f"growth checks need the nearest-integer algorithm, got {report.algorithm.get('variant')}")
    steps = report.steps
    qs = [s.q_abs_sq for s in steps]
    q_prev_sq = [0] + qs  # |q_{n-1}|^2 at index n
    rows = []
    for n in range(1, len(steps) - 1):
        a_n, a_next = steps[n].a, steps[n + 1].a
        ratio_sq = Fraction(qs[n + 1], qs[n - 1])
        u = a_n * a_next + 1
        bound_sq, vs_three_halves = _difference_bound(u, a_next)
        applies = q_prev_sq[n - 1] <= qs[n - 1]
        if applies:
            # sqrt(ratio_sq) >= |u| - |a_next|  <=>  sqrt(ratio_sq) + |a_next| >= |u|
            bound_ok = sqrt_sum_sign(ratio_sq, a_next.abs_sq(), u.abs_sq()) >= 0
        else:
            bound_ok = True
        rows.append(GrowthRow(n, ratio_sq, bound_sq, vs_three_halves, applies, bound_ok,
                              succession_check(a_n, a_next)))
    failures = []
    if len(qs) >= 2:
        base = min(qs[0], qs[1])
        for n, q in enumerate(qs):
            if q < NINE_FOURTHS ** (n // 2) * base:
                failures.append(n)
    min_ratio = min((r.ratio_sq for r in rows), default=None)
    return GrowthReport(rows, min_ratio, not failures, failures)
