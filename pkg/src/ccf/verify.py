"""Geometric sufficient conditions for Eisenstein digit maps.

Each cell C_f(a) is over-approximated by a disk around a (radius r, the
certified fundamental-set radius), so a pass here is a proof and a failure
only says that the disk description is too coarse.  Every comparison is
exact over Q(sqrt d).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import Disk, ExactComplex, disk_within, disks_disjoint, invert_disk
from .reals import ExactReal, sqrt_sum_sign
from .rings import EISENSTEIN, RingElement, jay, rho, units

LAMBDA = ExactReal.rational(Fraction(5, 4)) - ExactReal.sqrt(13) * Fraction(1, 4)
MU = ExactReal.rational(Fraction(5, 4)) + ExactReal.sqrt(13) * Fraction(1, 4)
GOLDEN_SQ = ExactReal.rational(Fraction(3, 2)) - ExactReal.sqrt(5) * Fraction(1, 2)  # ((sqrt5 - 1)/2)^2
T_J_THRESHOLD = (ExactReal.sqrt(13) - 1) / (2 * ExactReal.sqrt(3))

GROWTH_POLY = (-9, 33, -22, 4)  # P(s) = 4s^3 - 22s^2 + 33s - 9, low degree first


@dataclass(frozen=True)
class CellBound:
    """Digit map known only through C_f(a) in B(a, r) (closed or open)."""

    radius_sq: ExactReal
    radius_closed: bool = False
    ring: object = EISENSTEIN

    @classmethod
    def of_radius(cls, r, closed: bool = False) -> "CellBound":
        r = ExactReal.coerce(r)
        return cls(r * r, closed)

    def cell_disk(self, a: RingElement) -> Disk:
        return Disk(ExactComplex.from_field(a), self.radius_sq, self.radius_closed)


def _bound(alg) -> CellBound:
    if alg.ring != EISENSTEIN:
        raise ValueError(f"geometric verifiers need the Eisenstein ring, got {alg.ring.name}")
    if isinstance(alg, CellBound):
        return alg
    return CellBound(alg.radius_sq, alg.radius_closed)


def _rho_pow(k: int) -> RingElement:
    return rho() ** (k % 6)


def outside_region(b: CellBound) -> Disk:
    """The disk G with Phi^{-1} contained in C minus G."""
    # Phi in closed B(0, r) gives Phi^{-1} in |w| >= 1/r, so G is open; and vice versa
    return Disk(ExactComplex.of(0), b.radius_sq.inverse(), not b.radius_closed)


def t_values() -> list[RingElement]:
    j = jay()
    return [j - 1, j, j + 1]


def clause_c_disks(b: CellBound, k: int, t: RingElement) -> tuple[Disk, Disk]:
    """D1 = rho^-k t + cell_disk(rho^k j)^{-1} and D2 = cell_disk(rho^-k t)."""
    shift = _rho_pow(-k) * t
    d1 = invert_disk(b.cell_disk(_rho_pow(k) * jay())).translate(ExactComplex.from_field(shift))
    return d1, b.cell_disk(shift)


def _witness_point(d1: Disk, d2: Disk, g: Disk, steps: int = 24):
    """A rational point of D1 and D2 lying outside G, found on a grid."""
    c = complex(d1.center)
    rad = d1.radius
    for i in range(steps + 1):
        for k in range(steps + 1):
            re = Fraction(c.real - rad + 2 * rad * i / steps).limit_denominator(10 ** 6)
            im = Fraction(c.imag - rad + 2 * rad * k / steps).limit_denominator(10 ** 6)
            p = ExactComplex.of(re, im)
            if d1.contains_point(p) and d2.contains_point(p) and not g.contains_point(p):
                return [str(re), str(im)]
    return None


def verify_thm51(alg) -> dict:
    """Check conditions (a), (b), (c) of the Eisenstein monotonicity theorem.

    (a) r < 1.  (b) cell disks of 0 and the units avoid Phi^{-1}.
    (c) for k in 0..5 and t in {-1+j, j, 1+j}: the two sets are disjoint,
    shown by disjoint disks or by one of them missing Phi^{-1}.
    """
    b = _bound(alg)
    g = outside_region(b)
    a_ok = b.radius_sq.sign() > 0 and (b.radius_sq - 1).sign() < 0
    b_items = []
    for a in [EISENSTEIN.zero] + units(EISENSTEIN):
        verdict = disk_within(b.cell_disk(a), g)
        b_items.append({"digit": str(a), "verdict": verdict})
    b_ok = all(it["verdict"] == "inside" for it in b_items)

    c_items = []
    for k in range(6):
        for t in t_values():
            d1, d2 = clause_c_disks(b, k, t)
            how = None
            if disks_disjoint(d1, d2):
                how = "disjoint"
            elif disk_within(d1, g) == "inside":
                how = "shifted-inverse-inside-G"
            elif disk_within(d2, g) == "inside":
                how = "cell-inside-G"
            item = {"k": k, "t": str(t), "ok": how is not None, "how": how}
            if how is None:
                item["witness"] = {"D1": d1.describe(), "D2": d2.describe(),
                                   "point": _witness_point(d1, d2, g)}
            c_items.append(item)
    c_ok = all(it["ok"] for it in c_items)
    return {"ok": a_ok and b_ok and c_ok,
            "radius_sq": str(b.radius_sq), "closed": b.radius_closed,
            "a": {"ok": a_ok},
            "b": {"ok": b_ok, "items": b_items},
            "c": {"ok": c_ok, "items": c_items}}


def verify_cor52(alg) -> dict:
    """Check the disk containments of the Eisenstein corollary.

    (a) every cell inside the open disk of radius (sqrt5 - 1)/2;
    (b) the cells at rho^k j inside the open disk of radius sqrt(lambda).
    Touching a boundary gives the verdict "boundary", which fails.
    """
    b = _bound(alg)
    a_disk = Disk(ExactComplex.of(0), GOLDEN_SQ, False)
    a_verdict = disk_within(b.cell_disk(EISENSTEIN.zero), a_disk)
    b_items = []
    for k in range(6):
        a = _rho_pow(k) * jay()
        target = Disk(ExactComplex.from_field(a), LAMBDA, False)
        b_items.append({"k": k, "digit": str(a), "verdict": disk_within(b.cell_disk(a), target)})
    ok = a_verdict == "inside" and all(it["verdict"] == "inside" for it in b_items)
    return {"ok": ok, "radius_sq": str(b.radius_sq), "closed": b.radius_closed,
            "lambda": str(LAMBDA), "third_below_lambda": (LAMBDA - Fraction(1, 3)).sign() > 0,
            "a": {"verdict": a_verdict}, "b": {"items": b_items}}


def poly_mul(p, q) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for k, y in enumerate(q):
            out[i + k] += x * y
    return out


def poly_eval(p, s):
    acc = ExactReal.rational(0) if isinstance(s, ExactReal) else Fraction(0)
    for c in reversed(p):
        acc = acc * s + c
    return acc


def check_growth_polynomial() -> dict:
    """P(s) = (s-3)(4s^2-10s+3), roots lambda and mu, and the sign pattern."""
    product = poly_mul((-3, 1), (3, -10, 4))
    factor_ok = tuple(product) == GROWTH_POLY
    # the eliminated-denominator form (3-s)^2 s + 3(2-s)^2 s - (3-2s)^2
    elim = [x + y - z for x, y, z in zip(
        poly_mul(poly_mul((3, -1), (3, -1)), (0, 1)),
        [3 * c for c in poly_mul(poly_mul((2, -1), (2, -1)), (0, 1))],
        poly_mul((3, -2), (3, -2)) + [0])]
    elim_ok = tuple(elim) == GROWTH_POLY
    at_lambda = poly_eval(GROWTH_POLY, LAMBDA)
    at_mu = poly_eval(GROWTH_POLY, MU)
    lo = poly_eval(GROWTH_POLY, Fraction(3, 10))
    hi = poly_eval(GROWTH_POLY, Fraction(31, 10))
    ok = factor_ok and elim_ok and at_lambda.is_zero() and at_mu.is_zero() and lo < 0 < hi
    return {"ok": ok, "factorization": factor_ok, "eliminated_form": elim_ok,
            "P(lambda)": str(at_lambda), "P(mu)": str(at_mu),
            "P(3/10)": str(lo), "P(31/10)": str(hi),
            "lambda_gt_third": (LAMBDA - Fraction(1, 3)).sign() > 0}


def t_clause_contained(r, t: RingElement | None = None, k: int = 0) -> bool:
    """Whether the shifted inverse disk for t (default j) lies in G, for open cells of radius r."""
    b = CellBound.of_radius(r, closed=False)
    d1, _ = clause_c_disks(b, k, jay() if t is None else t)
    return disk_within(d1, outside_region(b)) == "inside"


def closed_form_t_j(r) -> bool:
    """sqrt3 r^2 + r - sqrt3 < 0."""
    r = ExactReal.coerce(r)
    return (ExactReal.sqrt(3) * r * r + r - ExactReal.sqrt(3)).sign() < 0


def sweep_t_j(lo=Fraction(1, 2), hi=Fraction(9, 10), step=Fraction(1, 1000)) -> dict:
    """Scan r and locate where the t = j clause stops holding."""
    r = Fraction(lo)
    mismatches = []
    last_ok = first_bad = None
    while r <= hi:
        geo = t_clause_contained(r)
        if geo != closed_form_t_j(r):
            mismatches.append(str(r))
        if geo:
            last_ok = r
        elif first_bad is None:
            first_bad = r
        r += step
    threshold = float(T_J_THRESHOLD)
    ok = (not mismatches and last_ok is not None and first_bad is not None
          and float(last_ok) < threshold < float(first_bad) and first_bad - last_ok <= step)
    return {"ok": ok, "threshold": threshold, "last_ok": str(last_ok), "first_bad": str(first_bad),
            "mismatches": mismatches, "step": str(step)}


def golden_vs_lambda() -> int:
    """Sign of (sqrt5 - 1)/2 - sqrt(lambda); positive, so clause (b) is the binding one."""
    return sqrt_sum_sign(GOLDEN_SQ, 0, LAMBDA)
