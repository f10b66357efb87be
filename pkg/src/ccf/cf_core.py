"""Iteration sequences, Q-pairs, convergents and their diagnostics.

Two evaluation modes share one driver.  In surd mode z is a root held in a
SurdContext and every z_n is exact; in numeric mode z is a rational box and
each z_n is recomputed from it as -(q_{n-2} z - p_{n-2}) / (q_{n-1} z - p_{n-1})
at a precision that doubles until the digit is certified.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, Context, Decimal
from fractions import Fraction
from typing import Iterator

from .algorithms import AlgorithmSpec, DigitUnresolved, ForcedStream
from .geometry import ExactComplex
from .interval import ComplexBox, Interval, RationalBox
from .reals import ExactReal
from .rings import FieldElement, RingElement, RingSpec
from .exact_surd import _MAX_BITS, START_BITS, SurdContext, SurdElement, auxiliary_context, point_in_field

SCHEMA = "ccf-report/1"
DEFAULT_STEPS = 10_000
DEFAULT_PRECISION_CAP = 4096


def precision_cap() -> int:
    return int(os.environ.get("CCF_PRECISION_CAP", DEFAULT_PRECISION_CAP))


def ceil_str(q: Fraction, digits: int = 15) -> str:
    """Decimal upper bound for q, so printed bounds stay certified."""
    ctx = Context(prec=digits, rounding=ROUND_CEILING)
    return str(ctx.divide(Decimal(q.numerator), Decimal(q.denominator)))


# -- Q-pairs ------------------------------------------------------------------------

@dataclass(frozen=True)
class QPairState:
    p_prev: RingElement
    p_cur: RingElement
    q_prev: RingElement
    q_cur: RingElement
    n: int = 0

    @classmethod
    def start(cls, a0: RingElement) -> "QPairState":
        ring = a0.ring
        return cls(ring.one, a0, ring.zero, ring.one, 0)

    def determinant(self) -> RingElement:
        return self.p_cur * self.q_prev - self.q_cur * self.p_prev

    def determinant_ok(self) -> bool:
        return self.determinant() == self.p_cur.ring((-1) ** ((self.n - 1) % 2))


def qpair_step(s: QPairState, a: RingElement) -> QPairState:
    return QPairState(s.p_cur, a * s.p_cur + s.p_prev, s.q_cur, a * s.q_cur + s.q_prev, s.n + 1)


def qpairs(quotients) -> list[QPairState]:
    out = []
    for a in quotients:
        out.append(QPairState.start(a) if not out else qpair_step(out[-1], a))
    return out


# -- per-step checks --------------------------------------------------------------

def condition_c_check(a_prev: RingElement, a_next: RingElement) -> bool:
    """The consecutive-quotient inequality; fails outright if |a| <= 1."""
    n_next = a_next.abs_sq()
    if a_prev.abs_sq() <= 1 or n_next <= 1:
        return False
    if n_next >= 4:
        return True
    lhs = (n_next - 1) * a_prev + a_next.conj()
    return lhs.abs_sq() >= n_next * n_next


def error_constant(r: ExactReal) -> ExactReal:
    """r / (1 - r)."""
    return r / (1 - r)


def error_bound(q_prev: RingElement, q_cur: RingElement, r: ExactReal) -> ExactReal | None:
    """(r/(1-r)) |q_n|^-2 when |q_{n-1}| < |q_n| and r < 1, else None."""
    if q_prev.abs_sq() >= q_cur.abs_sq() or (ExactReal.coerce(r) - 1).sign() >= 0:
        return None
    return error_constant(ExactReal.coerce(r)) * Fraction(1, q_cur.abs_sq())


def sharp_error_bound(z_next: ComplexBox, q_prev: RingElement, q_cur: RingElement) -> Fraction | None:
    """Upper bound |q_n|^-2 (|z_{n+1}| - |q_{n-1}/q_n|)^-1 from interval data."""
    nq = Fraction(q_cur.abs_sq())
    if Fraction(q_prev.abs_sq()) >= nq:
        return None
    prec = z_next.prec
    zlo = z_next.abs_sq()
    if zlo.lo <= 0:
        return None
    z_abs_lo = Interval.sqrt_of(zlo.lo_q, prec).lo_q
    ratio_hi = Interval.sqrt_of(Fraction(q_prev.abs_sq()) / nq, prec).hi_q
    gap = z_abs_lo - ratio_hi
    if gap <= 0:
        return None
    return 1 / (nq * gap)


def _abs_sq_le(w: SurdElement, bound: ExactReal) -> bool | None:
    """|w|^2 <= bound, exact for rational bounds, refined otherwise."""
    if bound.is_rational():
        return w.abs_sq_sign(bound.as_fraction()) <= 0
    prec = START_BITS
    while prec <= _MAX_BITS:
        iv = w.box(prec).abs_sq()
        lo, hi = bound.bounds(prec)
        if iv.hi_q <= lo:
            return True
        if iv.lo_q > hi:
            return False
        prec *= 2
    return None


# -- steps and reports --------------------------------------------------------------

@dataclass
class ExpansionStep:
    n: int
    a: RingElement
    z: object  # SurdElement or ComplexBox
    qpair: QPairState
    tie: bool = False
    z_gt_one: bool | None = None  # |z_n| > 1, certified, for n >= 1
    condition_c: bool | None = None  # Condition C for (a_{n-1}, a_n), n >= 1
    error_bound: ExactReal | None = None
    error_certified: bool | None = None
    sharp_bound: Fraction | None = None
    identities: dict = field(default_factory=dict)
    prec: int | None = None
    last: bool = False  # z_n = a_n exactly, so the expansion ends here

    @property
    def q_abs_sq(self) -> int:
        return self.qpair.q_cur.abs_sq()

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "a": str(self.a),
            "p": str(self.qpair.p_cur),
            "q": str(self.qpair.q_cur),
            "q_abs_sq": str(self.q_abs_sq),
            "tie": self.tie,
            "z_gt_one": self.z_gt_one,
            "condition_c": self.condition_c,
            "error_bound": None if self.error_bound is None else str(self.error_bound),
            "error_certified": self.error_certified,
            "sharp_bound": None if self.sharp_bound is None else ceil_str(self.sharp_bound),
            "identities": self.identities,
        }
        if self.prec is not None:
            out["prec"] = self.prec
            out["box_width"] = ceil_str(self.z.width, 6)
        return out


@dataclass
class ExpansionReport:
    ring: RingSpec
    algorithm: dict
    mode: str
    source: dict
    steps: list[ExpansionStep]
    termination: str
    period: dict | None = None
    radius: ExactReal | None = None

    @property
    def quotients(self) -> list[RingElement]:
        return [s.a for s in self.steps]

    @property
    def q_abs_sq(self) -> list[int]:
        return [s.q_abs_sq for s in self.steps]

    @property
    def condition_c_all(self) -> bool:
        return all(s.condition_c for s in self.steps[1:])

    @property
    def monotone(self) -> bool:
        """|q_{n+1}|^2 > |q_n|^2 for all n >= 1 present in the report."""
        qs = self.q_abs_sq
        return all(qs[n + 1] > qs[n] for n in range(1, len(qs) - 1))

    @property
    def monotone_first_failure(self) -> int | None:
        qs = self.q_abs_sq
        for n in range(1, len(qs) - 1):
            if qs[n + 1] <= qs[n]:
                return n
        return None

    @property
    def theorem_consistent(self) -> bool:
        """Condition C throughout must force monotone denominators."""
        return not self.condition_c_all or self.monotone

    @property
    def identities_ok(self) -> bool:
        return all(v is not False for s in self.steps for v in s.identities.values())

    @property
    def errors_ok(self) -> bool:
        return all(s.error_certified is not False for s in self.steps)

    @property
    def ties(self) -> list[int]:
        return [s.n for s in self.steps if s.tie]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "mode": self.mode,
            "ring": self.ring.name,
            "algorithm": self.algorithm,
            "input": self.source,
            "termination": self.termination,
            "quotients": [str(a) for a in self.quotients],
            "q_abs_sq": [str(q) for q in self.q_abs_sq],
            "verdicts": {
                "condition_c_all": self.condition_c_all,
                "monotone": self.monotone,
                "theorem_consistent": self.theorem_consistent,
                "identities_ok": self.identities_ok,
                "errors_ok": self.errors_ok,
            },
            "ties": self.ties,
            "period": self.period,
            "error_constant": None if self.radius is None or (self.radius - 1).sign() >= 0
            else str(error_constant(self.radius)),
            "steps": [s.to_json() for s in self.steps],
        }


# -- identity checks ------------------------------------------------------------------

def residual_identity_check(z: SurdElement, qp: QPairState, product: SurdElement) -> bool:
    """q_n z - p_n = (-1)^n (z_1 ... z_{n+1})^{-1}, checked by multiplying out."""
    lhs = (z * qp.q_cur - qp.p_cur) * product
    return lhs == z.ctx.one * (-1) ** (qp.n % 2)


def mobius_identity_check(z: SurdElement, qp: QPairState, z_next: SurdElement) -> bool:
    """(z_{n+1} q_n + q_{n-1}) z = z_{n+1} p_n + p_{n-1}."""
    return (z_next * qp.q_cur + qp.q_prev) * z == z_next * qp.p_cur + qp.p_prev


def _box_contains_zero_identity(zb: ComplexBox, qp: QPairState, nb: ComplexBox, prod: ComplexBox):
    prec = zb.prec
    q, p = qp.q_cur.embed(prec), qp.p_cur.embed(prec)
    resid = q * zb - p
    one = ComplexBox.point((-1) ** (qp.n % 2), 0, prec)
    i_ok = (resid * prod - one).contains_zero()
    iii = (nb * q + qp.q_prev.embed(prec)) * zb - (nb * p + qp.p_prev.embed(prec))
    return i_ok, iii.contains_zero()


# -- drivers ----------------------------------------------------------------------------

def _digit(alg, z, n):
    if isinstance(alg, ForcedStream):
        return alg.at(n), False
    return alg.choose(z)


def _radius(alg) -> ExactReal | None:
    return getattr(alg, "radius", None)


def iterate_surd(ctx: SurdContext, alg, limit: int, checks: bool = True,
                 start: SurdElement | None = None) -> Iterator[ExpansionStep]:
    """Exact iteration z_{n+1} = (z_n - a_n)^{-1}, one step per yield.

    ``start`` replaces z_0 = z; when it lies in K the expansion is finite and
    the final step is marked ``last``.
    """
    z0 = ctx.z if start is None else start
    z = z0
    state = None
    prod = ctx.one
    r = _radius(alg)
    prev_a = None
    for n in range(limit):
        a, tie = _digit(alg, z, n)
        state = QPairState.start(a) if state is None else qpair_step(state, a)
        diff = z - a.to_field()
        step = ExpansionStep(n, a, z, state, tie)
        if n >= 1:
            step.z_gt_one = z.abs_sq_sign(1) > 0
            step.condition_c = condition_c_check(prev_a, a) if n >= 2 else a.abs_sq() > 1
        if diff.is_zero():
            if not z0.in_field():
                raise ValueError("expansion terminated: z lies in K")
            step.last = True
            if checks:
                step.identities = {"determinant": state.determinant_ok(),
                                   "exact_convergent": (z0 * state.q_cur - state.p_cur).is_zero()}
            yield step
            return
        nxt = diff.inverse()
        if checks:
            prod = prod * nxt
            step.identities = {
                "determinant": state.determinant_ok(),
                "residual": residual_identity_check(z0, state, prod),
                "mobius": mobius_identity_check(z0, state, nxt),
            }
        if checks and r is not None:
            bound = error_bound(state.q_prev, state.q_cur, r)
            if bound is not None:
                step.error_bound = bound
                resid = z0 * state.q_cur - state.p_cur
                limit_sq = bound * bound * state.q_cur.abs_sq()
                step.error_certified = _abs_sq_le(resid, limit_sq)
            step.sharp_bound = sharp_error_bound(nxt.tight_box(), state.q_prev, state.q_cur)
        yield step
        prev_a = a
        z = nxt


def _exact_tail_zero(box: RationalBox, p: RingElement, q: RingElement) -> bool:
    """Whether q z - p = 0 exactly for a point input z."""
    if not box.is_point or q.is_zero():
        return False
    return ExactComplex.from_field(p / q) == ExactComplex.of(box.re_lo, box.im_lo)


def _tail_box(zb: ComplexBox, p2, p1, q2, q1) -> ComplexBox | None:
    prec = zb.prec
    den = q1.embed(prec) * zb - p1.embed(prec)
    if den.abs_sq().lo <= 0:
        return None
    return -(q2.embed(prec) * zb - p2.embed(prec)) / den


def iterate_numeric(box: RationalBox, alg, limit: int, precision: int = 256,
                    cap: int | None = None, target: Fraction | None = None) -> Iterator[ExpansionStep]:
    """Certified iteration from an exact rational box."""
    cap = precision_cap() if cap is None else cap
    ring = alg.ring
    r = _radius(alg)
    k_sq = None if r is None or (r - 1).sign() >= 0 else error_constant(r) ** 2
    p2, p1, q2, q1 = ring.zero, ring.one, ring.one, ring.zero
    state = None
    prev_a = None
    prod = None
    for n in range(limit):
        if _exact_tail_zero(box, p1, q1):
            raise DigitUnresolved(f"digit unresolved at step {n}: the input lies in K")
        work = precision
        while True:
            zb_in = box.at(work)
            zn = _tail_box(zb_in, p2, p1, q2, q1)
            if zn is not None:
                try:
                    a, tie = _digit(alg, zn, n)
                    break
                except DigitUnresolved:
                    pass
            if work >= cap:
                raise DigitUnresolved(f"digit unresolved at step {n}")
            work = min(2 * work, cap)
        state = QPairState.start(a) if state is None else qpair_step(state, a)
        step = ExpansionStep(n, a, zn, state, tie, prec=work)
        if n >= 1:
            zl = zn.abs_sq().sign_vs(1)
            step.z_gt_one = None if zl is None else zl > 0
            step.condition_c = condition_c_check(prev_a, a) if n >= 2 else a.abs_sq() > 1
        nxt = _tail_box(zb_in, p1, state.p_cur, q1, state.q_cur)
        resid = state.q_cur.embed(work) * zb_in - state.p_cur.embed(work)
        if nxt is not None:
            prod = nxt if prod is None else prod * nxt
            i_ok, iii_ok = _box_contains_zero_identity(zb_in, state, nxt, prod)
            step.identities = {"determinant": state.determinant_ok(), "residual": i_ok, "mobius": iii_ok}
            step.sharp_bound = sharp_error_bound(nxt, state.q_prev, state.q_cur)
        else:
            step.identities = {"determinant": state.determinant_ok()}
        if k_sq is not None:
            bound = error_bound(state.q_prev, state.q_cur, r)
            if bound is not None:
                step.error_bound = bound
                k_lo = k_sq.bounds(work)[0]
                step.error_certified = resid.abs_sq().hi_q * state.q_cur.abs_sq() <= k_lo
        yield step
        if target is not None and step.error_bound is not None and step.error_certified \
                and (step.error_bound - target).sign() <= 0:
            return
        prev_a = a
        p2, p1, q2, q1 = p1, state.p_cur, q1, state.q_cur


def expand(source, alg, limit: int = DEFAULT_STEPS, *, precision: int = 256, cap: int | None = None,
           target: Fraction | None = None, stop_on_period: bool = True, checks: bool = True) -> ExpansionReport:
    """Expand a SurdContext exactly or a RationalBox with certified digits.

    Surd mode stops at the step limit or at the first repeated z_n (when
    ``stop_on_period``); a point of K is expanded exactly until it ends;
    numeric mode stops at the step limit or once the
    certified error bound reaches ``target``.
    """
    radius = _radius(alg)
    if isinstance(source, SurdContext):
        steps: list[ExpansionStep] = []
        seen: dict = {}
        period = None
        termination = "steps"
        for step in iterate_surd(source, alg, limit + 1 if stop_on_period else limit, checks):
            key = step.z.key()
            if isinstance(alg, ForcedStream):
                key = (key, alg.phase(step.n))
            if stop_on_period and key in seen:
                m = seen[key]
                period = {"m": m, "k": step.n - m}
                termination = "period"
                break
            if len(steps) == limit:
                break
            seen[key] = step.n
            steps.append(step)
        return ExpansionReport(source.ring, alg.describe(), "surd", source.to_json(), steps,
                               termination, period, radius)
    if isinstance(source, RationalBox) and source.is_point:
        fe = point_in_field(alg.ring, source.re_lo, source.im_lo)
        if fe is not None:
            ctx = auxiliary_context(alg.ring)
            start = SurdElement(ctx, fe, alg.ring.field(0))
            steps = list(iterate_surd(ctx, alg, limit, checks, start=start))
            done = "finite" if steps and steps[-1].last else "steps"
            src = {"value": [str(source.re_lo), str(source.im_lo)], "in_field": str(fe)}
            return ExpansionReport(alg.ring, alg.describe(), "field", src, steps, done, None, radius)
    if isinstance(source, RationalBox):
        steps = list(iterate_numeric(source, alg, limit, precision, cap, target))
        done = "error-target" if target is not None and len(steps) < limit else "steps"
        src = {"box": [str(source.re_lo), str(source.re_hi), str(source.im_lo), str(source.im_hi)],
               "precision": precision}
        return ExpansionReport(alg.ring, alg.describe(), "numeric", src, steps, done, None, radius)
    raise TypeError(f"cannot expand {type(source).__name__}")


def convergent(step: ExpansionStep) -> FieldElement:
    return step.qpair.p_cur / step.qpair.q_cur
