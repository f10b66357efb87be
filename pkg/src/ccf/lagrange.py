"""Periodicity of expansions of quadratic surds, in both directions.

Forward: expand a surd exactly, carry the quadratic (A_n, B_n, C_n) that
z_{n+1} satisfies, and stop at the first repeated z_n.  Backward: turn a
preperiod and a cycle of quotients into the quadratic of the number they
expand.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .algorithms import ForcedStream
from .cf_core import (
    DEFAULT_STEPS,
    ExpansionReport,
    ExpansionStep,
    QPairState,
    ceil_str,
    error_constant,
    iterate_surd,
    qpair_step,
    qpairs,
)
from .reals import ExactReal
from .rings import RingElement, RingSpec, ring_gcd
from .interval import Interval
from .exact_surd import START_BITS, ReducibleError, SurdContext


class NoPeriodFound(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadraticTriple:
    A: RingElement
    B: RingElement
    C: RingElement

    def discriminant(self) -> RingElement:
        return self.B * self.B - 4 * self.A * self.C

    def to_json(self) -> list[str]:
        return [str(self.A), str(self.B), str(self.C)]


def triple_for(ctx: SurdContext, qp: QPairState) -> QuadraticTriple:
    a, b, c = ctx.a, ctx.b, ctx.c
    p, p1, q, q1 = qp.p_cur, qp.p_prev, qp.q_cur, qp.q_prev
    A = a * p * p + b * p * q + c * q * q
    B = 2 * a * p * p1 + b * (p * q1 + q * p1) + 2 * c * q * q1
    C = a * p1 * p1 + b * p1 * q1 + c * q1 * q1
    return QuadraticTriple(A, B, C)


def a_bound_constants(ctx: SurdContext, r: ExactReal) -> tuple[Fraction, Fraction, Fraction] | None:
    """Upper bounds for alpha^-1, |2az+b| and |a|; None unless r < 1."""
    if (r - 1).sign() >= 0:
        return None
    prec = START_BITS
    k_hi = error_constant(r).bounds(prec)[1]
    lin = (ctx.a.embed(prec) * ctx.root_box(prec) * 2 + ctx.b.embed(prec)).abs_sq()
    lin_hi = Interval.sqrt_of(lin.hi_q, prec).hi_q
    a_hi = Interval.sqrt_of(ctx.a.abs_sq(), prec).hi_q
    return k_hi, lin_hi, a_hi


def a_bound(ctx: SurdContext, qp: QPairState, r: ExactReal, consts=None) -> Fraction | None:
    """Upper bound alpha^-1 |2az+b| + alpha^-2 |a| |q_n|^-2 with alpha = 1/r - 1.

    Valid once |q_{n-1}| < |q_n|; None otherwise.
    """
    nq = qp.q_cur.abs_sq()
    consts = consts or a_bound_constants(ctx, r)
    if qp.q_prev.abs_sq() >= nq or consts is None:
        return None
    k_hi, lin_hi, a_hi = consts
    return k_hi * lin_hi + k_hi * k_hi * a_hi / nq


def exact_expand_with_triples(ctx: SurdContext, alg, max_steps: int,
                              checks: bool = True) -> Iterator[tuple[ExpansionStep, QuadraticTriple, dict]]:
    """Steps with their quadratic triple and the exact per-step verdicts."""
    disc = ctx.disc
    prev = None
    z = None
    for step in iterate_surd(ctx, alg, max_steps, checks):
        t = triple_for(ctx, step.qpair)
        if t.A.is_zero():
            raise ArithmeticError(f"A_{step.n} = 0: the quadratic has a root in K")
        nxt = (step.z - step.a.to_field()).inverse()
        verdict = {
            "root": (t.A.to_field() * nxt * nxt + nxt * t.B + t.C).is_zero(),
            "discriminant": t.discriminant() == disc,
            "c_is_prev_a": prev is None or t.C == prev.A,
        }
        yield step, t, verdict
        prev = t


@dataclass
class PeriodResult:
    m: int
    k: int
    preperiod: tuple[RingElement, ...]
    cycle: tuple[RingElement, ...]
    fingerprint: str
    hypothesis_verified: bool
    triples_max_abs_sq: int
    triples_bound: Fraction | None
    triples_ok: bool
    distinct_values: int
    report: ExpansionReport | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "preperiod": [str(a) for a in self.preperiod],
            "cycle": [str(a) for a in self.cycle],
            "fingerprint": self.fingerprint,
            "hypothesis_verified": self.hypothesis_verified,
            "triples_max_abs_sq": str(self.triples_max_abs_sq),
            "triples_bound": None if self.triples_bound is None else ceil_str(self.triples_bound),
            "triples_ok": self.triples_ok,
            "distinct_values": self.distinct_values,
        }


def detect_period(ctx: SurdContext, alg, max_steps: int = DEFAULT_STEPS, checks: bool = True) -> PeriodResult:
    """Smallest m, then smallest k, with z_{m+k} = z_m exactly.

    The cycle is replayed once from z_m before the result is returned.
    Raises NoPeriodFound when the budget runs out; that is never a claim of
    aperiodicity.
    """
    seen: dict = {}
    steps: list[ExpansionStep] = []
    r = getattr(alg, "radius", None)
    triples_ok = True
    max_a = 0
    bound = None
    consts = a_bound_constants(ctx, r) if r is not None else None
    for step, t, verdict in exact_expand_with_triples(ctx, alg, max_steps + 1, checks):
        key = step.z.key()
        if isinstance(alg, ForcedStream):
            key = (key, alg.phase(step.n))
        if key in seen:
            m = seen[key]
            k = step.n - m
            break
        if step.n == max_steps:
            raise NoPeriodFound(f"no period found within budget of {max_steps} steps")
        seen[key] = step.n
        steps.append(step)
        triples_ok = triples_ok and all(verdict.values())
        max_a = max(max_a, t.A.abs_sq())
        if r is not None and step.n >= 1:
            b = a_bound(ctx, step.qpair, r, consts)
            if b is not None:
                bound = b if bound is None else max(bound, b)
    else:
        raise NoPeriodFound(f"no period found within budget of {max_steps} steps")

    quotients = [s.a for s in steps]
    cycle = tuple(quotients[m:m + k])
    _replay(steps[m].z, alg, cycle, m)
    c_ok = all(s.condition_c for s in steps[1:])
    r_ok = r is not None and (r - 1).sign() < 0
    if bound is not None:
        triples_ok = triples_ok and max_a <= bound * bound
    report = ExpansionReport(ctx.ring, alg.describe(), "surd", ctx.to_json(), steps, "period",
                             {"m": m, "k": k}, r)
    return PeriodResult(m, k, tuple(quotients[:m]), cycle, _fingerprint(steps[m].z),
                        c_ok and r_ok, max_a, bound, triples_ok, len(seen), report)


def _fingerprint(z) -> str:
    return hashlib.sha256(repr(z.key()).encode()).hexdigest()[:16]


def _replay(zm, alg, cycle, m):
    z = zm
    for i, want in enumerate(cycle):
        got = alg.at(m + i) if isinstance(alg, ForcedStream) else alg.choose(z)[0]
        if got != want:
            raise AssertionError(f"cycle replay diverged at offset {i}")
        z = (z - got.to_field()).inverse()
    if z != zm:
        raise AssertionError("cycle replay did not return to z_m")


def cycle_quadratic(cycle) -> tuple[RingElement, RingElement, RingElement]:
    """Coefficients of q_{k-1} w^2 + (q_{k-2} - p_{k-1}) w - p_{k-2} for the purely periodic tail."""
    qp = qpairs(cycle)[-1]
    if qp.q_cur.is_zero():
        raise ArithmeticError("q_{k-1} = 0 for the cycle")
    return qp.q_cur, qp.q_prev - qp.p_cur, -qp.p_prev


def pull_back(coeffs, preperiod, ring: RingSpec):
    """Quadratic for z given the quadratic for z_m and z = M(z_m)."""
    A, B, C = coeffs
    if preperiod:
        qp = qpairs(preperiod)[-1]
        P1, P2, Q1, Q2 = qp.p_cur, qp.p_prev, qp.q_cur, qp.q_prev
    else:
        P1, P2, Q1, Q2 = ring.one, ring.zero, ring.zero, ring.one
    # z_m = (P2 - Q2 z) / (Q1 z - P1)
    a = A * Q2 * Q2 - B * Q2 * Q1 + C * Q1 * Q1
    b = -2 * A * P2 * Q2 + B * (P2 * Q1 + Q2 * P1) - 2 * C * Q1 * P1
    c = A * P2 * P2 - B * P2 * P1 + C * P1 * P1
    return a, b, c


def primitive(a: RingElement, b: RingElement, c: RingElement):
    """Divide out a common factor of the coefficients."""
    g = ring_gcd(ring_gcd(a, b), c)
    if g.is_zero() or g.abs_sq() == 1:
        return a, b, c
    return tuple((e / g).to_ring() for e in (a, b, c))


def _late_convergent(preperiod, cycle, min_q_sq: int = 1 << 60, max_digits: int = 4000):
    digits = list(preperiod) + list(cycle)
    qp = QPairState.start(digits[0])
    n = 1
    while qp.q_cur.abs_sq() < min_q_sq and n < max_digits:
        a = digits[n] if n < len(digits) else cycle[(n - len(preperiod)) % len(cycle)]
        qp = qpair_step(qp, a)
        n += 1
    return complex(qp.p_cur / qp.q_cur)


def surd_from_period(preperiod, cycle, ring: RingSpec) -> SurdContext:
    """Context for the number [preperiod; cycle, cycle, ...]."""
    preperiod, cycle = tuple(preperiod), tuple(cycle)
    if not cycle:
        raise ValueError("cycle must be nonempty")
    for i, a in enumerate(preperiod + cycle):
        if a.ring != ring:
            raise ValueError(f"quotient {i} is not in {ring.name}")
        if (i >= 1 or not preperiod) and a.abs_sq() <= 1:
            raise ValueError(f"quotient {i} has |a| <= 1")
    a, b, c = primitive(*pull_back(cycle_quadratic(cycle), preperiod, ring))
    if a.is_zero():
        raise ValueError("input stream corresponds to an element of K")
    try:
        SurdContext(ring, a, b, c, 1)  # rejects a root in K before any root is picked
        ctx = SurdContext.from_coeffs(ring, a, b, c, select=_late_convergent(preperiod, cycle))
    except ReducibleError as exc:
        raise ValueError("input stream corresponds to an element of K") from exc
    stream = ForcedStream(ring, preperiod, cycle)
    z = ctx.z
    for n in range(len(preperiod)):
        z = (z - stream.at(n).to_field()).inverse()
    zm = z
    for n in range(len(cycle)):
        z = (z - stream.at(len(preperiod) + n).to_field()).inverse()
    if z != zm:
        raise AssertionError("reconstructed surd does not reproduce the cycle")
    return ctx


def canonical(preperiod, cycle):
    """Primitive cycle and minimal preperiod (absorbing repeats into the cycle)."""
    pre, cyc = list(preperiod), list(cycle)
    k = len(cyc)
    for d in range(1, k + 1):
        if k % d == 0 and cyc == cyc[:d] * (k // d):
            cyc = cyc[:d]
            break
    while pre and pre[-1] == cyc[-1]:
        pre.pop()
        cyc = [cyc[-1]] + cyc[:-1]
    return tuple(pre), tuple(cyc)


def same_period(x, y) -> bool:
    """Equal as eventually periodic sequences."""
    return canonical(*x) == canonical(*y)


def round_trip(ctx: SurdContext, alg, max_steps: int = DEFAULT_STEPS, checks: bool = True) -> dict:
    """detect_period, rebuild with surd_from_period, compare contexts and periods."""
    res = detect_period(ctx, alg, max_steps, checks)
    back = surd_from_period(res.preperiod, res.cycle, ctx.ring)
    same_ctx = ctx.same_polynomial(back)
    if same_ctx:
        # the same number under a deterministic digit map expands identically
        again = res
    else:
        again = detect_period(back, alg, max_steps, checks=False)
    return {
        "period": res,
        "rebuilt": back,
        "same_context": same_ctx,
        "same_period": same_period((res.preperiod, res.cycle), (again.preperiod, again.cycle)),
        "reexpanded": not same_ctx,
    }


def finite_value_check(values) -> int:
    """Number of distinct exact values in a user-supplied sequence of surds."""
    return len({v.key() for v in values})
