"""Seeded corpus of Eisenstein quadratic surds and a runner over it."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .algorithms import nearest_integer
from .cf_core import DEFAULT_STEPS
from .growth import growth_check
from .lagrange import NoPeriodFound, round_trip
from .rings import EISENSTEIN, RingSpec
from .exact_surd import ReducibleError, SurdContext

CORPUS_SEED = 1
COEFF_BOUND = 20


def random_surds(count: int = 100, seed: int = CORPUS_SEED, bound: int = COEFF_BOUND,
                 ring: RingSpec = EISENSTEIN) -> list[SurdContext]:
    """Irreducible quadratics a z^2 + b z + c with coordinates in [-bound, bound]
    and a random choice of root."""
    rnd = random.Random(seed)
    out = []
    while len(out) < count:
        coeffs = [ring(rnd.randint(-bound, bound), rnd.randint(-bound, bound)) for _ in range(3)]
        branch = rnd.choice([1, -1])
        if coeffs[0].is_zero():
            continue
        try:
            out.append(SurdContext.from_coeffs(ring, *coeffs, select=branch))
        except (ReducibleError, ValueError):
            continue
    return out


def run_one(ctx: SurdContext, max_steps: int = DEFAULT_STEPS, checks: bool = True) -> dict:
    """Round trip one surd; with checks, also the per-step identities and growth audit."""
    alg = nearest_integer(ctx.ring)
    t0 = time.perf_counter()
    try:
        rt = round_trip(ctx, alg, max_steps, checks)
    except NoPeriodFound as exc:
        return {"input": ctx.to_json(), "ok": False, "termination": "budget", "error": str(exc),
                "seconds": time.perf_counter() - t0}
    res = rt["period"]
    rep = res.report
    out = {
        "input": ctx.to_json(),
        "termination": "period",
        "m": res.m,
        "k": res.k,
        "fingerprint": res.fingerprint,
        "same_context": rt["same_context"],
        "same_period": rt["same_period"],
        "distinct_ok": res.distinct_values <= res.m + res.k,
        "hypothesis_verified": res.hypothesis_verified,
    }
    if checks:
        g = growth_check(rep)
        out.update({
            "identities_ok": rep.identities_ok,
            "triples_ok": res.triples_ok,
            "condition_c_all": rep.condition_c_all,
            "z_gt_one_all": all(s.z_gt_one for s in rep.steps[1:]),
            "monotone": rep.monotone,
            "errors_ok": rep.errors_ok,
            "growth_ok": g.ratios_ok and g.telescoping_ok,
            "growth_bounds_ok": g.bounds_ok,
            "succession_ok": g.succession_ok,
            "succession_applied": sum(r.succession.rule != "none" for r in g.rows),
            "min_ratio_sq": None if g.min_ratio_sq is None else str(g.min_ratio_sq),
            "steps": len(rep.steps),
        })
    out["ok"] = all(v for key, v in out.items() if isinstance(v, bool))
    out["seconds"] = time.perf_counter() - t0
    return out


def _run_packed(args):
    return run_one(*args)


@dataclass
class CorpusResult:
    entries: list[dict]
    seconds: float
    checks: bool
    summary: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(e["ok"] for e in self.entries)

    def count(self, key: str) -> int:
        """Number of entries where ``key`` is not true."""
        return sum(1 for e in self.entries if not e.get(key, False))

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "count": len(self.entries),
                "summary": self.summary,
                "entries": [{k: v for k, v in e.items() if k != "seconds"} for e in self.entries]}


def run_corpus(contexts: list[SurdContext], max_steps: int = DEFAULT_STEPS, checks: bool = True,
               jobs: int = 1) -> CorpusResult:
    t0 = time.perf_counter()
    work = [(ctx, max_steps, checks) for ctx in contexts]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_run_packed, work))
    else:
        entries = [run_one(*w) for w in work]
    result = CorpusResult(entries, time.perf_counter() - t0, checks)
    keys = sorted({k for e in entries for k, v in e.items() if isinstance(v, bool)})
    result.summary = {"failures": {k: result.count(k) for k in keys},
                      "max_k": max((e.get("k", 0) for e in entries), default=0),
                      "max_m": max((e.get("m", 0) for e in entries), default=0)}
    return result
