"""Digit maps f: C -> Gamma with |z - f(z)| <= 1.

Two families are supported: the nearest-integer map of any of the six rings
(ties broken by a named rule) and parallelogram partition maps, where the
fundamental parallelogram {s + t*theta : 0 <= s, t < 1} is cut into cells
P_v, one per corner v, each contained in B(v, r).

Digits are chosen exactly for SurdElement inputs and certified for
ComplexBox inputs; an ambiguous box raises DigitUnresolved.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from pathlib import Path

from .reals import ExactReal
from .rings import (
    FieldElement,
    RingElement,
    RingSpec,
    covering_radius,
    get_ring,
    nearest_lattice_points,
)
from .exact_surd import SurdElement

EXACT_BOX_BITS = 128
CORNERS = ((0, 0), (1, 0), (0, 1), (1, 1))


class DigitUnresolved(ArithmeticError):
    """A box straddles a cell boundary at the working precision."""


class UnverifiableShape(ValueError):
    pass


# -- sign primitives shared by exact and certified inputs ----------------------

def re_form_sign(z, w: FieldElement, c) -> int | None:
    """Sign of Re(z * conj(w)) - c; None when a box cannot decide it."""
    c = Fraction(c)
    if isinstance(z, SurdElement):
        return (z * w.conj()).re_sign(c)
    prec = z.prec
    val = z.re.scale(w.re) + z.im * w.embed(prec).im
    return val.sign_vs(c)


def dist_sign(z, center: FieldElement, r2) -> int | None:
    """Sign of |z - center|^2 - r2."""
    if isinstance(z, SurdElement):
        return (z - center).abs_sq_sign(r2)
    return (z - center.embed(z.prec)).abs_sq().sign_vs(Fraction(r2))


def lattice_coordinate_forms(ring: RingSpec) -> tuple[FieldElement, FieldElement]:
    """w_s, w_t with s = Re(z conj(w_s)), t = Re(z conj(w_t)) for z = s + t*theta."""
    d = ring.im_sq
    w_t = FieldElement(ring, Fraction(-ring.trace, 2) / d, 1 / d)
    w_s = ring.field(1) - w_t * Fraction(ring.trace, 2)
    return w_s, w_t


# -- nearest integer -----------------------------------------------------------

def _tie_key(rule: str):
    if rule == "lexmin":
        return lambda e: (e.x, e.y)
    if rule == "lexmax":
        return lambda e: (-e.x, -e.y)
    raise ValueError(f"unknown tie rule {rule!r}")


def _nearest_exact(z: SurdElement, ring: RingSpec, rule: str) -> tuple[RingElement, bool]:
    cands = nearest_lattice_points(z.tight_box(), ring)
    if len(cands) > 1:
        cands = nearest_lattice_points(z.tight_box(EXACT_BOX_BITS), ring)
    if len(cands) == 1:
        return next(iter(cands)), False
    best: list[RingElement] = []
    for a in sorted(cands, key=_tie_key(rule)):
        if not best:
            best = [a]
            continue
        b = best[0]
        # |z-a|^2 - |z-b|^2 = |a|^2 - |b|^2 - 2 Re(z conj(a - b))
        s = -re_form_sign(z, (a - b).to_field(), Fraction(a.abs_sq() - b.abs_sq(), 2))
        if s < 0:
            best = [a]
        elif s == 0:
            best.append(a)
    return min(best, key=_tie_key(rule)), len(best) > 1


# -- partition cells -----------------------------------------------------------

@dataclass(frozen=True)
class HalfPlane:
    """alpha*s + beta*t <= gamma (or < when strict), in lattice coordinates."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    strict: bool = False

    def holds(self, z, ring: RingSpec) -> bool | None:
        w_s, w_t = lattice_coordinate_forms(ring)
        s = re_form_sign(z, w_s * self.alpha + w_t * self.beta, self.gamma)
        if s is None:
            return None
        return s < 0 or (s == 0 and not self.strict)

    def value(self, s: Fraction, t: Fraction) -> Fraction:
        return self.alpha * s + self.beta * t - self.gamma

    def to_json(self) -> dict:
        return {"type": "halfplane", "coeffs": [str(self.alpha), str(self.beta)],
                "bound": str(self.gamma), "strict": self.strict}


@dataclass(frozen=True)
class DiskConstraint:
    """|z - (cs + ct*theta)|^2 <= radius_sq (or < when strict)."""

    cs: Fraction
    ct: Fraction
    radius_sq: Fraction
    strict: bool = False

    def holds(self, z, ring: RingSpec) -> bool | None:
        s = dist_sign(z, FieldElement(ring, self.cs, self.ct), self.radius_sq)
        if s is None:
            return None
        return s < 0 or (s == 0 and not self.strict)

    def to_json(self) -> dict:
        return {"type": "disk", "center": [str(self.cs), str(self.ct)],
                "radius_sq": str(self.radius_sq), "strict": self.strict}


@dataclass(frozen=True)
class Cell:
    vertex: tuple[int, int]
    constraints: tuple = ()

    def to_json(self) -> dict:
        return {"vertex": f"{self.vertex[0]},{self.vertex[1]}",
                "constraints": [c.to_json() for c in self.constraints]}


def _parse_constraint(d: dict):
    kind = d.get("type")
    strict = bool(d.get("strict", False))
    if kind == "halfplane":
        alpha, beta = (Fraction(x) for x in d["coeffs"])
        return HalfPlane(alpha, beta, Fraction(d["bound"]), strict)
    if kind == "disk":
        cs, ct = (Fraction(x) for x in d["center"])
        return DiskConstraint(cs, ct, Fraction(d["radius_sq"]), strict)
    raise ValueError(f"constraint type must be 'halfplane' or 'disk', got {kind!r}")


@dataclass(frozen=True)
class PartitionSpec:
    """Cells P_v of the fundamental parallelogram, matched in order.

    ``radius`` is the declared bound r with every P_v inside B(v, r); when it
    is None the bound is the exact maximal corner distance (closed ball).
    """

    ring: RingSpec
    cells: tuple[Cell, ...]
    radius: Fraction | None = None

    def __post_init__(self):
        for c in self.cells:
            if c.vertex not in CORNERS:
                raise ValueError(f"cell vertex {c.vertex} is not a corner of the parallelogram")

    @classmethod
    def from_json(cls, data) -> "PartitionSpec":
        if isinstance(data, str) and data.lstrip()[:1] in ("{", "["):
            data = json.loads(data)
        elif isinstance(data, (str, Path)):
            data = json.loads(Path(data).read_text())
        if isinstance(data, list):
            data = {"cells": data}
        ring = get_ring(data.get("ring", "E"))
        cells = []
        for i, c in enumerate(data["cells"]):
            try:
                v = c["vertex"]
                vx, vy = (int(p) for p in (v.split(",") if isinstance(v, str) else v))
                cons = tuple(_parse_constraint(x) for x in c.get("constraints", []))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"cells[{i}]: {exc}") from exc
            cells.append(Cell((vx, vy), cons))
        radius = data.get("radius")
        return cls(ring, tuple(cells), None if radius is None else Fraction(radius))

    def to_json(self) -> dict:
        out = {"ring": self.ring.name, "cells": [c.to_json() for c in self.cells]}
        if self.radius is not None:
            out["radius"] = str(self.radius)
        return out

    def locate(self, z) -> tuple[RingElement, RingElement] | None:
        """(base a, corner v) with z - a in the parallelogram and in P_v."""
        ring = self.ring
        w_s, w_t = lattice_coordinate_forms(ring)
        ints = []
        for w in (w_s, w_t):
            n = _exact_floor(z, w)
            if n is None:
                return None
            ints.append(n)
        base = RingElement(ring, ints[0], ints[1])
        local = z - base.to_field() if isinstance(z, SurdElement) else z - base.embed(z.prec)
        for cell in self.cells:
            verdicts = [c.holds(local, ring) for c in cell.constraints]
            if any(v is None for v in verdicts):
                # undecidable here; only acceptable if a later decision cannot matter
                return None
            if all(verdicts):
                return base, RingElement(ring, *cell.vertex)
        raise ValueError(f"partition does not cover the parallelogram point {local!r}")


def _exact_floor(z, w: FieldElement) -> int | None:
    if isinstance(z, SurdElement):
        val = z * w.conj()
        guess = floor(val.tight_box().re.mid)
        while val.re_sign(guess) < 0:
            guess -= 1
        while val.re_sign(guess + 1) >= 0:
            guess += 1
        return guess
    prec = z.prec
    iv = z.re.scale(w.re) + z.im * w.embed(prec).im
    lo, hi = floor(iv.lo_q), floor(iv.hi_q)
    return lo if lo == hi else None


# -- the algorithm spec -----------------------------------------------------------

@dataclass(frozen=True)
class AlgorithmSpec:
    ring: RingSpec
    variant: str  # "nearest" | "partition"
    tie_rule: str = "lexmin"
    partition: PartitionSpec | None = None
    radius: ExactReal = field(default=None)
    radius_closed: bool = True

    @property
    def name(self) -> str:
        if self.variant == "nearest":
            return f"nearest[{self.tie_rule}]"
        return "partition"

    @property
    def radius_sq(self) -> ExactReal:
        return self.radius * self.radius

    def choose(self, z) -> tuple[RingElement, bool]:
        """Digit for z and whether an exact tie was broken by convention."""
        if self.variant == "nearest":
            if isinstance(z, SurdElement):
                return _nearest_exact(z, self.ring, self.tie_rule)
            cands = nearest_lattice_points(z, self.ring)
            if len(cands) != 1:
                raise DigitUnresolved(f"{len(cands)} candidate digits")
            return next(iter(cands)), False
        found = self.partition.locate(z)
        if found is None:
            raise DigitUnresolved("box meets a partition boundary")
        base, v = found
        return base + v, False

    def digit(self, z, n: int = 0) -> RingElement:
        return self.choose(z)[0]

    def cell_disk(self, a: RingElement):
        """A disk containing the cell C_f(a)."""
        from .geometry import Disk, ExactComplex

        return Disk(ExactComplex.from_field(a), self.radius_sq, self.radius_closed)

    def describe(self) -> dict:
        out = {"variant": self.variant, "ring": self.ring.name, "radius": str(self.radius),
               "radius_closed": self.radius_closed}
        if self.variant == "nearest":
            out["tie_rule"] = self.tie_rule
        else:
            out["partition"] = self.partition.to_json()
        return out


def nearest_integer(ring: RingSpec, tie_rule: str = "lexmin") -> AlgorithmSpec:
    _tie_key(tie_rule)
    return AlgorithmSpec(ring, "nearest", tie_rule, None, covering_radius(ring), True)


def partition_algorithm(spec: PartitionSpec, validate: bool = True) -> AlgorithmSpec:
    from .partition_check import validate_partition

    if validate:
        report = validate_partition(spec)
        if not report["ok"]:
            raise ValueError(f"invalid partition: {report['reason']}")
        radius, closed = report["radius"], report["closed"]
    elif spec.radius is not None:
        radius, closed = ExactReal.rational(spec.radius), False
    else:
        raise ValueError("unvalidated partition needs a declared radius")
    return AlgorithmSpec(spec.ring, "partition", "lexmin", spec, radius, closed)


def apply(alg: AlgorithmSpec, z) -> RingElement:
    """The digit f(z); raises DigitUnresolved for an undecidable box."""
    return alg.choose(z)[0]


@dataclass(frozen=True)
class ForcedStream:
    """Digits taken from an eventually periodic list instead of a digit map."""

    ring: RingSpec
    preperiod: tuple[RingElement, ...]
    cycle: tuple[RingElement, ...]
    variant: str = "stream"

    @property
    def name(self) -> str:
        return "stream"

    def at(self, n: int) -> RingElement:
        m = len(self.preperiod)
        if n < m:
            return self.preperiod[n]
        return self.cycle[(n - m) % len(self.cycle)]

    def phase(self, n: int) -> int:
        m = len(self.preperiod)
        return n if n < m else m + (n - m) % len(self.cycle)

    def describe(self) -> dict:
        return {"variant": "stream", "ring": self.ring.name,
                "preperiod": [str(a) for a in self.preperiod], "cycle": [str(a) for a in self.cycle]}
