"""Exact validation of parallelogram partitions.

Work happens in lattice coordinates (s, t) with z = s + t*theta, where the
parallelogram is the unit square, half-planes are rational, and squared
distances are the rational form ds^2 + trace*ds*dt + norm*dt^2.
"""

from __future__ import annotations

from fractions import Fraction

from .algorithms import CORNERS, DiskConstraint, HalfPlane, PartitionSpec, UnverifiableShape
from .reals import ExactReal

UNIT_SQUARE = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)),
               (Fraction(1), Fraction(1)), (Fraction(0), Fraction(1))]


def clip(poly, hp: HalfPlane):
    """Sutherland-Hodgman clip of a convex polygon by the closed half-plane."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp, fq = hp.value(*p), hp.value(*q)
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            lam = fp / (fp - fq)
            out.append((p[0] + lam * (q[0] - p[0]), p[1] + lam * (q[1] - p[1])))
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def area(poly) -> Fraction:
    if len(poly) < 3:
        return Fraction(0)
    acc = Fraction(0)
    for i in range(len(poly)):
        (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % len(poly)]
        acc += x1 * y2 - x2 * y1
    return abs(acc) / 2


def cell_polygon(cell) -> list:
    poly = list(UNIT_SQUARE)
    for c in cell.constraints:
        if isinstance(c, HalfPlane):
            poly = clip(poly, c)
    return poly


def quad_dist(ring, p, v) -> Fraction:
    ds, dt = p[0] - v[0], p[1] - v[1]
    return ds * ds + ring.trace * ds * dt + ring.norm * dt * dt


def _disk_bound(cell, ring, r_sq):
    """True if a disk constraint around the cell's corner already forces containment."""
    for c in cell.constraints:
        if isinstance(c, DiskConstraint) and (c.cs, c.ct) == cell.vertex:
            if c.radius_sq < r_sq or (c.radius_sq == r_sq and c.strict):
                return True
    return False


def validate_partition(spec: PartitionSpec) -> dict:
    """Check that the cells cover the parallelogram, overlap only on
    boundaries, and that each P_v lies in B(v, r).

    Returns a dict with ``ok``, ``reason``, the certified ``radius`` (ExactReal)
    and whether the bounding ball is ``closed``.
    """
    ring = spec.ring
    polys = [cell_polygon(c) for c in spec.cells]
    cell_info = []
    max_sq = Fraction(0)
    for cell, poly in zip(spec.cells, polys):
        v = tuple(Fraction(x) for x in cell.vertex)
        far = max((quad_dist(ring, p, v) for p in poly), default=Fraction(0))
        cell_info.append({"vertex": cell.vertex, "vertices": len(poly), "area": area(poly), "max_dist_sq": far})
        max_sq = max(max_sq, far)

    has_disks = any(isinstance(c, DiskConstraint) for cell in spec.cells for c in cell.constraints)
    out = {"ok": True, "reason": "", "cells": cell_info}
    if has_disks:
        raise UnverifiableShape("cover check supports half-plane cells only")
    if sum(ci["area"] for ci in cell_info) != 1:
        return _fail(out, f"cell areas sum to {sum(ci['area'] for ci in cell_info)}, not 1")
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            inter = polys[i]
            for c in spec.cells[j].constraints:
                inter = clip(inter, c)
            if area(inter) != 0:
                return _fail(out, f"cells {i} and {j} overlap with area {area(inter)}")
    if spec.radius is None:
        out["radius"] = ExactReal.sqrt(max_sq)
        out["closed"] = True
        return out
    r_sq = spec.radius * spec.radius
    for i, (cell, ci) in enumerate(zip(spec.cells, cell_info)):
        if ci["max_dist_sq"] < r_sq or _disk_bound(cell, ring, r_sq):
            continue
        verdict = "boundary" if ci["max_dist_sq"] == r_sq else "outside"
        return _fail(out, f"cell {i} (vertex {cell.vertex}) is not inside B(v, {spec.radius}): {verdict}")
    out["radius"] = ExactReal.rational(spec.radius)
    out["closed"] = False
    return out


def _fail(out, reason):
    out["ok"] = False
    out["reason"] = reason
    return out


def voronoi_partition(ring, radius=None) -> PartitionSpec:
    """Nearest-corner partition of the parallelogram (bisector half-planes)."""
    from .algorithms import Cell

    cells = []
    for v in CORNERS:
        cons = []
        for u in CORNERS:
            if u == v:
                continue
            # |p-v|^2 <= |p-u|^2 is linear in (s, t)
            a = _grad(ring, v, u)
            cons.append(HalfPlane(a[0], a[1], a[2]))
        cells.append(Cell(v, tuple(cons)))
    return PartitionSpec(ring, tuple(cells), None if radius is None else Fraction(radius))


def _grad(ring, v, u):
    # Q(p - v) - Q(p - u) <= 0 with Q(x, y) = x^2 + tr*x*y + n*y^2
    tr, n = ring.trace, ring.norm
    vs, vt = v
    us, ut = u
    alpha = -2 * vs + 2 * us - tr * vt + tr * ut
    beta = -2 * n * vt + 2 * n * ut - tr * vs + tr * us
    gamma = (us * us + tr * us * ut + n * ut * ut) - (vs * vs + tr * vs * vt + n * vt * vt)
    return Fraction(alpha), Fraction(beta), Fraction(gamma)
