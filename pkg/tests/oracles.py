"""Independent reference computations used by the tests.

Nothing here imports the package's arithmetic: values come from Decimal
at high precision or from brute force over small sets.
"""

from decimal import Decimal, getcontext
from fractions import Fraction

getcontext().prec = 80


def dec(q) -> Decimal:
    q = Fraction(q)
    return Decimal(q.numerator) / Decimal(q.denominator)


def dsqrt(q) -> Decimal:
    return dec(q).sqrt()


def im_unit(kind: str, param: int) -> Decimal:
    """S with theta = trace/2 + i S."""
    return dsqrt(param) if kind == "sqrt" else dsqrt(Fraction(param, 4))


def embed(kind: str, param: int, x, y) -> tuple[Decimal, Decimal]:
    """Complex coordinates of x + y theta."""
    trace = 0 if kind == "sqrt" else 1
    return dec(x) + dec(y) * trace / 2, dec(y) * im_unit(kind, param)


def nearest_brute(kind: str, param: int, re, im, radius: int = 4):
    """All (x, y) at minimal distance from re + im*i, scanning a window."""
    re, im = dec(re), dec(im)
    s = im_unit(kind, param)
    trace = 0 if kind == "sqrt" else 1
    y0 = int(im / s)
    best, out = None, []
    for y in range(y0 - radius, y0 + radius + 1):
        x0 = int(re - Decimal(y * trace) / 2)
        for x in range(x0 - radius, x0 + radius + 1):
            er, ei = embed(kind, param, x, y)
            d = (er - re) ** 2 + (ei - im) ** 2
            if best is None or d < best - Decimal(10) ** -60:
                best, out = d, [(x, y)]
            elif abs(d - best) <= Decimal(10) ** -60:
                out.append((x, y))
    return best, out


def sign_sqrt_sum(a, b, c) -> int:
    v = dsqrt(a) + dsqrt(b) - dsqrt(c)
    if abs(v) < Decimal(10) ** -60:
        return 0
    return 1 if v > 0 else -1
