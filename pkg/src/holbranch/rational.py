"""Exact rational linear algebra and Fourier-Motzkin feasibility.

Everything here works over :class:`fractions.Fraction`; there is no tolerance
anywhere.  The systems met in practice have at most a few dozen variables and
dimension at most 8, which is comfortably inside what plain elimination can do.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Vector = tuple[Fraction, ...]


def frac_vec(v) -> Vector:
    return tuple(Fraction(x) for x in v)


def as_int_vec(v) -> tuple[int, ...]:
    """Convert a rational vector to integers, raising if any entry is not integral."""
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"non-integral entry {x} in {tuple(map(str, v))}")
        out.append(x.numerator)
    return tuple(out)


def primitive(v) -> tuple[int, ...]:
    """Primitive integer vector on the ray R^{>0} v (zero stays zero)."""
    v = frac_vec(v)
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def fmt_frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(s)


def matvec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def transpose(m: Sequence[Sequence]) -> list[list]:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def solve(m: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One exact solution x of m x = b (free variables set to 0), or None."""
    if not m:
        return () if all(Fraction(x) == 0 for x in b) else None
    ncols = len(m[0])
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][-1]
    return tuple(x)


def _normalize_row(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple:
    den = lcm(*(x.denominator for x in coeffs), rhs.denominator)
    ints = [int(x * den) for x in coeffs] + [int(rhs * den)]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def fm_feasible(rows: Sequence[tuple[Sequence, object]], nvars: int) -> bool:
    """Decide whether {x : a.x <= b for (a, b) in rows} is non-empty.

    Plain Fourier-Motzkin elimination; rows are normalized to primitive integer
    form and deduplicated after each step to keep the system small.
    """
    work = {_normalize_row([Fraction(c) for c in a], Fraction(b)) for a, b in rows}
    for var in range(nvars):
        pos, neg, keep = [], [], set()
        for row in work:
            c = row[var]
            if c > 0:
                pos.append(row)
            elif c < 0:
                neg.append(row)
            else:
                keep.add(row)
        for p in pos:
            for n in neg:
                cp, cn = p[var], -n[var]
                comb = [cn * x + cp * y for x, y in zip(p, n)]
                keep.add(_normalize_row([Fraction(x) for x in comb[:-1]], Fraction(comb[-1])))
        # rows with all-zero coefficients are either trivially true or infeasible
        for row in list(keep):
            if not any(row[:-1]):
                if row[-1] < 0:
                    return False
                keep.discard(row)
        work = keep
    return all(row[-1] >= 0 for row in work)


def nonneg_solution_exists(m: Sequence[Sequence], b: Sequence) -> bool:
    """Is there x >= 0 with m x = b?  Exact.

    The equalities are eliminated by Gaussian reduction first; the remaining
    sign constraints on the pivot variables go through Fourier-Motzkin over the
    free variables.
    """
    if not m or not m[0]:
        return all(Fraction(x) == 0 for x in b)
    ncols = len(m[0])
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return False
    free = [c for c in range(ncols) if c not in pivots]
    rows: list[tuple[list[Fraction], Fraction]] = []
    for i, c in enumerate(pivots):
        # x_c = rhs - sum_f red[i][f] x_f >= 0   <=>   sum_f red[i][f] x_f <= rhs
        rows.append(([red[i][f] for f in free], red[i][-1]))
    for k in range(len(free)):
        e = [Fraction(0)] * len(free)
        e[k] = Fraction(-1)
        rows.append((e, Fraction(0)))
    if not free:
        return all(rhs >= 0 for _, rhs in rows)
    return fm_feasible(rows, len(free))
