"""Dense linear solves over a clifpauli scalar field.

Exact fields clear denominators and run fraction-free (Bareiss) elimination
on integers, or on Gaussian integers stored as separate real and imaginary
rows, pivoting on the first nonzero entry of each column.  Only the final
back substitution touches rationals.  The float field uses ordinary
elimination with partial pivoting.
"""

from __future__ import annotations

from typing import List, Sequence

from gmpy2 import lcm, mpq

from .errors import NotInvertible
from .fields import ComplexExact, Field, RealExact, _gr


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence, field: Field) -> List:
    """Solve ``matrix @ x = rhs`` for a square nonsingular matrix.

    Raises :class:`NotInvertible` when no usable pivot exists (exactly zero
    for exact fields, modulus at or below the tolerance for floats).
    """
    if isinstance(field, RealExact):
        den = 1
        for row in list(matrix) + [rhs]:
            for x in row:
                if x:
                    den = lcm(den, x.denominator)

        def lift(x):
            return x.numerator * (den // x.denominator)

        rows = [[lift(x) for x in row] + [lift(rhs[i])] for i, row in enumerate(matrix)]
        return solve_integer(rows)
    if isinstance(field, ComplexExact):
        den = 1
        for row in list(matrix) + [rhs]:
            for x in row:
                if x:
                    den = lcm(lcm(den, x.re.denominator), x.im.denominator)

        def glift(x):
            return x.numerator * (den // x.denominator)

        re_rows = [[glift(x.re) for x in row] + [glift(rhs[i].re)] for i, row in enumerate(matrix)]
        im_rows = [[glift(x.im) for x in row] + [glift(rhs[i].im)] for i, row in enumerate(matrix)]
        return solve_gaussian_integer(re_rows, im_rows)
    return _solve_float(matrix, rhs, field)


def solve_integer(rows: List[List]) -> List:
    """Solve an augmented integer system ``[A | b]`` (modified in place) over Q."""
    size = len(rows)
    prev = 1
    for k in range(size):
        piv = next((r for r in range(k, size) if rows[r][k]), None)
        if piv is None:
            raise NotInvertible(f"singular system: no pivot in column {k}")
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
        rk = rows[k]
        a = rk[k]
        cols = range(k + 1, size + 1)
        for i in range(k + 1, size):
            ri = rows[i]
            b = ri[k]
            if b:
                for j in cols:
                    ri[j] = (ri[j] * a - b * rk[j]) // prev
            else:
                for j in cols:
                    ri[j] = (ri[j] * a) // prev
            ri[k] = 0
        prev = a
    x = [mpq(0)] * size
    for r in range(size - 1, -1, -1):
        row = rows[r]
        acc = mpq(row[size])
        for c in range(r + 1, size):
            if row[c] and x[c]:
                acc -= row[c] * x[c]
        x[r] = acc / row[r]
    return x


def solve_gaussian_integer(R: List[List], I: List[List]) -> List:
    """Solve ``[A | b]`` with Gaussian-integer entries ``R + i I`` over Q(i)."""
    size = len(R)
    pr, pi = 1, 0
    for k in range(size):
        piv = next((r for r in range(k, size) if R[r][k] or I[r][k]), None)
        if piv is None:
            raise NotInvertible(f"singular system: no pivot in column {k}")
        if piv != k:
            R[k], R[piv] = R[piv], R[k]
            I[k], I[piv] = I[piv], I[k]
        Rk, Ik = R[k], I[k]
        ar, ai = Rk[k], Ik[k]
        nrm = pr * pr + pi * pi
        cols = range(k + 1, size + 1)
        for i in range(k + 1, size):
            Ri, Ii = R[i], I[i]
            br, bi = Ri[k], Ii[k]
            for j in cols:
                xr, xi = Ri[j], Ii[j]
                yr, yi = Rk[j], Ik[j]
                tr = xr * ar - xi * ai - (br * yr - bi * yi)
                ti = xr * ai + xi * ar - (br * yi + bi * yr)
                # exact division by the previous pivot
                Ri[j] = (tr * pr + ti * pi) // nrm
                Ii[j] = (ti * pr - tr * pi) // nrm
            Ri[k] = 0
            Ii[k] = 0
        pr, pi = ar, ai
    zero = mpq(0)
    xr = [zero] * size
    xi = [zero] * size
    for r in range(size - 1, -1, -1):
        Rr, Ir = R[r], I[r]
        sr, si = mpq(Rr[size]), mpq(Ir[size])
        for c in range(r + 1, size):
            ar, ai = Rr[c], Ir[c]
            if (ar or ai) and (xr[c] or xi[c]):
                sr -= ar * xr[c] - ai * xi[c]
                si -= ar * xi[c] + ai * xr[c]
        a, b = Rr[r], Ir[r]
        den = a * a + b * b
        xr[r] = (sr * a + si * b) / den
        xi[r] = (si * a - sr * b) / den
    return [_gr(xr[k], xi[k]) for k in range(size)]


def _solve_float(matrix, rhs, field: Field) -> List:
    size = len(matrix)
    rows = [[complex(x) for x in r] + [complex(rhs[i])] for i, r in enumerate(matrix)]
    for col in range(size):
        piv = max(range(col, size), key=lambda r: abs(rows[r][col]))
        if field.is_zero(rows[piv][col]):
            raise NotInvertible(f"pivot below tolerance in column {col}")
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
        prow = rows[col]
        inv = 1 / prow[col]
        tail = range(col + 1, size + 1)
        for r in range(col + 1, size):
            row = rows[r]
            f = row[col]
            if not f:
                continue
            f = f * inv
            for c in tail:
                row[c] -= f * prow[c]
            row[col] = 0j
    x = [0j] * size
    for r in range(size - 1, -1, -1):
        row = rows[r]
        acc = row[size]
        for c in range(r + 1, size):
            acc -= row[c] * x[c]
        x[r] = acc / row[r]
    return x
