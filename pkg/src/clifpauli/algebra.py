"""The Clifford algebra Cl(p,q) over a scalar field, in a fixed blade basis.

Basis blades ``e^A`` are labelled by bit masks: bit ``a-1`` is set iff the
generator index ``a`` belongs to the ordered multi-index ``A``.  The product
of two blades is ``e^A e^B = sign * e^(A xor B)``, with the sign coming from
the reordering parity and the metric on the shared indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Tuple, Union

import numpy as np
from gmpy2 import lcm, mpq

from .errors import FieldMismatch, NotInvertible
from .fields import ComplexExact, Field, GaussianRational, RealExact, _gr
from .linalg import solve_linear

MAX_DIMENSION = 12
_FULL_TABLE_LIMIT = 8
# vectorized int64 products: dimension range and minimum term-pair count
_VEC_MAX_N = 10
_VEC_MIN_PAIRS = 128

BladeLike = Union[int, Tuple[int, ...], List[int]]

_SIGN_TABLES: Dict["Signature", tuple] = {}


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError(f"p and q must be nonnegative, got ({self.p}, {self.q})")
        if not 1 <= self.p + self.q <= MAX_DIMENSION:
            raise ValueError(f"n = p + q must lie in [1, {MAX_DIMENSION}], got {self.p + self.q}")

    @property
    def n(self) -> int:
        return self.p + self.q

    def eta(self, a: int) -> int:
        """Metric entry for the 1-based generator index ``a``."""
        if not 1 <= a <= self.n:
            raise IndexError(f"generator index {a} out of range 1..{self.n}")
        return 1 if a <= self.p else -1

    def __str__(self) -> str:
        return f"Cl({self.p},{self.q})"


# --- multi-indices ---------------------------------------------------------

def popcount(mask: int) -> int:
    return bin(mask).count("1")


def indices(mask: int) -> Tuple[int, ...]:
    """Ascending 1-based indices of a blade mask."""
    out = []
    a = 1
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return tuple(out)


def multi_index(*idx: int) -> int:
    """Mask of the multi-index given by 1-based indices, e.g. ``multi_index(1, 3)``."""
    mask = 0
    for a in idx:
        if a < 1:
            raise ValueError(f"generator indices are 1-based, got {a}")
        bit = 1 << (a - 1)
        if mask & bit:
            raise ValueError(f"repeated index {a} in multi-index {idx}")
        mask |= bit
    return mask


def canonical_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    """Sort key: length first, then the ascending index tuple."""
    return popcount(mask), indices(mask)


def canonical_order(n: int) -> List[int]:
    return sorted(range(1 << n), key=canonical_key)


def blade_key(mask: int) -> str:
    return ",".join(str(a) for a in indices(mask))


def _reorder_parity(a: int, b: int) -> int:
    # pairs (i in a, j in b) with i > j
    t = 0
    a >>= 1
    while a:
        t += popcount(a & b)
        a >>= 1
    return t & 1


def blade_product(A: int, B: int, sig: Signature) -> Tuple[int, int]:
    """Return ``(sign, C)`` with ``e^A e^B = sign * e^C``."""
    full = (1 << sig.n) - 1
    if A & ~full or B & ~full:
        raise ValueError(f"multi-index does not fit n = {sig.n}")
    qmask = full ^ ((1 << sig.p) - 1)
    neg = _reorder_parity(A, B) ^ (popcount(A & B & qmask) & 1)
    return (-1 if neg else 1), A ^ B


def blade_square_sign(A: int, sig: Signature) -> int:
    """``(e^A)^2 = sign * e``; the same sign holds for any generator set."""
    return blade_product(A, A, sig)[0]


def commutation_sign(A: int, B: int) -> int:
    """``g^A g^B = sign * g^B g^A`` for blades of any valid generator set."""
    k, m, i = popcount(A), popcount(B), popcount(A & B)
    return -1 if (k * m - i) & 1 else 1


# --- the algebra -----------------------------------------------------------

class CliffordAlgebra:
    """Cl(p,q) over ``field`` with its blade basis and cached sign table."""

    def __init__(self, p: int, q: int, field: Field | None = None):
        self.sig = Signature(p, q)
        self.field = field if field is not None else RealExact()
        n = self.sig.n
        self.n = n
        self.size = 1 << n
        self.full = self.size - 1
        self.order = canonical_order(n)
        self._rank = {m: i for i, m in enumerate(self.order)}
        # sign tables depend only on the signature and are shared across fields
        self._rows, self._vec_box = _SIGN_TABLES.setdefault(self.sig, ({}, [None]))
        if n <= _FULL_TABLE_LIMIT:
            for a in range(self.size):
                self.sign_row(a)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CliffordAlgebra) and self.sig == other.sig
                and self.field == other.field)

    def __hash__(self) -> int:
        return hash((self.sig, self.field))

    def __repr__(self) -> str:
        return f"CliffordAlgebra({self.sig.p}, {self.sig.q}, {self.field.name})"

    @property
    def p(self) -> int:
        return self.sig.p

    @property
    def q(self) -> int:
        return self.sig.q

    def sign_row(self, a: int) -> Tuple[int, ...]:
        row = self._rows.get(a)
        if row is None:
            sig = self.sig
            row = tuple(blade_product(a, b, sig)[0] for b in range(self.size))
            self._rows[a] = row
        return row

    def vector_tables(self):
        """``(X, G)`` with ``X[c, a] = a ^ c`` and ``G[c, a]`` the sign of ``e^a e^(a^c)``."""
        if self._vec_box[0] is None:
            idx = np.arange(self.size)
            X = idx[None, :] ^ idx[:, None]
            G = np.empty((self.size, self.size), dtype=np.int64)
            for a in range(self.size):
                G[:, a] = np.asarray(self.sign_row(a), dtype=np.int64)[X[:, a]]
            self._vec_box[0] = (X, G)
        return self._vec_box[0]

    def rank(self, mask: int) -> int:
        """Position of a mask in canonical serialization order."""
        return self._rank[mask]

    def mask(self, A: BladeLike) -> int:
        if isinstance(A, int):
            if not 0 <= A <= self.full:
                raise ValueError(f"mask {A} does not fit n = {self.n}")
            return A
        idx = tuple(A)
        if list(idx) != sorted(set(idx)):
            raise ValueError(f"multi-index {idx} must be strictly ascending")
        m = multi_index(*idx)
        if m > self.full:
            raise ValueError(f"multi-index {idx} does not fit n = {self.n}")
        return m

    # constructors
    def mv(self, coeffs: Mapping[BladeLike, Any] | None = None) -> "Multivector":
        return Multivector(self, coeffs or {})

    def zero(self) -> "Multivector":
        return Multivector._raw(self, {})

    def scalar(self, x: Any) -> "Multivector":
        return Multivector(self, {0: x})

    def one(self) -> "Multivector":
        return Multivector._raw(self, {0: self.field.one})

    def blade(self, A: BladeLike, coeff: Any = 1) -> "Multivector":
        return Multivector(self, {self.mask(A): coeff})

    def e(self, a: int) -> "Multivector":
        """The generator ``e^a`` (1-based)."""
        self.sig.eta(a)
        return Multivector._raw(self, {1 << (a - 1): self.field.one})

    def volume(self) -> "Multivector":
        """The volume blade ``e^{1...n}``."""
        return Multivector._raw(self, {self.full: self.field.one})

    def generators(self) -> List["Multivector"]:
        return [self.e(a) for a in range(1, self.n + 1)]

    def volume_square_sign(self) -> int:
        return self.sign_row(self.full)[self.full]


def _check_same(u: "Multivector", v: "Multivector") -> None:
    if u.algebra is not v.algebra and u.algebra != v.algebra:
        raise FieldMismatch(f"incompatible algebras {u.algebra!r} and {v.algebra!r}")


class Multivector:
    """Immutable sparse element of a Clifford algebra.

    Coefficients live in a dict ``mask -> scalar``.  Exact fields never store
    a zero coefficient.
    """

    __slots__ = ("algebra", "_c", "_lift")

    def __init__(self, algebra: CliffordAlgebra, coeffs: Mapping[BladeLike, Any]):
        field = algebra.field
        c = {}
        for key, value in coeffs.items():
            m = algebra.mask(key)
            x = field.coerce(value)
            if m in c:
                x = c[m] + x
            c[m] = x
        if field.exact:
            c = {m: x for m, x in c.items() if x}
        self.algebra = algebra
        self._c = c
        self._lift = None

    @classmethod
    def _raw(cls, algebra: CliffordAlgebra, coeffs: Dict[int, Any]) -> "Multivector":
        obj = object.__new__(cls)
        obj.algebra = algebra
        obj._c = coeffs
        obj._lift = None
        return obj

    # --- access ---
    @property
    def field(self) -> Field:
        return self.algebra.field

    def coeff(self, A: BladeLike):
        return self._c.get(self.algebra.mask(A), self.algebra.field.zero)

    def __getitem__(self, A: BladeLike):
        return self.coeff(A)

    @property
    def support(self) -> List[int]:
        rank = self.algebra.rank
        return sorted(self._c, key=rank)

    def items(self) -> Iterator[Tuple[int, Any]]:
        """(mask, coefficient) pairs in canonical blade order."""
        for m in self.support:
            yield m, self._c[m]

    def __len__(self) -> int:
        return len(self._c)

    def is_zero(self) -> bool:
        z = self.algebra.field.is_zero
        return all(z(x) for x in self._c.values())

    def __bool__(self) -> bool:
        return not self.is_zero()

    def max_norm(self) -> float:
        mod = self.algebra.field.modulus
        return max((mod(x) for x in self._c.values()), default=0.0)

    def grade(self, k: int) -> "Multivector":
        return grade_project(self, k)

    def first_coefficient(self):
        """First nonzero coefficient in canonical blade order, or None."""
        z = self.algebra.field.is_zero
        for _, x in self.items():
            if not z(x):
                return x
        return None

    # --- arithmetic ---
    def _as_mv(self, other) -> "Multivector | None":
        if isinstance(other, Multivector):
            _check_same(self, other)
            return other
        try:
            x = self.algebra.field.coerce(other)
        except (TypeError, ValueError):
            return None
        return Multivector._raw(self.algebra, {0: x} if x or not self.algebra.field.exact else {})

    def __add__(self, other):
        o = self._as_mv(other)
        if o is None:
            return NotImplemented
        return _linear(self, o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._as_mv(other)
        if o is None:
            return NotImplemented
        return _linear(self, o, -1)

    def __rsub__(self, other):
        o = self._as_mv(other)
        if o is None:
            return NotImplemented
        return _linear(o, self, -1)

    def __neg__(self):
        return Multivector._raw(self.algebra, {m: -x for m, x in self._c.items()})

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return mv_mul(self, other)
        try:
            s = self.algebra.field.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return mv_scale(self, s)

    def __rmul__(self, other):
        try:
            s = self.algebra.field.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return mv_scale(self, s)

    def __truediv__(self, other):
        field = self.algebra.field
        try:
            s = field.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return mv_scale(self, field.div(field.one, s))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            o = self._as_mv(other) if not isinstance(other, (list, tuple, dict)) else None
            if o is None:
                return NotImplemented
            other = o
        if self.algebra != other.algebra:
            return False
        if self.algebra.field.exact:
            return self._c == other._c
        z = 0j
        keys = self._c.keys() | other._c.keys()
        return all(self._c.get(k, z) == other._c.get(k, z) for k in keys)

    def __hash__(self) -> int:
        return hash((self.algebra, frozenset(self._c.items())))

    def close_to(self, other: "Multivector", tol: float | None = None) -> bool:
        """Max-norm comparison; ``tol`` defaults to the field tolerance."""
        if tol is None:
            tol = self.algebra.field.tolerance
        return (self - other).max_norm() <= tol

    def inverse(self) -> "Multivector":
        return mv_inverse(self)

    def __repr__(self) -> str:
        return f"Multivector({self.algebra.sig}, {str(self)})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        wide = self.algebra.n > 9
        parts = []
        for m, x in self.items():
            idx = indices(m)
            if not idx:
                label = ""
            elif wide:
                label = "e[" + ",".join(map(str, idx)) + "]"
            else:
                label = "e" + "".join(map(str, idx))
            if isinstance(x, complex):
                text = repr(x.real) if not x.imag else f"({x.real:.12g}{x.imag:+.12g}j)"
            else:
                text = str(x)
                if isinstance(x, GaussianRational) and x.re and x.im:
                    text = f"({text})"
            if not label:
                parts.append(text)
            elif text == "1":
                parts.append(label)
            elif text == "-1":
                parts.append("-" + label)
            else:
                parts.append(f"{text}*{label}")
        return " + ".join(parts).replace("+ -", "- ")


def _linear(u: Multivector, v: Multivector, sign: int) -> Multivector:
    _check_same(u, v)
    c = dict(u._c)
    for m, x in v._c.items():
        if m in c:
            c[m] = c[m] + x if sign > 0 else c[m] - x
        else:
            c[m] = x if sign > 0 else -x
    if u.algebra.field.exact:
        c = {m: x for m, x in c.items() if x}
    return Multivector._raw(u.algebra, c)


def mv_add(u: Multivector, v: Multivector) -> Multivector:
    return _linear(u, v, 1)


def mv_sub(u: Multivector, v: Multivector) -> Multivector:
    return _linear(u, v, -1)


def mv_scale(u: Multivector, s: Any) -> Multivector:
    field = u.algebra.field
    s = field.coerce(s)
    if field.exact and not s:
        return u.algebra.zero()
    c = {m: x * s for m, x in u._c.items()}
    if field.exact:
        c = {m: x for m, x in c.items() if x}
    return Multivector._raw(u.algebra, c)


def mv_sum(terms: Iterable[Multivector], algebra: CliffordAlgebra) -> Multivector:
    """Sum in iteration order (deterministic for floats)."""
    acc: Dict[int, Any] = {}
    for t in terms:
        if t.algebra != algebra:
            raise FieldMismatch(f"term from {t.algebra!r} in a sum over {algebra!r}")
        for m, x in t._c.items():
            if m in acc:
                acc[m] = acc[m] + x
            else:
                acc[m] = x
    if algebra.field.exact:
        acc = {m: x for m, x in acc.items() if x}
    return Multivector._raw(algebra, acc)


# --- the Clifford product kernels -----------------------------------------
# Exact coefficients are lifted to integers over one common denominator so the
# O(|U||V|) inner loop runs on integers instead of rationals.

def _lifted(u: Multivector):
    if u._lift is not None:
        return u._lift
    field = u.algebra.field
    if isinstance(field, RealExact):
        den = 1
        for x in u._c.values():
            den = lcm(den, x.denominator)
        items = [(m, x.numerator * (den // x.denominator)) for m, x in u._c.items()]
        lift = (items, den)
    elif isinstance(field, ComplexExact):
        den = 1
        for x in u._c.values():
            den = lcm(lcm(den, x.re.denominator), x.im.denominator)
        items = [(m, x.re.numerator * (den // x.re.denominator),
                  x.im.numerator * (den // x.im.denominator)) for m, x in u._c.items()]
        real = all(not it[2] for it in items)
        lift = (items, den, real)
    else:
        lift = list(u._c.items())
    u._lift = lift
    return lift


def _product_real(alg, ui, vi):
    acc = [0] * alg.size
    row_of = alg.sign_row
    for a, x in ui:
        row = row_of(a)
        for b, y in vi:
            if row[b] > 0:
                acc[a ^ b] += x * y
            else:
                acc[a ^ b] -= x * y
    return acc


def _product_complex(alg, ui, vi):
    acc_re = [0] * alg.size
    acc_im = [0] * alg.size
    row_of = alg.sign_row
    for a, xr, xi in ui:
        row = row_of(a)
        for b, yr, yi in vi:
            c = a ^ b
            re_ = xr * yr - xi * yi
            im = xr * yi + xi * yr
            if row[b] > 0:
                acc_re[c] += re_
                acc_im[c] += im
            else:
                acc_re[c] -= re_
                acc_im[c] -= im
    return acc_re, acc_im


def _product_float(alg, ui, vi):
    acc = [0j] * alg.size
    row_of = alg.sign_row
    for a, x in ui:
        row = row_of(a)
        for b, y in vi:
            acc[a ^ b] += row[b] * (x * y)
    return {c: z for c, z in enumerate(acc) if z}


def _bits(items, k: int) -> int:
    return max(abs(it[k]) for it in items).bit_length()


def _dense(alg, items, k: int):
    arr = np.zeros(alg.size, dtype=np.int64)
    arr[[it[0] for it in items]] = [it[k] for it in items]
    return arr


def _vectorizable(alg, ui, vi) -> bool:
    return alg.n <= _VEC_MAX_N and len(ui) * len(vi) >= _VEC_MIN_PAIRS


def _product_real_vec(alg, ui, vi):
    """int64 version of :func:`_product_real`; None when overflow is possible."""
    if _bits(ui, 1) + _bits(vi, 1) + alg.n > 62:
        return None
    X, G = alg.vector_tables()
    u, v = _dense(alg, ui, 1), _dense(alg, vi, 1)
    return (G * u[None, :] * v[X]).sum(axis=1).tolist()


def _product_complex_vec(alg, ui, vi):
    bu = max(_bits(ui, 1), _bits(ui, 2))
    bv = max(_bits(vi, 1), _bits(vi, 2))
    if bu + bv + alg.n + 1 > 62:
        return None
    X, G = alg.vector_tables()
    ur, ui_ = G * _dense(alg, ui, 1)[None, :], G * _dense(alg, ui, 2)[None, :]
    vr, vi_ = _dense(alg, vi, 1)[X], _dense(alg, vi, 2)[X]
    re_ = (ur * vr - ui_ * vi_).sum(axis=1).tolist()
    im = (ur * vi_ + ui_ * vr).sum(axis=1).tolist()
    return re_, im


def mv_mul(u: Multivector, v: Multivector) -> Multivector:
    """Clifford product, the bilinear extension of :func:`blade_product`."""
    _check_same(u, v)
    alg = u.algebra
    if not u._c or not v._c:
        return alg.zero()
    field = alg.field
    if isinstance(field, RealExact):
        ui, du = _lifted(u)
        vi, dv = _lifted(v)
        acc = _product_real_vec(alg, ui, vi) if _vectorizable(alg, ui, vi) else None
        if acc is None:
            acc = _product_real(alg, ui, vi)
        d = du * dv
        return Multivector._raw(alg, {c: mpq(x, d) for c, x in enumerate(acc) if x})
    if isinstance(field, ComplexExact):
        ui, du, ur = _lifted(u)
        vi, dv, vr = _lifted(v)
        d = du * dv
        zero = mpq(0)
        vec = _vectorizable(alg, ui, vi)
        if ur and vr:
            ui, vi = [(m, x) for m, x, _ in ui], [(m, y) for m, y, _ in vi]
            acc = _product_real_vec(alg, ui, vi) if vec else None
            if acc is None:
                acc = _product_real(alg, ui, vi)
            return Multivector._raw(alg, {c: _gr(mpq(x, d), zero) for c, x in enumerate(acc) if x})
        acc = _product_complex_vec(alg, ui, vi) if vec else None
        acc_re, acc_im = acc if acc is not None else _product_complex(alg, ui, vi)
        out = {}
        for c in range(alg.size):
            xr, xi = acc_re[c], acc_im[c]
            if xr or xi:
                out[c] = _gr(mpq(xr, d) if xr else zero, mpq(xi, d) if xi else zero)
        return Multivector._raw(alg, out)
    return Multivector._raw(alg, _product_float(alg, _lifted(u), _lifted(v)))


# --- projections -----------------------------------------------------------

def grade_project(u: Multivector, k: int) -> Multivector:
    if not 0 <= k <= u.algebra.n:
        raise ValueError(f"grade {k} outside 0..{u.algebra.n}")
    return Multivector._raw(u.algebra, {m: x for m, x in u._c.items() if popcount(m) == k})


def trace(u: Multivector):
    """Coefficient of the identity blade."""
    return u._c.get(0, u.algebra.field.zero)


def pi_project(u: Multivector):
    """Coefficient of the volume blade ``e^{1...n}``."""
    return u._c.get(u.algebra.full, u.algebra.field.zero)


def parity_split(u: Multivector) -> Tuple[Multivector, Multivector]:
    even = {m: x for m, x in u._c.items() if not popcount(m) & 1}
    odd = {m: x for m, x in u._c.items() if popcount(m) & 1}
    return Multivector._raw(u.algebra, even), Multivector._raw(u.algebra, odd)


# --- inverse and center ----------------------------------------------------

def left_regular_matrix(u: Multivector) -> List[List[Any]]:
    """Matrix of ``X -> U X``; column ``a`` holds the coefficients of ``U e^a``.

    Rows and columns are indexed by blade mask.
    """
    alg = u.algebra
    size = alg.size
    zero = alg.field.zero
    mat = [[zero] * size for _ in range(size)]
    for m, x in u._c.items():
        row = alg.sign_row(m)
        negx = -x
        for a in range(size):
            mat[m ^ a][a] = x if row[a] > 0 else negx
    return mat


def mv_inverse(u: Multivector) -> Multivector:
    """Two-sided inverse, solving the left-regular linear system ``U X = e``.

    Raises :class:`NotInvertible` when the system is singular or when the
    candidate fails the two-sided check.
    """
    alg = u.algebra
    field = alg.field
    if not u._c:
        raise NotInvertible("the zero multivector is not invertible")
    if len(u._c) == 1:
        # single blade: x e^A has inverse (sign / x) e^A
        (m, x), = u._c.items()
        if field.is_zero(x):
            raise NotInvertible("coefficient below tolerance")
        s = alg.sign_row(m)[m]
        xinv = field.div(field.one, x)
        return Multivector._raw(alg, {m: xinv if s > 0 else -xinv})
    rhs = [field.zero] * alg.size
    rhs[0] = field.one
    sol = solve_linear(left_regular_matrix(u), rhs, field)
    x = Multivector._raw(alg, {m: c for m, c in enumerate(sol) if c or not field.exact})
    one = alg.one()
    if field.exact:
        ok = mv_mul(u, x) == one and mv_mul(x, u) == one
    else:
        ok = mv_mul(u, x).close_to(one) and mv_mul(x, u).close_to(one)
    if not ok:
        raise NotInvertible("solution fails the two-sided inverse check")
    return x


def commutes(u: Multivector, v: Multivector) -> bool:
    return (mv_mul(u, v) - mv_mul(v, u)).is_zero()


def is_central(u: Multivector) -> bool:
    """True iff ``U`` commutes with every generator ``e^a``."""
    return all(commutes(u, e) for e in u.algebra.generators())


def center_support(algebra: CliffordAlgebra) -> Tuple[int, ...]:
    """Blade masks spanning the center: ``{e}`` for even n, ``{e, e^{1..n}}`` for odd n."""
    return (0,) if algebra.n % 2 == 0 else (0, algebra.full)
