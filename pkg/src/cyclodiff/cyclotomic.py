"""Exact arithmetic in Z[zeta_n] and rigorous complex enclosures.

Elements are integer vectors over the power basis 1, z, ..., z^(phi(n)-1)
reduced modulo the n-th cyclotomic polynomial, so equality is coefficient
comparison and zero-testing is exact.  Mixed-order expressions lift both
sides to the lcm of their orders; the strict dispatcher cyc_arith refuses
to do that silently.
"""

from __future__ import annotations

import functools
from math import gcd, lcm

import numpy as np
from mpmath import iv

from .config import current_limits
from .errors import BoundExceeded, NotAMultiple, NotCoprime, OrderMismatch
from .intpoly import IntPoly, cyclotomic_polynomial_unbounded, euler_phi


def cyclotomic_polynomial(n: int) -> IntPoly:
    """Phi_n, bound-checked."""
    limit = current_limits().cyclotomic_n_max
    if not 1 <= n <= limit:
        raise BoundExceeded(f"cyclotomic order {n} outside [1, {limit}]")
    return cyclotomic_polynomial_unbounded(n)


def reduction_rows(n: int) -> np.ndarray:
    """(n, phi(n)) int64 matrix whose k-th row is x^k mod Phi_n.

    Since x^n = 1 mod Phi_n, any exponent is reduced by indexing mod n.
    Row magnitudes stay small for the orders this library allows, which
    keeps downstream integer matrix products inside exact int64 range.
    Allowed up to reduction_n_max, above the public ring bound, because
    count-vector reductions meet class-sum orders as large as q - 1;
    large matrices sit in a short cache so a scan cannot pin them all.
    """
    limit = current_limits().reduction_n_max
    if not 1 <= n <= limit:
        raise BoundExceeded(f"reduction order {n} outside [1, {limit}]")
    return _rows_small(n) if n <= 256 else _rows_large(n)


def _build_rows(n: int) -> np.ndarray:
    phi_coeffs = cyclotomic_polynomial_unbounded(n).coeffs
    phi = len(phi_coeffs) - 1
    rows = np.zeros((n, phi), dtype=np.int64)
    head = -np.array(phi_coeffs[:phi], dtype=np.int64)
    for k in range(min(phi, n)):
        rows[k, k] = 1
    for k in range(phi, n):
        prev = rows[k - 1]
        rows[k, 1:] = prev[:-1]
        rows[k] += prev[-1] * head
    assert np.abs(rows).max(initial=1) < 2 ** 20, "reduction rows grew too large"
    return rows


_rows_small = functools.lru_cache(maxsize=256)(_build_rows)
_rows_large = functools.lru_cache(maxsize=4)(_build_rows)


def _rows_max(n: int) -> int:
    return int(np.abs(reduction_rows(n)).max(initial=1))


class CycInt:
    """An element of Z[zeta_n] in reduced power-basis form."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        limit = current_limits().cyclotomic_n_max
        if not 1 <= n <= limit:
            raise BoundExceeded(f"cyclotomic order {n} outside [1, {limit}]")
        cs = tuple(int(c) for c in coeffs)
        if len(cs) != euler_phi(n):
            raise ValueError(f"need {euler_phi(n)} coefficients for order {n}")
        self.n = n
        self.coeffs = cs

    @classmethod
    def zero(cls, n: int) -> "CycInt":
        return cls(n, (0,) * euler_phi(n))

    @classmethod
    def integer(cls, c: int, n: int = 1) -> "CycInt":
        v = [0] * euler_phi(n)
        v[0] = c
        return cls(n, v)

    @classmethod
    def root(cls, n: int, k: int = 1) -> "CycInt":
        """zeta_n^k."""
        rows = reduction_rows(n)
        return cls(n, rows[k % n].tolist())

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_integer(self):
        """The rational integer this element equals, or None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, int):
            return self.as_integer() == other
        if not isinstance(other, CycInt):
            return NotImplemented
        if self.n == other.n:
            return self.coeffs == other.coeffs
        a, b = _common(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __repr__(self):
        return f"CycInt(n={self.n}, coeffs={list(self.coeffs)})"

    # arithmetic; binary ops lift to the lcm order when the orders differ

    def __add__(self, other):
        other = _coerce(other, self.n)
        a, b = _common(self, other)
        return CycInt(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other, self.n))

    def __rsub__(self, other):
        return _coerce(other, self.n) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.n, tuple(c * other for c in self.coeffs))
        if not isinstance(other, CycInt):
            return NotImplemented
        a, b = _common(self, other)
        return _mul_reduced(a, b)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in Z[zeta_n]")
        result = CycInt.integer(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CycInt":
        return galois(self, -1)


def _coerce(x, n: int) -> CycInt:
    if isinstance(x, CycInt):
        return x
    if isinstance(x, int):
        return CycInt.integer(x, n)
    raise TypeError(f"cannot combine CycInt with {type(x).__name__}")


def _common(a: CycInt, b: CycInt) -> tuple[CycInt, CycInt]:
    if a.n == b.n:
        return a, b
    n = lcm(a.n, b.n)
    return cyc_lift(a, n), cyc_lift(b, n)


def _mul_reduced(a: CycInt, b: CycInt) -> CycInt:
    n = a.n
    phi = len(a.coeffs)
    rows = reduction_rows(n)
    amax = max((abs(c) for c in a.coeffs), default=0)
    bmax = max((abs(c) for c in b.coeffs), default=0)
    # int64 is exact while every intermediate stays below 2^62
    if amax and bmax and amax * bmax * phi * phi * (_rows_max(n) + 1) < 2 ** 62:
        full = np.convolve(np.array(a.coeffs, dtype=np.int64),
                           np.array(b.coeffs, dtype=np.int64))
        out = full[:phi].copy()
        if len(full) > phi:
            idx = np.arange(phi, len(full)) % n
            out += full[phi:] @ rows[idx]
        return CycInt(n, out.tolist())
    out = [0] * phi
    for i, ca in enumerate(a.coeffs):
        if not ca:
            continue
        for j, cb in enumerate(b.coeffs):
            if not cb:
                continue
            c = ca * cb
            for t, r in enumerate(rows[(i + j) % n]):
                if r:
                    out[t] += c * int(r)
    return CycInt(n, out)


def cyc_arith(op: str, a: CycInt, b) -> CycInt:
    """Strict dispatcher: operand orders must already agree.

    op is one of add, sub, mul, scalar_mul (b is an int for scalar_mul).
    """
    if op == "scalar_mul":
        if not isinstance(b, int):
            raise TypeError("scalar_mul takes an integer scalar")
        return a * b
    if not isinstance(b, CycInt):
        raise TypeError("cyc_arith operands must be CycInt")
    if a.n != b.n:
        raise OrderMismatch(f"orders {a.n} and {b.n} differ; lift first")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def cyc_lift(a: CycInt, n2: int) -> CycInt:
    """Image of a under zeta_{a.n} -> zeta_{n2}^(n2/a.n)."""
    if n2 % a.n != 0:
        raise NotAMultiple(f"{n2} is not a multiple of {a.n}")
    if n2 == a.n:
        return a
    step = n2 // a.n
    rows = reduction_rows(n2)
    out = [0] * euler_phi(n2)
    for i, c in enumerate(a.coeffs):
        if c:
            for t, r in enumerate(rows[(i * step) % n2]):
                if r:
                    out[t] += c * int(r)
    return CycInt(n2, out)


def galois(a: CycInt, k: int) -> CycInt:
    """The automorphism zeta -> zeta^k; k = -1 is complex conjugation."""
    n = a.n
    if gcd(k, n) != 1:
        raise NotCoprime(f"{k} is not coprime to {n}")
    rows = reduction_rows(n)
    out = [0] * len(a.coeffs)
    for i, c in enumerate(a.coeffs):
        if c:
            for t, r in enumerate(rows[(i * k) % n]):
                if r:
                    out[t] += c * int(r)
    return CycInt(n, out)


# -- rational multiples of cyclotomic integers ----------------------------------


class CycNum:
    """num/den with num a CycInt and den a positive integer."""

    __slots__ = ("num", "den")

    def __init__(self, num: CycInt, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = 0
        for c in num.coeffs:
            g = gcd(g, c)
        g = gcd(g, den)
        if g > 1:
            num = CycInt(num.n, tuple(c // g for c in num.coeffs))
            den //= g
        self.num = num
        self.den = den

    @classmethod
    def of(cls, x) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, CycInt):
            return cls(x)
        if isinstance(x, int):
            return cls(CycInt.integer(x))
        raise TypeError(f"cannot convert {type(x).__name__} to CycNum")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        try:
            other = CycNum.of(other)
        except TypeError:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("CycNum is unhashable; compare explicitly")

    def __repr__(self):
        return f"CycNum({self.num!r}, den={self.den})"

    def __add__(self, other):
        other = CycNum.of(other)
        return CycNum(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(-self.num, self.den)

    def __sub__(self, other):
        return self + (-CycNum.of(other))

    def __rsub__(self, other):
        return CycNum.of(other) - self

    def __mul__(self, other):
        other = CycNum.of(other)
        return CycNum(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def scaled_by(self, num: int, den: int = 1) -> "CycNum":
        if den < 0:
            num, den = -num, -den
        return CycNum(self.num * num, self.den * den)


# -- certified complex enclosures -----------------------------------------------


class ComplexInterval:
    """Rectangle [re] + i[im] with mpmath interval endpoints."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = iv.mpf(re)
        self.im = iv.mpf(im)

    def __add__(self, other):
        if not isinstance(other, ComplexInterval):
            other = ComplexInterval(other, 0)
        return ComplexInterval(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ComplexInterval):
            other = ComplexInterval(other, 0)
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if isinstance(other, ComplexInterval):
            return ComplexInterval(self.re * other.re - self.im * other.im,
                                   self.re * other.im + self.im * other.re)
        return ComplexInterval(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __neg__(self):
        return ComplexInterval(-self.re, -self.im)

    def __repr__(self):
        return f"ComplexInterval({self.re}, {self.im})"

    def abs_interval(self):
        # square via abs so an interval straddling zero cannot produce a
        # spurious negative lower bound under interval multiplication
        re, im = abs(self.re), abs(self.im)
        return iv.sqrt(re * re + im * im)

    def abs_upper(self) -> float:
        return float(self.abs_interval().b)

    def contains_zero(self) -> bool:
        return 0 in self.re and 0 in self.im

    def midpoint(self) -> complex:
        return complex(float(self.re.mid), float(self.im.mid))


class _ivprec:
    """Temporarily raise the interval context precision."""

    def __init__(self, precision: int):
        self.precision = precision

    def __enter__(self):
        self.saved = iv.prec
        iv.prec = max(self.precision, iv.prec)

    def __exit__(self, *exc):
        iv.prec = self.saved
        return False


def zeta_interval(n: int, k: int, precision: int = 128) -> ComplexInterval:
    """Enclosure of e^(2 pi i k / n)."""
    with _ivprec(precision):
        t = 2 * iv.pi * (k % n) / n
        return ComplexInterval(iv.cos(t), iv.sin(t))


def embed(a, precision: int = 128) -> ComplexInterval:
    """Rigorous enclosure of a CycInt or CycNum under zeta_n -> e^(2 pi i/n)."""
    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    if isinstance(a, CycNum):
        box = embed(a.num, precision)
        with _ivprec(precision):
            inv = 1 / iv.mpf(a.den)
            return ComplexInterval(box.re * inv, box.im * inv)
    with _ivprec(precision):
        total = ComplexInterval(iv.mpf(0), iv.mpf(0))
        for i, c in enumerate(a.coeffs):
            if c:
                z = zeta_interval(a.n, i, precision)
                total = total + z * c
        return total
