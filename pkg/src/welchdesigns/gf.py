"""GF(3^n) arithmetic for odd n: log/antilog tables, trace, square classes.

Elements carry a dual representation: a coefficient vector over GF(3)
(constant term first) and a discrete log with respect to a fixed primitive
root alpha.  Bulk work runs on integer element ids (the base-3 encoding of
the coefficient vector) against precomputed numpy tables; ``FieldElement``
wraps a single element for the object-level API.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

MIN_DEGREE = 3
MAX_DEGREE = 13  # tables stay desk-scale through 3^13


class SquareClass(Enum):
    SQUARE = 1
    NONSQUARE = -1
    ZERO = 0

    def __mul__(self, other):
        if not isinstance(other, SquareClass):
            return NotImplemented
        return SquareClass(self.value * other.value)


@dataclass(frozen=True)
class FieldElement:
    """A field element as (coefficient vector, discrete log); log is None for zero."""

    coeffs: tuple[int, ...]
    log: int | None

    @property
    def is_zero(self):
        return self.log is None


def _factorize(x):
    """Prime factors by trial division; inputs stay below 3^13."""
    out = {}
    d = 2
    while d * d <= x:
        while x % d == 0:
            out[d] = out.get(d, 0) + 1
            x //= d
        d += 1
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


def _poly_mulmod(a, b, f, n):
    """Product of length-n coefficient vectors modulo the monic degree-n poly f."""
    res = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    res[i + j] = (res[i + j] + ai * bj) % 3
    for deg in range(2 * n - 2, n - 1, -1):
        c = res[deg]
        if c:
            res[deg] = 0
            for j in range(n):
                res[deg - n + j] = (res[deg - n + j] - c * f[j]) % 3
    return res[:n]


def _poly_powmod(a, e, f, n):
    result = [1] + [0] * (n - 1)
    base = list(a)
    while e > 0:
        if e & 1:
            result = _poly_mulmod(result, base, f, n)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, f, n)
    return result


def _has_full_order(f, n):
    """True iff x has multiplicative order 3^n - 1 in GF(3)[x]/(f)."""
    q1 = 3**n - 1
    x = [0, 1] + [0] * (n - 2)
    one = [1] + [0] * (n - 1)
    if _poly_powmod(x, q1, f, n) != one:
        return False
    return all(_poly_powmod(x, q1 // p, f, n) != one for p in _factorize(q1))


def find_primitive_polynomials(n, count=1):
    """First `count` primitive polynomials of degree n over GF(3).

    Ordered lexicographically by coefficient vector, constant term first;
    returned as (n+1)-tuples including the leading 1.
    """
    found = []
    for tup in itertools.product(range(3), repeat=n):
        f = list(tup) + [1]
        if _has_full_order(f, n):
            found.append(tuple(f))
            if len(found) == count:
                return found
    raise RuntimeError(f"fewer than {count} primitive polynomials of degree {n}")


class FieldParams:
    """Immutable GF(3^n) context: parameters plus lookup tables.

    Attributes
    ----------
    n, m, q : extension degree (n = 2m+1) and field size q = 3^n
    d       : decimation 2*3^m + 1
    d0      : 3 - 2*3^(m+1) reduced mod q-1; satisfies d*d0 = -1 (mod q-1)
    prim_poly : chosen primitive polynomial, constant term first

    Tables, all indexed by element id (base-3 encoding of the coefficient
    vector, constant term least significant):
      antilog[e]   id of alpha^e                    (q-1,) int64
      logtab[id]   discrete log, -1 for zero        (q,)   int64
      digits[id]   coefficient vector               (q, n) int8
      neg_id[id]   id of -x
      inv_id[id]   id of 1/x (entry 0 is unused)
      trace_id[id] trace into {0,1,2}               (q,)   int8
    """

    def __init__(self, n, poly_index=0):
        if n % 2 == 0:
            raise ValueError(f"extension degree must be odd, got {n}")
        if not MIN_DEGREE <= n <= MAX_DEGREE:
            raise ValueError(f"extension degree must be in [{MIN_DEGREE}, {MAX_DEGREE}], got {n}")
        self.n = n
        self.m = (n - 1) // 2
        self.q = 3**n
        self.d = 2 * 3**self.m + 1
        self.d0 = (3 - 2 * 3 ** (self.m + 1)) % (self.q - 1)
        if math.gcd(self.d, self.q - 1) != 1:
            raise AssertionError("decimation is not invertible mod q-1")
        assert (self.d * self.d0) % (self.q - 1) == self.q - 2  # d*d0 = -1
        self.prim_poly = find_primitive_polynomials(n, poly_index + 1)[poly_index]
        self.poly_index = poly_index
        self._build_tables()

    def _build_tables(self):
        n, q = self.n, self.q
        f = self.prim_poly
        p3 = [3**i for i in range(n)]
        antilog = np.zeros(q - 1, dtype=np.int64)
        logtab = np.full(q, -1, dtype=np.int64)
        c = [1] + [0] * (n - 1)
        for e in range(q - 1):
            eid = sum(ci * pi for ci, pi in zip(c, p3))
            antilog[e] = eid
            logtab[eid] = e
            top = c[n - 1]
            c = [0] + c[: n - 1]
            if top:
                for j in range(n):
                    c[j] = (c[j] - top * f[j]) % 3
        # the q-1 powers of alpha must exhaust the nonzero elements; this is
        # also a direct proof that prim_poly is irreducible
        if logtab[0] != -1 or (logtab[1:] < 0).any():
            raise AssertionError("alpha powers do not enumerate the field; bad polynomial")
        self.antilog = antilog
        self.logtab = logtab

        digits = np.zeros((q, n), dtype=np.int8)
        tmp = np.arange(q)
        for t in range(n):
            digits[:, t] = tmp % 3
            tmp //= 3
        self.digits = digits
        self._p3 = np.array(p3, dtype=np.int64)
        self.neg_id = ((3 - digits) % 3) @ self._p3
        inv_id = np.zeros(q, dtype=np.int64)
        inv_id[antilog] = antilog[(-np.arange(q - 1)) % (q - 1)]
        self.inv_id = inv_id

        # trace is GF(3)-linear, so tabulate it from the traces of the basis
        # powers alpha^j, each computed as a full conjugate power sum
        basis_tr = []
        for j in range(n):
            acc = np.zeros(n, dtype=np.int64)
            for i in range(n):
                acc = (acc + digits[antilog[(j * 3**i) % (q - 1)]]) % 3
            if acc[1:].any():
                raise AssertionError("trace left the prime subfield")
            basis_tr.append(int(acc[0]))
        self.trace_id = ((digits @ np.array(basis_tr, dtype=np.int64)) % 3).astype(np.int8)

        for arr in (self.antilog, self.logtab, self.digits, self.neg_id, self.inv_id, self.trace_id):
            arr.setflags(write=False)

    # -- id-level helpers ------------------------------------------------

    def ids_add(self, a, b):
        """Elementwise sum of element ids (arrays or scalars)."""
        return ((self.digits[a] + self.digits[b]) % 3) @ self._p3

    def ids_mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = self.antilog[(self.logtab[a[nz]] + self.logtab[b[nz]]) % (self.q - 1)]
        return out

    def power_map(self, e):
        """Table id -> id of x^e (zero maps to zero; e taken mod q-1)."""
        out = np.zeros(self.q, dtype=np.int64)
        out[self.antilog] = self.antilog[(np.arange(self.q - 1) * e) % (self.q - 1)]
        return out

    # -- element-level API -----------------------------------------------

    def from_id(self, eid):
        eid = int(eid)
        coeffs = tuple(int(v) for v in self.digits[eid])
        lg = int(self.logtab[eid])
        return FieldElement(coeffs, None if lg < 0 else lg)

    def from_log(self, e):
        return self.from_id(self.antilog[e % (self.q - 1)])

    def from_coeffs(self, coeffs):
        coeffs = [c % 3 for c in coeffs]
        if len(coeffs) != self.n:
            raise ValueError(f"need {self.n} coefficients")
        return self.from_id(sum(c * 3**i for i, c in enumerate(coeffs)))

    def to_id(self, x: FieldElement):
        return sum(c * 3**i for i, c in enumerate(x.coeffs))

    def zero(self):
        return FieldElement((0,) * self.n, None)

    def one(self):
        return self.from_log(0)

    def alpha(self):
        return self.from_log(1)

    def add(self, x, y):
        return self.from_id(self.ids_add(self.to_id(x), self.to_id(y)))

    def neg(self, x):
        return self.from_id(self.neg_id[self.to_id(x)])

    def mul(self, x, y):
        if x.log is None or y.log is None:
            return self.zero()
        return self.from_log(x.log + y.log)

    def inv(self, x):
        if x.log is None:
            raise ZeroDivisionError("zero has no inverse")
        return self.from_log(-x.log)

    def pow(self, x, e):
        if x.log is None:
            if e == 0:
                return self.one()
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return self.zero()
        return self.from_log(x.log * e)

    def __repr__(self):
        return f"FieldParams(n={self.n}, q={self.q}, prim_poly={self.prim_poly})"


def build_field(n, poly_index=0) -> FieldParams:
    """Build GF(3^n) (odd n, 3 <= n <= 13) with log/antilog tables materialized.

    The primitive polynomial is the (poly_index+1)-th in lexicographic order
    of the coefficient vector, constant term first; index 0, the default,
    gives deterministic, reproducible builds.
    """
    return FieldParams(n, poly_index)


def trace(x: FieldElement, fp: FieldParams) -> int:
    """Trace into GF(3): sum of the conjugates x^(3^i), i = 0..n-1."""
    return int(fp.trace_id[fp.to_id(x)])


def square_class(x: FieldElement) -> SquareClass:
    """Square / nonsquare by discrete-log parity; zero is its own class."""
    if x.log is None:
        return SquareClass.ZERO
    return SquareClass.SQUARE if x.log % 2 == 0 else SquareClass.NONSQUARE


def coordinate_points(fp: FieldParams) -> list[FieldElement]:
    """The ordered list (alpha^(2i)) for i = 0..(q-3)/2.

    This fixed ordering defines coordinate position i for every code and
    design built downstream.
    """
    return [fp.from_log(2 * i) for i in range((fp.q - 1) // 2)]
