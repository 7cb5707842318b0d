"""Ternary linear codes from trace sequences: construction, duals, shortening,
exact weight distributions, closed-form predictions, and power-moment checks.

All counting is exact; moment identities and the shortening transfer use
arbitrary-precision integers and rationals because the intermediate terms
overflow 64 bits already at n = 7.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .gf import FieldParams
from .linalg import TernaryMatrix, gf3_nullspace, gf3_rank, packed_neg

MAX_EXHAUSTIVE_DIM = 16  # 3^16 messages is the largest walk we allow


@dataclass(frozen=True)
class LinearCode:
    length: int
    dimension: int
    gen: TernaryMatrix
    family: str  # welch | quadric | shortened | dual

    def __post_init__(self):
        if self.gen.shape != (self.dimension, self.length):
            raise ValueError("generator shape disagrees with declared parameters")


@dataclass(frozen=True)
class WeightDistribution:
    length: int
    dimension: int
    counts: dict  # weight -> exact codeword count

    def __post_init__(self):
        if self.counts.get(0) != 1:
            raise ValueError("A_0 must be 1")
        if sum(self.counts.values()) != 3**self.dimension:
            raise ValueError("counts must sum to 3^k")

    @property
    def min_distance(self):
        return min(w for w in self.counts if w > 0)

    def as_json_dict(self):
        return {
            "length": self.length,
            "dimension": self.dimension,
            "counts": {str(w): c for w, c in sorted(self.counts.items())},
        }


def _trace_sequence_code(fp: FieldParams, second_exponent, family):
    """Rows (trace(alpha^j * alpha^(2i)))_i and (trace(alpha^j * alpha^(e*i)))_i
    for j = 0..n-1, i running over the coordinate points alpha^(2i)."""
    n, q = fp.n, fp.q
    nu = (q - 1) // 2
    tracepow = np.asarray(fp.trace_id)[fp.antilog]  # trace of alpha^e
    i_arr = np.arange(nu, dtype=np.int64)
    G = np.zeros((2 * n, nu), dtype=np.int8)
    for j in range(n):
        G[j] = tracepow[(j + 2 * i_arr) % (q - 1)]
        G[n + j] = tracepow[(j + second_exponent * i_arr) % (q - 1)]
    if gf3_rank(G) != 2 * n:
        raise AssertionError("trace code generator is rank deficient; field construction bug")
    return LinearCode(nu, 2 * n, TernaryMatrix.from_digits(G), family)


def build_welch_code(fp: FieldParams) -> LinearCode:
    """The [(q-1)/2, 2n] code whose second row block uses the decimation d."""
    return _trace_sequence_code(fp, 2 * fp.d, "welch")


def build_quadric_code(fp: FieldParams) -> LinearCode:
    """The [(q-1)/2, 2n] code whose second row block uses exponent 4i."""
    return _trace_sequence_code(fp, 4, "quadric")


def dual(code: LinearCode) -> LinearCode:
    """Dual code: a basis of the null space of the generator."""
    B = gf3_nullspace(code.gen.to_digits())
    return LinearCode(code.length, code.length - code.dimension, TernaryMatrix.from_digits(B), "dual")


def _gray_reflected_walk(packed_rows, visit):
    """Drive `visit(plane1, plane2)` over all 3^k codewords.

    Loopless reflected mixed-radix traversal: consecutive messages differ by
    +-1 in a single digit, so each codeword is one packed row addition away
    from the previous one.  The zero codeword is visited first.
    """
    k = len(packed_rows)
    neg_rows = [packed_neg(r) for r in packed_rows]
    a = [0] * k
    focus = list(range(k + 1))
    o = [1] * k
    c1, c2 = 0, 0
    visit(c1, c2)
    while True:
        j = focus[0]
        focus[0] = 0
        if j == k:
            return
        oj = o[j]
        b1, b2 = packed_rows[j] if oj == 1 else neg_rows[j]
        t = (c1 | b2) ^ (c2 | b1)
        c1, c2 = (c2 | b2) ^ t, (c1 | b1) ^ t
        visit(c1, c2)
        aj = a[j] + oj
        a[j] = aj
        if aj == 0 or aj == 2:
            o[j] = -oj
            focus[j] = focus[j + 1]
            focus[j + 1] = j + 1


def iter_packed_codewords(code: LinearCode):
    """Yield (plane1, plane2) for every codeword, zero word first."""
    k = code.dimension
    if k > MAX_EXHAUSTIVE_DIM:
        raise ValueError(f"dimension {k} exceeds the exhaustive bound {MAX_EXHAUSTIVE_DIM}")
    rows = code.gen.packed_rows
    neg_rows = [packed_neg(r) for r in rows]
    a = [0] * k
    focus = list(range(k + 1))
    o = [1] * k
    c1, c2 = 0, 0
    yield c1, c2
    while True:
        j = focus[0]
        focus[0] = 0
        if j == k:
            return
        oj = o[j]
        b1, b2 = rows[j] if oj == 1 else neg_rows[j]
        t = (c1 | b2) ^ (c2 | b1)
        c1, c2 = (c2 | b2) ^ t, (c1 | b1) ^ t
        yield c1, c2
        aj = a[j] + oj
        a[j] = aj
        if aj == 0 or aj == 2:
            o[j] = -oj
            focus[j] = focus[j + 1]
            focus[j + 1] = j + 1


def _count_weights(packed_rows, prefix_offset=(0, 0)):
    """Weight counter over the subspace spanned by packed_rows, shifted by a
    fixed offset word.  Inlined walk: this loop is the enumeration kernel."""
    k = len(packed_rows)
    neg_rows = [packed_neg(r) for r in packed_rows]
    counts = Counter()
    a = [0] * k
    focus = list(range(k + 1))
    o = [1] * k
    c1, c2 = prefix_offset
    counts[(c1 | c2).bit_count()] += 1
    while True:
        j = focus[0]
        focus[0] = 0
        if j == k:
            return counts
        oj = o[j]
        b1, b2 = packed_rows[j] if oj == 1 else neg_rows[j]
        t = (c1 | b2) ^ (c2 | b1)
        c1, c2 = (c2 | b2) ^ t, (c1 | b1) ^ t
        counts[(c1 | c2).bit_count()] += 1
        aj = a[j] + oj
        a[j] = aj
        if aj == 0 or aj == 2:
            o[j] = -oj
            focus[j] = focus[j + 1]
            focus[j + 1] = j + 1


def _subtree_job(args):
    rows, offset = args
    return _count_weights(rows, offset)


def weight_distribution(code: LinearCode, threads=1) -> WeightDistribution:
    """Exact weight distribution by exhaustive 3^k traversal (k <= 16).

    With threads > 1 the message space is partitioned into subtrees by fixing
    leading digits; the merged result is identical for any thread count.
    """
    k = code.dimension
    if k > MAX_EXHAUSTIVE_DIM:
        raise ValueError(f"dimension {k} exceeds the exhaustive bound {MAX_EXHAUSTIVE_DIM}")
    rows = code.gen.packed_rows
    if threads <= 1 or k < 4:
        counts = _count_weights(rows)
    else:
        split = 1
        while 3**split < threads and split < k - 1:
            split += 1
        fixed, rest = rows[:split], rows[split:]
        jobs = []
        from .linalg import packed_add

        for digs in np.ndindex(*([3] * split)):
            offset = (0, 0)
            for dig, row in zip(digs, fixed):
                for _ in range(dig):
                    offset = packed_add(offset, row)
            jobs.append((rest, offset))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            counts = Counter()
            for part in pool.map(_subtree_job, jobs):
                counts.update(part)
    return WeightDistribution(code.length, k, dict(counts))


# -- closed-form predictions ----------------------------------------------


def predicted_weights_welch(m) -> WeightDistribution:
    """Three-weight distribution of the decimation code, n = 2m+1, m >= 2."""
    if m < 2:
        raise ValueError("m must be at least 2")
    n = 2 * m + 1
    w_mid = 3 ** (n - 1)
    gap = 3**m
    counts = {
        0: 1,
        w_mid - gap: 3**m * (1 + 3**m) * (3 ** (1 + 2 * m) - 1) // 2,
        w_mid: 2 * 3 ** (1 + 4 * m) + 9**m - 1,
        w_mid + gap: 3**m * (3**m - 1) * (3 ** (1 + 2 * m) - 1) // 2,
    }
    return WeightDistribution((3**n - 1) // 2, 2 * n, counts)


def predicted_a4_dual(m) -> int:
    """Number of weight-4 words in the dual code, n = 2m+1, m >= 2."""
    if m < 2:
        raise ValueError("m must be at least 2")
    num = 1 - 4 * 3 ** (2 * m) + 3 ** (1 + 4 * m)
    if num % 8:
        raise AssertionError("dual minimum-weight count formula is not integral")
    return num // 8


def predicted_weights_shortened(m, t) -> WeightDistribution:
    """Closed-form distribution of the code shortened on t in {1,2} positions."""
    if m < 2:
        raise ValueError("m must be at least 2")
    n = 2 * m + 1
    w_mid = 3 ** (n - 1)
    gap = 3**m
    if t == 1:
        counts = {
            0: 1,
            w_mid - gap: 3**m * (-1 + 3**m + 3 ** (3 * m) + 3 ** (1 + 2 * m)) // 2,
            w_mid: -1 - 3 ** (2 * m) + 2 * 3 ** (4 * m),
            w_mid + gap: 3**m * (1 + 3**m + 3 ** (3 * m) - 3 ** (1 + 2 * m)) // 2,
        }
    elif t == 2:
        counts = {
            0: 1,
            w_mid - gap: 3 ** (m - 1) * (-3 + 5 * 3**m + 5 * 3 ** (2 * m) + 3 ** (3 * m)) // 2,
            w_mid: (-3 - 5 * 3 ** (2 * m) + 2 * 3 ** (4 * m)) // 3,
            w_mid + gap: 3 ** (m - 1) * (3 + 5 * 3**m - 5 * 3 ** (2 * m) + 3 ** (3 * m)) // 2,
        }
    else:
        raise ValueError("t must be 1 or 2")
    return WeightDistribution((3**n - 1) // 2 - t, 2 * n - t, counts)


# -- power-moment consistency ----------------------------------------------


@dataclass(frozen=True)
class MomentReport:
    residuals: tuple
    ok: bool


def pless_consistency(primal_wd: WeightDistribution, dual_a) -> MomentReport:
    """Evaluate the first five power-moment identities over GF(3), exactly.

    dual_a supplies the dual counts A_1..A_4 (index 0 unused or A_0).
    Residual i is (observed i-th moment) - (identity right-hand side); all
    five must vanish for a consistent (code, dual) pair.
    """
    if isinstance(dual_a, dict):
        a1, a2, a3, a4 = (dual_a.get(i, 0) for i in (1, 2, 3, 4))
    else:
        seq = list(dual_a)
        if len(seq) == 4:
            a1, a2, a3, a4 = seq
        else:
            a1, a2, a3, a4 = seq[1:5]
    qf = 3
    v = primal_wd.length
    kk = primal_wd.dimension
    moments = [sum(a * i**s for i, a in primal_wd.counts.items()) for s in range(5)]
    rhs = [
        qf**kk,
        qf ** (kk - 1) * (qf * v - v - a1),
        qf ** (kk - 2) * ((qf - 1) * v * (qf * v - v + 1) - (2 * qf * v - qf - 2 * v + 2) * a1 + 2 * a2),
        qf ** (kk - 3)
        * (
            (qf - 1) * v * (qf**2 * v**2 - 2 * qf * v**2 + 3 * qf * v - qf + v**2 - 3 * v + 2)
            - (
                3 * qf**2 * v**2
                - 3 * qf**2 * v
                - 6 * qf * v**2
                + 12 * qf * v
                + qf**2
                - 6 * qf
                + 3 * v**2
                - 9 * v
                + 6
            )
            * a1
            + 6 * (qf * v - qf - v + 2) * a2
            - 6 * a3
        ),
        qf ** (kk - 4)
        * (
            (qf - 1)
            * v
            * (
                qf**3 * v**3
                - 3 * qf**2 * v**3
                + 6 * qf**2 * v**2
                - 4 * qf**2 * v
                + qf**2
                + 3 * qf * v**3
                - 12 * qf * v**2
                + 15 * qf * v
                - 6 * qf
                - v**3
                + 6 * v**2
                - 11 * v
                + 6
            )
            - (
                4 * qf**3 * v**3
                - 6 * qf**3 * v**2
                + 4 * qf**3 * v
                - qf**3
                - 12 * qf**2 * v**3
                + 36 * qf**2 * v**2
                - 38 * qf**2 * v
                + 14 * qf**2
                + 12 * qf * v**3
                - 54 * qf * v**2
                + 78 * qf * v
                - 36 * qf
                - 4 * v**3
                + 24 * v**2
                - 44 * v
                + 24
            )
            * a1
            + (
                12 * qf**2 * v**2
                - 24 * qf**2 * v
                + 14 * qf**2
                - 24 * qf * v**2
                + 84 * qf * v
                - 72 * qf
                + 12 * v**2
                - 60 * v
                + 72
            )
            * a2
            - (24 * qf * v - 36 * qf - 24 * v + 72) * a3
            + 24 * a4
        ),
    ]
    residuals = tuple(m - r for m, r in zip(moments, rhs))
    return MomentReport(residuals, all(res == 0 for res in residuals))


# -- shortening --------------------------------------------------------------


class DimensionShortfall(RuntimeError):
    """Shortened dimension came out below k - |T|."""


def shorten(code: LinearCode, T) -> LinearCode:
    """Shortened code: codewords vanishing on T, then punctured on T.

    The messages with zeros on T form the null space of the k x |T| column
    submatrix; raises DimensionShortfall if the result is not k - |T|
    dimensional, which cannot happen while |T| stays below the dual distance.
    """
    T = sorted(set(T))
    G = code.gen.to_digits()
    k, nu = G.shape
    if any(not 0 <= c < nu for c in T):
        raise ValueError("shortening positions out of range")
    if not T:
        return code
    M = gf3_nullspace(G[:, T].T)  # message-space basis with m @ G[:,T] = 0
    Gs = (M.astype(np.int64) @ G.astype(np.int64)) % 3
    keep = np.setdiff1d(np.arange(nu), T)
    Gs = Gs[:, keep].astype(np.int8)
    if gf3_rank(Gs) != k - len(T):
        raise DimensionShortfall(f"expected dimension {k - len(T)}, got {gf3_rank(Gs)}")
    return LinearCode(nu - len(T), k - len(T), TernaryMatrix.from_digits(Gs), "shortened")


def shortened_wd_transfer(wd: WeightDistribution, t) -> WeightDistribution:
    """Predict the shortened distribution from the full one, exactly.

    A_w(C_T) = [C(w,t) C(nu-t,w)] / [C(nu,t) C(nu-t,w-t)] * A_w(C); every
    transferred count is asserted integral.
    """
    if t == 0:
        return wd
    if t not in (1, 2):
        raise ValueError("t must be 0, 1 or 2")
    nu = wd.length
    out = {}
    for w, count in wd.counts.items():
        if w == 0:
            out[0] = 1
            continue
        val = Fraction(comb(w, t) * comb(nu - t, w), comb(nu, t) * comb(nu - t, w - t)) * count
        if val.denominator != 1:
            raise AssertionError(f"transfer of weight {w} is not integral: {val}")
        if val:
            out[w] = int(val)
    return WeightDistribution(nu - t, wd.dimension - t, out)
