"""The classical point-line design of the projective space over GF(3),
and the closed-form GF(p) rank of such designs, used as the reference side
of inequivalence certificates.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb

import numpy as np

from .design import IncidenceStructure, make_incidence_structure, p_rank, verify_t_design

MAX_PG_DIM = 8


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of PG(dim, 3): nonzero coordinate vector, first nonzero entry 1."""

    coords: tuple[int, ...]

    def __post_init__(self):
        nz = [c for c in self.coords if c]
        if not nz:
            raise ValueError("projective point needs a nonzero vector")
        if nz[0] != 1:
            raise ValueError("representative not normalized")

    @classmethod
    def normalize(cls, vector):
        vector = [v % 3 for v in vector]
        lead = next((v for v in vector if v), 0)
        if lead == 0:
            raise ValueError("projective point needs a nonzero vector")
        if lead == 2:
            vector = [(2 * v) % 3 for v in vector]  # 2 is its own inverse mod 3
        return cls(tuple(vector))


def projective_points(dim):
    """All normalized points of PG(dim, 3), lexicographic on coordinates."""
    n = dim + 1
    total = 3**n
    digits = np.zeros((total, n), dtype=np.int8)
    tmp = np.arange(total)
    for t in range(n):
        digits[:, n - 1 - t] = tmp % 3  # coords[0] is the most significant digit
        tmp //= 3
    nonzero = digits.any(axis=1)
    lead = digits[np.arange(total), np.argmax(digits != 0, axis=1)]
    pts = digits[nonzero & (lead == 1)]
    return pts


def pg_point_line_design(n_minus_1, p=3) -> IncidenceStructure:
    """Point-line design of PG(n-1, 3): v = (3^n - 1)/2 points, 4-point lines.

    Lines are generated from all point pairs {u, w} as {u, w, u+w, u+2w},
    deduplicated; the result is a 2-(v, 4, 1) design.
    """
    if p != 3:
        raise ValueError("only the GF(3) geometry is supported")
    if not 2 <= n_minus_1 <= MAX_PG_DIM:
        raise ValueError(f"projective dimension must be in [2, {MAX_PG_DIM}]")
    pts = projective_points(n_minus_1)
    npts, n = pts.shape
    weights = (3 ** np.arange(n - 1, -1, -1)).astype(np.int64)
    index_of = np.full(3**n, -1, dtype=np.int64)
    index_of[pts @ weights] = np.arange(npts)

    A, B = np.triu_indices(npts, 1)
    lines = np.zeros((len(A), 4), dtype=np.uint32)
    lines[:, 0] = A
    lines[:, 1] = B
    for col, coef in ((2, 1), (3, 2)):
        s = (pts[A] + coef * pts[B]) % 3
        lead = s[np.arange(len(A)), np.argmax(s != 0, axis=1)]
        s = np.where((lead == 2)[:, None], (2 * s) % 3, s)
        lines[:, col] = index_of[s @ weights]
    lines.sort(axis=1)
    lines = np.unique(lines, axis=0)
    counter = Counter({tuple(int(x) for x in row): 1 for row in lines})
    return make_incidence_structure(npts, 4, counter)


def ch_rank_formula(n, p) -> int:
    """Closed-form GF(p) rank of the point-line design of PG(n-1, p), p prime."""
    if n < 3:
        raise ValueError("n must be at least 3")
    return (p**n - 1) // (p - 1) - comb(n + p - 2, p - 1)


def inequivalence_certificate(D: IncidenceStructure, n, rank_d=None) -> dict:
    """Compare D against the point-line design on rank over GF(3).

    Differing ranks certify inequivalence (rank is an isomorphism invariant);
    equal ranks are reported as inconclusive, never as equivalence.
    """
    ref = pg_point_line_design(n - 1)
    if (D.v, D.k) != (ref.v, ref.k):
        raise ValueError(
            f"parameter mismatch: ({D.v},{D.k}) vs point-line ({ref.v},{ref.k})"
        )
    cert_d = verify_t_design(D, 2)
    cert_ref = verify_t_design(ref, 2)
    if not (cert_d.ok and cert_ref.ok and cert_d.lam == cert_ref.lam):
        raise ValueError("designs do not share (t, v, k, lambda)")
    if rank_d is None:
        rank_d = p_rank(D, 3)
    rank_ref = p_rank(ref, 3)
    formula = ch_rank_formula(n, 3)
    return {
        "v": D.v,
        "k": D.k,
        "lambda": cert_d.lam,
        "rank3_design": int(rank_d),
        "rank3_point_line": int(rank_ref),
        "rank3_point_line_formula": formula,
        "verdict": "inequivalent" if rank_d != rank_ref else "inconclusive",
    }
