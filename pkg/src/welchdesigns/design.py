"""Support designs from codewords: low-weight dual enumeration, t-design
certification, incidence matrices, GF(p) ranks, and automorphism checks.

Blocks are codeword supports with scalar multiples collapsed: the codeword
class of a support is {c, 2c}, and block multiplicity counts classes, not
codewords.  Multiplicity is always observed and reported, never assumed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb

import numpy as np

from .codes import MAX_EXHAUSTIVE_DIM, LinearCode, dual, iter_packed_codewords
from .linalg import TernaryMatrix, gf3_rank_stream

RANK_CHUNK = 8192
GRAM_CHUNK = 16384


@dataclass(frozen=True)
class IncidenceStructure:
    """Point set {0..v-1} plus uniform blocks, lexicographically sorted.

    blocks holds the distinct blocks (rows strictly ascending); multiplicity
    carries the class count per block, all ones for a simple structure.
    """

    v: int
    k: int
    blocks: np.ndarray
    multiplicity: np.ndarray
    simple: bool

    @property
    def b(self):
        """Number of blocks counted with multiplicity."""
        return int(self.multiplicity.sum())

    @property
    def multiplicity_histogram(self):
        return dict(Counter(self.multiplicity.tolist()))

    def __eq__(self, other):
        if not isinstance(other, IncidenceStructure):
            return NotImplemented
        return (
            self.v == other.v
            and self.k == other.k
            and np.array_equal(self.blocks, other.blocks)
            and np.array_equal(self.multiplicity, other.multiplicity)
        )


def make_incidence_structure(v, k, support_counter) -> IncidenceStructure:
    """Assemble a structure from a Counter mapping support tuple -> class count."""
    if not support_counter:
        return IncidenceStructure(v, k, np.zeros((0, k), dtype=np.uint32),
                                  np.zeros(0, dtype=np.int64), True)
    supports = sorted(support_counter)
    blocks = np.array(supports, dtype=np.uint32)
    mult = np.array([support_counter[s] for s in supports], dtype=np.int64)
    return IncidenceStructure(v, k, blocks, mult, bool((mult == 1).all()))


@dataclass(frozen=True)
class DesignCertificate:
    t: int
    v: int
    k: int
    lam: int
    b: int
    verified: bool = True

    def __post_init__(self):
        if self.b * comb(self.k, self.t) != self.lam * comb(self.v, self.t):
            raise AssertionError("block-count identity b*C(k,t) = lambda*C(v,t) violated")

    @property
    def ok(self):
        return self.verified

    def as_json_dict(self, rank3=None):
        out = {"t": self.t, "v": self.v, "k": self.k, "lambda": self.lam, "b": self.b}
        if rank3 is not None:
            out["rank3"] = rank3
        return out


@dataclass(frozen=True)
class DesignRefutation:
    t: int
    v: int
    k: int
    witness: tuple  # the t-subset with deviant coverage
    count: int
    expected: int

    @property
    def ok(self):
        return False


# -- low-weight dual codeword enumeration -----------------------------------


def enumerate_low_weight_dual_supports(code: LinearCode, w_max=4):
    """All dual codewords of weight <= w_max, one canonical word per scalar class.

    The generator columns act as syndrome vectors: weights 1 and 2 fall out
    of single-column collisions, weight 3 joins pair sums against single
    columns, and weight 4 joins pair sums against negated pair sums.  The
    canonical word has coefficient 1 at its smallest support index.

    Returns {w: list of (support tuple, coefficient tuple)} for 1 <= w <= w_max.
    """
    if not 1 <= w_max <= 4:
        raise ValueError("w_max must be between 1 and 4")
    cols = np.ascontiguousarray(code.gen.to_digits().T.astype(np.int64))
    nu, k = cols.shape
    p3k = 3 ** np.arange(k, dtype=np.int64)
    e1 = cols @ p3k
    ne1 = ((3 - cols) % 3) @ p3k
    out = {w: [] for w in range(1, w_max + 1)}

    for i in np.nonzero(e1 == 0)[0]:
        out[1].append(((int(i),), (1,)))
    if w_max == 1:
        return out

    order1 = np.argsort(e1, kind="stable")
    s1 = e1[order1]

    def single_matches(targets, min_excl):
        """Pairs (i, e) with e1[e] == targets[i] and e > min_excl[i]."""
        lo = np.searchsorted(s1, targets, "left")
        hi = np.searchsorted(s1, targets, "right")
        for i in np.nonzero(hi > lo)[0]:
            for j in range(lo[i], hi[i]):
                e = int(order1[j])
                if e > int(min_excl[i]):
                    yield int(i), e

    # weight 2: col_a + c2*col_b = 0 for a < b
    idx = np.arange(nu)
    for i, e in single_matches(ne1, idx):
        out[2].append(((i, e), (1, 1)))
    for i, e in single_matches(e1, idx):
        out[2].append(((i, e), (1, 2)))
    if w_max == 2:
        return out

    A, B = np.triu_indices(nu, 1)
    d11 = (cols[A] + cols[B]) % 3
    d12 = (cols[A] + 2 * cols[B]) % 3
    e11 = d11 @ p3k
    e12 = d12 @ p3k
    n11 = ((3 - d11) % 3) @ p3k
    n12 = ((3 - d12) % 3) @ p3k

    # weight 3: pair (a<b) with coeffs (1,c2) joined to a single column e > b
    for (tgt_c3_1, tgt_c3_2, c2) in ((n11, e11, 1), (n12, e12, 2)):
        for i, e in single_matches(tgt_c3_1, B):
            out[3].append(((int(A[i]), int(B[i]), e), (1, c2, 1)))
        for i, e in single_matches(tgt_c3_2, B):
            out[3].append(((int(A[i]), int(B[i]), e), (1, c2, 2)))
    if w_max == 3:
        return out

    # weight 4: left pair (a<b), coeffs (1,c2); right pair (c<d), all four
    # coefficient patterns, with b < c so every support is found exactly once
    right_syn = np.concatenate([e11, e12, n12, n11])
    right_pat = np.repeat(np.arange(4), len(A))
    pat_coeffs = ((1, 1), (1, 2), (2, 1), (2, 2))
    right_a = np.tile(A, 4)
    right_b = np.tile(B, 4)
    order = np.argsort(right_syn, kind="stable")
    rs = right_syn[order]
    ra = right_a[order]
    rb = right_b[order]
    rp = right_pat[order]
    for tgt, c2 in ((n11, 1), (n12, 2)):
        lo = np.searchsorted(rs, tgt, "left")
        hi = np.searchsorted(rs, tgt, "right")
        for i in np.nonzero(hi > lo)[0]:
            bi = int(B[i])
            for j in range(lo[i], hi[i]):
                if ra[j] > bi:
                    c3, c4 = pat_coeffs[rp[j]]
                    out[4].append(
                        ((int(A[i]), bi, int(ra[j]), int(rb[j])), (1, c2, c3, c4))
                    )
    return out


def brute_force_weight4_classes(code: LinearCode) -> int:
    """Count weight-4 dual codeword classes by scanning every 4-subset of
    columns against every normalized coefficient pattern.

    Quartic in the length; an independent slow-path anchor for the join
    enumerator, meant for lengths around 121.
    """
    cols = np.ascontiguousarray(code.gen.to_digits().T.astype(np.int64))
    nu, k = cols.shape
    p3k = 3 ** np.arange(k, dtype=np.int64)
    A, B = np.triu_indices(nu, 1)
    s11 = ((cols[A] + cols[B]) % 3) @ p3k
    s12 = ((cols[A] + 2 * cols[B]) % 3) @ p3k
    n11 = ((3 - ((cols[A] + cols[B]) % 3)) % 3) @ p3k
    n12 = ((3 - ((cols[A] + 2 * cols[B]) % 3)) % 3) @ p3k
    # pairs from triu_indices are grouped by their first index; suffix_start[c]
    # is where pairs with first index >= c begin
    suffix_start = np.searchsorted(A, np.arange(nu + 1), "left")
    count = 0
    rights = (s11, s12, n12, n11)  # coefficient patterns (1,1),(1,2),(2,1),(2,2)
    for i in range(len(A)):
        off = suffix_start[int(B[i]) + 1]
        for target in (n11[i], n12[i]):
            for arr in rights:
                count += int(np.count_nonzero(arr[off:] == target))
    return count


# -- support designs ---------------------------------------------------------


def support_design(code: LinearCode, w) -> IncidenceStructure:
    """Design of the weight-w codeword supports of `code`.

    Small-dimension codes are enumerated exhaustively; otherwise w <= 4 is
    served by the syndrome enumerator through the dual.  w = 0 yields the
    empty structure (blocks require w >= 1).
    """
    if w < 0 or w > code.length:
        raise ValueError("weight out of range")
    if w == 0:
        return make_incidence_structure(code.length, 0, Counter())
    counter = Counter()
    if code.dimension <= MAX_EXHAUSTIVE_DIM:
        by_mask = Counter()
        for p1, p2 in iter_packed_codewords(code):
            mask = p1 | p2
            if mask.bit_count() == w:
                by_mask[mask] += 1
        nbytes = (code.length + 7) // 8
        for mask, cw_count in by_mask.items():
            if cw_count % 2:
                raise AssertionError("support with an odd codeword count; scalar pairing broken")
            bits = np.unpackbits(
                np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8),
                bitorder="little",
            )[: code.length]
            counter[tuple(int(x) for x in np.nonzero(bits)[0])] = cw_count // 2
    elif w <= 4:
        for support, _ in enumerate_low_weight_dual_supports(dual(code), w).get(w, []):
            counter[support] += 1
    else:
        raise ValueError(
            f"dimension {code.dimension} too large for exhaustive enumeration and w={w} > 4"
        )
    return make_incidence_structure(code.length, w, counter)


def _coverage_matrix(D: IncidenceStructure):
    """v x v pair-coverage counts (with multiplicity); diagonal = point degrees."""
    cov = np.zeros((D.v, D.v), dtype=np.int64)
    for start in range(0, len(D.blocks), GRAM_CHUNK):
        bl = D.blocks[start : start + GRAM_CHUNK]
        mu = D.multiplicity[start : start + GRAM_CHUNK]
        M = np.zeros((len(bl), D.v), dtype=np.float32)
        M[np.arange(len(bl))[:, None], bl] = 1.0
        cov += ((M * mu[:, None].astype(np.float32)).T @ M).astype(np.int64)
    return cov


def verify_t_design(D: IncidenceStructure, t):
    """Certify D as a t-design or refute it with a witness t-subset.

    t = 2 fills the full pair-coverage matrix in one pass over the blocks;
    t = 1 counts point degrees.
    """
    if t not in (1, 2):
        raise ValueError("t must be 1 or 2")
    if len(D.blocks) == 0:
        return DesignCertificate(t, D.v, D.k, 0, 0)
    if t == 1:
        degrees = np.bincount(D.blocks.ravel(), weights=np.repeat(D.multiplicity, D.k),
                              minlength=D.v).astype(np.int64)
        lam = int(degrees[0])
        if not (degrees == lam).all():
            bad = int(np.argmax(degrees != lam))
            return DesignRefutation(1, D.v, D.k, (bad,), int(degrees[bad]), lam)
        return DesignCertificate(1, D.v, D.k, lam, D.b)
    cov = _coverage_matrix(D)
    iu = np.triu_indices(D.v, 1)
    vals = cov[iu]
    lam = int(vals[0])
    if not (vals == lam).all():
        pos = int(np.argmax(vals != lam))
        pair = (int(iu[0][pos]), int(iu[1][pos]))
        return DesignRefutation(2, D.v, D.k, pair, int(vals[pos]), lam)
    return DesignCertificate(2, D.v, D.k, lam, D.b)


@dataclass(frozen=True)
class StreamingSupportReport:
    """Streaming certification of a fixed-weight support design.

    Never materializes the block list: supports are hashed for the
    multiplicity histogram and accumulated into a pair-coverage Gram matrix,
    so memory stays O(v^2) even when b*k is in the hundreds of millions.
    """

    weight: int
    codewords: int
    distinct_supports: int
    multiplicity_histogram: dict
    simple: bool
    result: object  # DesignCertificate or DesignRefutation


def certify_support_design_streaming(code: LinearCode, weight) -> StreamingSupportReport:
    nu = code.length
    nbytes = (nu + 7) // 8
    gram = np.zeros((nu, nu), dtype=np.int64)
    buf = np.zeros((GRAM_CHUNK, nbytes), dtype=np.uint8)
    nbuf = 0
    support_counter = Counter()
    total = 0

    def flush():
        nonlocal nbuf
        if nbuf:
            X = np.unpackbits(buf[:nbuf], axis=1, bitorder="little")[:, :nu].astype(np.float32)
            gram.__iadd__((X.T @ X).astype(np.int64))
            nbuf = 0

    for p1, p2 in iter_packed_codewords(code):
        mask = p1 | p2
        if mask.bit_count() == weight:
            mb = mask.to_bytes(nbytes, "little")
            support_counter[mb] += 1
            buf[nbuf] = np.frombuffer(mb, dtype=np.uint8)
            nbuf += 1
            total += 1
            if nbuf == GRAM_CHUNK:
                flush()
    flush()

    mult_hist = Counter()
    for cw_count in support_counter.values():
        if cw_count % 2:
            raise AssertionError("support with an odd codeword count; scalar pairing broken")
        mult_hist[cw_count // 2] += 1
    simple = set(mult_hist) <= {1}
    blocks_total = total // 2

    iu = np.triu_indices(nu, 1)
    vals = gram[iu]  # counts codewords: twice the class coverage
    lam2 = int(vals[0])
    if (vals == lam2).all() and lam2 % 2 == 0:
        result = DesignCertificate(2, nu, weight, lam2 // 2, blocks_total)
    else:
        pos = int(np.argmax(vals != lam2))
        pair = (int(iu[0][pos]), int(iu[1][pos]))
        result = DesignRefutation(2, nu, weight, pair, int(vals[pos]) // 2, lam2 // 2)
    return StreamingSupportReport(
        weight=weight,
        codewords=total,
        distinct_supports=len(support_counter),
        multiplicity_histogram=dict(mult_hist),
        simple=simple,
        result=result,
    )


# -- incidence matrices and ranks -------------------------------------------


def incidence_matrix(D: IncidenceStructure) -> TernaryMatrix:
    """b x v 0/1 matrix in canonical block order, repeats expanded."""
    rows = np.repeat(np.arange(len(D.blocks)), D.multiplicity)
    M = np.zeros((len(rows), D.v), dtype=np.int8)
    M[np.arange(len(rows))[:, None], D.blocks[rows]] = 1
    return TernaryMatrix.from_digits(M)


def _incidence_chunks(D: IncidenceStructure, chunk=RANK_CHUNK):
    for start in range(0, len(D.blocks), chunk):
        bl = D.blocks[start : start + chunk]
        M = np.zeros((len(bl), D.v), dtype=np.int8)
        M[np.arange(len(bl))[:, None], bl] = 1
        yield M


def p_rank(D: IncidenceStructure, p=3) -> int:
    """Rank of the incidence matrix over GF(p), streaming the blocks.

    Repeated blocks cannot change the rank, so only distinct blocks are fed
    to the elimination.
    """
    if len(D.blocks) == 0:
        return 0
    return gf3_rank_stream(_incidence_chunks(D), D.v, p=p)


# -- block-set relations and automorphisms -----------------------------------


def blocks_disjoint(D1: IncidenceStructure, D2: IncidenceStructure):
    """(True, None) iff no block occurs in both; else (False, shared block)."""
    if D1.v != D2.v:
        raise ValueError("structures live on different point counts")
    if len(D1.blocks) == 0 or len(D2.blocks) == 0:
        return True, None
    set1 = {row.tobytes() for row in np.ascontiguousarray(D1.blocks, dtype=np.uint32)}
    for row in np.ascontiguousarray(D2.blocks, dtype=np.uint32):
        if row.tobytes() in set1:
            return False, tuple(int(x) for x in row)
    return True, None


def verify_automorphism(D: IncidenceStructure, perm) -> bool:
    """True iff the permuted block multiset equals the original one."""
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (D.v,) or not np.array_equal(np.sort(perm), np.arange(D.v)):
        raise ValueError("not a permutation of the point set")
    if len(D.blocks) == 0:
        return True
    image = perm[D.blocks]
    image.sort(axis=1)
    orig = np.repeat(D.blocks, D.multiplicity, axis=0)
    image = np.repeat(image, D.multiplicity, axis=0)
    orig = orig[np.lexsort(orig.T[::-1])]
    image = image[np.lexsort(image.T[::-1])]
    return np.array_equal(orig, image)


def cyclic_shift_permutation(v):
    """Coordinate shift i -> i+1 mod v, induced by multiplying points by alpha^2."""
    return (np.arange(v) + 1) % v


def frobenius_permutation(v):
    """Coordinate map i -> 3i mod v, induced by cubing the points alpha^(2i)."""
    return (3 * np.arange(v)) % v


# -- export -------------------------------------------------------------------


def format_blocks_text(D: IncidenceStructure, t):
    """Block-list text: header "D t v k b", then b sorted lines of k indices."""
    lines = [f"D {t} {D.v} {D.k} {D.b}"]
    for row, mu in zip(D.blocks, D.multiplicity):
        line = " ".join(str(int(x)) for x in row)
        lines.extend([line] * int(mu))
    return "\n".join(lines) + "\n"


def parse_blocks_text(text) -> tuple[int, IncidenceStructure]:
    lines = text.strip().splitlines()
    tag, t, v, k, b = lines[0].split()
    if tag != "D":
        raise ValueError("missing block-list header tag")
    t, v, k, b = int(t), int(v), int(k), int(b)
    counter = Counter()
    for line in lines[1 : b + 1]:
        support = tuple(int(x) for x in line.split())
        if len(support) != k or list(support) != sorted(set(support)):
            raise ValueError(f"bad block line: {line!r}")
        counter[support] += 1
    return t, make_incidence_structure(v, k, counter)
