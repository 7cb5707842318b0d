"""Dense GF(3) linear algebra.

Vectors are stored two ways: as int8 digit arrays (numpy work) and as a
packed two-plane form, one Python int per plane (bit i of plane one set iff
digit i == 1, plane two iff digit i == 2).  Packed addition costs six
word-parallel bit operations regardless of length, and Hamming weight is a
single popcount; that is what makes exhaustive codeword enumeration cheap.
"""

from __future__ import annotations

import numpy as np


def pack_vector(digits):
    """Pack a {0,1,2} digit vector into the two-plane form (p1, p2)."""
    digits = np.asarray(digits, dtype=np.uint8)
    p1 = int.from_bytes(np.packbits(digits == 1, bitorder="little").tobytes(), "little")
    p2 = int.from_bytes(np.packbits(digits == 2, bitorder="little").tobytes(), "little")
    return p1, p2


def unpack_vector(p1, p2, length):
    nbytes = (length + 7) // 8
    b1 = np.frombuffer(p1.to_bytes(nbytes, "little"), dtype=np.uint8)
    b2 = np.frombuffer(p2.to_bytes(nbytes, "little"), dtype=np.uint8)
    out = np.unpackbits(b1, bitorder="little")[:length].astype(np.int8)
    out += 2 * np.unpackbits(b2, bitorder="little")[:length].astype(np.int8)
    return out


def packed_add(a, b):
    """GF(3) vector addition on two-plane pairs."""
    a1, a2 = a
    b1, b2 = b
    t = (a1 | b2) ^ (a2 | b1)
    return (a2 | b2) ^ t, (a1 | b1) ^ t


def packed_neg(a):
    a1, a2 = a
    return a2, a1


def packed_weight(a):
    a1, a2 = a
    return (a1 | a2).bit_count()


class TernaryMatrix:
    """A rows x cols matrix over GF(3).

    The payload is the packed two-plane row storage; a digit-array view is
    materialized on demand and cached.  Instances are treated as immutable.
    """

    def __init__(self, packed_rows, cols):
        self._packed = list(packed_rows)
        self.cols = cols
        self.rows = len(self._packed)
        mask = (1 << cols) - 1
        for p1, p2 in self._packed:
            if p1 & p2:
                raise ValueError("both planes set at the same position")
            if (p1 | p2) & ~mask:
                raise ValueError("plane bits beyond the declared width")
        self._digits = None

    @classmethod
    def from_digits(cls, arr):
        arr = np.asarray(arr, dtype=np.int8)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        if arr.min(initial=0) < 0 or arr.max(initial=0) > 2:
            raise ValueError("entries must be in {0,1,2}")
        mat = cls([pack_vector(row) for row in arr], arr.shape[1])
        mat._digits = arr.copy()
        mat._digits.setflags(write=False)
        return mat

    @property
    def shape(self):
        return (self.rows, self.cols)

    def packed_row(self, i):
        return self._packed[i]

    @property
    def packed_rows(self):
        return list(self._packed)

    def to_digits(self):
        if self._digits is None:
            out = np.zeros((self.rows, self.cols), dtype=np.int8)
            for i, (p1, p2) in enumerate(self._packed):
                out[i] = unpack_vector(p1, p2, self.cols)
            out.setflags(write=False)
            self._digits = out
        return self._digits

    def __eq__(self, other):
        if not isinstance(other, TernaryMatrix):
            return NotImplemented
        return self.cols == other.cols and self._packed == other._packed

    def __repr__(self):
        return f"TernaryMatrix({self.rows}x{self.cols})"


def gf3_rref(mat):
    """Reduced row echelon form over GF(3).

    Accepts a digit array or TernaryMatrix; returns (R, pivot_columns) where
    R holds only the nonzero rows.  Meant for matrices with at most a few
    thousand rows; use gf3_rank_stream for tall incidence matrices.
    """
    if isinstance(mat, TernaryMatrix):
        mat = mat.to_digits()
    M = np.array(mat, dtype=np.int8)
    nrows, ncols = M.shape
    r = 0
    pivots = []
    for c in range(ncols):
        pr = r + int(np.argmax(M[r:, c] != 0)) if (M[r:, c] != 0).any() else -1
        if pr < 0:
            continue
        M[[r, pr]] = M[[pr, r]]
        if M[r, c] == 2:
            M[r] = (2 * M[r].astype(np.int16)) % 3
        col = M[:, c].copy()
        col[r] = 0
        upd = np.nonzero(col)[0]
        if len(upd):
            M[upd] = (M[upd].astype(np.int16) - np.outer(col[upd].astype(np.int16), M[r])) % 3
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return M[:r], pivots


def gf3_rank(mat):
    return len(gf3_rref(mat)[1])


def gf3_nullspace(mat):
    """Basis of {x : M x^T = 0} as rows of a digit array (may be empty)."""
    if isinstance(mat, TernaryMatrix):
        mat = mat.to_digits()
    M = np.asarray(mat, dtype=np.int8)
    ncols = M.shape[1]
    R, pivots = gf3_rref(M)
    free = [c for c in range(ncols) if c not in set(pivots)]
    B = np.zeros((len(free), ncols), dtype=np.int8)
    for i, fc in enumerate(free):
        B[i, fc] = 1
        for ri, pc in enumerate(pivots):
            B[i, pc] = (-R[ri, fc]) % 3
    return B


def gf3_rank_stream(chunks, ncols, p=3):
    """Rank over GF(p) of a matrix presented as an iterable of row chunks.

    Maintains an RREF basis and pre-reduces every incoming chunk against it
    with one float32 matmul (entries stay far below 2^24, so the BLAS path
    is exact); only rows that survive are eliminated individually.  Memory
    is O(ncols^2) however many rows stream through.
    """
    R = np.zeros((ncols, ncols), dtype=np.float32)
    piv = np.zeros(ncols, dtype=np.int64)
    r = 0
    inv = [0] + [pow(v, p - 2, p) for v in range(1, p)]
    for chunk in chunks:
        F = np.asarray(chunk, dtype=np.float32)
        if r:
            F = np.mod(F - F[:, piv[:r]] @ R[:r], float(p))
        for i in np.nonzero(F.any(axis=1))[0]:
            row = F[i]
            if r:
                coef = row[piv[:r]]
                if coef.any():
                    row = np.mod(row - coef @ R[:r], float(p))
            nz = np.nonzero(row)[0]
            if not len(nz):
                continue
            c = nz[0]
            if row[c] != 1.0:
                row = np.mod(row * inv[int(row[c])], float(p))
            colv = R[:r, c]
            upd = np.nonzero(colv)[0]
            if len(upd):
                R[upd] = np.mod(R[upd] - np.outer(colv[upd], row), float(p))
            R[r] = row
            piv[r] = c
            r += 1
    return r


def format_matrix_text(mat):
    """Plain-text export: header "cols rows", then one digit string per row."""
    if isinstance(mat, TernaryMatrix):
        mat = mat.to_digits()
    lines = [f"{mat.shape[1]} {mat.shape[0]}"]
    for row in np.asarray(mat):
        lines.append("".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def parse_matrix_text(text):
    lines = text.strip().splitlines()
    cols, rows = (int(v) for v in lines[0].split())
    arr = np.zeros((rows, cols), dtype=np.int8)
    for i, line in enumerate(lines[1 : rows + 1]):
        if len(line) != cols:
            raise ValueError(f"row {i} has {len(line)} symbols, expected {cols}")
        arr[i] = [int(ch) for ch in line]
    return arr
