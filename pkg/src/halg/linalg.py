"""Dense linear algebra over F_p on numpy int64 arrays."""

from __future__ import annotations

import numpy as np


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 mod %d" % p)
    return pow(a, p - 2, p)


def as_matrix(rows, ncols: int, p: int) -> np.ndarray:
    if len(rows) == 0:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), ncols) % p


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of A mod p. Returns (R, pivot columns)."""
    R = np.array(A, dtype=np.int64) % p
    m, n = R.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        nz = np.nonzero(R[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        R[row] = (R[row] * inv_mod(int(R[row, col]), p)) % p
        others = np.nonzero(R[:, col])[0]
        others = others[others != row]
        if others.size:
            R[others] = (R[others] - np.outer(R[others, col], R[row])) % p
        pivots.append(col)
        row += 1
    return R[:row], pivots


def rank(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of {v : A v = 0} as the rows of the returned array."""
    m, n = A.shape
    R, piv = rref(A, p) if m else (np.zeros((0, n), dtype=np.int64), [])
    free = [j for j in range(n) if j not in set(piv)]
    N = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        N[k, f] = 1
        for r, pc in enumerate(piv):
            N[k, pc] = (-R[r, f]) % p
    return N


class EchelonSpace:
    """Incrementally grown row space with a membership test."""

    def __init__(self, ncols: int, p: int):
        self.n = ncols
        self.p = p
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, v) -> np.ndarray:
        v = np.array(v, dtype=np.int64) % self.p
        for r, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                v = (v - c * r) % self.p
        return v

    def add(self, v) -> bool:
        """Add v; True if it enlarged the space."""
        v = self.reduce(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        pc = int(nz[0])
        v = (v * inv_mod(int(v[pc]), self.p)) % self.p
        # keep rows fully reduced against the new pivot
        for i, r in enumerate(self.rows):
            if r[pc]:
                self.rows[i] = (r - r[pc] * v) % self.p
        self.rows.append(v)
        self.pivots.append(pc)
        return True

    def __contains__(self, v) -> bool:
        return not self.reduce(v).any()

    @property
    def dim(self) -> int:
        return len(self.rows)
