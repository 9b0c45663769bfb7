"""Exact dense linear algebra over a prime field F_p.

Everything downstream reduces to row reduction of integer matrices taken
modulo a small prime.  Matrices are numpy ``int64`` arrays with entries
already reduced into ``[0, p)``; the helpers here never leave that
representation, so all arithmetic is exact.

Conventions:

* vectors are columns; a morphism acts by left multiplication, so
  composition is plain matrix product reduced mod p;
* ``rref`` uses deterministic pivoting (leftmost column, topmost nonzero
  entry), which makes every derived basis canonical for a given input;
* ``kernel_basis`` and ``image_basis`` return matrices whose *columns*
  are the basis vectors, in a canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InputError

# Products of reduced entries accumulate over at most DIM_LIMIT terms;
# (p-1)^2 * DIM_LIMIT must stay far below 2^63.
PRIME_LIMIT = 1 << 12
DIM_LIMIT = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p together with exact matrix routines."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise InputError(f"{self.p} is not prime")
        if self.p >= PRIME_LIMIT:
            raise InputError(f"prime {self.p} too large (limit {PRIME_LIMIT})")

    # -- element helpers ----------------------------------------------
    def reduce(self, a) -> np.ndarray:
        return np.asarray(a, dtype=np.int64) % self.p

    def inv_scalar(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(int(a), self.p - 2, self.p)

    # -- basic matrix algebra -----------------------------------------
    def zeros(self, r: int, c: int) -> np.ndarray:
        return np.zeros((r, c), dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a @ b) % self.p

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a + b) % self.p

    def neg(self, a: np.ndarray) -> np.ndarray:
        return (-a) % self.p

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.kron(a, b) % self.p

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and bool(np.array_equal(a % self.p, b % self.p))

    # -- row reduction and friends ------------------------------------
    def rref(self, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form with deterministic pivoting.

        Returns ``(R, pivots)`` where ``pivots`` lists the pivot column
        of each nonzero row, in row order.
        """
        m = self.reduce(np.array(a, dtype=np.int64, copy=True))
        rows, cols = m.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r >= rows:
                break
            nz = np.nonzero(m[r:, c])[0]
            if nz.size == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                m[[r, pr]] = m[[pr, r]]
            inv = self.inv_scalar(int(m[r, c]))
            m[r] = (m[r] * inv) % self.p
            col = m[:, c].copy()
            col[r] = 0
            m = (m - np.outer(col, m[r])) % self.p
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self, a: np.ndarray) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def kernel_basis(self, a: np.ndarray) -> np.ndarray:
        """Columns form a canonical basis of the right null space."""
        rows, cols = a.shape
        if cols == 0:
            return self.zeros(0, 0)
        r, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in pivots]
        out = self.zeros(cols, len(free))
        for j, fc in enumerate(free):
            out[fc, j] = 1
            for i, pc in enumerate(pivots):
                out[pc, j] = (-r[i, fc]) % self.p
        return out

    def image_basis(self, a: np.ndarray) -> np.ndarray:
        """Columns of ``a`` at the pivot positions of its rref: a
        canonical basis of the column space."""
        if a.size == 0:
            return self.zeros(a.shape[0], 0)
        _, pivots = self.rref(a)
        return a[:, pivots].copy()

    def row_space_basis(self, a: np.ndarray) -> np.ndarray:
        r, pivots = self.rref(a)
        return r[: len(pivots)].copy()

    def solve(self, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
        """One solution of ``a x = b`` with free variables set to 0, or
        None when inconsistent.  ``b`` may have several columns; the
        result matches b's dimensionality."""
        flat = b.ndim == 1
        b2 = b.reshape(-1, 1) if flat else b
        if a.shape[0] != b2.shape[0]:
            raise InputError("solve: shape mismatch")
        rows, cols = a.shape
        aug = np.hstack([self.reduce(a), self.reduce(b2)])
        r, pivots = self.rref(aug)
        for pc in pivots:
            if pc >= cols:
                return None
        x = self.zeros(cols, b2.shape[1])
        for i, pc in enumerate(pivots):
            x[pc] = r[i, cols:]
        return x[:, 0] if flat else x

    def solve_left(self, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
        """One solution of ``x a = b`` (same free-variable convention)."""
        xt = self.solve(a.T, b.T)
        return None if xt is None else xt.T

    def invert(self, a: np.ndarray) -> np.ndarray:
        n, m = a.shape
        if n != m:
            raise InputError("invert: matrix not square")
        x = self.solve(a, self.identity(n))
        if x is None or not self.equal(self.mul(a, x), self.identity(n)):
            raise InputError("invert: matrix is singular")
        return x

    def is_invertible(self, a: np.ndarray) -> bool:
        return a.shape[0] == a.shape[1] and self.rank(a) == a.shape[0]

    # -- subspace utilities --------------------------------------------
    def in_span(self, basis_cols: np.ndarray, v: np.ndarray) -> bool:
        return self.solve(basis_cols, v) is not None

    def span_union(self, *mats: np.ndarray) -> np.ndarray:
        """Canonical basis (columns) of the sum of the column spans."""
        mats = [m for m in mats if m.size]
        if not mats:
            return self.zeros(0, 0)
        return self.image_basis(np.hstack(mats))

    def complement_pivots(self, basis_cols: np.ndarray, ambient_dim: int) -> list[int]:
        """Indices of standard basis vectors completing ``basis_cols`` to
        a basis of F_p^ambient_dim."""
        if basis_cols.size == 0:
            return list(range(ambient_dim))
        r, pivots = self.rref(basis_cols.T)
        return [i for i in range(ambient_dim) if i not in pivots]

    def coordinates(self, basis_cols: np.ndarray, vecs: np.ndarray) -> np.ndarray:
        """Coordinates of ``vecs`` (columns) in the given column basis;
        raises if some vector is outside the span."""
        x = self.solve(basis_cols, vecs)
        if x is None or not self.equal(self.mul(basis_cols, x), self.reduce(vecs)):
            raise InputError("coordinates: vector outside span")
        return x

    def matrix_power(self, a: np.ndarray, n: int) -> np.ndarray:
        out = self.identity(a.shape[0])
        base = self.reduce(a)
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out


F2 = PrimeField(2)
