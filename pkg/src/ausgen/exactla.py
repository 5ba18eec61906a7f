"""Exact dense linear algebra over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays holding residues in ``[0, p)``.
Every routine takes the prime explicitly; nothing here keeps state.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "FieldError",
    "check_prime",
    "mat",
    "zeros",
    "identity",
    "mul",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "inverse",
    "is_invertible",
    "column_basis",
    "complement",
    "left_inverse",
    "intersect",
    "in_span",
]


class FieldError(ValueError):
    """Raised for an invalid field characteristic."""


def check_prime(p: int) -> int:
    p = int(p)
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise FieldError(f"{p} is not a prime")
    return p


def mat(rows, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce nested lists (or an array) to a reduced int64 matrix."""
    a = np.array(rows, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.size == 0 or b.size == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a @ b) % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns.

    The rank is ``len(pivots)``.
    """
    a = np.array(m, dtype=np.int64) % p
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        below = a[r:, c]
        k = int(below.argmax())  # entries are reduced, so a zero maximum means a zero column
        if below[k] == 0:
            continue
        k += r
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = col.nonzero()[0]
        if hit.size:
            a[hit] = (a[hit] - col[hit, None] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning ker m; there are ``cols - rank`` of them."""
    nrows, ncols = m.shape
    if nrows == 0 or m.size == 0:
        return identity(ncols)
    r, pivots = rref(m, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = zeros(ncols, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-r[i, f]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of ``a @ x == b`` or ``None``."""
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch: a is {a.shape}, b is {b.shape}")
    n = a.shape[1]
    if a.shape[0] == 0:
        return zeros(n, b.shape[1])
    aug = np.concatenate([a % p, b % p], axis=1)
    r, pivots = rref(aug, p)
    if any(pc >= n for pc in pivots):
        return None
    x = zeros(n, b.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n:]
    return x


def inverse(m: np.ndarray, p: int) -> np.ndarray | None:
    n = m.shape[0]
    if m.shape[1] != n:
        return None
    if n == 0:
        return zeros(0, 0)
    r, pivots = rref(np.concatenate([m % p, identity(n)], axis=1), p)
    if pivots[:n] != list(range(n)):
        return None
    return r[:, n:].copy()


def is_invertible(m: np.ndarray, p: int) -> bool:
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


def column_basis(m: np.ndarray, p: int) -> np.ndarray:
    """A subset of the columns of ``m`` forming a basis of its column space."""
    if m.size == 0:
        return zeros(m.shape[0], 0)
    _, pivots = rref(m, p)
    return (m[:, pivots] % p).copy()


def complement(u: np.ndarray, p: int) -> np.ndarray:
    """Standard basis columns completing the column space of ``u`` to F_p^n."""
    n = u.shape[0]
    if u.shape[1] == 0:
        return identity(n)
    _, pivots = rref(np.concatenate([u % p, identity(n)], axis=1), p)
    k = u.shape[1]
    extra = [c - k for c in pivots if c >= k]
    return identity(n)[:, extra].copy()


def left_inverse(u: np.ndarray, p: int) -> np.ndarray:
    """``L`` with ``L @ u == I`` for ``u`` of full column rank."""
    n, k = u.shape
    if k == 0:
        return zeros(0, n)
    r, pivots = rref(np.concatenate([u % p, identity(n)], axis=1), p)
    if pivots[:k] != list(range(k)):
        raise ValueError("matrix does not have full column rank")
    return r[:k, k:].copy()


def intersect(u: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    """Basis of col(u) ∩ col(v); both inputs must have independent columns."""
    n = u.shape[0]
    if u.shape[1] == 0 or v.shape[1] == 0:
        return zeros(n, 0)
    ker = nullspace(np.concatenate([u, (-v) % p], axis=1), p)
    w = mul(u, ker[: u.shape[1]], p)
    return column_basis(w, p)


def in_span(u: np.ndarray, x: np.ndarray, p: int) -> bool:
    """Whether every column of ``x`` lies in the column space of ``u``."""
    if x.shape[1] == 0:
        return True
    if u.shape[1] == 0:
        return not np.any(x % p)
    return rank(np.concatenate([u, x], axis=1), p) == rank(u, p)
