"""Dense linear algebra over the prime field F_p on numpy integer arrays."""

from __future__ import annotations

import numpy as np


def rref(m, p):
    """Reduced row echelon form of ``m`` mod p.  Returns ``(R, pivot_columns)``."""
    a = np.array(m, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("rref needs a 2-d array")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        others = np.nonzero(a[:, c])[0]
        for o in others:
            if o != r:
                a[o] = (a[o] - a[o, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m, p) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def row_basis(m, p):
    """A basis (as rows, in reduced echelon form) of the row space of ``m``."""
    m = np.asarray(m, dtype=np.int64)
    if m.size == 0:
        return np.zeros((0, m.shape[-1] if m.ndim == 2 else 0), dtype=np.int64)
    r, piv = rref(m, p)
    return r[: len(piv)]


def nullspace(m, p):
    """Basis (rows) of ``{x : m @ x == 0}``."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    r, piv = rref(m, p)
    free = [c for c in range(cols) if c not in piv]
    out = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for row, c in enumerate(piv):
            v[c] = (-r[row, f]) % p
        out.append(v)
    return np.array(out, dtype=np.int64).reshape(len(out), cols)


def inverse(m, p):
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    r, piv = rref(np.hstack([m % p, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise np.linalg.LinAlgError("matrix is singular mod p")
    return r[:, n:]


def solve_rows(basis, targets, p):
    """Coordinates ``X`` with ``X @ basis == targets`` for an invertible square basis."""
    return (np.asarray(targets, dtype=np.int64) @ inverse(basis, p)) % p


def in_span(basis, v, p) -> bool:
    basis = np.asarray(basis, dtype=np.int64)
    if basis.size == 0:
        return not np.any(np.asarray(v) % p)
    return rank(np.vstack([basis, v]), p) == rank(basis, p)


def batched_nonsingular(mats, p):
    """Boolean mask: which of the square matrices ``mats[b]`` are invertible mod p.

    Gaussian elimination run on the whole batch at once.
    """
    a = np.array(mats, dtype=np.int64) % p
    batch, n, _ = a.shape
    ok = np.ones(batch, dtype=bool)
    inv_table = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv_table[x] = pow(x, -1, p)
    idx = np.arange(batch)
    for c in range(n):
        sub = a[:, c:, c]
        has = sub != 0
        found = has.any(axis=1)
        ok &= found
        piv = c + np.argmax(has, axis=1)
        # swap pivot row into place
        row_c = a[idx, c].copy()
        a[idx, c] = a[idx, piv]
        a[idx, piv] = row_c
        pv = a[:, c, c]
        scale = inv_table[pv]
        a[:, c, :] = (a[:, c, :] * scale[:, None]) % p
        factors = a[:, :, c].copy()
        factors[:, c] = 0
        a = (a - factors[:, :, None] * a[:, c, None, :]) % p
    return ok


def all_vectors(d, p):
    """Every vector of F_p^d, row ``code`` holding the base-p digits of ``code``.

    Digit ``i`` (coefficient of basis element i) has weight ``p**i``.
    """
    codes = np.arange(p ** d, dtype=np.int64)
    out = np.empty((p ** d, d), dtype=np.int64)
    for i in range(d):
        out[:, i] = codes % p
        codes //= p
    return out


def encode(vectors, p):
    vectors = np.asarray(vectors, dtype=np.int64)
    weights = p ** np.arange(vectors.shape[-1], dtype=np.int64)
    return vectors @ weights
