"""Numpy implementations of the hot kernels.

Same signatures as the compiled ``_ckernels`` module.  Field tables are the
``exp`` (length ``2(q-1)``) and ``log`` (``log[0] == -1``) arrays of a
:class:`~zigzag_mds.field.FieldSpec`, passed as int32.
"""
import numpy as np


def _mul_outer(f, row, exp, log):
    # f has no zeros; row may.
    lr = log[row]
    out = exp[log[f][:, None] + np.maximum(lr, 0)[None, :]]
    out[:, lr < 0] = 0
    return out


def _scale(a, row, exp, log):
    lr = log[row]
    out = exp[log[a] + np.maximum(lr, 0)]
    out[lr < 0] = 0
    return out


def _gauss_jordan(A, ncols, exp, log):
    """In-place reduction of the first ``ncols`` columns; returns (rank, det)."""
    rows = A.shape[0]
    q1 = exp.shape[0] // 2
    r = 0
    det = 1
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            det = 0
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        pivot = A[r, c]
        det = 0 if det == 0 else int(exp[log[det] + log[pivot]])
        A[r, c:] = _scale(exp[q1 - log[pivot]], A[r, c:], exp, log)
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if others.size:
            A[others, c:] ^= _mul_outer(A[others, c], A[r, c:], exp, log)
        r += 1
    if r < ncols:
        det = 0
    return r, det


def rank(mat, exp, log):
    A = np.array(mat, dtype=np.int32)
    return _gauss_jordan(A, A.shape[1], exp, log)[0]


def det(mat, exp, log):
    A = np.array(mat, dtype=np.int32)
    if A.shape[0] != A.shape[1]:
        raise ValueError("determinant of a non-square matrix")
    return _gauss_jordan(A, A.shape[1], exp, log)[1]


def inverse(mat, exp, log):
    """Inverse matrix, or None when singular."""
    mat = np.asarray(mat, dtype=np.int32)
    n = mat.shape[0]
    A = np.zeros((n, 2 * n), dtype=np.int32)
    A[:, :n] = mat
    A[np.arange(n), n + np.arange(n)] = 1
    r, _ = _gauss_jordan(A, n, exp, log)
    if r < n:
        return None
    return A[:, n:].copy()


def matmul(a, b, exp, log):
    a = np.asarray(a, dtype=np.int32)
    b = np.asarray(b, dtype=np.int32)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int32)
    for j in range(a.shape[1]):
        col = a[:, j]
        nz = np.flatnonzero(col)
        if nz.size:
            out[nz] ^= _mul_outer(col[nz], b[j], exp, log)
    return out


def coset_costs(perms, members):
    """c-values of each subgroup under each ordering.

    ``perms`` is (B, M): row b lists the elements in position order.
    ``members`` is (S, M) uint8: ``members[s, g]`` is 1 iff g is in subgroup s.
    Returns (B, S) int32.
    """
    perms = np.asarray(perms)
    B, M = perms.shape
    pos = np.empty_like(perms)
    np.put_along_axis(pos, perms, np.arange(M)[None, :].repeat(B, 0), axis=1)
    half = M // 2
    out = np.empty((B, members.shape[0]), dtype=np.int32)
    for s, mask in enumerate(np.asarray(members, dtype=bool)):
        inside = pos[:, mask]
        outside = pos[:, ~mask]
        c_in = inside.max(1) - inside.min(1) - (half - 1)
        c_out = outside.max(1) - outside.min(1) - (half - 1)
        out[:, s] = np.minimum(c_in, c_out)
    return out
