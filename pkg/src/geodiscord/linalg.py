"""Dense matrix helpers: Jacobi eigensolvers, Kronecker products, partial traces.

Matrices are plain numpy arrays. The eigensolvers are a cyclic Jacobi
implementation; Hermitian problems are handled through the real symmetric
embedding ``[[Re A, -Im A], [Im A, Re A]]``.
"""
from dataclasses import dataclass
import math

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import ConvergenceError, ValidationError


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in non-increasing order and matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __iter__(self):
        yield self.eigenvalues
        yield self.eigenvectors

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _square(a, name):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"{name} must be a square matrix, got shape {a.shape}")
    return a


def hermiticity_defect(a):
    """Max |A_ij - conj(A_ji)| relative to max |A_ij| (0 for the zero matrix)."""
    a = np.asarray(a)
    scale = np.max(np.abs(a)) if a.size else 0.0
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(a - a.conj().T)) / scale)


def _jacobi(a, tol):
    """Cyclic-by-row Jacobi on a real symmetric matrix; returns (diag, V)."""
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    norm0 = math.sqrt(float(np.sum(a * a)))
    if n < 2 or norm0 == 0.0:
        return np.diag(a).copy(), v
    threshold = tol.jacobi_offdiag * norm0
    # entries below this cannot keep the off-diagonal norm above threshold
    negligible = threshold / n

    sweeps = 0
    while True:
        off = float(np.linalg.norm(a[~np.eye(n, dtype=bool)]))
        if off <= threshold:
            return np.diag(a).copy(), v
        if sweeps == tol.jacobi_max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {sweeps} sweeps "
                f"(off-diagonal norm {off:.3e}, target {threshold:.3e})"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= negligible:
                    continue
                diff = float(a[q, q] - a[p, p])
                if abs(apq) < 1e-300 * max(abs(diff), 1.0):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = diff / (2.0 * float(apq))
                # smaller root of t^2 + 2 t theta - 1 = 0
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :]
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq


def _sorted(values, vectors):
    # stable sort keeps the original index order for ties
    order = np.argsort(-values, kind="stable")
    return EigenDecomposition(values[order], vectors[:, order])


def sym_eigen(a, tol=DEFAULT_TOLERANCES):
    """Full spectral decomposition of a real symmetric matrix.

    Raises
    ------
    ValidationError
        If ``a`` is not square, not real, or asymmetric beyond ``tol.symmetry``.
    """
    a = _square(a, "sym_eigen input")
    if np.iscomplexobj(a):
        if np.any(a.imag != 0):
            raise ValidationError("sym_eigen input has nonzero imaginary part")
        a = a.real
    defect = hermiticity_defect(a)
    if defect > tol.symmetry:
        raise ValidationError(f"matrix is not symmetric: max relative asymmetry {defect:.3e}")
    w, v = _jacobi(a, tol)
    return _sorted(w, v)


def herm_eigen(a, tol=DEFAULT_TOLERANCES):
    """Spectral decomposition of a complex Hermitian matrix.

    The d x d problem is embedded into a 2d x 2d real symmetric one. Each
    eigenvalue of ``a`` shows up twice there; the real eigenvectors of a
    doubled cluster map to complex vectors ``u + i v`` spanning the complex
    eigenspace, from which an orthonormal set is picked by pivoted
    Gram-Schmidt.
    """
    a = _square(a, "herm_eigen input")
    a = a.astype(complex)
    defect = hermiticity_defect(a)
    if defect > tol.hermiticity:
        raise ValidationError(f"matrix is not Hermitian: max relative defect {defect:.3e}")
    d = a.shape[0]
    re, im = a.real, a.imag
    if not np.any(im):
        w, v = _jacobi(0.5 * (re + re.T), tol)
        return _sorted(w, v.astype(complex))
    embed = np.block([[re, -im], [im, re]])
    embed = 0.5 * (embed + embed.T)
    w, v = _jacobi(embed, tol)
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]
    candidates = v[:d, :] + 1j * v[d:, :]

    scale = max(float(np.max(np.abs(w))), 1.0)
    cluster_tol = 1e-9 * scale
    values, vectors = [], []
    start = 0
    while start < 2 * d:
        stop = start + 1
        while stop < 2 * d and w[stop - 1] - w[stop] <= cluster_tol:
            stop += 1
        size = stop - start
        if size % 2:
            # odd cluster: the pairing split across a near-degeneracy; widen by one
            stop = min(stop + 1, 2 * d)
            size = stop - start
        picked = _pivoted_gram_schmidt(candidates[:, start:stop], size // 2)
        for z in picked:
            vectors.append(z)
            values.append(float(np.real(z.conj() @ a @ z)))
        start = stop

    vecs = np.array(vectors).T
    vals = np.array(values)
    return _sorted(vals, vecs)


def _pivoted_gram_schmidt(cols, k):
    basis = []
    residual = cols.copy()
    for _ in range(k):
        norms = np.linalg.norm(residual, axis=0)
        j = int(np.argmax(norms))
        z = residual[:, j] / norms[j]
        basis.append(z)
        residual = residual - np.outer(z, z.conj() @ residual)
    return basis


def kron(a, b):
    """Kronecker product."""
    return np.kron(np.asarray(a), np.asarray(b))


def partial_trace(rho, dims, keep):
    """Reduced matrix of a bipartite operator.

    Parameters
    ----------
    rho : (m*n, m*n) array
    dims : (m, n)
    keep : {"A", "B"}
        Subsystem to keep.
    """
    m, n = dims
    rho = np.asarray(rho)
    if rho.shape != (m * n, m * n):
        raise ValidationError(f"operator shape {rho.shape} does not match dims {(m, n)}")
    r = rho.reshape(m, n, m, n)
    if keep == "A":
        return np.einsum("ajbj->ab", r)
    if keep == "B":
        return np.einsum("iaib->ab", r)
    raise ValidationError(f"keep must be 'A' or 'B', got {keep!r}")
