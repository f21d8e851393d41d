"""Density matrices, the example state families, random ensembles and file I/O.

Basis labels |1>, |2>, |3> used in the literature map to computational
indices 0, 1, 2 here.
"""
from functools import cached_property
import math
import os

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import StateFileError, ValidationError
from .linalg import hermiticity_defect, herm_eigen


class DensityMatrix:
    """A validated state: Hermitian, unit trace, positive semidefinite.

    Validation happens once, here. ``m`` and ``n`` declare the bipartition
    and may be left out for single-system states.
    """

    def __init__(self, matrix, m=None, n=None, tol=DEFAULT_TOLERANCES):
        if isinstance(matrix, DensityMatrix):
            matrix = matrix.matrix
        a = np.array(matrix, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise ValidationError(f"shape: density matrix must be square, got {a.shape}")
        if (m is None) != (n is None):
            raise ValidationError("bipartition needs both m and n")
        if m is not None and m * n != a.shape[0]:
            raise ValidationError(f"shape: dimension {a.shape[0]} != m*n = {m}*{n}")
        if not np.all(np.isfinite(a)):
            raise ValidationError("finiteness: matrix has NaN or infinite entries")
        defect = hermiticity_defect(a)
        if defect > tol.hermiticity:
            raise ValidationError(f"hermiticity: relative defect {defect:.3e} exceeds {tol.hermiticity:g}")
        a = 0.5 * (a + a.conj().T)
        tr = float(np.trace(a).real)
        if abs(tr - 1.0) > tol.trace:
            raise ValidationError(f"trace: tr(rho) = {tr!r} differs from 1 by more than {tol.trace:g}")
        eig = herm_eigen(a, tol)
        if eig.eigenvalues[-1] < -tol.positivity:
            raise ValidationError(
                f"positivity: minimum eigenvalue {eig.eigenvalues[-1]:.3e} below {-tol.positivity:g}"
            )
        a.setflags(write=False)
        self.matrix = a
        self.m = m
        self.n = n
        self._eig = eig

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def eigenvalues(self):
        return self._eig.eigenvalues

    @cached_property
    def purity(self):
        return float(np.sum(np.abs(self.matrix) ** 2))

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __repr__(self):
        dims = "" if self.m is None else f", m={self.m}, n={self.n}"
        return f"DensityMatrix(dim={self.dim}{dims})"


def _check_p(p):
    if not (0.0 <= p <= 1.0):
        raise ValidationError(f"mixing parameter p must lie in [0, 1], got {p}")


def _ket(d, amplitudes):
    """Ket in C^d from {(i, j): amplitude} on a two-qudit product basis."""
    v = np.zeros(d * d, dtype=complex)
    for (i, j), amp in amplitudes.items():
        v[i * d + j] = amp
    return v


# (1/sqrt 6)(|22> + |33> + |21> + |12> + |13> + |31>), zero-indexed
EQ52_KET = _ket(3, {(1, 1): 1, (2, 2): 1, (1, 0): 1, (0, 1): 1, (0, 2): 1, (2, 0): 1}) / math.sqrt(6.0)
# (1/2)|11> + (1/2)|22> + (1/sqrt 2)|33>
EQ53_KET = _ket(3, {(0, 0): 0.5, (1, 1): 0.5, (2, 2): 1 / math.sqrt(2.0)})


def _proj(v):
    return np.outer(v, v.conj())


def eq52_state(p):
    """Two-qutrit mixture p |e><e| + (1 - p) I/9."""
    _check_p(p)
    return DensityMatrix(p * _proj(EQ52_KET) + (1 - p) * np.eye(9) / 9, 3, 3)


def eq53_state(p):
    """Two-qutrit rank-2 mixture p |e1><e1| + (1 - p) |e2><e2|."""
    _check_p(p)
    return DensityMatrix(p * _proj(EQ53_KET) + (1 - p) * _proj(EQ52_KET), 3, 3)


BELL_KET = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2.0)


def bell_state():
    """|Phi+><Phi+| on two qubits."""
    return DensityMatrix(_proj(BELL_KET), 2, 2)


def werner_qubit(p):
    """p |Phi+><Phi+| + (1 - p) I/4."""
    _check_p(p)
    return DensityMatrix(p * _proj(BELL_KET) + (1 - p) * np.eye(4) / 4, 2, 2)


def product_state(a, b):
    a = DensityMatrix(a)
    b = DensityMatrix(b)
    return DensityMatrix(np.kron(a.matrix, b.matrix), a.dim, b.dim)


FAMILIES = {"eq52": eq52_state, "eq53": eq53_state, "werner": werner_qubit}


def family_state(name, p):
    try:
        build = FAMILIES[name]
    except KeyError:
        raise ValidationError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return build(p)


def random_state(dim, rank=None, seed=0, dims=None):
    """W W^dag / tr(W W^dag) with W a dim x rank complex Gaussian matrix.

    ``dims`` optionally declares the bipartition (m, n) with m*n == dim.
    """
    rank = dim if rank is None else rank
    if not (1 <= rank <= dim):
        raise ValidationError(f"rank must satisfy 1 <= rank <= dim = {dim}, got {rank}")
    rng = np.random.default_rng(seed)
    w = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = w @ w.conj().T
    rho /= np.trace(rho).real
    m, n = dims if dims is not None else (None, None)
    return DensityMatrix(rho, m, n)


def random_unitary(d, rng):
    """Haar unitary: QR of a complex Ginibre matrix with the R-diagonal phases removed."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def write_state(rho, path):
    """Text format: ``m n`` then one ``i j re im`` line per entry, row-major.

    Indices are zero-based; floats use the shortest repr that round-trips.
    """
    if not isinstance(rho, DensityMatrix):
        raise ValidationError("write_state expects a DensityMatrix")
    if rho.m is None:
        raise ValidationError("state has no declared bipartition")
    lines = ["# bipartite density matrix: m n, then i j re im (row-major, zero-based)",
             f"{rho.m} {rho.n}"]
    d = rho.dim
    for i in range(d):
        for j in range(d):
            z = rho.matrix[i, j]
            lines.append(f"{i} {j} {float(z.real)!r} {float(z.imag)!r}")
    with open(os.fspath(path), "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_state(path, tol=DEFAULT_TOLERANCES):
    with open(os.fspath(path)) as fh:
        raw = fh.readlines()
    header = None
    mat = None
    expected = 0
    for lineno, line in enumerate(raw, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        fields = text.split()
        if header is None:
            if len(fields) != 2:
                raise StateFileError("header must be 'm n'", lineno)
            try:
                m, n = int(fields[0]), int(fields[1])
            except ValueError:
                raise StateFileError(f"non-integer dimensions {text!r}", lineno) from None
            if m < 1 or n < 1:
                raise StateFileError(f"dimensions must be positive, got {m} {n}", lineno)
            header = (m, n)
            d = m * n
            mat = np.zeros((d, d), dtype=complex)
            continue
        if len(fields) != 4:
            raise StateFileError(f"expected 'i j re im', got {text!r}", lineno)
        try:
            i, j = int(fields[0]), int(fields[1])
            re, im = float(fields[2]), float(fields[3])
        except ValueError:
            raise StateFileError(f"cannot parse entry {text!r}", lineno) from None
        if expected >= d * d:
            raise StateFileError(f"too many entries; expected {d * d}", lineno)
        if (i, j) != divmod(expected, d):
            raise StateFileError(f"entry ({i}, {j}) out of row-major order; expected {divmod(expected, d)}",
                                 lineno)
        mat[i, j] = complex(re, im)
        expected += 1
    if header is None:
        raise StateFileError("empty state file")
    if expected != d * d:
        raise StateFileError(f"expected {d * d} entries, found {expected}")
    return DensityMatrix(mat, header[0], header[1], tol)
