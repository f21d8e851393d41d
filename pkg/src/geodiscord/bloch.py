"""Generalized Gell-Mann bases and the Bloch (coherence vector) representation.

A bipartite operator on C^m (x) C^n is written as

    rho = (1/mn) (I (x) I + sum_i x_i L_i (x) I + sum_j y_j I (x) K_j
                  + sum_ij T_ij L_i (x) K_j)

with L_i, K_j traceless Hermitian generators normalized to tr(L_i L_j) = 2 delta_ij.
"""
from dataclasses import dataclass, field
from functools import lru_cache
import math

import numpy as np

from .errors import ValidationError
from .states import DensityMatrix


@dataclass(frozen=True)
class GeneratorBasis:
    """The d^2 - 1 generators of SU(d), stacked along axis 0.

    Ordering: symmetric off-diagonal (j, k) for j < k lexicographic, then the
    antisymmetric ones in the same order, then the diagonal family.
    """

    d: int
    generators: np.ndarray

    def __len__(self):
        return self.generators.shape[0]

    def __getitem__(self, i):
        return self.generators[i]

    def permuted(self, order):
        """Same generators in a different order (bounds must not care)."""
        order = np.asarray(order)
        if sorted(order.tolist()) != list(range(len(self))):
            raise ValidationError("order must be a permutation of the generator indices")
        g = self.generators[order]
        g.setflags(write=False)
        return GeneratorBasis(self.d, g)


@lru_cache(maxsize=None)
def build_generator_basis(d):
    if d < 2:
        raise ValidationError(f"generator basis needs d >= 2, got {d}")
    sym, asym, diag = [], [], []
    for j in range(d):
        for k in range(j + 1, d):
            s = np.zeros((d, d), dtype=complex)
            s[j, k] = s[k, j] = 1.0
            sym.append(s)
            a = np.zeros((d, d), dtype=complex)
            a[j, k] = -1j
            a[k, j] = 1j
            asym.append(a)
    for l in range(1, d):
        g = np.zeros((d, d), dtype=complex)
        g[np.arange(l), np.arange(l)] = 1.0
        g[l, l] = -l
        diag.append(g * math.sqrt(2.0 / (l * (l + 1))))
    gens = np.array(sym + asym + diag)
    gens.setflags(write=False)
    return GeneratorBasis(d, gens)


def orthonormal_operator_basis(basis):
    """X_1 = I/sqrt(d), X_i = L_{i-1}/sqrt(2): an orthonormal Hermitian basis of L(C^d)."""
    d = basis.d
    return np.concatenate([np.eye(d, dtype=complex)[None] / math.sqrt(d),
                           basis.generators / math.sqrt(2.0)])


@dataclass(frozen=True)
class BlochRep:
    m: int
    n: int
    x: np.ndarray
    y: np.ndarray
    T: np.ndarray
    basis_a: GeneratorBasis = field(default=None, repr=False, compare=False)
    basis_b: GeneratorBasis = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        m, n = self.m, self.n
        if m < 2 or n < 2:
            raise ValidationError(f"subsystem dimensions must be >= 2, got {(m, n)}")
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        T = np.asarray(self.T, dtype=float)
        if x.shape != (m * m - 1,) or y.shape != (n * n - 1,) or T.shape != (m * m - 1, n * n - 1):
            raise ValidationError(
                f"Bloch shapes x{x.shape} y{y.shape} T{T.shape} do not match dims {(m, n)}"
            )
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "T", T)
        if self.basis_a is None:
            object.__setattr__(self, "basis_a", build_generator_basis(m))
        if self.basis_b is None:
            object.__setattr__(self, "basis_b", build_generator_basis(n))
        if self.basis_a.d != m or self.basis_b.d != n:
            raise ValidationError("generator bases do not match subsystem dimensions")


def _as_matrix(rho):
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def decompose(rho, m=None, n=None, basis_a=None, basis_b=None):
    """Coherence vectors x, y and correlation matrix T of a bipartite state.

    ``rho`` may be a DensityMatrix (validated at construction; its bipartition
    is used when m, n are omitted) or a raw array, which is validated here.
    """
    if isinstance(rho, DensityMatrix):
        m = rho.m if m is None else m
        n = rho.n if n is None else n
        mat = rho.matrix
    else:
        if m is None or n is None:
            raise ValidationError("dims (m, n) are required for a raw matrix")
        mat = DensityMatrix(rho, m, n).matrix
    if m is None or n is None:
        raise ValidationError("state has no declared bipartition")
    if mat.shape != (m * n, m * n):
        raise ValidationError(f"state of shape {mat.shape} does not match dims {(m, n)}")
    la = basis_a if basis_a is not None else build_generator_basis(m)
    lb = basis_b if basis_b is not None else build_generator_basis(n)
    r = mat.reshape(m, n, m, n)
    # tr(rho (L (x) I)) and friends, with r[a, b, c, d] = <ab|rho|cd>
    x = (m / 2.0) * np.einsum("abcb,ica->i", r, la.generators).real
    y = (n / 2.0) * np.einsum("abad,jdb->j", r, lb.generators).real
    T = (m * n / 4.0) * np.einsum("abcd,ica,jdb->ij", r, la.generators, lb.generators).real
    return BlochRep(m, n, x, y, T, la, lb)


def reconstruct(b):
    """Operator of a Bloch tuple. Hermitian and unit-trace; positivity is not checked."""
    m, n = b.m, b.n
    la, lb = b.basis_a.generators, b.basis_b.generators
    op = np.eye(m * n, dtype=complex)
    op += np.kron(np.einsum("i,iab->ab", b.x, la), np.eye(n))
    op += np.kron(np.eye(m), np.einsum("j,jab->ab", b.y, lb))
    op += np.einsum("ij,iac,jbd->abcd", b.T, la, lb).reshape(m * n, m * n)
    return op / (m * n)


@dataclass(frozen=True)
class CMatrix:
    """Coefficients c_ij = tr(rho X_i (x) Y_j) in the orthonormal product basis."""

    m: int
    n: int
    entries: np.ndarray

    def cct(self):
        return self.entries @ self.entries.T

    def blocks(self):
        """Recover (x, y, T) from the block layout."""
        m, n, c = self.m, self.n, self.entries
        y = c[0, 1:] * n * math.sqrt(m) / math.sqrt(2.0)
        x = c[1:, 0] * m * math.sqrt(n) / math.sqrt(2.0)
        T = c[1:, 1:] * m * n / 2.0
        return x, y, T


def build_c_matrix(b):
    m, n = b.m, b.n
    c = np.empty((m * m, n * n))
    c[0, 0] = 1.0 / math.sqrt(m * n)
    c[0, 1:] = math.sqrt(2.0) / (n * math.sqrt(m)) * b.y
    c[1:, 0] = math.sqrt(2.0) / (m * math.sqrt(n)) * b.x
    c[1:, 1:] = 2.0 / (m * n) * b.T
    return CMatrix(m, n, c)
