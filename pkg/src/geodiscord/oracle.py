"""Independent checks on the bounds: measurement-based distances and exact cases.

Every von Neumann measurement on A maps rho to a classical-quantum state, so
``distance_after_measurement`` is an upper bound on the geometric discord
for any basis. Minimizing it over the Bloch sphere is exact when A is a
qubit. For m >= 3 only Monte-Carlo upper bounds are produced.
"""
from dataclasses import dataclass
import math

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import ValidationError
from .states import DensityMatrix, random_unitary

PAULI = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex)
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class MeasurementBasis:
    """Orthonormal kets of subsystem A, stored as the columns of ``kets``."""

    kets: np.ndarray

    def __post_init__(self):
        k = np.array(self.kets, dtype=complex)
        if k.ndim != 2 or k.shape[0] != k.shape[1]:
            raise ValidationError(f"basis needs a square matrix of kets, got shape {k.shape}")
        err = float(np.max(np.abs(k.conj().T @ k - np.eye(k.shape[0]))))
        if err > DEFAULT_TOLERANCES.orthonormality:
            raise ValidationError(f"kets are not orthonormal (Gram error {err:.3e})")
        k.setflags(write=False)
        object.__setattr__(self, "kets", k)

    @property
    def m(self):
        return self.kets.shape[0]

    @classmethod
    def computational(cls, m):
        return cls(np.eye(m))

    @classmethod
    def from_bloch_direction(cls, direction):
        """Qubit basis {|+n>, |-n>} for a unit vector n (projectors (I +/- n.sigma)/2)."""
        nx, ny, nz = np.asarray(direction, dtype=float) / np.linalg.norm(direction)
        theta = math.acos(max(-1.0, min(1.0, nz)))
        phi = math.atan2(ny, nx)
        plus = np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])
        minus = np.array([-np.exp(-1j * phi) * math.sin(theta / 2), math.cos(theta / 2)])
        return cls(np.column_stack([plus, minus]))

    def projectors(self):
        k = self.kets
        return np.einsum("ak,bk->kab", k, k.conj())


@dataclass(frozen=True)
class OracleResult:
    value: float
    argmin: MeasurementBasis
    evaluations: int
    upper_bound_only: bool = False


def _dims(rho, basis):
    if not isinstance(rho, DensityMatrix):
        raise ValidationError("expected a DensityMatrix")
    if rho.m is None:
        raise ValidationError("state has no declared bipartition")
    if basis.m != rho.m:
        raise ValidationError(f"basis dimension {basis.m} does not match subsystem A dimension {rho.m}")
    return rho.m, rho.n


def _dephase(mat, kets, m, n):
    # keep only the blocks <k|.|k> of A in the given basis
    r = mat.reshape(m, n, m, n)
    rk = np.einsum("ak,abcd,cl->kbld", kets.conj(), r, kets)
    diag = np.zeros_like(rk)
    idx = np.arange(m)
    diag[idx, :, idx, :] = rk[idx, :, idx, :]
    out = np.einsum("ak,kbld,cl->abcd", kets, diag, kets.conj())
    return out.reshape(m * n, m * n)


def apply_measurement(rho, basis):
    """sum_k (P_k (x) I) rho (P_k (x) I) for P_k = |k><k|."""
    m, n = _dims(rho, basis)
    return DensityMatrix(_dephase(rho.matrix, basis.kets, m, n), m, n)


def distance_after_measurement(rho, basis):
    """tr(rho - Pi(rho))^2."""
    m, n = _dims(rho, basis)
    diff = rho.matrix - _dephase(rho.matrix, basis.kets, m, n)
    return float(np.sum(np.abs(diff) ** 2))


def fibonacci_sphere(count):
    i = np.arange(count) + 0.5
    z = 1.0 - 2.0 * i / count
    r = np.sqrt(1.0 - z * z)
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _qubit_objective(mat, n):
    """Vectorized distance for unit directions (N, 3) under the qubit measurement they define.

    Pinching is an orthogonal projection in Hilbert-Schmidt space, so
    |rho - Pi(rho)|^2 = |rho|^2 - sum_k |(P_k (x) I) rho (P_k (x) I)|^2.
    """
    r = mat.reshape(2, n, 2, n)
    purity = float(np.sum(np.abs(mat) ** 2))

    def f(dirs):
        dirs = np.atleast_2d(dirs)
        nsig = np.einsum("Ni,iab->Nab", dirs, PAULI)
        eye = np.eye(2)
        total = np.zeros(len(dirs))
        for sign in (1.0, -1.0):
            p = 0.5 * (eye + sign * nsig)
            blk = np.einsum("Nac,cbde,Ndf->Nabfe", p, r, p)
            total += np.sum(np.abs(blk) ** 2, axis=(1, 2, 3, 4))
        return purity - total

    return f


def _frame(n0):
    """Orthonormal frame (t1, t2, n0) with n0 as the local 'x' axis of spherical coordinates."""
    helper = np.array([0.0, 0.0, 1.0]) if abs(n0[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    t1 = np.cross(n0, helper)
    t1 /= np.linalg.norm(t1)
    t2 = np.cross(n0, t1)
    return t1, t2


def _golden_section(f, lo, hi, steps):
    c = hi - GOLDEN * (hi - lo)
    d = lo + GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(steps):
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + GOLDEN * (hi - lo)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def minimize_qubit_measurement(rho, grid=2000, refine=40, rounds=30):
    """Minimum of distance_after_measurement over qubit measurements on A.

    A Fibonacci grid of ``grid`` directions seeds the search; the best point
    is then polished by alternating golden-section searches (``refine``
    steps each) over the two spherical angles of a frame centred on the
    current best direction, so the search never sits on a coordinate pole.
    """
    if not isinstance(rho, DensityMatrix) or rho.m is None:
        raise ValidationError("expected a DensityMatrix with a declared bipartition")
    if rho.m != 2:
        raise ValidationError(f"qubit measurement search needs m = 2, got m = {rho.m}")
    if grid < 1 or refine < 0:
        raise ValidationError("grid must be >= 1 and refine >= 0")
    f = _qubit_objective(rho.matrix, rho.n)
    pts = fibonacci_sphere(grid)
    vals = f(pts)
    evaluations = grid
    best = int(np.argmin(vals))
    n0, f0 = pts[best], float(vals[best])
    half_width = 2.0 * math.sqrt(4.0 * math.pi / grid)

    for _ in range(rounds):
        start = f0
        for which in (0, 1):
            axis = _frame(n0)[which]
            base = n0

            def along(angle):
                d = math.cos(angle) * base + math.sin(angle) * axis
                return float(f(d / np.linalg.norm(d))[0])

            ang, val = _golden_section(along, -half_width, half_width, refine)
            evaluations += refine + 2
            if val < f0:
                n0 = math.cos(ang) * base + math.sin(ang) * axis
                n0 = n0 / np.linalg.norm(n0)
                f0 = val
        if start - f0 <= 1e-16:
            break
        # later rounds only chase the coupling between the two angles
        half_width = max(half_width * 0.5, 1e-6)

    basis = MeasurementBasis.from_bloch_direction(n0)
    return OracleResult(distance_after_measurement(rho, basis), basis, evaluations)


def sample_measurement_upper_bound(rho, samples, seed, include=()):
    """Minimum distance over Haar-random bases of A (plus any ``include``d bases).

    Sample ``i`` draws from ``numpy.random.default_rng([*seed, i])`` (PCG64;
    an int seed counts as a one-element sequence), so the result does not
    depend on evaluation order.
    """
    if not isinstance(rho, DensityMatrix) or rho.m is None:
        raise ValidationError("expected a DensityMatrix with a declared bipartition")
    if samples < 1 and not include:
        raise ValidationError("samples must be >= 1")
    m = rho.m
    prefix = [int(s) for s in np.atleast_1d(seed)]
    best_val, best_basis = math.inf, None
    candidates = [MeasurementBasis(random_unitary(m, np.random.default_rng(prefix + [i])))
                  for i in range(samples)]
    candidates.extend(include)
    for basis in candidates:
        val = distance_after_measurement(rho, basis)
        if val < best_val:
            best_val, best_basis = val, basis
    return OracleResult(best_val, best_basis, len(candidates), upper_bound_only=True)


def _largest_symmetric_eigenvalue_3x3(k):
    """Closed-form (trigonometric) largest eigenvalue of a real symmetric 3x3 matrix."""
    q = np.trace(k) / 3.0
    off = k[0, 1] ** 2 + k[0, 2] ** 2 + k[1, 2] ** 2
    p2 = (k[0, 0] - q) ** 2 + (k[1, 1] - q) ** 2 + (k[2, 2] - q) ** 2 + 2.0 * off
    if p2 <= 1e-300:
        return float(q)
    p = math.sqrt(p2 / 6.0)
    bmat = (k - q * np.eye(3)) / p
    r = max(-1.0, min(1.0, np.linalg.det(bmat) / 2.0))
    return float(q + 2.0 * p * math.cos(math.acos(r) / 3.0))


def dakic_two_qubit(b):
    """Exact two-qubit geometric discord (1/4)(|x|^2 + |T|^2 - k_max), k_max = top eigenvalue of xx^t + TT^t."""
    if b.m != 2 or b.n != 2:
        raise ValidationError(f"two-qubit formula needs m = n = 2, got {(b.m, b.n)}")
    k = np.outer(b.x, b.x) + b.T @ b.T.T
    kmax = _largest_symmetric_eigenvalue_3x3(0.5 * (k + k.T))
    return 0.25 * (float(b.x @ b.x) + float(np.sum(b.T ** 2)) - kmax)


def make_classical_quantum(p, basis, rhos):
    """sum_k p_k |k><k| (x) rho_k: a zero-discord state."""
    p = np.asarray(p, dtype=float)
    tol = DEFAULT_TOLERANCES.probability
    if p.ndim != 1 or len(p) != basis.m:
        raise ValidationError(f"need {basis.m} probabilities, got shape {p.shape}")
    if np.any(p < -tol) or abs(p.sum() - 1.0) > tol:
        raise ValidationError(f"probabilities must be nonnegative and sum to 1, got {p.tolist()}")
    if len(rhos) != basis.m:
        raise ValidationError(f"need {basis.m} conditional states, got {len(rhos)}")
    rhos = [DensityMatrix(r) for r in rhos]
    n = rhos[0].dim
    if any(r.dim != n for r in rhos):
        raise ValidationError("conditional states must share one dimension")
    m = basis.m
    out = np.zeros((m * n, m * n), dtype=complex)
    for pk, ket, rk in zip(p, basis.kets.T, rhos):
        out += pk * np.kron(np.outer(ket, ket.conj()), rk.matrix)
    return DensityMatrix(out, m, n)
