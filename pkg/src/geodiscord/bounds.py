"""Lower bounds on the geometric discord and the certificates behind them.

The main quantity is

    D(rho) >= 2/(m^2 n) * (|x|^2 + (2/n) |T|^2 - sum_{j<m} eta_j)

with eta the non-increasing spectrum of G = x x^t + (2/n) T T^t. It comes
from maximizing tr(A C C^t A^t) over *relaxed* isometries A whose rows are
built from a regular simplex of unit vectors e_1..e_m aligned with the top
m - 1 eigenvectors of G. For m > 2 such rows need not be coherence vectors
of an actual measurement basis, so the optimal A here is a certificate for
the bound and not a measurement.
"""
from dataclasses import dataclass
import math

import numpy as np

from .bloch import BlochRep, CMatrix, build_c_matrix, decompose
from .errors import ValidationError
from .linalg import sym_eigen

DOMINANCE_TOL = 1e-10
INTERLACING_TOL = 1e-9


@dataclass(frozen=True)
class GramMatrix:
    G: np.ndarray
    eta: np.ndarray
    F: np.ndarray  # eigenvectors as columns, matching eta


def gram_matrix(b):
    G = np.outer(b.x, b.x) + (2.0 / b.n) * (b.T @ b.T.T)
    G = 0.5 * (G + G.T)
    eta, F = sym_eigen(G)
    return GramMatrix(G, eta, F)


def tight_bound(b, gram=None):
    """Raw value of the tight lower bound (can dip below zero only by roundoff)."""
    if b.m < 2:
        raise ValidationError(f"tight bound needs m >= 2, got {b.m}")
    g = gram if gram is not None else gram_matrix(b)
    m, n = b.m, b.n
    top = float(np.sum(g.eta[: m - 1]))
    return 2.0 / (m * m * n) * (float(b.x @ b.x) + (2.0 / n) * float(np.sum(b.T ** 2)) - top)


def luo_fu_bound(c, spectrum=None):
    """tr(CC^t) minus the m largest eigenvalues of CC^t."""
    cct = c.cct()
    lam = spectrum if spectrum is not None else sym_eigen(0.5 * (cct + cct.T)).eigenvalues
    return float(np.trace(cct)) - float(np.sum(lam[: c.m]))


@dataclass(frozen=True)
class BoundsReport:
    m: int
    n: int
    tight_bound: float
    tight_bound_clamped: float
    luo_fu_bound: float
    tr_cct: float
    eta: np.ndarray
    lam: np.ndarray
    dominance_ok: bool


def compute_bounds(b):
    """Both bounds plus the spectra they are built from."""
    g = gram_matrix(b)
    c = build_c_matrix(b)
    cct = c.cct()
    lam = sym_eigen(0.5 * (cct + cct.T)).eigenvalues
    tight = tight_bound(b, g)
    lf = luo_fu_bound(c, lam)
    return BoundsReport(
        m=b.m,
        n=b.n,
        tight_bound=tight,
        tight_bound_clamped=max(tight, 0.0),
        luo_fu_bound=lf,
        tr_cct=float(np.trace(cct)),
        eta=g.eta,
        lam=lam,
        dominance_ok=tight >= lf - DOMINANCE_TOL,
    )


def state_bounds(rho):
    """compute_bounds(decompose(rho)) for a DensityMatrix with a declared bipartition."""
    return compute_bounds(decompose(rho))


# -- optimal relaxed isometry -------------------------------------------------

def epsilon_table(m):
    """Coefficients of e_j in the eigenbasis of G: row j-1 holds eps^(j)_1..eps^(j)_j.

    The diagonal takes the positive root, the sub-diagonal entries the
    negative one; eps^(j)_i for i < j does not depend on j.
    """
    if m < 2:
        raise ValidationError(f"isometry needs m >= 2, got {m}")
    eps = np.zeros((m - 1, m - 1))
    eps[0, 0] = 1.0
    for j in range(2, m):
        for i in range(1, j):
            eps[j - 1, i - 1] = -math.sqrt(m) / math.sqrt((m - 1) * (m - i + 1) * (m - i))
        eps[j - 1, j - 1] = math.sqrt(m / (m - 1) * (m - j) / (m - j + 1))
    return eps


def coefficient_identity(m, k, eps=None):
    """sum_{j>=k} (eps^(j)_k)^2 + sum_{k<=i<j} eps^(i)_k eps^(j)_k; equals m / (2(m-1))."""
    eps = epsilon_table(m) if eps is None else eps
    col = eps[:, k - 1]  # eps^(j)_k for j = 1..m-1
    total = sum(col[j - 1] ** 2 for j in range(k, m))
    total += sum(col[i - 1] * col[j - 1] for i in range(k, m - 1) for j in range(i + 1, m))
    return float(total)


@dataclass(frozen=True)
class IsometryConstruction:
    m: int
    E: np.ndarray      # (m, m^2-1): rows e_1..e_m, e_m = -(e_1 + ... + e_{m-1})
    eps: np.ndarray    # (m-1, m-1) lower triangular
    A: np.ndarray      # (m, m^2): rows (1/sqrt m)(1, sqrt(m-1) e_k)


def build_optimal_isometry(m, F):
    """Relaxed isometry maximizing tr(A CC^t A^t) for a G with eigenvector columns F."""
    if m < 2:
        raise ValidationError(f"isometry needs m >= 2, got {m}")
    F = np.asarray(F, dtype=float)
    if F.ndim != 2 or F.shape[0] != m * m - 1 or F.shape[1] < m - 1:
        raise ValidationError(f"need >= {m - 1} eigenvector columns in R^{m * m - 1}, got {F.shape}")
    eps = epsilon_table(m)
    head = eps @ F[:, : m - 1].T
    E = np.vstack([head, -head.sum(axis=0)])
    A = np.hstack([np.ones((m, 1)), math.sqrt(m - 1) * E]) / math.sqrt(m)
    return IsometryConstruction(m, E, eps, A)


def closed_form_maximum(b, eta):
    m, n = b.m, b.n
    return (1.0 / (m * n) + 2.0 / (n * n * m) * float(b.y @ b.y)
            + 2.0 / (m * m * n) * float(np.sum(eta[: m - 1])))


def verify_closed_form_maximum(b):
    """(direct, closed_form): tr(A* CC^t A*^t) evaluated both ways."""
    g = gram_matrix(b)
    iso = build_optimal_isometry(b.m, g.F)
    c = build_c_matrix(b).entries
    ac = iso.A @ c
    direct = float(np.sum(ac * ac))
    return direct, closed_form_maximum(b, g.eta)


# -- interlacing ----------------------------------------------------------------

@dataclass(frozen=True)
class InterlacingReport:
    lam_up: np.ndarray        # spectrum of CC^t, ascending
    eta_up: np.ndarray        # spectrum of (2/m^2 n) G, ascending
    a: float
    u: np.ndarray
    border_error: float       # max |bordered - CC^t|
    trace_gap: float          # |a + sum eta' - tr CC^t|
    holds: bool


def bordered_form(c):
    """(a, u, scaled G) with CC^t = [[a, u^t], [u, (2/m^2 n) G]]."""
    m, n = c.m, c.n
    x, y, T = c.blocks()
    a = 1.0 / (m * n) + 2.0 / (n * n * m) * float(y @ y)
    u = (math.sqrt(2.0) / (m * n * math.sqrt(m))) * x + (2.0 * math.sqrt(2.0) / (m * n * n * math.sqrt(m))) * (T @ y)
    G = np.outer(x, x) + (2.0 / n) * (T @ T.T)
    return a, u, (2.0 / (m * m * n)) * G


def interlacing_report(c, tol=INTERLACING_TOL):
    a, u, g_scaled = bordered_form(c)
    g_scaled = 0.5 * (g_scaled + g_scaled.T)
    bordered = np.block([[np.array([[a]]), u[None, :]], [u[:, None], g_scaled]])
    cct = c.cct()
    border_error = float(np.max(np.abs(bordered - cct)))
    lam_up = sym_eigen(0.5 * (cct + cct.T)).eigenvalues[::-1]
    eta_up = sym_eigen(g_scaled).eigenvalues[::-1]
    # lam_1 <= eta_1 <= lam_2 <= ... <= eta_{N-1} <= lam_N
    ok = bool(np.all(lam_up[:-1] <= eta_up + tol) and np.all(eta_up <= lam_up[1:] + tol))
    trace_gap = abs(a + float(np.sum(eta_up)) - float(np.trace(cct)))
    holds = ok and border_error <= tol
    return InterlacingReport(lam_up, eta_up, a, u, border_error, trace_gap, holds)


def verify_interlacing(c):
    return interlacing_report(c).holds
