"""Invariant suite run by ``geodiscord verify`` on random states.

Each check returns (ok, detail). Checks are grouped per state; the
coefficient identity is dimension-only and runs once per m.
"""
from collections import OrderedDict
import math

import numpy as np

from .bloch import build_c_matrix, build_generator_basis, decompose, reconstruct
from .bounds import (
    DOMINANCE_TOL,
    build_optimal_isometry,
    coefficient_identity,
    compute_bounds,
    gram_matrix,
    interlacing_report,
    verify_closed_form_maximum,
)
from .linalg import partial_trace
from .oracle import minimize_qubit_measurement, sample_measurement_upper_bound
from .states import random_state

SUPPORTED_DIMS = ((2, 2), (2, 3), (3, 2), (3, 3), (3, 4))

IDENTITY_TOL = 1e-10
COEFFICIENT_TOL = 1e-12
EXACTNESS_TOL = 1e-5
SANDWICH_TOL = 1e-6


def eq19_trace(b):
    """tr(CC^t) expanded in x, y, T."""
    m, n = b.m, b.n
    return (1.0 / (m * n) + 2.0 / (n * n * m) * float(b.y @ b.y)
            + 2.0 / (m * m * n) * float(b.x @ b.x) + 4.0 / (n * n * m * m) * float(np.sum(b.T ** 2)))


def isometry_errors(iso):
    """Max deviations of the constructed isometry from its defining properties."""
    m = iso.m
    gram_e = iso.E[: m - 1] @ iso.E[: m - 1].T
    target = np.full((m - 1, m - 1), -1.0 / (m - 1))
    np.fill_diagonal(target, 1.0)
    col_sums = iso.A.sum(axis=0)
    expected_sums = np.zeros(iso.A.shape[1])
    expected_sums[0] = math.sqrt(m)
    return {
        "unit_and_simplex": float(np.max(np.abs(gram_e - target))),
        "orthonormal_rows": float(np.max(np.abs(iso.A @ iso.A.T - np.eye(m)))),
        "column_sums": float(np.max(np.abs(col_sums - expected_sums))),
    }


def check_state(rho, seed=0, mc_samples=200):
    """Run every per-state check; returns OrderedDict name -> (ok, detail)."""
    results = OrderedDict()
    m, n = rho.m, rho.n
    b = decompose(rho)
    c = build_c_matrix(b)
    cct = c.cct()

    err = float(np.max(np.abs(reconstruct(b) - rho.matrix)))
    results["bloch_roundtrip"] = (err <= IDENTITY_TOL, err)

    tr_cct = float(np.trace(cct))
    err = abs(tr_cct - eq19_trace(b))
    results["trace_expansion"] = (err <= IDENTITY_TOL, err)

    err = abs(tr_cct - rho.purity)
    results["purity_bridge"] = (err <= IDENTITY_TOL, err)

    rho_a = partial_trace(rho.matrix, (m, n), "A")
    gens = build_generator_basis(m).generators
    x_marg = (m / 2.0) * np.einsum("ab,iba->i", rho_a, gens).real
    err = float(np.max(np.abs(x_marg - b.x)))
    results["marginal_consistency"] = (err <= IDENTITY_TOL, err)

    direct, closed = verify_closed_form_maximum(b)
    err = abs(direct - closed)
    results["closed_form_maximum"] = (err <= IDENTITY_TOL, err)

    iso = build_optimal_isometry(m, gram_matrix(b).F)
    err = max(isometry_errors(iso).values())
    results["isometry"] = (err <= IDENTITY_TOL, err)

    rep = compute_bounds(b)
    gap = rep.tight_bound - rep.luo_fu_bound
    results["dominance"] = (gap >= -DOMINANCE_TOL, gap)

    il = interlacing_report(c)
    results["interlacing"] = (il.holds, il.border_error)

    err = max(il.trace_gap, abs(tr_cct - float(np.sum(il.lam_up))))
    results["trace_bookkeeping"] = (err <= IDENTITY_TOL, err)

    if m == 2:
        oracle = minimize_qubit_measurement(rho)
        err = abs(oracle.value - rep.tight_bound)
        results["qubit_exactness"] = (err <= EXACTNESS_TOL, err)
    else:
        oracle = sample_measurement_upper_bound(rho, mc_samples, seed)
        slack = oracle.value - rep.tight_bound_clamped
        results["sandwich"] = (slack >= -SANDWICH_TOL, slack)
    return results


def state_seed(seed, m, n, index):
    return [seed, m, n, index]


def run_suite(dims_list=SUPPORTED_DIMS, instances=50, seed=0, mc_samples=200, extra_states=()):
    """Aggregate pass counts: OrderedDict check -> [passed, total, worst_detail]."""
    tally = OrderedDict()

    def record(name, ok, detail):
        entry = tally.setdefault(name, [0, 0, None])
        entry[0] += int(ok)
        entry[1] += 1
        if not ok and entry[2] is None:
            entry[2] = detail

    for m in sorted({m for m, _ in dims_list} | {3, 4, 5}):
        if m < 3:
            continue
        for k in range(2, m):
            err = abs(coefficient_identity(m, k) - m / (2.0 * (m - 1)))
            record("coefficient_identity", err <= COEFFICIENT_TOL, err)

    for m, n in dims_list:
        d = m * n
        for i in range(instances):
            rank = 1 + i % d
            s = state_seed(seed, m, n, i)
            rho = random_state(d, rank=rank, seed=s, dims=(m, n))
            for name, (ok, detail) in check_state(rho, seed=s, mc_samples=mc_samples).items():
                record(name, ok, detail)

    for label, rho in extra_states:
        for name, (ok, detail) in check_state(rho, seed=[seed], mc_samples=mc_samples).items():
            record(name, ok, detail)
    return tally
