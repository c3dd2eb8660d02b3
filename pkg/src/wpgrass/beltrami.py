"""Neumann-series construction of the Beltrami basis: for each n >= 1 the
unique solution w^(n) of  dbar w = mu d w  with  d w - n z^{n-1} in L^2,
boundary mean zero, built from the geometric series nu = sum_m T(mu .)^m."""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .circle_space import FourierCoefficients
from .disk_field import BeltramiCoefficient, DiskField
from .errors import ContractionError
from .transforms import beurling_T, cauchy_P, d_z, d_zbar

_DROP_FACTOR = 1e-18


@dataclass
class SolutionEntry:
    """One basis function: nu^(n), the interior/exterior tail of w^(n) - z^n,
    the boundary trace, and the Neumann bookkeeping."""

    n: int
    nu: DiskField
    w_tail: DiskField
    boundary: FourierCoefficients
    depth: int
    tail_bound: float

    def w_interior(self) -> DiskField:
        return self.w_tail + DiskField.power_z(self.n)


@dataclass
class SolutionBasis:
    mu: BeltramiCoefficient
    entries: dict[int, SolutionEntry]

    def export_json(self) -> str:
        rows = []
        for n in sorted(self.entries):
            e = self.entries[n]
            bc = e.boundary
            rows.append(
                {
                    "n": n,
                    "depth": e.depth,
                    "tail_bound": e.tail_bound,
                    "boundary": [[k, bc[k].real, bc[k].imag] for k in bc.modes()],
                }
            )
        return json.dumps({"sup_norm": self.mu.sup_norm, "entries": rows})


def _mu_times(mu_field: DiskField, u: DiskField, n: int) -> DiskField:
    """mu * (u + z^{n-1}); the z^{n-1} term enters only under the compactly
    supported mu, never alone."""
    out = mu_field.multiply(u) if u.modes else DiskField.zero()
    return out + mu_field.shifted(n - 1, n - 1)


def neumann_nu(n: int, mu: BeltramiCoefficient, tol: float = 1e-8):
    """nu^(n) = sum_{m>=1} T_m with T_1 = T(mu z^{n-1}), T_m = T(mu T_{m-1}).

    The depth M is chosen a priori from the geometric bound
    c0^M/(1-c0) * ||mu z^{n-1}||_2 < tol (T is an isometry and |mu| <= c0),
    then the fixed-point residual ||nu - T(mu(nu + z^{n-1}))||_2, which equals
    ||T_{M+1}||_2, is verified to be < 2 tol. Returns (nu, depth, tail_bound).
    """
    c0 = mu.sup_norm
    if c0 >= 1.0:
        raise ContractionError(f"sup |mu| = {c0} >= 1; Neumann series does not contract")
    first_src = mu.field.shifted(n - 1, n - 1)
    b0 = first_src.l2_norm(include_exterior=False)
    if b0 == 0.0:
        return DiskField.zero(), 0, 0.0
    drop = _DROP_FACTOR * b0
    if c0 == 0.0:
        depth = 1
    else:
        depth = max(1, math.ceil(math.log(tol * (1.0 - c0) / b0) / math.log(c0))) if b0 > tol * (
            1.0 - c0
        ) else 1
    term = beurling_T(first_src)
    nu = term.copy()
    m = 1
    while m < depth:
        term = beurling_T(mu.field.multiply(term)).drop_small(drop)
        nu = nu + term
        m += 1
    # a posteriori fixed-point residual: the next term of the series
    nxt = beurling_T(mu.field.multiply(term)) if c0 > 0 else DiskField.zero()
    while nxt.l2_norm() >= 2.0 * tol and m < depth + 50:
        nu = nu + nxt
        term = nxt
        nxt = beurling_T(mu.field.multiply(term)).drop_small(drop)
        m += 1
    tail_bound = (c0**m / (1.0 - c0)) * b0 if c0 > 0 else 0.0
    return nu, m, tail_bound


def solve_w(n: int, mu: BeltramiCoefficient, tol: float = 1e-8) -> SolutionEntry:
    """w^(n) = z^n + n P(mu (nu^(n) + z^{n-1})), normalized to boundary mean 0.

    The raw Cauchy transform carries a constant (from angular-mode-1 sources);
    constants solve the equation, so subtracting the boundary mean preserves
    both differential conditions and enforces the third. The boundary trace
    then has positive Fourier content exactly at mode n with coefficient 1.
    """
    nu, depth, tail_bound = neumann_nu(n, mu, tol)
    source = _mu_times(mu.field, nu, n)
    w_tail = cauchy_P(source) * float(n)
    const = w_tail.exterior.get(0, 0.0 + 0.0j)
    if const != 0:
        w_tail = w_tail - DiskField({0: np.array([const])}, {0: const})
    boundary = FourierCoefficients(
        {j: c for j, c in w_tail.exterior.items() if j <= -1} | {n: 1.0 + 0.0j}
    )
    return SolutionEntry(n, nu, w_tail, boundary, depth, tail_bound)


def basis(mu: BeltramiCoefficient, trunc_n: int, tol: float = 1e-8) -> SolutionBasis:
    """Solution basis for n = 1..N; entries are independent, so the map over n
    parallelizes over WPG_THREADS with shared read-only mu."""
    workers = int(os.environ.get("WPG_THREADS", "1") or "1")
    ns = list(range(1, trunc_n + 1))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(lambda n: solve_w(n, mu, tol), ns))
    else:
        entries = [solve_w(n, mu, tol) for n in ns]
    return SolutionBasis(mu, {e.n: e for e in entries})


def residual(entry: SolutionEntry, mu: BeltramiCoefficient):
    """Diagnostics for the three defining conditions of w^(n).

    Returns (pde, mean, tail_modes): the interior L^2 residual of
    dbar w - mu d w, the absolute boundary mean, and the interior L^2 norm of
    d w - n z^{n-1} - n nu. Derivatives are taken by the Wirtinger monomial
    rules, a code path independent of the kernel integrals that built w.
    """
    n = entry.n
    w = entry.w_interior()
    dw = d_z(w)
    dbw = d_zbar(w)
    pde = (dbw - mu.field.multiply(dw)).l2_norm(include_exterior=False)
    mean = abs(entry.boundary[0])
    drift = dw - DiskField.power_z(n - 1, float(n)) - entry.nu * float(n)
    tail_modes = drift.l2_norm(include_exterior=False)
    return pde, mean, tail_modes


def gram_matrix(sol: SolutionBasis) -> np.ndarray:
    """L^2(S^1) Gram matrix of the boundary traces."""
    ns = sorted(sol.entries)
    g = np.zeros((len(ns), len(ns)), dtype=complex)
    for i, m in enumerate(ns):
        bm = sol.entries[m].boundary
        for j, n in enumerate(ns):
            bn = sol.entries[n].boundary
            g[i, j] = sum(bm[k] * bn[k].conjugate() for k in set(bm.modes()) | set(bn.modes()))
    return g


def power_span_diagnostic(sol: SolutionBasis, max_modes: int = 400) -> float:
    """Distance (in l^2 of Fourier modes) between powers of the first trace
    and the span of the computed traces. Reported, not asserted."""
    ns = sorted(sol.entries)
    if not ns or ns[0] != 1:
        return float("nan")
    w1 = sol.entries[1].boundary
    window = list(range(-max_modes, max(ns) + 1))
    idx = {k: i for i, k in enumerate(window)}

    def vec(fc: FourierCoefficients) -> np.ndarray:
        v = np.zeros(len(window), dtype=complex)
        for k in fc.modes():
            if k in idx:
                v[idx[k]] = fc[k]
        return v

    def convolve(a: dict[int, complex], b: dict[int, complex]) -> dict[int, complex]:
        out: dict[int, complex] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                if -max_modes <= k <= max(ns):
                    out[k] = out.get(k, 0.0) + ca * cb
        return out

    basis_vecs = np.stack([vec(sol.entries[n].boundary) for n in ns], axis=1)
    worst = 0.0
    cur = dict(w1.coeffs)
    for n in ns:
        if n > 1:
            cur = convolve(cur, dict(w1.coeffs))
        target = vec(FourierCoefficients(cur))
        sol_ls, *_ = np.linalg.lstsq(basis_vecs, target, rcond=None)
        res = float(np.linalg.norm(basis_vecs @ sol_ls - target))
        worst = max(worst, res)
    return worst
