"""Cauchy transform P and Beurling transform T of disk-supported fields.

Expanding the kernels 1/(z-zeta) and 1/(z-zeta)^2 in interior/exterior power
series reduces both transforms, per angular mode k, to two one-dimensional
radial integrals split at |zeta|. On the polynomial radial representation the
split integrals are elementary, so each transform is an exact rational map on
monomials:

    P_k(r^p):  k >= 2   -2/(p+2-k) rho^{k-1} + 2/(p+2-k) rho^{p+1}   (mode k-1)
               k = 1    2/(p+1) rho^{p+1}
               k <= 0   2/(p+2-k) rho^{p+1}
               exterior: 2/(p+2-k) zeta^{k-1} for k <= 0; 2/(p+1) for k = 1

    T_k(r^p):  (p+k)/(p+2-k) r^p  - 2(k-1)/(p+2-k) r^{k-2}            (mode k-2,
               second term only for k >= 2)
               exterior: 2(k-1)/(p+2-k) zeta^{k-2} for k <= 0

P is normalized to vanish at 0 (built into the kernel), is continuous across
|z| = 1, and satisfies dbar(Ph) = h and d(Ph) = Th exactly on the
representation. T is an L^2(C) isometry, exact including the exterior tails.
The denominators p+2-k vanish only for p = k-2 with k >= 2, a logarithmic
kernel case that cannot arise from fields smooth at the origin (p >= |k|) and
is rejected.
"""

from __future__ import annotations

import numpy as np

from .disk_field import DiskField
from .errors import DomainError, UnsupportedInputError
from .quad_core import PolarGrid, gauss_radial_rule


class ModeKernelCache:
    """Memo of the per-(mode, degree) rational kernel coefficients.

    The coefficients are cheap to form but appear in the innermost loop of
    the Neumann iteration; caching them per (k, degree) keeps the transforms
    allocation-light. Read-only after first use for a given key.
    """

    def __init__(self):
        self._denoms: dict[tuple[int, int], np.ndarray] = {}

    def denominators(self, k: int, degree: int) -> np.ndarray:
        """Array of p+2-k for p = 0..degree."""
        key = (k, degree)
        got = self._denoms.get(key)
        if got is None:
            got = np.arange(degree + 1, dtype=float) + 2.0 - k
            self._denoms[key] = got
        return got


_CACHE = ModeKernelCache()


def _require_disk_supported(h: DiskField, name: str):
    if not h.outside_zero or h.exterior:
        raise UnsupportedInputError(f"{name} requires compact support in the closed disk")


def _check_log_case(k: int, coeffs: np.ndarray):
    if k >= 2 and coeffs.size > k - 2 and coeffs[k - 2] != 0:
        raise UnsupportedInputError(
            f"mode {k} carries radial power r^{k - 2}: logarithmic kernel case "
            "(field is not smooth at the origin)"
        )


def cauchy_P(h: DiskField, cache: ModeKernelCache | None = None) -> DiskField:
    """Cauchy transform of a disk-supported field: Ph(0) = 0, dbar(Ph) = h.

    Returns the field on all of C: interior polynomial modes plus the
    holomorphic exterior tail (Laurent powers <= 0). Input mode k maps to
    output mode k-1 exactly; any angular leakage is a bug, not noise.
    """
    _require_disk_supported(h, "cauchy_P")
    cache = cache or _CACHE
    out: dict[int, np.ndarray] = {}
    ext: dict[int, complex] = {}
    for k, coeffs in h.modes.items():
        _check_log_case(k, coeffs)
        deg = coeffs.size - 1
        denom = cache.denominators(k, deg)
        mode = k - 1
        poly = np.zeros(deg + 2, dtype=complex)
        if k == 1:
            p1 = np.arange(deg + 1, dtype=float) + 1.0
            poly[1:] = 2.0 * coeffs / p1
            ext[0] = ext.get(0, 0.0) + complex(np.sum(2.0 * coeffs / p1))
        elif k >= 2:
            poly[1:] = 2.0 * coeffs / denom
            lead = -2.0 * complex(np.sum(coeffs / denom))
            if poly.size <= k - 1:
                poly = np.concatenate([poly, np.zeros(k - poly.size, dtype=complex)])
            poly[k - 1] += lead
        else:
            poly[1:] = 2.0 * coeffs / denom
            ext[k - 1] = ext.get(k - 1, 0.0) + complex(np.sum(2.0 * coeffs / denom))
        if mode in out:
            n = max(out[mode].size, poly.size)
            s = np.zeros(n, dtype=complex)
            s[: out[mode].size] = out[mode]
            s[: poly.size] += poly
            out[mode] = s
        else:
            out[mode] = poly
    return DiskField(out, ext)


def beurling_T(h: DiskField, cache: ModeKernelCache | None = None) -> DiskField:
    """Beurling transform T = d(P .): an L^2(C) isometry on disk-supported fields.

    Input mode k maps to output mode k-2 exactly. The exterior tail has
    Laurent powers <= -2, so T-images are square integrable on all of C.
    """
    _require_disk_supported(h, "beurling_T")
    cache = cache or _CACHE
    out: dict[int, np.ndarray] = {}
    ext: dict[int, complex] = {}
    for k, coeffs in h.modes.items():
        _check_log_case(k, coeffs)
        deg = coeffs.size - 1
        denom = cache.denominators(k, deg)
        powers = np.arange(deg + 1, dtype=float)
        mode = k - 2
        poly = coeffs * (powers + k) / denom
        if k >= 2:
            lead = -2.0 * (k - 1) * complex(np.sum(coeffs / denom))
            if poly.size <= k - 2:
                poly = np.concatenate([poly, np.zeros(k - 1 - poly.size, dtype=complex)])
            poly[k - 2] += lead
        elif k <= 0:
            ext[k - 2] = ext.get(k - 2, 0.0) + 2.0 * (k - 1) * complex(np.sum(coeffs / denom))
        if mode in out:
            n = max(out[mode].size, poly.size)
            s = np.zeros(n, dtype=complex)
            s[: out[mode].size] = out[mode]
            s[: poly.size] += poly
            out[mode] = s
        else:
            out[mode] = poly
    return DiskField(out, ext)


# -- Wirtinger derivatives on the representation ---------------------------


def d_z(f: DiskField) -> DiskField:
    """Holomorphic derivative of the interior field: c r^p e^{im phi} maps to
    c (p+m)/2 r^{p-1} e^{i(m-1) phi}."""
    out: dict[int, np.ndarray] = {}
    for m, coeffs in f.modes.items():
        p = np.arange(coeffs.size, dtype=float)
        new = coeffs * (p + m) / 2.0
        if new.size and new[0] != 0:
            raise UnsupportedInputError(f"mode {m} not smooth at 0: derivative has r^-1 term")
        dest = out.setdefault(m - 1, np.zeros(max(coeffs.size - 1, 0), dtype=complex))
        if dest.size < coeffs.size - 1:
            dest = np.concatenate([dest, np.zeros(coeffs.size - 1 - dest.size, dtype=complex)])
        dest[: coeffs.size - 1] += new[1:]
        out[m - 1] = dest
    return DiskField(out)


def d_zbar(f: DiskField) -> DiskField:
    """Antiholomorphic derivative: c r^p e^{im phi} maps to
    c (p-m)/2 r^{p-1} e^{i(m+1) phi}."""
    out: dict[int, np.ndarray] = {}
    for m, coeffs in f.modes.items():
        p = np.arange(coeffs.size, dtype=float)
        new = coeffs * (p - m) / 2.0
        if new.size and new[0] != 0:
            raise UnsupportedInputError(f"mode {m} not smooth at 0: derivative has r^-1 term")
        dest = out.setdefault(m + 1, np.zeros(max(coeffs.size - 1, 0), dtype=complex))
        if dest.size < coeffs.size - 1:
            dest = np.concatenate([dest, np.zeros(coeffs.size - 1 - dest.size, dtype=complex)])
        dest[: coeffs.size - 1] += new[1:]
        out[m + 1] = dest
    return DiskField(out)


# -- L^p norms --------------------------------------------------------------

ANNULUS_OUTER_RADIUS = 64.0


def lp_norm(h: DiskField, p: float, grid: PolarGrid | None = None) -> float:
    """Grid L^p norm over C under the (1/2pi) dA normalization.

    p = 2 uses the exact coefficient sums (including exterior Laurent tails).
    Other p sample |h|^p on the disk grid plus, when an exterior tail is
    present, geometric annulus panels out to R = 64; the neglected tail is
    O(R^{2-2p}) relative since transform images decay like |zeta|^{-2}.
    """
    if p <= 1.0:
        raise DomainError(f"L^p norms here require p > 1, got {p}")
    if p == 2.0:
        return h.l2_norm()
    from .quad_core import default_grid

    grid = grid or default_grid()
    vals = np.abs(h.sample(grid)) ** p
    mean_theta = vals.mean(axis=0)
    total = float(grid.radial.integrate(mean_theta * grid.radial.nodes))
    if h.exterior:
        rule = gauss_radial_rule(48)
        thetas = grid.thetas
        r_in = 1.0
        while r_in < ANNULUS_OUTER_RADIUS:
            r_out = min(r_in * 2.0, ANNULUS_OUTER_RADIUS)
            radii = r_in + (r_out - r_in) * rule.nodes
            ring = np.zeros((thetas.size, radii.size), dtype=complex)
            for j, c in h.exterior.items():
                ring += c * np.exp(1j * j * thetas)[:, None] * radii[None, :] ** j
            ring_vals = (np.abs(ring) ** p).mean(axis=0)
            total += float((r_out - r_in) * rule.weights @ (ring_vals * radii))
            r_in = r_out
    return total ** (1.0 / p)
