"""Functions on the unit disk in angular-mode form.

A field is stored per angular mode k as a radial polynomial sum_p c_p r^p,
so f(z) = sum_k f_k(|z|) e^{ik arg z} inside the disk, extended by zero
outside unless an explicit exterior Laurent tail sum_{j<=0} c_j z^j is
attached (transform images are holomorphic off the disk). Nodal samples are
derived by evaluation; the polynomial data is authoritative, which keeps the
mode-wise kernel operations exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .circle_space import PsiCoefficients, sobolev_norm
from .errors import DomainError, UnsupportedInputError
from .quad_core import PolarGrid

_TRIM = 1e-300


def _trim_poly(c: np.ndarray) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    nz = np.nonzero(np.abs(c) > _TRIM)[0]
    return c[: nz[-1] + 1] if nz.size else np.zeros(0, dtype=complex)


@dataclass
class DiskField:
    """Band-limited angular modes with polynomial radial profiles."""

    modes: dict[int, np.ndarray] = dc_field(default_factory=dict)
    exterior: dict[int, complex] = dc_field(default_factory=dict)
    outside_zero: bool = True

    def __post_init__(self):
        self.modes = {int(k): _trim_poly(c) for k, c in self.modes.items()}
        self.modes = {k: c for k, c in self.modes.items() if c.size}
        self.exterior = {int(j): complex(c) for j, c in self.exterior.items() if c != 0}
        if self.exterior:
            self.outside_zero = False

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "DiskField":
        return cls()

    @classmethod
    def from_monomial(cls, k: int, p: int, coeff: complex = 1.0) -> "DiskField":
        c = np.zeros(p + 1, dtype=complex)
        c[p] = coeff
        return cls({k: c})

    @classmethod
    def indicator_disk(cls) -> "DiskField":
        """The characteristic function of the unit disk."""
        return cls({0: np.array([1.0 + 0.0j])})

    @classmethod
    def power_z(cls, n: int, coeff: complex = 1.0) -> "DiskField":
        """z^n restricted to the disk (mode n, radial r^n)."""
        return cls.from_monomial(n, n, coeff)

    @classmethod
    def power_zbar(cls, n: int, coeff: complex = 1.0) -> "DiskField":
        """zbar^n restricted to the disk (mode -n, radial r^n)."""
        return cls.from_monomial(-n, n, coeff)

    # -- algebra ----------------------------------------------------------

    def copy(self) -> "DiskField":
        return DiskField(
            {k: c.copy() for k, c in self.modes.items()}, dict(self.exterior), self.outside_zero
        )

    def __add__(self, other: "DiskField") -> "DiskField":
        out = {k: c.copy() for k, c in self.modes.items()}
        for k, c in other.modes.items():
            if k in out:
                n = max(out[k].size, c.size)
                s = np.zeros(n, dtype=complex)
                s[: out[k].size] = out[k]
                s[: c.size] += c
                out[k] = s
            else:
                out[k] = c.copy()
        ext = dict(self.exterior)
        for j, c in other.exterior.items():
            ext[j] = ext.get(j, 0.0) + c
        return DiskField(out, ext)

    def __sub__(self, other: "DiskField") -> "DiskField":
        return self + (other * -1.0)

    def __mul__(self, scalar: complex) -> "DiskField":
        return DiskField(
            {k: scalar * c for k, c in self.modes.items()},
            {j: scalar * c for j, c in self.exterior.items()},
        )

    __rmul__ = __mul__

    def multiply(self, other: "DiskField") -> "DiskField":
        """Pointwise product on the disk.

        Both exteriors are discarded: products appear only with at least one
        factor supported in the closed disk (a Beltrami coefficient).
        """
        out: dict[int, np.ndarray] = {}
        for ka, ca in self.modes.items():
            for kb, cb in other.modes.items():
                k = ka + kb
                prod = np.convolve(ca, cb)
                if k in out:
                    n = max(out[k].size, prod.size)
                    s = np.zeros(n, dtype=complex)
                    s[: out[k].size] = out[k]
                    s[: prod.size] += prod
                    out[k] = s
                else:
                    out[k] = prod
        return DiskField(out)

    def shifted(self, dmode: int, dpower: int) -> "DiskField":
        """Multiply by z^dpower-like monomial: mode shift and radial power shift."""
        out = {}
        for k, c in self.modes.items():
            out[k + dmode] = np.concatenate([np.zeros(dpower, dtype=complex), c])
        return DiskField(out)

    def conjugate(self) -> "DiskField":
        if self.exterior:
            raise UnsupportedInputError(
                "conjugate of an exterior Laurent tail is antiholomorphic off the disk"
            )
        return DiskField({-k: np.conjugate(c) for k, c in self.modes.items()})

    def drop_small(self, tol: float) -> "DiskField":
        """Discard coefficients below tol (absolute); keeps the iteration sparse."""
        out = {}
        for k, c in self.modes.items():
            c = np.where(np.abs(c) > tol, c, 0.0)
            c = _trim_poly(c)
            if c.size:
                out[k] = c
        ext = {j: c for j, c in self.exterior.items() if abs(c) > tol}
        return DiskField(out, ext)

    # -- queries ----------------------------------------------------------

    def mode_list(self):
        return sorted(self.modes)

    def max_degree(self) -> int:
        return max((c.size - 1 for c in self.modes.values()), default=0)

    def mode_profile(self, k: int, r: np.ndarray) -> np.ndarray:
        """Radial profile of mode k evaluated at radii r (inside the disk)."""
        r = np.asarray(r, dtype=float)
        c = self.modes.get(k)
        if c is None:
            return np.zeros(r.shape, dtype=complex)
        return np.polynomial.polynomial.polyval(r, c)

    def eval_at(self, z: complex) -> complex:
        """Evaluate at a point of the plane (interior modes or exterior tail)."""
        az = abs(z)
        if az < 1.0:
            if not self.modes:
                return 0.0 + 0.0j
            theta = math.atan2(z.imag, z.real)
            return complex(
                sum(
                    np.polynomial.polynomial.polyval(az, c) * np.exp(1j * k * theta)
                    for k, c in self.modes.items()
                )
            )
        if self.outside_zero:
            return 0.0 + 0.0j
        return complex(sum(c * z**j for j, c in self.exterior.items()))

    def sample(self, grid: PolarGrid) -> np.ndarray:
        """Interior samples, shape (angular_count, radial order)."""
        thetas = grid.thetas
        r = grid.radial.nodes
        out = np.zeros((thetas.size, r.size), dtype=complex)
        for k, c in self.modes.items():
            out += np.exp(1j * k * thetas)[:, None] * np.polynomial.polynomial.polyval(r, c)[None, :]
        return out

    def interior_boundary_values(self) -> dict[int, complex]:
        """Per-mode limit of the interior profiles at r = 1."""
        return {k: complex(np.sum(c)) for k, c in self.modes.items()}

    def l2_inner(self, other: "DiskField", include_exterior: bool = True) -> complex:
        """(1/2pi) integral over C of f conj(g) dA, exact on the representation.

        Same-mode monomial cross terms integrate to 1/(p+q+2); the exterior
        Laurent tails contribute sum_j c_j conj(d_j) / (-2j-2) for j <= -2 and
        infinity if a power j >= -1 is present on both sides.
        """
        total = 0.0 + 0.0j
        for k, ca in self.modes.items():
            cb = other.modes.get(k)
            if cb is None:
                continue
            p = np.arange(ca.size)
            q = np.arange(cb.size)
            denom = p[:, None] + q[None, :] + 2.0
            total += np.sum(ca[:, None] * np.conjugate(cb)[None, :] / denom)
        if include_exterior and self.exterior and other.exterior:
            for j, c in self.exterior.items():
                d = other.exterior.get(j)
                if d is None:
                    continue
                if j >= -1:
                    return complex(np.inf)
                total += c * np.conjugate(d) / (-2.0 * j - 2.0)
        return complex(total)

    def l2_norm(self, include_exterior: bool = True) -> float:
        return math.sqrt(max(self.l2_inner(self, include_exterior).real, 0.0))

    def to_json(self, grid: PolarGrid) -> str:
        """Serialize as nodal values {K, radial_nodes, modes: [[k, re, im, ...]]}."""
        r = grid.radial.nodes
        rows = []
        for k in self.mode_list():
            prof = self.mode_profile(k, r)
            rows.append([k] + [x for ri in prof for x in (ri.real, ri.imag)])
        return json.dumps(
            {"K": grid.cutoff, "radial_nodes": list(r), "modes": rows}
        )


def psi_bar_field(psi: PsiCoefficients) -> DiskField:
    """psi(zbar) = sum a_n zbar^{n-2} as a DiskField (modes -(n-2))."""
    out = DiskField.zero()
    for n, a in psi.tail.items():
        out = out + DiskField.power_zbar(n - 2, a)
    return out


def poincare_weight_poly() -> np.ndarray:
    """(1 - r^2)^2 as radial coefficients."""
    return np.array([1.0, 0.0, -2.0, 0.0, 1.0], dtype=complex)


def eval_psi_bar(psi: PsiCoefficients, z: complex) -> complex:
    """Horner evaluation of psi(zbar) = sum a_n zbar^{n-2} at |z| < 1."""
    if abs(z) >= 1.0:
        raise DomainError(f"psi(zbar) is defined on the open disk; |z| = {abs(z)}")
    if not psi.tail:
        return 0.0 + 0.0j
    top = max(psi.tail)
    dense = np.zeros(top - 1, dtype=complex)
    for n, a in psi.tail.items():
        dense[n - 2] = a
    return complex(np.polynomial.polynomial.polyval(np.conjugate(z), dense))


@dataclass
class BeltramiCoefficient:
    """(1 - |z|^2)^2 psi(zbar) on the disk, zero outside, with cached sup norm."""

    field: DiskField
    source: PsiCoefficients
    sup_norm: float

    def scaled(self, lam: float) -> "BeltramiCoefficient":
        return BeltramiCoefficient(self.field * lam, self.source * lam, abs(lam) * self.sup_norm)


def mu_from_psi(psi: PsiCoefficients) -> BeltramiCoefficient:
    """Beltrami coefficient of psi: field (1-|z|^2)^2 psi(zbar), 0 off the disk.

    The sup norm over the open disk is located by a dense polar scan refined
    with golden-section searches in radius and angle; a grid max alone
    under-reports between nodes.
    """
    w = DiskField({0: poincare_weight_poly()})
    fld = w.multiply(psi_bar_field(psi))
    return BeltramiCoefficient(fld, psi, _sup_abs(fld))


def _sup_abs(fld: DiskField, radial_points: int = 600, angular_points: int = 512) -> float:
    """Sup of |field| over the closed disk, to about 1e-10."""
    if not fld.modes:
        return 0.0
    r = np.linspace(0.0, 1.0, radial_points)
    theta = 2.0 * np.pi * np.arange(angular_points) / angular_points

    profs = {k: np.polynomial.polynomial.polyval(r, c) for k, c in fld.modes.items()}

    def abs_on_angles(th: np.ndarray) -> np.ndarray:
        acc = np.zeros((th.size, r.size), dtype=complex)
        for k, prof in profs.items():
            acc += np.exp(1j * k * th)[:, None] * prof[None, :]
        return np.abs(acc)

    vals = abs_on_angles(theta)
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    best_theta, best_r = theta[i], r[j]

    def value(th: float, rr: float) -> float:
        return abs(
            sum(
                np.polynomial.polynomial.polyval(rr, c) * np.exp(1j * k * th)
                for k, c in fld.modes.items()
            )
        )

    dr = r[1] - r[0]
    dth = theta[1] - theta[0]
    best = vals[i, j]
    for _ in range(3):
        lo, hi = max(best_r - dr, 0.0), min(best_r + dr, 1.0)
        best_r, best = _golden_max(lambda rr: value(best_theta, rr), lo, hi)
        lo, hi = best_theta - dth, best_theta + dth
        best_theta, best = _golden_max(lambda th: value(th, best_r), lo, hi)
        dr /= 8.0
        dth /= 8.0
    return float(best)


def _golden_max(f, lo: float, hi: float, tol: float = 1e-12) -> tuple[float, float]:
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    x = (a + b) / 2.0
    return x, f(x)


def sup_bound_check(psi: PsiCoefficients) -> tuple[float, float]:
    """Measured sup of |mu_psi| and the analytic bound sqrt(6)*||psi||_{-3/2}.

    The bound follows from Cauchy-Schwarz against the weight sum
    6/(1-r^2)^4; equality is attained exactly for a single n=2 mode (at z=0).
    """
    sup = mu_from_psi(psi).sup_norm
    bound = math.sqrt(6.0) * sobolev_norm(psi, -1.5, "wp")
    return sup, bound
