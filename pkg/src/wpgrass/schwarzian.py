"""Schwarzian derivative on truncated power series, and the reflection that
turns a small Schwarzian on the outside of the disk into a Beltrami
coefficient of harmonic shape."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circle_space import PsiCoefficients
from .disk_field import BeltramiCoefficient, DiskField, _sup_abs, poincare_weight_poly
from .errors import SingularityError

# -- truncated power-series helpers (coefficients ascending in z) ----------


def series_mul(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    return np.convolve(a, b)[: order + 1]


def series_deriv(a: np.ndarray) -> np.ndarray:
    if a.size <= 1:
        return np.zeros(1, dtype=complex)
    return a[1:] * np.arange(1, a.size)


def series_div(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    """a/b as a power series; requires b[0] != 0."""
    if b.size == 0 or b[0] == 0:
        raise SingularityError("series division by a series vanishing at 0", location=0.0)
    out = np.zeros(order + 1, dtype=complex)
    a = np.concatenate([a, np.zeros(max(0, order + 1 - a.size), dtype=complex)])
    for m in range(order + 1):
        acc = a[m]
        for i in range(1, min(m, b.size - 1) + 1):
            acc -= b[i] * out[m - i]
        out[m] = acc / b[0]
    return out


def series_compose(a: np.ndarray, g: np.ndarray, order: int) -> np.ndarray:
    """a(g(z)) for g with g(0) = 0, by Horner on truncated series."""
    if g.size and g[0] != 0:
        raise SingularityError("series composition requires g(0) = 0")
    out = np.zeros(order + 1, dtype=complex)
    for c in np.asarray(a, dtype=complex)[::-1]:
        out = series_mul(out, g, order)
        out[0] += c
    return out


def schwarzian_series(f: np.ndarray, order: int | None = None) -> tuple[np.ndarray, int]:
    """S(f) = f'''/f' - (3/2)(f''/f')^2 as a power series about 0.

    Returns (coefficients, valid_order): three derivative orders are lost, so
    the output is reliable only through z^{len(f)-4}. Requires f'(0) != 0.
    """
    f = np.asarray(f, dtype=complex)
    if order is None:
        order = max(f.size - 4, 0)
    f1 = series_deriv(f)
    if f1.size == 0 or f1[0] == 0:
        raise SingularityError("Schwarzian undefined where f' vanishes", location=0.0)
    f2 = series_deriv(f1)
    u = series_div(f2, f1, order + 1)  # f''/f'
    s = series_deriv(u)[: order + 1]
    s = np.concatenate([s, np.zeros(max(0, order + 1 - s.size), dtype=complex)])
    return s - 1.5 * series_mul(u, u, order), order


def schwarzian_at(f: np.ndarray, z: complex) -> complex:
    """Pointwise Schwarzian of the polynomial/series f at z, via its derivatives."""
    f = np.asarray(f, dtype=complex)
    p = np.polynomial.polynomial
    f1 = p.polyval(z, series_deriv(f))
    if f1 == 0:
        raise SingularityError(f"f'({z}) = 0", location=z)
    f2 = p.polyval(z, series_deriv(series_deriv(f)))
    f3 = p.polyval(z, series_deriv(series_deriv(series_deriv(f))))
    return f3 / f1 - 1.5 * (f2 / f1) ** 2


@dataclass(frozen=True)
class SchwarzianCoeffs:
    """S[Phi](z) = sum_{k>=4} b_k z^{-k} on the outside of the disk."""

    b: dict[int, complex]

    def __post_init__(self):
        clean = {}
        for k, v in self.b.items():
            k = int(k)
            if k < 4:
                raise SingularityError(f"outside Schwarzian expansions start at k=4, got {k}")
            if v != 0:
                clean[k] = complex(v)
        object.__setattr__(self, "b", clean)

    def __getitem__(self, k: int) -> complex:
        return self.b.get(k, 0.0 + 0.0j)


def schwarzian_of_univalent_tail(a: dict[int, complex], order: int = 24) -> SchwarzianCoeffs:
    """Outside Schwarzian of Phi(z) = z + sum_{k>=1} a_k z^{-k}.

    Conjugating by the inversion w = 1/z gives the regular series
    q(w) = w / (1 + sum a_k w^{k+1}) with q'(0) = 1, and Moebius invariance
    yields S[Phi](z) = z^{-4} S[q](1/z), i.e. b_{j+4} = coefficient j of S[q].
    """
    denom = np.zeros(order + 2, dtype=complex)
    denom[0] = 1.0
    for k, ak in a.items():
        if k + 1 <= order + 1:
            denom[k + 1] += ak
    w = np.zeros(order + 2, dtype=complex)
    w[1] = 1.0
    q = series_div(w, denom, order + 1)
    s, _ = schwarzian_series(q, order - 3 if order >= 3 else 0)
    return SchwarzianCoeffs({j + 4: complex(c) for j, c in enumerate(s) if c != 0})


def ahlfors_weill_mu(s: SchwarzianCoeffs) -> BeltramiCoefficient:
    """Beltrami coefficient -1/2 (1-|z|^2)^2 sum_{k>=4} b_k zbar^{k-4} on the disk.

    This is the bounded reflection of the outside Schwarzian; it has exactly
    the harmonic shape (1-|z|^2)^2 times an antiholomorphic series, with
    psi-tail a_n = -b_{n+2}/2.
    """
    psi = PsiCoefficients({k - 2: -bk / 2.0 for k, bk in s.b.items()})
    w = DiskField({0: poincare_weight_poly()})
    fld = DiskField.zero()
    for k, bk in s.b.items():
        fld = fld + DiskField.power_zbar(k - 4, -bk / 2.0)
    fld = w.multiply(fld)
    return BeltramiCoefficient(fld, psi, _sup_abs(fld))
