"""Radial Gauss quadrature on (0,1), angular Fourier analysis, and the
normalized disk integral shared by every pairing and estimate."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

#: Relative energy in the top angular modes above which analysis warns of aliasing.
ALIASING_ENERGY_FRACTION = 1e-10


@dataclass(frozen=True)
class RadialRule:
    """Gauss-Legendre rule on (0,1): exact for polynomials of degree <= 2*order-1."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def integrate(self, values: np.ndarray) -> complex:
        """Integrate nodal values of f over (0,1), i.e. sum w_i f(r_i)."""
        return np.asarray(values) @ self.weights


def gauss_radial_rule(m: int) -> RadialRule:
    """Gauss-Legendre rule of order m mapped to (0,1).

    Exact on polynomials of degree <= 2m-1 with unit weight. All nodes lie
    strictly inside (0,1) and sum(w_i r_i) = 1/2 to machine precision.
    """
    if m < 1:
        raise DomainError(f"radial rule order must be >= 1, got {m}")
    x, w = np.polynomial.legendre.leggauss(m)
    return RadialRule(nodes=(x + 1.0) / 2.0, weights=w / 2.0, order=m)


@dataclass(frozen=True)
class PolarGrid:
    """Tensor grid: radial Gauss rule times uniform angles.

    Angular reconstruction is exact for band-limited fields with |k| <= K,
    which requires angular_count >= 2K+1.
    """

    radial: RadialRule
    angular_count: int
    cutoff: int = field(default=0)

    def __post_init__(self):
        k = self.cutoff or (self.angular_count - 1) // 2
        if self.angular_count < 2 * k + 1:
            raise DomainError(
                f"angular_count={self.angular_count} cannot resolve cutoff K={k}"
            )
        object.__setattr__(self, "cutoff", k)

    @property
    def thetas(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.angular_count) / self.angular_count


def default_grid(trunc_n: int = 32, radial_order: int = 64) -> PolarGrid:
    """Default resolution: radial order 64, angular cutoff K = 2N+8."""
    k = 2 * trunc_n + 8
    return PolarGrid(gauss_radial_rule(radial_order), 2 * k + 2, cutoff=k)


def angular_analyze(samples: np.ndarray, cutoff: int | None = None) -> dict[int, complex]:
    """Fourier coefficients c_k, |k| <= K, of samples on a uniform theta grid.

    Exact on band-limited input (|k| <= (n-1)/2); analysis followed by
    synthesis is the identity there. Aliasing is detected by the fraction of
    energy in the top resolvable modes and reported as a warning, not
    silently dropped.
    """
    samples = np.asarray(samples, dtype=complex)
    n = samples.shape[-1]
    max_k = (n - 1) // 2
    k = max_k if cutoff is None else cutoff
    if n < 2 * k + 1:
        raise DomainError(f"{n} samples cannot resolve modes |k| <= {k}")
    coeffs = np.fft.fft(samples) / n
    total = float(np.sum(np.abs(coeffs) ** 2))
    if total > 0 and max_k >= 1:
        top = abs(coeffs[max_k]) ** 2 + abs(coeffs[-max_k]) ** 2
        if top > ALIASING_ENERGY_FRACTION * total:
            warnings.warn(
                "angular content at the resolution limit; input may exceed the band limit",
                stacklevel=2,
            )
    return {kk: complex(coeffs[kk % n]) for kk in range(-k, k + 1)}


def angular_synthesize(modes: dict[int, complex], count: int) -> np.ndarray:
    """Inverse of angular_analyze on a uniform grid of `count` angles."""
    theta = 2.0 * np.pi * np.arange(count) / count
    out = np.zeros(count, dtype=complex)
    for k, c in modes.items():
        out += c * np.exp(1j * k * theta)
    return out


def disk_integral(f, radial_weight=None, grid: PolarGrid | None = None) -> complex:
    """(1/2pi) * integral over the unit disk of f(z) * radial_weight(|z|) dA.

    dA is the Euclidean area element; the 1/2pi normalization is fixed so that
    the mode-n self-product of the weighted pairing evaluates to 1/(n(n^2-1)).
    `f` is a DiskField (or any object with `mode_profile(k, r)`); only the
    angular mode 0 of the integrand survives, so the computation is a single
    radial quadrature of f's mode-0 profile. A coarse grid is flagged by
    comparing against a refined rule rather than silently accepted.
    """
    grid = grid or default_grid()
    rule = grid.radial
    w = radial_weight if radial_weight is not None else (lambda r: np.ones_like(r))

    def value_on(rl: RadialRule) -> complex:
        prof = f.mode_profile(0, rl.nodes)
        return complex(rl.integrate(prof * w(rl.nodes) * rl.nodes))

    val = value_on(rule)
    check = value_on(gauss_radial_rule(rule.order + 8))
    scale = max(abs(val), abs(check), 1.0)
    if abs(val - check) > 1e-12 * scale:
        warnings.warn(
            f"disk_integral: radial rule of order {rule.order} looks too coarse "
            f"(refinement shifts the value by {abs(val - check):.3e})",
            stacklevel=2,
        )
        val = check
    return val
