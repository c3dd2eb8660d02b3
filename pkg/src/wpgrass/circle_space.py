"""Fourier series on the circle: Hardy split, Sobolev norms, and the
coefficient pairings underlying the Weil-Petersson geometry."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

DEFAULT_TRUNCATION = 32


def wp_weight(n: int) -> int:
    """The 3/2-norm weight n(n^2-1) = (n-1)n(n+1), positive for n >= 2."""
    return n * (n * n - 1)


@dataclass(frozen=True)
class FourierCoefficients:
    """Truncated two-sided Fourier series sum_{|n| <= N} c_n e^{i n theta}."""

    coeffs: dict[int, complex]
    truncation: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", {int(n): complex(c) for n, c in self.coeffs.items() if c != 0}
        )

    def __getitem__(self, n: int) -> complex:
        return self.coeffs.get(n, 0.0 + 0.0j)

    def modes(self):
        return sorted(self.coeffs)

    def sample(self, thetas: np.ndarray) -> np.ndarray:
        out = np.zeros(np.shape(thetas), dtype=complex)
        for n, c in self.coeffs.items():
            out += c * np.exp(1j * n * np.asarray(thetas))
        return out

    def __add__(self, other: "FourierCoefficients") -> "FourierCoefficients":
        merged = dict(self.coeffs)
        for n, c in other.coeffs.items():
            merged[n] = merged.get(n, 0.0) + c
        return FourierCoefficients(merged, max(self.truncation, other.truncation))

    def __sub__(self, other: "FourierCoefficients") -> "FourierCoefficients":
        return self + (other * -1.0)

    def __mul__(self, scalar: complex) -> "FourierCoefficients":
        return FourierCoefficients(
            {n: scalar * c for n, c in self.coeffs.items()}, self.truncation
        )

    __rmul__ = __mul__

    def to_json(self) -> str:
        triples = [[n, self[n].real, self[n].imag] for n in self.modes()]
        return json.dumps({"truncation": self.truncation, "coeffs": triples})

    @classmethod
    def from_json(cls, text: str) -> "FourierCoefficients":
        data = json.loads(text)
        return cls(
            {int(n): complex(re, im) for n, re, im in data["coeffs"]},
            int(data.get("truncation", DEFAULT_TRUNCATION)),
        )


@dataclass(frozen=True)
class PsiCoefficients:
    """Tail sequence {a_n}_{n>=2} of an antiholomorphic psi(zbar) = sum a_n zbar^{n-2}.

    The same data evaluates as psi(z) = sum a_n z^{-(n-2)} outside the disk;
    its boundary trace has Fourier mode -(n-2) with coefficient a_n.
    """

    tail: dict[int, complex]
    truncation: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        clean = {}
        for n, a in self.tail.items():
            n = int(n)
            if n < 2:
                raise DomainError(f"psi tail indices start at n=2, got {n}")
            if a != 0:
                clean[n] = complex(a)
        object.__setattr__(self, "tail", clean)

    def __getitem__(self, n: int) -> complex:
        return self.tail.get(n, 0.0 + 0.0j)

    def indices(self):
        return sorted(self.tail)

    def boundary_trace(self) -> FourierCoefficients:
        return FourierCoefficients(
            {-(n - 2): a for n, a in self.tail.items()}, self.truncation
        )

    def conjugate(self) -> "PsiCoefficients":
        return PsiCoefficients({n: a.conjugate() for n, a in self.tail.items()}, self.truncation)

    def __add__(self, other: "PsiCoefficients") -> "PsiCoefficients":
        merged = dict(self.tail)
        for n, a in other.tail.items():
            merged[n] = merged.get(n, 0.0) + a
        return PsiCoefficients(merged, max(self.truncation, other.truncation))

    def __sub__(self, other: "PsiCoefficients") -> "PsiCoefficients":
        return self + (other * -1.0)

    def __mul__(self, scalar: complex) -> "PsiCoefficients":
        return PsiCoefficients({n: scalar * a for n, a in self.tail.items()}, self.truncation)

    __rmul__ = __mul__

    def to_json(self) -> str:
        triples = [[n, self[n].real, self[n].imag] for n in self.indices()]
        return json.dumps({"truncation": self.truncation, "coeffs": triples})

    @classmethod
    def from_json(cls, text: str) -> "PsiCoefficients":
        data = json.loads(text)
        return cls(
            {int(n): complex(re, im) for n, re, im in data["coeffs"]},
            int(data.get("truncation", DEFAULT_TRUNCATION)),
        )


def _index_coeff_pairs(f) -> list[tuple[int, complex]]:
    if isinstance(f, PsiCoefficients):
        return [(n, f[n]) for n in f.indices()]
    return [(n, f[n]) for n in f.modes()]


def sobolev_norm(f, alpha: float, weight_kind: str = "power") -> float:
    """Sobolev-type norm of Fourier or tail coefficients.

    weight_kind "power" uses |n|^{2 alpha} over nonzero indices (the n=0 term
    is undefined for negative alpha and weightless otherwise, so it is
    excluded). weight_kind "wp" uses n(n^2-1) for alpha=3/2 and its reciprocal
    for alpha=-3/2; it requires support in n >= 2 since the weight vanishes on
    n in {0, +-1}.
    """
    pairs = _index_coeff_pairs(f)
    if weight_kind == "power":
        total = 0.0
        for n, c in pairs:
            if n == 0:
                if alpha < 0:
                    raise DomainError("power weight |n|^{2a} undefined at n=0 for a<0")
                continue
            total += abs(n) ** (2.0 * alpha) * abs(c) ** 2
        return math.sqrt(total)
    if weight_kind == "wp":
        if alpha not in (1.5, -1.5):
            raise DomainError(f"wp weights defined only for alpha = +-3/2, got {alpha}")
        total = 0.0
        for n, c in pairs:
            if n < 2:
                raise DomainError(f"wp norm undefined on mode n={n}; support must be n >= 2")
            w = wp_weight(n)
            total += (w if alpha > 0 else 1.0 / w) * abs(c) ** 2
        return math.sqrt(total)
    raise DomainError(f"unknown weight_kind {weight_kind!r}")


def wp_tangent_norm(f: PsiCoefficients) -> float:
    """Tangent-vector norm sqrt(sum n(n^2-1)|a_n|^2 / 12)."""
    return math.sqrt(sum(wp_weight(n) * abs(a) ** 2 for n, a in f.tail.items()) / 12.0)


def l2_pairing(f, g) -> complex:
    """Coefficientwise sesquilinear pairing sum_n f_n conj(g_n).

    For tail coefficients the sum runs over the tail index; mixing a tail
    object with a Fourier object pairs their boundary traces (the bijection
    n <-> mode -(n-2) preserves the sum).
    """
    if isinstance(f, PsiCoefficients) != isinstance(g, PsiCoefficients):
        f = f.boundary_trace() if isinstance(f, PsiCoefficients) else f
        g = g.boundary_trace() if isinstance(g, PsiCoefficients) else g
    fp = dict(_index_coeff_pairs(f))
    gp = dict(_index_coeff_pairs(g))
    return sum(c * gp[n].conjugate() for n, c in fp.items() if n in gp)


def project_plus(f: FourierCoefficients) -> FourierCoefficients:
    """Hardy projection onto modes n >= 0 (constants included)."""
    return FourierCoefficients({n: c for n, c in f.coeffs.items() if n >= 0}, f.truncation)


def project_minus(f: FourierCoefficients) -> FourierCoefficients:
    """Hardy projection onto modes n <= -1."""
    return FourierCoefficients({n: c for n, c in f.coeffs.items() if n < 0}, f.truncation)


def bergman_weight_sum(r: float, terms: int | None = None) -> float:
    """sum_{n>=2} n(n^2-1) r^{2n-4}, in closed form 6/(1-r^2)^4.

    With `terms` set, returns the partial sum up to n = terms instead, for
    cross-checking the closed form. Diverges like (1-r^2)^{-4} as r -> 1.
    """
    if not 0.0 <= r < 1.0:
        raise DomainError(f"radius must lie in [0,1), got {r}")
    if terms is None:
        return 6.0 / (1.0 - r * r) ** 4
    x = r * r
    return float(sum(wp_weight(n) * x ** (n - 2) for n in range(2, terms + 1)))
