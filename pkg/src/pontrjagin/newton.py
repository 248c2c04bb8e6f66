"""Newton's identities between primitive elements and the generators ``y_i``.

    sigma_k = sum_{i=1}^{k-1} (-1)^(i-1) sigma_{k-i} y_i + (-1)^(k-1) k y_k

Entries may be exact numbers or :class:`Polynomial` symbols.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonIntegralDivisionError
from .graded import GradedGenerator, PolyRing, Polynomial

SIGMA = "sigma"
Y = "y"


@dataclass(frozen=True)
class SymmetricFunctionVector:
    """Entries indexed ``1..m``; ``entries[0]`` is the index-1 entry."""

    kind: str
    entries: tuple

    def __post_init__(self):
        if self.kind not in (SIGMA, Y):
            raise ValueError(f"unknown kind {self.kind!r}")
        object.__setattr__(self, "entries", tuple(self.entries))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k: int):
        """One-based access."""
        if k < 1:
            raise IndexError(k)
        return self.entries[k - 1]


def formal_y(m: int, step: int = 2) -> tuple:
    """A ring ``Q[y_1..y_m]`` with ``deg y_i = step*i`` and its generator vector."""
    ring = PolyRing([GradedGenerator(f"y{i}", step * i) for i in range(1, m + 1)])
    return ring, SymmetricFunctionVector(Y, ring.gens_as_polys())


def _check_length(v: SymmetricFunctionVector, m):
    if m is None:
        return len(v)
    if m > len(v):
        raise ValueError(f"need {m} entries, have {len(v)}")
    return m


def newton_sigma_from_y(y: SymmetricFunctionVector, m: int | None = None) -> SymmetricFunctionVector:
    m = _check_length(y, m)
    sigma = []
    for k in range(1, m + 1):
        s = (-1) ** (k - 1) * k * y[k]
        for i in range(1, k):
            s = s + (-1) ** (i - 1) * sigma[k - i - 1] * y[i]
        sigma.append(s)
    return SymmetricFunctionVector(SIGMA, sigma)


def _integral(x) -> bool:
    if isinstance(x, Polynomial):
        return x.is_integral()
    return Fraction(x).denominator == 1


def newton_y_from_sigma(sigma: SymmetricFunctionVector, m: int | None = None,
                        ring: str = "rational") -> SymmetricFunctionVector:
    """Invert the recursion.  Over the integers a division by ``k`` must be exact."""
    m = _check_length(sigma, m)
    y = []
    for k in range(1, m + 1):
        rest = sigma[k]
        for i in range(1, k):
            rest = rest - (-1) ** (i - 1) * sigma[k - i] * y[i - 1]
        val = rest * Fraction((-1) ** (k - 1), k)
        if ring == "integral" and not _integral(val):
            raise NonIntegralDivisionError(f"y_{k} = ({rest}) / {(-1) ** (k - 1) * k} is not integral")
        y.append(val)
    return SymmetricFunctionVector(Y, y)


__all__ = ["SymmetricFunctionVector", "newton_sigma_from_y", "newton_y_from_sigma", "formal_y"]
