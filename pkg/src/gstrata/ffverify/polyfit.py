"""Exact Lagrange interpolation of point counts ``q -> |S(F_q)|``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def lagrange_coefficients(xs, ys) -> list[Fraction]:
    """Coefficients (constant term first) of the interpolating polynomial, trimmed."""
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    coeffs = [Fraction(0)] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = _poly_mul(basis, [Fraction(-xj), Fraction(1)])
                denom *= xi - xj
        for k, c in enumerate(basis):
            coeffs[k] += yi * c / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class CountPolynomial:
    coefficients: tuple[Fraction, ...]
    nodes: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1 if any(self.coefficients) else -1

    @property
    def integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    @property
    def overdetermined(self) -> bool:
        """More nodes than the degree needs, so the fit is a real check."""
        return self.degree < len(self.nodes) - 1

    def __call__(self, x):
        return sum(c * x ** k for k, c in enumerate(self.coefficients))

    def to_dict(self):
        return {
            "degree": self.degree,
            "coefficients": [str(c) for c in self.coefficients],
            "integral": self.integral,
            "overdetermined": self.overdetermined,
        }


def fit_count_polynomial(qs, counts) -> CountPolynomial:
    """Fit counts exactly; inspect ``integral`` / ``overdetermined`` before trusting the degree."""
    return CountPolynomial(tuple(lagrange_coefficients(list(qs), list(counts))), tuple(qs))
