"""Polynomials, rational functions and disc automorphisms in one complex variable.

Coefficients are stored lowest degree first.  They may be plain Python
numbers (``complex``/``float``) or :class:`fractions.Fraction` for exact
arithmetic; all operations preserve exactness when every input is exact.

Differentiation and composition are symbolic (coefficient level); nothing
here uses finite differences.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number, Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateComposition,
    DenominatorZero,
    ParameterOutOfRange,
)

# |den(z)| below this (relative to the coefficient magnitude) counts as zero.
ZERO_DENOMINATOR_TOL = 1e-14
# Roots of a denominator closer than this to the closed disc are rejected.
DISC_ROOT_MARGIN = 1e-9
ROOT_TRIM_TOL = 1e-15


def _is_exact(x) -> bool:
    return isinstance(x, Rational)


def _conj(x):
    return x.conjugate()


def _clean(coeffs: Iterable) -> tuple:
    out = list(coeffs)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    if not out:
        out = [0]
    return tuple(out)


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple

    def __init__(self, coeffs: Iterable = (0,)):
        object.__setattr__(self, "coeffs", _clean(coeffs))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c=1) -> "Polynomial":
        return cls((0,) * n + (c,))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        if self.is_zero():
            return -1
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(_is_exact(c) for c in self.coeffs)

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def scale(self) -> float:
        return max(abs(complex(c)) for c in self.coeffs)

    def __call__(self, z):
        """Horner evaluation.  Works on scalars and numpy arrays."""
        if isinstance(z, np.ndarray):
            coeffs = np.asarray([complex(c) for c in self.coeffs])
            acc = np.full(z.shape, coeffs[-1], dtype=complex)
            for c in coeffs[-2::-1]:
                acc = acc * z + c
            return acc
        if not (_is_exact(z) and self.exact):
            z = complex(z)
            coeffs = [complex(c) for c in self.coeffs]
        else:
            coeffs = self.coeffs
        acc = coeffs[-1]
        for c in coeffs[-2::-1]:
            acc = acc * z + c
        return acc

    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial((0,))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "Polynomial":
        if len(self.coeffs) == 1:
            return Polynomial((0,))
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def map_coeffs(self, fn) -> "Polynomial":
        return Polynomial(fn(c) for c in self.coeffs)

    def roots(self) -> np.ndarray:
        """Roots via companion-matrix eigenvalues."""
        if self.degree <= 0:
            return np.zeros(0, dtype=complex)
        c = np.asarray([complex(x) for x in self.coeffs])
        # negligible top coefficients only carry roots near infinity; drop them
        # so the companion matrix stays finite
        keep = np.nonzero(np.abs(c) > ROOT_TRIM_TOL * np.abs(c).max())[0]
        c = c[: keep[-1] + 1]
        if len(c) <= 1:
            return np.zeros(0, dtype=complex)
        # numpy.roots builds the companion matrix of the highest-first form
        return np.roots(c[::-1])

    def homogenize(self, num: "Polynomial", den: "Polynomial", degree: int) -> "Polynomial":
        """Return den**degree * self(num/den) as a polynomial (degree >= self.degree)."""
        total = Polynomial((0,))
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            total = total + (num ** k) * (den ** (degree - k)) * c
        return total


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, Number):
        return Polynomial((x,))
    raise TypeError(f"cannot convert {type(x).__name__} to Polynomial")


@dataclass(frozen=True)
class RationalFunction:
    """numerator / denominator, normalised so the denominator's constant term is 1.

    Roots of the denominator are not restricted here; embedding maps check
    that they stay off the closed disc.
    """

    numerator: Polynomial
    denominator: Polynomial

    def __init__(self, numerator, denominator=None):
        num = _as_poly(numerator) if not isinstance(numerator, (list, tuple)) else Polynomial(numerator)
        if denominator is None:
            den = Polynomial((1,))
        elif isinstance(denominator, (list, tuple)):
            den = Polynomial(denominator)
        else:
            den = _as_poly(denominator)
        if den.is_zero():
            raise DenominatorZero("denominator is identically zero")
        lead = den.coeffs[0]
        if lead != 0 and lead != 1:
            inv = Fraction(1) / lead if _is_exact(lead) else 1 / lead
            num = num.map_coeffs(lambda c: c * inv)
            den = den.map_coeffs(lambda c: c * inv)
            # force the normalised constant term to be exactly one
            den = Polynomial((1,) + den.coeffs[1:])
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def identity(cls) -> "RationalFunction":
        return cls(Polynomial((0, 1)))

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls(Polynomial((c,)))

    @property
    def exact(self) -> bool:
        return self.numerator.exact and self.denominator.exact

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __call__(self, z):
        num = self.numerator(z)
        den = self.denominator(z)
        tol = ZERO_DENOMINATOR_TOL * self.denominator.scale()
        if isinstance(den, np.ndarray):
            if np.any(np.abs(den) < tol):
                raise DenominatorZero("denominator vanishes at an evaluation point")
        elif abs(den) < tol:
            raise DenominatorZero(f"denominator vanishes at z={z!r}")
        return num / den

    def derivative(self) -> "RationalFunction":
        n, d = self.numerator, self.denominator
        if d.degree == 0:
            # normalisation guarantees d == 1 here
            return RationalFunction(n.derivative())
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def jet(self, z, order: int = 2) -> tuple:
        """(r(z), r'(z), ..., r^(order)(z)) by differentiating r d = n pointwise.

        Avoids expanding the quotient-rule denominator d^2, whose evaluation
        near a root of d loses far more precision than d itself.
        """
        if order > 2:
            raise ValueError("jet supports order <= 2")
        n, d = self.numerator, self.denominator
        n1, d1 = n.derivative(), d.derivative()
        dz = d(z)
        tol = ZERO_DENOMINATOR_TOL * d.scale()
        if (np.any(np.abs(dz) < tol)) if isinstance(dz, np.ndarray) else abs(dz) < tol:
            raise DenominatorZero(f"denominator vanishes at z={z!r}")
        r0 = n(z) / dz
        out = [r0]
        if order >= 1:
            r1 = (n1(z) - r0 * d1(z)) / dz
            out.append(r1)
        if order >= 2:
            out.append((n1.derivative()(z) - 2 * r1 * d1(z) - r0 * d1.derivative()(z)) / dz)
        return tuple(out)

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)
        return RationalFunction(self.numerator * other, self.denominator)

    __rmul__ = __mul__

    def __add__(self, other) -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            other = RationalFunction(_as_poly(other))
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-other if isinstance(other, RationalFunction) else -_as_poly(other))

    def __pow__(self, n: int) -> "RationalFunction":
        return RationalFunction(self.numerator ** n, self.denominator ** n)

    def equals(self, other: "RationalFunction", tol: float = 0.0) -> bool:
        """Equality as functions: cross-multiplied numerators agree coefficientwise."""
        diff = self.numerator * other.denominator - other.numerator * self.denominator
        if tol == 0:
            return diff.is_zero()
        scale = max(1.0, self.numerator.scale(), other.numerator.scale())
        return all(abs(complex(c)) <= tol * scale for c in diff.coeffs)

    def denominator_disc_roots(self, margin: float = DISC_ROOT_MARGIN) -> list[complex]:
        """Denominator roots with |z| <= 1 + margin."""
        return [complex(z) for z in self.denominator.roots() if abs(z) <= 1 + margin]

    def to_json(self) -> dict:
        def enc(p: Polynomial):
            return [[complex(c).real, complex(c).imag] for c in p.coeffs]

        return {"num": enc(self.numerator), "den": enc(self.denominator)}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalFunction":
        def dec(rows):
            out = []
            for row in rows:
                if isinstance(row, (int, float)):
                    out.append(complex(row))
                else:
                    re, im = row
                    out.append(complex(float(re), float(im)))
            return Polynomial(out)

        return cls(dec(obj["num"]), dec(obj.get("den", [[1.0, 0.0]])))


def blaschke(r) -> RationalFunction:
    """The disc automorphism b_r(z) = (z - r) / (1 - r z), which fixes +-1 for real r."""
    if not abs(r) < 1:
        raise ParameterOutOfRange(f"|r| must be < 1, got {r!r}")
    return RationalFunction(Polynomial((-r, 1)), Polynomial((1, -r)))


@dataclass(frozen=True)
class MobiusTransform:
    """Disc automorphism mu(z) = lam * (alpha - z) / (1 - conj(alpha) z)."""

    lam: complex | Fraction
    alpha: complex | Fraction

    def __post_init__(self):
        if abs(abs(complex(self.lam)) - 1) > 1e-12:
            raise ParameterOutOfRange(f"|lambda| must be 1, got {abs(complex(self.lam))!r}")
        if not abs(complex(self.alpha)) < 1:
            raise ParameterOutOfRange(f"|alpha| must be < 1, got {abs(complex(self.alpha))!r}")

    @classmethod
    def identity(cls) -> "MobiusTransform":
        return cls(-1, 0)

    @classmethod
    def rotation(cls, angle: float) -> "MobiusTransform":
        """z -> e^{i angle} z."""
        return cls(-cmath.exp(1j * angle), 0)

    @classmethod
    def from_blaschke(cls, r) -> "MobiusTransform":
        return cls(-1, r)

    @classmethod
    def from_boundary_points(cls, src: Sequence[complex], dst: Sequence[complex]) -> "MobiusTransform":
        """The automorphism sending three points of the circle onto three others.

        Raises ParameterOutOfRange when the two triples have opposite
        orientation (the Moebius map then exchanges the disc and its exterior).
        """
        z1, z2, z3 = (complex(z) for z in src)
        w1, w2, w3 = (complex(w) for w in dst)
        s = np.array([[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]])
        t = np.array([[w2 - w3, -w1 * (w2 - w3)], [w2 - w1, -w3 * (w2 - w1)]])
        t_inv = np.array([[t[1, 1], -t[0, 1]], [-t[1, 0], t[0, 0]]])
        (a, b), (c, d) = t_inv @ s
        if abs(a) == 0 or abs(d) == 0:
            raise ParameterOutOfRange("boundary triples do not determine a disc automorphism")
        alpha = -b / a
        if not abs(alpha) < 1 - 1e-12:
            raise ParameterOutOfRange("boundary triples have opposite orientation")
        lam = -a / d
        return cls(complex(lam / abs(lam)), complex(alpha))

    def __call__(self, z):
        lam, alpha = self.lam, self.alpha
        if isinstance(z, np.ndarray) or not (_is_exact(z) and _is_exact(lam) and _is_exact(alpha)):
            lam, alpha = complex(lam), complex(alpha)
        return lam * (alpha - z) / (1 - _conj(alpha) * z)

    def derivative(self, z):
        lam, alpha = complex(self.lam), complex(self.alpha)
        return lam * (abs(alpha) ** 2 - 1) / (1 - alpha.conjugate() * z) ** 2

    def inverse(self) -> "MobiusTransform":
        return MobiusTransform(_conj(self.lam), self.lam * self.alpha)

    def then(self, other: "MobiusTransform") -> "MobiusTransform":
        """The composition other(self(z))."""
        # other(self(z)) as a matrix product, then back to (lam, alpha) form
        m1 = _matrix(self)
        m2 = _matrix(other)
        (a, b), (c, d) = m2 @ m1
        alpha = -b / a
        lam = -a / d
        return MobiusTransform(complex(lam / abs(lam)), complex(alpha))

    def as_rational(self) -> RationalFunction:
        lam, alpha = self.lam, self.alpha
        return RationalFunction(Polynomial((lam * alpha, -lam)), Polynomial((1, -_conj(alpha))))

    def to_json(self) -> dict:
        lam, alpha = complex(self.lam), complex(self.alpha)
        return {"lambda": [lam.real, lam.imag], "alpha": [alpha.real, alpha.imag]}


def _matrix(m: MobiusTransform) -> np.ndarray:
    lam, alpha = complex(m.lam), complex(m.alpha)
    return np.array([[-lam, lam * alpha], [-alpha.conjugate(), 1]])


def compose_mobius(r: RationalFunction, m: MobiusTransform) -> RationalFunction:
    """The rational function r(m(z)) with the powers of (1 - conj(alpha) z) cleared."""
    lam, alpha = m.lam, m.alpha
    top = Polynomial((lam * alpha, -lam))
    bottom = Polynomial((1, -_conj(alpha)))
    k = max(r.numerator.degree, r.denominator.degree, 0)
    num = r.numerator.homogenize(top, bottom, k)
    den = r.denominator.homogenize(top, bottom, k)
    if den.is_zero():
        raise DegenerateComposition("composition has an identically zero denominator")
    return RationalFunction(num, den)


def mobius_fixing_pm1(alpha, swap: bool = False) -> MobiusTransform:
    """(z - alpha)/(1 - alpha z) fixing +-1, or (alpha - z)/(1 - alpha z) exchanging them."""
    if isinstance(alpha, complex) or not abs(alpha) < 1:
        raise ParameterOutOfRange(f"alpha must be real with |alpha| < 1, got {alpha!r}")
    return MobiusTransform(1 if swap else -1, alpha)


def arc_midpoint(xi: complex, zeta: complex) -> complex:
    """Midpoint of the counter-clockwise arc from xi to zeta."""
    span = (cmath.phase(zeta) - cmath.phase(xi)) % (2 * math.pi)
    return complex(xi) * cmath.exp(0.5j * span)


def mobius_to_pm1(xi: complex, zeta: complex) -> MobiusTransform:
    """Canonical mu with mu(1) = xi, mu(-1) = zeta and mu(i) the arc midpoint.

    Composing an embedding with this map moves a crossing (xi, zeta) to (1, -1).
    """
    return MobiusTransform.from_boundary_points((1, 1j, -1), (xi, arc_midpoint(xi, zeta), zeta))
