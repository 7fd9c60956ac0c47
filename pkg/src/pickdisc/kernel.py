"""Reproducing kernels on the disc, Pick matrices and the kernel metric.

Two kernel kinds share one call signature ``k(z, w)``:

* :class:`DiscKernel` pulls back the Drury-Arveson kernel along an
  embedding, ``k^f(z, w) = 1 / (1 - <f(z), f(w)>)``;
* :class:`RotationInvariantKernel` sums ``c_n (z conj w)^n`` with a
  tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from .embedding import EmbeddingMap
from .errors import DuplicatePoints, ParameterOutOfRange, Singularity
from .series import CoefficientSequence, szego_coeffs

SINGULAR_TOL = 1e-15
TAIL_TOL = 1e-14
PSD_RTOL = 1e-10
MAX_TERMS = 200_000


class Kernel(Protocol):
    def __call__(self, z: complex, w: complex) -> complex: ...


def _check_disc(*points) -> None:
    for p in points:
        if not abs(p) < 1:
            raise ParameterOutOfRange(f"point {p!r} is not in the open unit disc")


class DiscKernel:
    """k^f(z, w) = 1 / (1 - <f(z), f(w)>)."""

    def __init__(self, source: EmbeddingMap):
        self.source = source

    def denominator(self, z: complex, w: complex) -> complex:
        """1 - <f(z), f(w)>, computed with compensated summation."""
        return self.source.one_minus_inner(z, w)

    def __call__(self, z: complex, w: complex) -> complex:
        _check_disc(z, w)
        den = self.denominator(z, w)
        if abs(den) < SINGULAR_TOL:
            raise Singularity(f"1 - <f(z), f(w)> = {den!r} at z={z!r}, w={w!r}")
        return 1 / den

    def __repr__(self) -> str:
        return f"DiscKernel(dimension={self.source.dimension})"


class RotationInvariantKernel:
    """k(z, w) = sum_n c_n (z conj w)^n.

    The series is cut at the smallest N with c_N |z w|^N / (1 - |z w|) below
    1e-14, a valid tail bound when the coefficients do not increase.  For
    custom sequences shorter than that, the whole window is used and the
    reported tail bound uses ``growth_bound`` (default: the largest
    stored coefficient).
    """

    def __init__(self, coeffs: CoefficientSequence, growth_bound: float | None = None):
        self.coeffs = coeffs
        self.growth_bound = float(growth_bound) if growth_bound is not None else float(max(coeffs.values))

    def _terms(self, x: complex) -> tuple[complex, float, int]:
        rho = abs(x)
        if rho >= 1:
            raise ParameterOutOfRange("|z conj w| must be < 1")
        total = 0j
        power = 1 + 0j
        partial = []
        for n in range(MAX_TERMS):
            try:
                cn = float(self.coeffs.coefficient(n))
            except IndexError:
                tail = self.growth_bound * rho ** n / (1 - rho)
                return math.fsum(p.real for p in partial) + 1j * math.fsum(p.imag for p in partial), tail, n - 1
            partial.append(cn * power)
            tail = cn * rho ** n / (1 - rho)
            if n > 0 and tail < TAIL_TOL:
                break
            power *= x
        total = complex(math.fsum(p.real for p in partial), math.fsum(p.imag for p in partial))
        return total, tail, n

    def evaluate(self, z: complex, w: complex) -> tuple[complex, float]:
        """(value, tail bound) of the truncated series."""
        _check_disc(z, w)
        value, tail, _ = self._terms(complex(z) * complex(w).conjugate())
        return value, tail

    def truncation_for(self, z: complex, w: complex) -> int:
        return self._terms(complex(z) * complex(w).conjugate())[2]

    def __call__(self, z: complex, w: complex) -> complex:
        return self.evaluate(z, w)[0]

    def __repr__(self) -> str:
        return f"RotationInvariantKernel(generator={self.coeffs.generator!r})"


def szego_kernel() -> RotationInvariantKernel:
    return RotationInvariantKernel(szego_coeffs(16, exact=False))


def kernel_eval(k: Kernel, z: complex, w: complex) -> complex:
    return k(z, w)


def gram_matrix(k: Kernel, points: Sequence[complex]) -> np.ndarray:
    pts = [complex(p) for p in points]
    n = len(pts)
    g = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            g[i, j] = k(pts[i], pts[j])
            g[j, i] = g[i, j].conjugate()
    return g


@dataclass
class PickMatrixReport:
    matrix: np.ndarray
    min_eigenvalue: float
    psd: bool
    tolerance: float

    def to_json(self) -> dict:
        return {
            "matrix": [[[v.real, v.imag] for v in row] for row in self.matrix],
            "min_eigenvalue": self.min_eigenvalue,
            "psd": self.psd,
            "tolerance": self.tolerance,
        }


def psd_report(matrix: np.ndarray, rtol: float = PSD_RTOL) -> PickMatrixReport:
    """Least eigenvalue and PSD verdict, tolerance relative to the max-row-sum norm."""
    if not np.allclose(matrix, matrix.conj().T, rtol=0, atol=1e-12 * max(1.0, np.abs(matrix).max())):
        raise ValueError("matrix is not Hermitian")
    herm = 0.5 * (matrix + matrix.conj().T)
    eig = float(np.linalg.eigvalsh(herm)[0])
    norm = float(np.max(np.sum(np.abs(herm), axis=1)))
    tol = rtol * norm
    return PickMatrixReport(herm, eig, eig >= -tol, tol)


def pick_matrix(k: Kernel, points: Sequence[complex], targets: Sequence[complex], rtol: float = PSD_RTOL) -> PickMatrixReport:
    """[(1 - a_j conj a_k) k(l_j, l_k)], PSD iff interpolation by a contractive multiplier may exist."""
    pts = [complex(p) for p in points]
    tgt = [complex(a) for a in targets]
    if len(pts) != len(tgt) or not pts:
        raise ValueError("points and targets must be non-empty and of equal length")
    for i in range(len(pts)):
        for j in range(i):
            if abs(pts[i] - pts[j]) < 1e-14:
                raise DuplicatePoints(f"points {j} and {i} coincide")
    g = gram_matrix(k, pts)
    a = np.asarray(tgt)
    return psd_report((1 - np.outer(a, a.conj())) * g, rtol)


def _similarity(k: Kernel, z: complex, w: complex) -> float:
    """|k(z,w)|^2 / (k(z,z) k(w,w)), split into stable factors for disc kernels."""
    if isinstance(k, DiscKernel):
        _check_disc(z, w)
        f = k.source
        dz, dw = f.one_minus_norm_sq(z), f.one_minus_norm_sq(w)
        den = k.denominator(z, w)
        if abs(den) < SINGULAR_TOL:
            raise Singularity(f"1 - <f(z), f(w)> vanishes at z={z!r}, w={w!r}")
        return dz * dw / abs(den) ** 2
    kzw = k(z, w)
    return abs(kzw) ** 2 / (k(z, z).real * k(w, w).real)


def metric_sq(k: Kernel, z: complex, w: complex) -> float:
    """d^2(z, w) = 1 - |k(z,w)|^2 / (k(z,z) k(w,w)), clipped to [0, 1]."""
    if z == w:
        return 0.0
    return min(1.0, max(0.0, 1.0 - _similarity(k, z, w)))


def metric(k: Kernel, z: complex, w: complex) -> float:
    return math.sqrt(metric_sq(k, z, w))


def kernel_difference_norm_sq(k: Kernel, z: complex, w: complex) -> float:
    """||k_z - k_w||^2 = k(z,z) - 2 Re k(z,w) + k(w,w)."""
    if z == w:
        return 0.0
    return max(0.0, math.fsum([k(z, z).real, -2 * k(z, w).real, k(w, w).real]))
