"""Embedding maps f: D -> B_d with rational coordinates.

Covers validation of the analytic-disc conditions, the two example
families ``f_r`` and ``f_{r,s}``, detection of boundary self-crossings,
the semi-invariant ``A_f(xi) = <f(xi), f'(xi) xi>`` and the expansion
constants of ``f`` at a crossing placed at +-1.

Inner products are conjugate-linear in the second argument.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    DegenerateFamily,
    DenominatorRootInDisc,
    MalformedInput,
    NonConvergence,
    NotNormalized,
    ParameterOutOfRange,
    TransversalityViolation,
)
from .functions import (
    MobiusTransform,
    Polynomial,
    RationalFunction,
    blaschke,
    compose_mobius,
    mobius_to_pm1,
)

CROSSING_GRID = 2048
CROSSING_THRESHOLD = 1e-4
NEWTON_TOL = 1e-12
CLUSTER_RADIUS = 1e-6
CROSSING_TOL = 1e-9
# crossings at +-1 are accepted when ||f(1) - f(-1)|| is below this
PM1_TOL = 1e-9
IMAG_TOL = 1e-9
INTERIOR_RADII = (0.0, 0.25, 0.5, 0.9, 0.99)


def _thread_count() -> int:
    env = os.environ.get("PICKDISC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _fsum_complex(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


@dataclass(frozen=True)
class EmbeddingMap:
    coordinates: tuple[RationalFunction, ...]

    def __init__(self, coordinates):
        coords = tuple(c if isinstance(c, RationalFunction) else RationalFunction(c) for c in coordinates)
        if not coords:
            raise ParameterOutOfRange("an embedding needs at least one coordinate")
        for j, c in enumerate(coords):
            bad = c.denominator_disc_roots()
            if bad:
                raise DenominatorRootInDisc(
                    f"denominator root in closed disc (coordinate {j}, z={bad[0]:.6g})"
                )
        object.__setattr__(self, "coordinates", coords)

    @property
    def dimension(self) -> int:
        return len(self.coordinates)

    @cached_property
    def first_derivatives(self) -> tuple[RationalFunction, ...]:
        return tuple(c.derivative() for c in self.coordinates)

    def __call__(self, z):
        """f(z) as an array of shape (d,) + shape(z)."""
        return np.array([c(z) for c in self.coordinates], dtype=complex)

    def derivative(self, z):
        return np.array([c.jet(z, 1)[1] for c in self.coordinates], dtype=complex)

    def second_derivative(self, z):
        return np.array([c.jet(z, 2)[2] for c in self.coordinates], dtype=complex)

    def compose(self, m: MobiusTransform) -> "EmbeddingMap":
        """The embedding f o m."""
        return EmbeddingMap(compose_mobius(c, m) for c in self.coordinates)

    def inner(self, z, w) -> complex:
        fz, fw = self(z), self(w)
        return _fsum_complex(fz * fw.conj())

    def one_minus_inner(self, z, w) -> complex:
        """1 - <f(z), f(w)> with compensated summation (no early cancellation)."""
        fz, fw = self(z), self(w)
        return _fsum_complex([1.0 + 0j, *(-(fz * fw.conj()))])

    def one_minus_norm_sq(self, z) -> float:
        fz = self(z)
        return math.fsum([1.0, *(-(fz.real ** 2)), *(-(fz.imag ** 2))])

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "coordinates": [c.to_json() for c in self.coordinates]}

    @classmethod
    def from_json(cls, obj) -> "EmbeddingMap":
        try:
            coords = [RationalFunction.from_json(c) for c in obj["coordinates"]]
            dim = int(obj.get("dimension", len(coords)))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"malformed embedding JSON: {exc}") from exc
        if dim != len(coords):
            raise MalformedInput(f"dimension {dim} does not match {len(coords)} coordinates")
        return cls(coords)


_SQRT_HALF = math.sqrt(0.5)


def make_f_r(r: float) -> EmbeddingMap:
    """f_r(z) = (z^2, b_r(z)^2) / sqrt(2), 0 < r < 1: a disc crossing itself only at +-1."""
    if not 0 < r < 1:
        raise ParameterOutOfRange(f"r must lie in (0, 1), got {r!r}")
    return make_f_rs(0.0, r)


def make_f_rs(r: float, s: float) -> EmbeddingMap:
    """f_{r,s}(z) = (b_r(z)^2, b_s(z)^2) / sqrt(2)."""
    if not (-1 < r < 1 and -1 < s < 1):
        raise ParameterOutOfRange(f"r, s must lie in (-1, 1), got {r!r}, {s!r}")
    if r == s:
        raise DegenerateFamily("f_{r,s} needs r != s")
    return EmbeddingMap([(blaschke(r) ** 2) * _SQRT_HALF, (blaschke(s) ** 2) * _SQRT_HALF])


def symmetric_parameter(r: float) -> float:
    """t in (-1, 0) with f_{0,r} o b_t = f_{t,-t}."""
    if not 0 < r < 1:
        raise ParameterOutOfRange(f"r must lie in (0, 1), got {r!r}")
    return (-1 + math.sqrt(1 - r * r)) / r


@dataclass
class ValidationReport:
    boundary_defect: float
    interior_max_norm: dict
    min_derivative_norm: float
    derivative_zeros: list
    min_semi_invariant: float
    max_semi_invariant_imag: float
    checks: dict
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "boundary_defect": self.boundary_defect,
            "interior_max_norm": {f"{r:g}": v for r, v in self.interior_max_norm.items()},
            "min_derivative_norm": self.min_derivative_norm,
            "derivative_zeros": [[z.real, z.imag] for z in self.derivative_zeros],
            "min_semi_invariant": self.min_semi_invariant,
            "max_semi_invariant_imag": self.max_semi_invariant_imag,
            "checks": dict(self.checks),
            "failures": list(self.failures),
            "passed": self.passed,
        }


def _critical_points(f: EmbeddingMap) -> list[complex]:
    """Common zeros of f' inside the closed disc (f' rational, so this is exact up to root finding)."""
    nonzero = [d for d in f.first_derivatives if not d.is_zero()]
    if not nonzero:
        return [0j]
    pick = min(nonzero, key=lambda d: d.numerator.degree)
    out = []
    for z in pick.numerator.roots():
        if abs(z) <= 1 + 1e-9 and np.linalg.norm(f.derivative(complex(z))) < 1e-8:
            out.append(complex(z))
    return out


def validate_embedding(
    f: EmbeddingMap,
    grid_size: int = 512,
    boundary_tol: float = 1e-9,
    derivative_tol: float = 1e-8,
) -> ValidationReport:
    """Sampled check of the analytic-disc conditions.

    Interior injectivity is not certified; it is outside what sampling can show.
    """
    if grid_size < 64:
        raise ParameterOutOfRange("grid_size must be >= 64")
    theta = 2 * np.pi * np.arange(grid_size) / grid_size
    xi = np.exp(1j * theta)
    fx = f(xi)
    norms = np.sum(np.abs(fx) ** 2, axis=0)
    boundary_defect = float(np.max(np.abs(norms - 1)))

    interior = {}
    min_deriv = math.inf
    for rad in INTERIOR_RADII:
        z = rad * xi if rad > 0 else np.zeros(1, dtype=complex)
        if rad > 0:
            interior[rad] = float(np.sqrt(np.max(np.sum(np.abs(f(z)) ** 2, axis=0))))
        min_deriv = min(min_deriv, float(np.min(np.linalg.norm(f.derivative(z), axis=0))))
    zeros = _critical_points(f)

    a_vals = np.sum(fx * np.conj(f.derivative(xi) * xi), axis=0)
    min_a = float(np.min(a_vals.real))
    max_im = float(np.max(np.abs(a_vals.imag) / (1 + np.abs(a_vals))))

    checks = {
        "boundary_on_sphere": boundary_defect <= boundary_tol,
        "interior_in_ball": all(v < 1 for v in interior.values()),
        "derivative_nonvanishing": min_deriv > derivative_tol and not zeros,
        "semi_invariant_real": max_im <= IMAG_TOL,
        "semi_invariant_positive": min_a > IMAG_TOL,
    }
    messages = {
        "boundary_on_sphere": f"boundary not on the sphere (max defect {boundary_defect:.3g})",
        "interior_in_ball": "interior points leave the open ball",
        "derivative_nonvanishing": "derivative vanishes",
        "semi_invariant_real": "semi-invariant not real on the circle",
        "semi_invariant_positive": "transversality fails: semi-invariant not positive",
    }
    failures = [messages[k] for k, ok in checks.items() if not ok]
    return ValidationReport(boundary_defect, interior, min_deriv, zeros, min_a, max_im, checks, failures)


@dataclass(frozen=True)
class CrossingPair:
    xi: complex
    zeta: complex
    residual: float

    @property
    def angles(self) -> tuple[float, float]:
        return (np.angle(self.xi) % (2 * np.pi), np.angle(self.zeta) % (2 * np.pi))

    def to_json(self) -> dict:
        return {
            "xi": [self.xi.real, self.xi.imag],
            "zeta": [self.zeta.real, self.zeta.imag],
            "residual": self.residual,
        }


def _circ(a: float, b: float) -> float:
    d = (a - b) % (2 * np.pi)
    return min(d, 2 * np.pi - d)


def _wrap(angle: float) -> float:
    angle %= 2 * np.pi
    return 0.0 if 2 * np.pi - angle < 1e-12 else angle


def _gauss_newton(f: EmbeddingMap, theta: float, phi: float, tol: float, max_iter: int = 60):
    """Zero of f(e^{i theta}) - f(e^{i phi}) in the least-squares sense."""
    for _ in range(max_iter):
        x, y = np.exp(1j * theta), np.exp(1j * phi)
        res = f(x) - f(y)
        jac = np.stack([1j * x * f.derivative(x), -1j * y * f.derivative(y)], axis=1)
        rj = np.concatenate([jac.real, jac.imag])
        rr = np.concatenate([res.real, res.imag])
        step, *_ = np.linalg.lstsq(rj, -rr, rcond=None)
        theta += step[0]
        phi += step[1]
        if np.max(np.abs(step)) < tol:
            break
    x, y = np.exp(1j * theta), np.exp(1j * phi)
    return theta, phi, float(np.linalg.norm(f(x) - f(y)))


def _distance_matrix(values: np.ndarray, workers: int) -> np.ndarray:
    """||f(xi_i) - f(xi_j)||^2 on the grid, row blocks computed in parallel."""
    n = values.shape[1]
    sq = np.sum(np.abs(values) ** 2, axis=0)
    out = np.empty((n, n))
    conj = values.conj()

    def block(lo, hi):
        gram = values[:, lo:hi].T @ conj
        out[lo:hi] = sq[lo:hi, None] + sq[None, :] - 2 * gram.real

    step = max(1, -(-n // workers))
    bounds = [(lo, min(n, lo + step)) for lo in range(0, n, step)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda b: block(*b), bounds))
    else:
        for b in bounds:
            block(*b)
    return out


def find_self_crossings(
    f: EmbeddingMap,
    grid_size: int = CROSSING_GRID,
    threshold: float = CROSSING_THRESHOLD,
    newton_tol: float = NEWTON_TOL,
    cluster_radius: float = CLUSTER_RADIUS,
    crossing_tol: float = CROSSING_TOL,
    max_candidates: int = 512,
) -> list[CrossingPair]:
    """All boundary pairs xi != zeta with f(xi) = f(zeta).

    A coarse grid over (theta, phi) supplies local minima of the squared
    distance, which are polished by Gauss-Newton and then clustered.
    Candidates below ``threshold`` that fail to converge are reported with
    a :class:`NonConvergence` warning.
    """
    if grid_size < 64:
        raise ParameterOutOfRange("grid_size must be >= 64")
    n = grid_size
    h = 2 * np.pi / n
    xi = np.exp(1j * h * np.arange(n))
    values = f(xi)
    dist = _distance_matrix(values, _thread_count())

    # A crossing inside a grid cell leaves a grid value below (L h)^2.
    lip = float(np.max(np.linalg.norm(f.derivative(xi), axis=0)))
    coarse = max(threshold, 1.01 * (lip * h) ** 2)
    band = max(4, n // 256)

    ii, jj = np.nonzero(dist < coarse)
    gap = (jj - ii) % n
    keep = (jj > ii) & (np.minimum(gap, n - gap) >= band)
    ii, jj = ii[keep], jj[keep]
    vals = dist[ii, jj]
    is_min = np.ones(len(ii), dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                is_min &= vals <= dist[(ii + di) % n, (jj + dj) % n]
    ii, jj, vals = ii[is_min], jj[is_min], vals[is_min]
    if len(ii) > max_candidates:
        raise ValueError(f"{len(ii)} crossing candidates: crossings are not isolated")

    found: list[tuple[float, float, float]] = []
    for i, j, v in sorted(zip(ii.tolist(), jj.tolist(), vals.tolist())):
        theta, phi, resid = _gauss_newton(f, i * h, j * h, newton_tol)
        theta, phi = _wrap(theta), _wrap(phi)
        if resid > crossing_tol or _circ(theta, phi) < cluster_radius:
            if v < threshold:
                warnings.warn(
                    NonConvergence(f"crossing candidate near angles ({i * h:.6f}, {j * h:.6f}) did not converge"
                                   f" (residual {resid:.3g})"),
                    stacklevel=2,
                )
            continue
        if theta > phi:
            theta, phi = phi, theta
        if any(_circ(theta, a) < cluster_radius and _circ(phi, b) < cluster_radius for a, b, _ in found):
            continue
        found.append((theta, phi, resid))
    found.sort()
    return [CrossingPair(complex(np.exp(1j * a)), complex(np.exp(1j * b)), r) for a, b, r in found]


def semi_invariant(f: EmbeddingMap, xi: complex) -> float:
    """A_f(xi) = <f(xi), f'(xi) xi>, real and positive for embedding maps."""
    xi = complex(xi)
    if abs(abs(xi) - 1) > 1e-12:
        raise ParameterOutOfRange(f"xi must lie on the unit circle, |xi| = {abs(xi)!r}")
    value = _fsum_complex(f(xi) * np.conj(f.derivative(xi) * xi))
    if abs(value.imag) > IMAG_TOL * (1 + abs(value)):
        raise TransversalityViolation(f"A_f({xi}) has imaginary part {value.imag:.3g}")
    if value.real <= IMAG_TOL:
        raise TransversalityViolation(f"A_f({xi}) = {value.real:.3g} is not positive")
    return value.real


def transform_semi_invariant(f: EmbeddingMap, m: MobiusTransform, xi: complex) -> float:
    """Predicted A_{f o m}(xi) = A_f(m(xi)) (1 - |alpha|^2) / |alpha - xi|^2."""
    xi = complex(xi)
    alpha = complex(m.alpha)
    factor = (1 - abs(alpha) ** 2) / abs(alpha - xi) ** 2
    return semi_invariant(f, m(xi)) * factor


@dataclass(frozen=True)
class BoundaryCollisionData:
    """Expansion constants of f at a crossing f(1) = f(-1)."""

    A: float
    B: float
    C: float
    D: float
    E: complex
    F: complex
    G: complex

    @property
    def bound_constant(self) -> float:
        """(1/4)(C/A^2 + D/B^2 + 2 Re E/(AB)), the limiting bound on |h(1) - h(-1)|^2 for unit h."""
        A, B = self.A, self.B
        return 0.25 * (self.C / A ** 2 + self.D / B ** 2 + 2 * self.E.real / (A * B))

    def to_json(self) -> dict:
        return {
            "A": self.A, "B": self.B, "C": self.C, "D": self.D,
            "E": [self.E.real, self.E.imag],
            "F": [self.F.real, self.F.imag],
            "G": [self.G.real, self.G.imag],
            "bound_constant": self.bound_constant,
        }


def has_pm1_crossing(f: EmbeddingMap, tol: float = PM1_TOL) -> bool:
    return float(np.linalg.norm(f(1.0) - f(-1.0))) <= tol


def require_pm1_crossing(f: EmbeddingMap) -> None:
    if not has_pm1_crossing(f):
        gap = float(np.linalg.norm(f(1.0) - f(-1.0)))
        raise NotNormalized(f"no crossing at +-1 (||f(1) - f(-1)|| = {gap:.3g}); compose with a Moebius map first")


def collision_data(f: EmbeddingMap) -> BoundaryCollisionData:
    require_pm1_crossing(f)
    p1, m1 = f(1.0), f(-1.0)
    d1, dm1 = f.derivative(1.0), f.derivative(-1.0)
    s1, sm1 = f.second_derivative(1.0), f.second_derivative(-1.0)

    def ip(a, b):
        return _fsum_complex(a * b.conj())

    A = ip(p1, d1)
    B = -ip(m1, dm1)
    for name, v in (("A", A), ("B", B)):
        if abs(v.imag) > IMAG_TOL * (1 + abs(v)) or v.real <= IMAG_TOL:
            raise TransversalityViolation(f"{name} = {v} is not real positive")
    return BoundaryCollisionData(
        A=A.real,
        B=B.real,
        C=ip(d1, d1).real,
        D=ip(dm1, dm1).real,
        E=ip(d1, dm1),
        F=ip(p1, s1) / 2,
        G=ip(m1, sm1) / 2,
    )


def normalize_crossing(f: EmbeddingMap, pair: CrossingPair) -> tuple[EmbeddingMap, MobiusTransform]:
    """Compose f with the canonical automorphism moving (xi, zeta) to (1, -1)."""
    mu = mobius_to_pm1(pair.xi, pair.zeta)
    return f.compose(mu), mu


def coordinate(f: EmbeddingMap, j: int) -> RationalFunction:
    """The j-th coordinate function; coordinates are multipliers of the pulled-back space."""
    return f.coordinates[j]


def polynomial_embedding(*coeff_lists) -> EmbeddingMap:
    """An embedding with polynomial coordinates given by coefficient lists."""
    return EmbeddingMap(RationalFunction(Polynomial(c)) for c in coeff_lists)
