"""Coefficient-level analysis of rotation-invariant kernels k(z, w) = sum c_n (z conj w)^n.

With c_0 = 1 the reciprocal series is 1 - 1/k = sum_{n>=1} r_n (z conj w)^n,
linked to the c_n by the renewal recurrence

    c_n = sum_{m=0}^{n-1} c_m r_{n-m},  n >= 1.

The kernel is complete Pick exactly when every r_n >= 0 (and then
sum r_n <= 1); the number of nonzero r_n is the embedding dimension.
Sequences come in two modes: ``"exact"`` (``Fraction`` entries, every
identity holds on the nose) and ``"float"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    MalformedInput,
    NotCompletePick,
    NotNormalized,
    ParameterOutOfRange,
    PeriodicSupport,
    ZeroAtOrigin,
)

DEFAULT_TRUNCATION = 200
# |r_n| below ZERO_TOL is zero, above NONZERO_TOL nonzero, in between undecided.
ZERO_TOL = 1e-12
NONZERO_TOL = 1e-8
SUM_TOL = 1e-9
RENEWAL_DELTA = 1e-3


def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, float):
        return Fraction(x)
    raise MalformedInput(f"cannot read {x!r} as an exact rational")


@dataclass(frozen=True)
class CoefficientSequence:
    values: tuple
    mode: str = "float"
    generator: str = "custom"

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise ParameterOutOfRange(f"mode must be 'exact' or 'float', got {self.mode!r}")
        if self.mode == "exact":
            vals = tuple(_exact(v) for v in self.values)
        else:
            vals = tuple(float(v) for v in self.values)
        if not vals:
            raise ParameterOutOfRange("empty coefficient sequence")
        bad = [n for n, v in enumerate(vals) if v < 0]
        if bad:
            raise ParameterOutOfRange(f"kernel coefficients must be nonnegative (c_{bad[0]} < 0)")
        object.__setattr__(self, "values", vals)

    @property
    def truncation(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def coefficient(self, n: int):
        """c_n, extended past the stored window by the closed-form generator when there is one."""
        if n < len(self.values):
            return self.values[n]
        if self.generator == "szego":
            return self.values[0]
        if self.generator.startswith("weighted_hardy("):
            s = float(self.generator[len("weighted_hardy("):-1])
            return self.values[0] * (1 + n) ** s
        if self.generator == "bergman":
            return self.values[0] * (n + 1)
        raise IndexError(f"c_{n} is beyond the supplied coefficients (N = {self.truncation})")

    @property
    def extendable(self) -> bool:
        return self.generator != "custom"

    def zero_indices(self) -> list[int]:
        return [n for n, v in enumerate(self.values) if v == 0]

    def to_json(self) -> dict:
        if self.mode == "exact":
            c = [[v.numerator, v.denominator] for v in self.values]
        else:
            c = list(self.values)
        return {"mode": "exact" if self.mode == "exact" else "float", "c": c, "generator": self.generator}

    @classmethod
    def from_json(cls, obj) -> "CoefficientSequence":
        try:
            mode = obj.get("mode", "float")
            mode = "float" if mode in ("float", "floating") else mode
            return cls(tuple(obj["c"]), mode=mode, generator=obj.get("generator", "custom"))
        except (KeyError, TypeError, AttributeError, ZeroDivisionError) as exc:
            raise MalformedInput(f"malformed coefficient JSON: {exc}") from exc


def szego_coeffs(N: int = DEFAULT_TRUNCATION, exact: bool = True) -> CoefficientSequence:
    one = Fraction(1) if exact else 1.0
    return CoefficientSequence((one,) * (N + 1), "exact" if exact else "float", "szego")


def bergman_coeffs(N: int = DEFAULT_TRUNCATION, exact: bool = True) -> CoefficientSequence:
    return CoefficientSequence(tuple(range(1, N + 2)), "exact" if exact else "float", "bergman")


def weighted_hardy_coeffs(s: float, N: int = DEFAULT_TRUNCATION, exact: bool = False) -> CoefficientSequence:
    """c_n = (1 + n)^s, the kernel of the weighted Hardy space H_s.

    ``exact=True`` needs an integer s.
    """
    if N < 1:
        raise ParameterOutOfRange("N must be >= 1")
    tag = f"weighted_hardy({s:g})"
    if exact:
        if float(s) != int(s):
            raise ParameterOutOfRange("exact weighted Hardy coefficients need an integer s")
        k = int(s)
        vals = tuple(Fraction(1 + n) ** k for n in range(N + 1))
        return CoefficientSequence(vals, "exact", tag)
    return CoefficientSequence(tuple((1.0 + n) ** s for n in range(N + 1)), "float", tag)


def normalize(c: CoefficientSequence) -> CoefficientSequence:
    """Rescale so that c_0 = 1."""
    c0 = c.values[0]
    if c0 == 0:
        raise ZeroAtOrigin("c_0 = 0: the kernel vanishes at the origin")
    if c0 == 1:
        return c
    return CoefficientSequence(tuple(v / c0 for v in c.values), c.mode, c.generator)


@dataclass(frozen=True)
class ReciprocalReport:
    r: tuple  # r_1 ... r_N
    sum_r: float | Fraction
    all_nonnegative: bool
    mode: str = "float"

    def coefficient(self, n: int):
        """r_n for n >= 1."""
        return self.r[n - 1]


def _require_normalized(c: CoefficientSequence) -> None:
    if c.values[0] != 1:
        raise NotNormalized(f"c_0 = {c.values[0]} (normalize first)")


def reciprocal_coeffs(c: CoefficientSequence) -> ReciprocalReport:
    """Solve the renewal recurrence for r_1..r_N."""
    _require_normalized(c)
    vals = c.values
    r: list = []
    for n in range(1, len(vals)):
        if c.mode == "exact":
            acc = vals[n] - sum(vals[m] * r[n - m - 1] for m in range(1, n))
        else:
            acc = vals[n] - math.fsum(vals[m] * r[n - m - 1] for m in range(1, n))
        r.append(acc)
    total = sum(r, Fraction(0)) if c.mode == "exact" else math.fsum(r)
    return ReciprocalReport(tuple(r), total, all(x >= 0 for x in r), c.mode)


def coeffs_from_reciprocal(r: Sequence, N: int = DEFAULT_TRUNCATION, exact: bool | None = None) -> CoefficientSequence:
    """Iterate the renewal recurrence: c_0 = 1 and c_n = sum c_m r_{n-m}.

    ``r`` lists r_1, r_2, ...; missing terms are zero.
    """
    if exact is None:
        exact = all(isinstance(x, (int, Fraction)) for x in r)
    rr = [_exact(x) for x in r] if exact else [float(x) for x in r]
    zero = Fraction(0) if exact else 0.0
    c = [Fraction(1) if exact else 1.0]
    for n in range(1, N + 1):
        terms = [c[m] * rr[n - m - 1] for m in range(max(0, n - len(rr)), n)]
        c.append(sum(terms, zero) if exact else math.fsum(terms))
    return CoefficientSequence(tuple(c), "exact" if exact else "float", "custom")


@dataclass(frozen=True)
class PickVerdict:
    kind: str  # "complete_pick" | "not_complete_pick" | "inconclusive"
    first_bad_index: int | None
    sum_r: float
    zero_coefficient_indices: tuple = ()
    reason: str = ""

    @property
    def is_complete_pick(self) -> bool:
        return self.kind == "complete_pick"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "first_bad_index": self.first_bad_index,
            "sum_r": float(self.sum_r),
            "zero_coefficient_indices": list(self.zero_coefficient_indices),
            "reason": self.reason,
        }


def complete_pick_check(c: CoefficientSequence, report: ReciprocalReport | None = None) -> PickVerdict:
    """Complete Pick test on the truncation window: r_n >= 0 for all n and sum r_n <= 1.

    In float mode, r_n with NONZERO_TOL > -r_n > ZERO_TOL make the answer
    inconclusive rather than guessed.
    """
    _require_normalized(c)
    rep = report or reciprocal_coeffs(c)
    zeros = tuple(c.zero_indices())
    undecided = None
    for n, x in enumerate(rep.r, start=1):
        if c.mode == "exact":
            if x < 0:
                return PickVerdict("not_complete_pick", n, rep.sum_r, zeros, f"r_{n} = {x} < 0")
        elif x < -NONZERO_TOL:
            return PickVerdict("not_complete_pick", n, rep.sum_r, zeros, f"r_{n} = {x:.6g} < 0")
        elif x < -ZERO_TOL and undecided is None:
            undecided = n
    slack = 0 if c.mode == "exact" else SUM_TOL
    if rep.sum_r > 1 + slack:
        return PickVerdict("not_complete_pick", None, rep.sum_r, zeros, f"sum r_n = {float(rep.sum_r):.6g} > 1")
    if undecided is not None:
        return PickVerdict("inconclusive", undecided, rep.sum_r, zeros,
                           f"r_{undecided} lies in the undecided band around zero")
    return PickVerdict("complete_pick", None, rep.sum_r, zeros)


@dataclass(frozen=True)
class EmbeddingDimensionVerdict:
    kind: str  # "finite" | "infinite_up_to_truncation" | "inconclusive"
    dimension: int | None
    nonzero_indices: tuple
    tolerance_used: float
    truncation: int

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "dimension": self.dimension,
            "nonzero_indices": list(self.nonzero_indices),
            "tolerance_used": self.tolerance_used,
            "truncation": self.truncation,
        }


def embedding_dimension(c: CoefficientSequence) -> EmbeddingDimensionVerdict:
    """Count the nonzero r_n when 1 - 1/k is (visibly) a polynomial.

    A finite verdict needs the support to end in the first half of the
    window, so that at least as many vanishing terms follow the last nonzero
    one as precede it.
    """
    rep = reciprocal_coeffs(c)
    verdict = complete_pick_check(c, rep)
    if not verdict.is_complete_pick:
        raise NotCompletePick(verdict.reason or verdict.kind)
    N = c.truncation
    if c.mode == "exact":
        nonzero = tuple(n for n, x in enumerate(rep.r, start=1) if x != 0)
        tol = 0.0
    else:
        mags = [abs(x) for x in rep.r]
        nonzero = tuple(n for n, x in enumerate(mags, start=1) if x > NONZERO_TOL)
        undecided = [n for n, x in enumerate(mags, start=1) if ZERO_TOL <= x <= NONZERO_TOL]
        tol = ZERO_TOL
        if undecided:
            return EmbeddingDimensionVerdict("inconclusive", None, nonzero, tol, N)
    if nonzero and 2 * nonzero[-1] <= N:
        return EmbeddingDimensionVerdict("finite", len(nonzero), nonzero, tol, N)
    if not nonzero:
        return EmbeddingDimensionVerdict("finite", 0, (), tol, N)
    return EmbeddingDimensionVerdict("infinite_up_to_truncation", None, nonzero, tol, N)


@dataclass(frozen=True)
class RenewalReport:
    mu: float
    limit: float
    c_tail_min: float
    c_tail_max: float
    hardy_equivalent: bool
    sum_r: float
    window: tuple
    notes: tuple = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "limit": self.limit,
            "c_tail_min": self.c_tail_min,
            "c_tail_max": self.c_tail_max,
            "hardy_equivalent": self.hardy_equivalent,
            "sum_r": self.sum_r,
            "window": list(self.window),
            "notes": list(self.notes),
        }


def renewal_limit(c: CoefficientSequence, delta: float = RENEWAL_DELTA, sum_tol: float = SUM_TOL) -> RenewalReport:
    """Renewal-theorem limit c_n -> 1/mu, mu = sum n r_n, checked on the last quarter of the window."""
    rep = reciprocal_coeffs(c)
    verdict = complete_pick_check(c, rep)
    if not verdict.is_complete_pick:
        raise NotCompletePick(verdict.reason or verdict.kind)
    support = [n for n, x in enumerate(rep.r, start=1) if float(x) > ZERO_TOL]
    if not support:
        raise NotCompletePick("all r_n vanish: the kernel is constant")
    g = 0
    for n in support:
        g = math.gcd(g, n)
    if g != 1:
        raise PeriodicSupport(f"support of r_n has period {g}; c_n has no limit")

    if c.mode == "exact":
        mu_exact = sum((n * x for n, x in enumerate(rep.r, start=1)), Fraction(0))
        mu = float(mu_exact)
        limit = float(1 / mu_exact)
    else:
        mu = math.fsum(n * x for n, x in enumerate(rep.r, start=1))
        limit = 1.0 / mu
    N = c.truncation
    lo = N - N // 4
    tail = [float(v) for v in c.values[lo:]]
    tail_min, tail_max = min(tail), max(tail)
    sum_r = float(rep.sum_r)
    notes = []
    balanced = abs(sum_r - 1) <= sum_tol
    if not balanced:
        notes.append(
            f"sum r_n = {sum_r:.12g} < 1 on the window: either q(1) < 1 and the kernel extends "
            "analytically past the disc, or the tail of r_n is not yet summed"
        )
    inside = tail_min >= limit - delta and tail_max <= 1 + 1e-12
    if balanced and not inside:
        notes.append("c_n has not settled within delta of 1/mu on the window")
    return RenewalReport(mu, limit, tail_min, tail_max, balanced and inside, sum_r, (lo, N), tuple(notes))
