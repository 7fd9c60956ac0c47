"""Obstructions to isomorphism of multiplier algebras for discs crossing at +-1.

Everything here can only *falsify*: a failed obstruction proves that two
algebras differ, a passed one proves nothing.  Reports therefore speak of
obstructions passed or failed, never of isomorphism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .embedding import (
    CROSSING_GRID,
    CrossingPair,
    EmbeddingMap,
    collision_data,
    find_self_crossings,
    require_pm1_crossing,
    semi_invariant,
)
from .errors import ParameterOutOfRange, Singularity
from .functions import MobiusTransform, mobius_fixing_pm1
from .kernel import DiscKernel, kernel_difference_norm_sq, metric_sq
from .series import weighted_hardy_coeffs

LADDER_START = 1e-2
LADDER_RATIO = 0.5
DEFAULT_T_MIN = 1e-6
RICHARDSON_POINTS = 5
ARC_TOL = 1e-6


@dataclass(frozen=True)
class RatioInvariant:
    value: float
    a_plus: float
    a_minus: float


def invariant_ratio(f: EmbeddingMap) -> RatioInvariant:
    """A_f(1) / A_f(-1); equal for f and g whenever M_f = M_g."""
    require_pm1_crossing(f)
    ap, am = semi_invariant(f, 1.0), semi_invariant(f, -1.0)
    return RatioInvariant(ap / am, ap, am)


@dataclass(frozen=True)
class AutomorphismCandidates:
    alpha: float
    beta: float

    @property
    def alpha_map(self) -> MobiusTransform:
        """(z - alpha)/(1 - alpha z), the candidate fixing +-1."""
        return mobius_fixing_pm1(self.alpha, swap=False)

    @property
    def beta_map(self) -> MobiusTransform:
        """(beta - z)/(1 - beta z), the candidate exchanging +-1."""
        return mobius_fixing_pm1(self.beta, swap=True)

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta,
                "alpha_map": self.alpha_map.to_json(), "beta_map": self.beta_map.to_json()}


def candidate_automorphisms(f: EmbeddingMap, g: EmbeddingMap) -> AutomorphismCandidates:
    """The only two automorphisms mu for which M_f = M_{g o mu} is possible."""
    rf, rg = invariant_ratio(f), invariant_ratio(g)
    p = math.sqrt(rf.a_plus * rg.a_minus)
    q = math.sqrt(rf.a_minus * rg.a_plus)
    u = math.sqrt(rf.a_plus * rg.a_plus)
    v = math.sqrt(rf.a_minus * rg.a_minus)
    return AutomorphismCandidates((p - q) / (p + q), (u - v) / (u + v))


def t_ladder(t_min: float = DEFAULT_T_MIN, n_samples: int | None = None, t_max: float = LADDER_START) -> np.ndarray:
    """Decreasing geometric ladder from t_max to t_min (ratio 1/2 unless n_samples is given)."""
    if not 0 < t_min < t_max:
        raise ParameterOutOfRange(f"need 0 < t_min < {t_max}, got {t_min!r}")
    if n_samples is not None:
        if n_samples < 2:
            raise ParameterOutOfRange("n_samples must be >= 2")
        return np.geomspace(t_max, t_min, n_samples)
    k = int(math.floor(math.log(t_min / t_max) / math.log(LADDER_RATIO) + 1e-9))
    ts = t_max * LADDER_RATIO ** np.arange(k + 1)
    if ts[-1] > t_min * (1 + 1e-9):
        ts = np.append(ts, t_min)
    return ts


def richardson_first_order(t: np.ndarray, y: np.ndarray, points: int = RICHARDSON_POINTS) -> float:
    """Intercept of a least-squares line y = L + c t through the last ``points`` samples."""
    t = np.asarray(t, dtype=float)[-points:]
    y = np.asarray(y, dtype=float)[-points:]
    good = np.isfinite(y)
    t, y = t[good], y[good]
    if len(t) == 0:
        return math.nan
    if len(t) == 1:
        return float(y[0])
    design = np.stack([np.ones_like(t), t], axis=1)
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(coef[0])


@dataclass
class AsymptoticReport:
    t_samples: list
    df_sq: list
    dg_sq: list
    a: float
    b: float
    predicted_dg_limit: float
    extrapolated_dg: float
    extrapolated_df: float
    errors: list = field(default_factory=list)
    notes: tuple = ("extrapolation assumes first-order o(1) terms; heuristic",)

    def to_json(self) -> dict:
        return {
            "t_samples": list(self.t_samples),
            "df_sq": list(self.df_sq),
            "dg_sq": list(self.dg_sq),
            "a": self.a,
            "b": self.b,
            "predicted_dg_limit": self.predicted_dg_limit,
            "extrapolated_dg": self.extrapolated_dg,
            "extrapolated_df": self.extrapolated_df,
            "errors": list(self.errors),
            "notes": list(self.notes),
        }

    def table(self) -> list[dict]:
        return [{"t": t, "df_sq": a, "dg_sq": b} for t, a, b in zip(self.t_samples, self.df_sq, self.dg_sq)]


def matched_path_limits(
    f: EmbeddingMap,
    g: EmbeddingMap,
    t_min: float = DEFAULT_T_MIN,
    n_samples: int | None = None,
) -> AsymptoticReport:
    """d_f^2 and d_g^2 along z = 1 - t/A_f(1), w = -1 + t/A_f(-1) as t -> 0.

    d_f^2 tends to 0 on this path while d_g^2 tends to 1 - 4ab/(a+b)^2 with
    a = A_g(1)/A_f(1), b = A_g(-1)/A_f(-1), so a positive limit rules out
    M_f = M_g.
    """
    rf, rg = invariant_ratio(f), invariant_ratio(g)
    a = rg.a_plus / rf.a_plus
    b = rg.a_minus / rf.a_minus
    predicted = 1 - 4 * a * b / (a + b) ** 2
    kf, kg = DiscKernel(f), DiscKernel(g)
    ts = t_ladder(t_min, n_samples)
    df, dg, errors = [], [], []
    for t in ts:
        z = 1 - t / rf.a_plus
        w = -1 + t / rf.a_minus
        try:
            df.append(metric_sq(kf, z, w))
            dg.append(metric_sq(kg, z, w))
        except (Singularity, OverflowError, ZeroDivisionError) as exc:
            df.append(math.nan)
            dg.append(math.nan)
            errors.append({"t": float(t), "error": str(exc)})
    return AsymptoticReport(
        t_samples=[float(t) for t in ts],
        df_sq=df,
        dg_sq=dg,
        a=a,
        b=b,
        predicted_dg_limit=predicted,
        extrapolated_dg=richardson_first_order(ts, dg),
        extrapolated_df=richardson_first_order(ts, df),
        errors=errors,
    )


@dataclass
class CollisionBoundReport:
    base_point: complex
    t_samples: list
    gap_sq: list
    kernel_difference_sq: list
    bound_constant: float
    slack: float
    check_below: float
    within_bound: bool
    final_gap_sq: float
    gap_vanishes: bool

    @property
    def passed(self) -> bool:
        return self.within_bound and self.gap_vanishes

    def to_json(self) -> dict:
        return {
            "base_point": [self.base_point.real, self.base_point.imag],
            "t_samples": list(self.t_samples),
            "gap_sq": list(self.gap_sq),
            "kernel_difference_sq": list(self.kernel_difference_sq),
            "bound_constant": self.bound_constant,
            "slack": self.slack,
            "within_bound": self.within_bound,
            "final_gap_sq": self.final_gap_sq,
            "gap_vanishes": self.gap_vanishes,
            "passed": self.passed,
        }


def collision_bound_check(
    f: EmbeddingMap,
    v: complex,
    t_min: float = DEFAULT_T_MIN,
    slack: float = 0.25,
    check_below: float = 1e-3,
    vanish_tol: float = 1e-6,
) -> CollisionBoundReport:
    """Sample |h(1 - t/A) - h(-1 + t/B)|^2 for the unit vector h = k_v / sqrt(k(v, v)).

    Samples with t <= ``check_below`` must respect the limiting bound
    (1 + slack) * bound_constant, and the last sample must be below
    ``vanish_tol`` since h(1) = h(-1) whenever f(1) = f(-1).
    """
    v = complex(v)
    data = collision_data(f)
    k = DiscKernel(f)
    norm = math.sqrt(k(v, v).real)
    ts = t_ladder(t_min)
    gaps, diffs = [], []
    for t in ts:
        z = 1 - t / data.A
        w = -1 + t / data.B
        gaps.append(abs((k(z, v) - k(w, v)) / norm) ** 2)
        diffs.append(kernel_difference_norm_sq(k, z, w))
    limit = (1 + slack) * data.bound_constant
    within = all(gap <= limit for t, gap in zip(ts, gaps) if t <= check_below)
    return CollisionBoundReport(
        base_point=v,
        t_samples=[float(t) for t in ts],
        gap_sq=gaps,
        kernel_difference_sq=diffs,
        bound_constant=data.bound_constant,
        slack=slack,
        check_below=check_below,
        within_bound=within,
        final_gap_sq=gaps[-1],
        gap_vanishes=gaps[-1] < vanish_tol,
    )


@dataclass
class CrossingTypeVerdict:
    same: bool
    witness: CrossingPair | None
    f_crossings: list
    g_crossings: list
    mobius: MobiusTransform | None = None

    def to_json(self) -> dict:
        return {
            "verdict": "same" if self.same else "different",
            "witness": self.witness.to_json() if self.witness else None,
            "f_crossings": [c.to_json() for c in self.f_crossings],
            "g_crossings": [c.to_json() for c in self.g_crossings],
            "mobius": self.mobius.to_json() if self.mobius else None,
        }


def _arc(a: complex, b: complex) -> float:
    d = abs(np.angle(complex(a) / complex(b)))
    return float(d)


def _pairs_match(p: list[tuple[complex, complex]], q: list[tuple[complex, complex]], tol: float) -> bool:
    unused = list(q)
    for x, y in p:
        hit = None
        for k, (u, w) in enumerate(unused):
            if (_arc(x, u) < tol and _arc(y, w) < tol) or (_arc(x, w) < tol and _arc(y, u) < tol):
                hit = k
                break
        if hit is None:
            return False
        unused.pop(hit)
    return not unused


def _configurations_equivalent(fc: list[CrossingPair], gc: list[CrossingPair], tol: float):
    """Search for an automorphism carrying g's crossing pairs onto f's."""
    target = [(c.xi, c.zeta) for c in fc]
    source = [(c.xi, c.zeta) for c in gc]
    ref = (fc[0].xi, fc[0].zeta, fc[1].xi)
    for i, (p, q) in enumerate(source):
        for a, b in ((p, q), (q, p)):
            for j, pair in enumerate(source):
                if j == i:
                    continue
                for third in pair:
                    try:
                        mu = MobiusTransform.from_boundary_points((a, b, third), ref)
                    except ParameterOutOfRange:
                        continue
                    mapped = [(mu(x), mu(y)) for x, y in source]
                    if _pairs_match(mapped, target, tol):
                        return mu
    return None


def same_crossing_type(
    f: EmbeddingMap,
    g: EmbeddingMap,
    grid_size: int = CROSSING_GRID,
    arc_tol: float = ARC_TOL,
) -> CrossingTypeVerdict:
    """Do f and g have the same boundary self-crossings up to a disc automorphism?"""
    fc = find_self_crossings(f, grid_size)
    gc = find_self_crossings(g, grid_size)
    if len(fc) != len(gc):
        longer = fc if len(fc) > len(gc) else gc
        return CrossingTypeVerdict(False, longer[0], fc, gc)
    if len(fc) == 0:
        return CrossingTypeVerdict(True, None, fc, gc)
    if len(fc) == 1:
        # any two pairs of distinct boundary points are automorphic images
        return CrossingTypeVerdict(True, None, fc, gc)
    mu = _configurations_equivalent(fc, gc, arc_tol)
    if mu is None:
        return CrossingTypeVerdict(False, gc[0], fc, gc)
    return CrossingTypeVerdict(True, None, fc, gc, mu)


@dataclass(frozen=True)
class WeightedHardyObstruction:
    s: float
    distinct: bool
    reason: str


def weighted_hardy_obstruction(f: EmbeddingMap, s: float, grid_size: int = CROSSING_GRID) -> WeightedHardyObstruction:
    """Why H_s differs from H_f for s < 0.

    If f crosses itself on the circle, the coordinate z is in H_s, continuous
    on the closed disc, yet separates the crossing points, which no function
    of H_f can do.  If f has no crossings, H_f = H^2 with equivalent norms,
    while ||z^n||^2 = (1+n)^{-s} is unbounded in H_s.
    """
    if s >= 0:
        raise ParameterOutOfRange("the obstruction concerns s < 0")
    crossings = find_self_crossings(f, grid_size)
    if crossings:
        c = crossings[0]
        return WeightedHardyObstruction(
            s, True, f"z separates the crossing ({c.xi:.6g}, {c.zeta:.6g}) of f but belongs to H_s"
        )
    coeffs = weighted_hardy_coeffs(s, 64)
    return WeightedHardyObstruction(
        s, True,
        f"f is boundary-injective so H_f = H^2, but c_64 = {coeffs[64]:.3g} -> 0 for H_s",
    )
