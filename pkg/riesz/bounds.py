from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from riesz.errors import DomainError
from riesz.kernel import Q_ONE, SlowlyVarying
from riesz.maximal import SteinEnvelope
from riesz.special import (
    GeometricConstants,
    ProblemParams,
    hls_pair_check,
    log_gamma,
    unit_sphere_area,
)


# Tolerance on 1/r + 1/s = 1 + alpha/d when accepting an exponent pair.
PAIR_EPS = 1e-9

# Grid size for the scan that brackets the infimum of F.
INF_GRID = 512

OMEGA0_NOTE = "d=1 uses the omega(0)=2 convention"
D_PARENS_NOTE = (
    "D read as (1/3)*4*5^(alpha-d)*omega*min(1, omega^(d/(d-alpha)))"
    "*(d^2/alpha)^(-2-alpha/d)"
)


class BoundKind(Enum):
    SHARP = "sharp"
    UPPER_EQ4 = "upper_eq4"
    UPPER_EQ4_SURFACE = "upper_eq4_surface"
    UPPER_EQ4A_SHAPE = "upper_eq4a_shape"
    THM1_EQ6 = "thm1_eq6"
    THM1_EQ7 = "thm1_eq7"
    LOWER_EQ10 = "lower_eq10"
    Z_THM3 = "Z_thm3"
    THM4_ENVELOPE_SHAPE = "thm4_envelope_shape"


@dataclass(frozen=True)
class BoundValue:
    value: float
    kind: BoundKind
    free_constant: Optional[float] = None
    notes: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.value > 0:
            raise DomainError(
                f"{self.kind.value} bound must be positive, got {self.value}"
            )

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)


@dataclass(frozen=True)
class ConstantBundle:
    """The auxiliary constants a, m, A, n, D and C_alpha for one (d, alpha)."""

    a: float
    m: float
    A: float
    n: float
    D: float
    C_alpha: float
    omega0_convention: bool = False

    def __post_init__(self) -> None:
        for name in ("a", "m", "A", "n", "D", "C_alpha"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"constant {name} must be positive, got {value}")


def _notes(params: ProblemParams, *extra: str) -> Tuple[str, ...]:
    return (OMEGA0_NOTE, *extra) if params.uses_omega0_convention else extra


def constants_bundle(params: ProblemParams) -> ConstantBundle:
    d, alpha = params.d, params.alpha
    omega = unit_sphere_area(d)
    a = math.exp(1 / math.e) * max(omega / alpha, (omega / alpha) ** (d / alpha))
    m = min(1.0, (omega / d) ** (1 - alpha / d))
    A = 4 * math.pi / (9 * alpha) * unit_sphere_area(d - 1) * 2.0 ** (-d) * m
    n = max(omega / d, (omega / d) ** (alpha / d))
    D = (
        4
        * 5 ** (alpha - d)
        * omega
        * min(1.0, omega ** (d / (d - alpha)))
        * (d * d / alpha) ** (-2 - alpha / d)
        / 3
    )
    C_alpha = 4 * 5 ** (alpha - d) * omega
    return ConstantBundle(a, m, A, n, D, C_alpha, params.uses_omega0_convention)


def sharp_constant_diag(params: ProblemParams) -> BoundValue:
    """Best constant at r = s = 2d/(d + alpha)."""
    d, alpha = params.d, params.alpha
    log_value = (
        0.5 * (d - alpha) * math.log(math.pi)
        + log_gamma(0.5 * alpha)
        - log_gamma(0.5 * (d + alpha))
        + (alpha / d) * (log_gamma(d) - log_gamma(0.5 * d))
    )
    return BoundValue(math.exp(log_value), BoundKind.SHARP, notes=_notes(params))


def _require_pair(r: float, s: float, params: ProblemParams) -> None:
    if not hls_pair_check(r, s, params, PAIR_EPS):
        raise DomainError(
            f"(r, s) = ({r}, {s}) not in G: needs r, s > 1 and "
            f"1/r + 1/s = {1 + params.alpha / params.d:g}"
        )


def _eq4(r: float, s: float, params: ProblemParams, area: float) -> float:
    d, alpha = params.d, params.alpha
    e = 1 - alpha / d
    bracket = (r / (r - 1)) ** e + (s / (s - 1)) ** e
    return area**e * d ** (alpha / d) * bracket / (r * s * alpha)


def upper_bound_eq4(r: float, s: float, params: ProblemParams) -> BoundValue:
    """Upper estimate with the sphere factor omega(d - 1), as printed."""
    _require_pair(r, s, params)
    value = _eq4(r, s, params, unit_sphere_area(params.d - 1))
    return BoundValue(value, BoundKind.UPPER_EQ4, notes=_notes(params))


def upper_bound_eq4_surface(r: float, s: float, params: ProblemParams) -> BoundValue:
    """The same estimate with the sphere factor read as omega(d) = |S^(d-1)|.

    This reading dominates the classical rearrangement bound for every pair
    in G, which the printed one does not for small alpha.

    """
    _require_pair(r, s, params)
    value = _eq4(r, s, params, unit_sphere_area(params.d))
    return BoundValue(value, BoundKind.UPPER_EQ4_SURFACE, notes=_notes(params))


def upper_bound_eq4a_shape(
    r: float, s: float, params: ProblemParams, c1d: float = 1.0
) -> BoundValue:
    _require_pair(r, s, params)
    if not c1d > 0:
        raise DomainError(f"c1d must be positive, got {c1d}")
    e = params.alpha / params.d - 1
    value = c1d / params.alpha * ((r - 1) * (s - 1)) ** e
    return BoundValue(value, BoundKind.UPPER_EQ4A_SHAPE, c1d, _notes(params))


def _require_open_p(p: float, params: ProblemParams) -> None:
    if not 1 < p < params.critical_p:
        raise DomainError(f"p must lie in (1, {params.critical_p:g}), got {p}")


def thm1_bound_eq6(p: float, params: ProblemParams, stein: SteinEnvelope) -> BoundValue:
    """Coefficient of |f|_p in the full maximal-function product, as printed."""
    _require_open_p(p, params)
    d, alpha = params.d, params.alpha
    omega_bar = GeometricConstants.for_dimension(d).sphere_area_clamped
    value = (
        stein.value
        * omega_bar
        * p ** ((alpha * p - d) * (p - 1))
        * (p - 1) ** (alpha * (p - 1) / d)
        * ((p - 1) * (d / alpha - p)) ** (alpha / d - 1)
        * (1 + (p - 1) ** (1 - 1 / p) / (alpha * p) * (d - alpha * p))
    )
    return BoundValue(value, BoundKind.THM1_EQ6, stein.value, _notes(params))


def thm1_bound_eq7(p: float, params: ProblemParams, stein: SteinEnvelope) -> BoundValue:
    """Coefficient of |f|_p in the simplified maximal-function estimate."""
    _require_open_p(p, params)
    d, alpha = params.d, params.alpha
    omega_bar = GeometricConstants.for_dimension(d).sphere_area_clamped
    value = (
        stein.value
        * omega_bar
        * (2 * d * d / alpha)
        / ((p - 1) * (d / alpha - p)) ** (1 - alpha / d)
    )
    return BoundValue(value, BoundKind.THM1_EQ7, stein.value, _notes(params))


def _monomial(base: float, exponent: float) -> float:
    """base^exponent with 0^positive = 0 at the interval ends."""
    if base == 0:
        return 0.0 if exponent > 0 else (1.0 if exponent == 0 else math.inf)
    return base**exponent


def F_of_p(p: float, params: ProblemParams) -> float:
    """Ratio whose infimum over [1, d/alpha] drives the lower estimate."""
    d, alpha = params.d, params.alpha
    top = params.critical_p
    if not 1 <= p <= top:
        raise DomainError(f"p must lie in [1, {top:g}], got {p}")
    c = constants_bundle(params)
    left, right = max(p - 1, 0.0), max(top - p, 0.0)
    num = c.A * _monomial(left, 1 / p + (d - alpha) / alpha) + c.D * _monomial(
        right, 1 / p + (2 * d - alpha) / d
    )
    den = c.a * _monomial(left, 1 / p) + c.n * _monomial(right, alpha / d)
    return 0.5 * num / den


@functools.lru_cache(maxsize=128)
def R_of(params: ProblemParams) -> float:
    """Infimum of F over [1, d/alpha]: grid scan, then bounded refinement."""
    top = params.critical_p
    grid = np.linspace(1.0, top, INF_GRID)
    values = [F_of_p(float(p), params) for p in grid]
    best = int(np.argmin(values))
    lo, hi = grid[max(best - 1, 0)], grid[min(best + 1, INF_GRID - 1)]
    res = minimize_scalar(
        lambda p: F_of_p(p, params),
        bounds=(float(lo), float(hi)),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return min(values[best], float(res.fun))


def lower_bound_eq10(r: float, s: float, params: ProblemParams) -> BoundValue:
    _require_pair(r, s, params)
    value = R_of(params) / ((r - 1) * (s - 1)) ** (1 - params.alpha / params.d)
    return BoundValue(
        value, BoundKind.LOWER_EQ10, notes=_notes(params, D_PARENS_NOTE)
    )


def Z_of_p(p: float, params: ProblemParams) -> float:
    """L_p norm of |x|^(alpha-d) on the unit ball."""
    d, alpha = params.d, params.alpha
    top = d / (d - alpha)
    if not 1 <= p < top:
        raise DomainError(f"p must lie in [1, {top:g}), got {p}")
    return (unit_sphere_area(d) / (d - alpha)) ** (1 / p) / (top - p) ** (1 / p)


def p_of_rs(r: float, s: float, params: Optional[ProblemParams] = None) -> float:
    """Young exponent p with 1/p = 2 - 1/r - 1/s, i.e. r's'/(r' + s')."""
    if r < 1 or s < 1:
        raise DomainError(f"need r, s >= 1, got ({r}, {s})")
    total = 1 / r + 1 / s
    if total < 1:
        raise DomainError(f"1/r + 1/s = {total:g} violates 1 <= 1/r + 1/s")
    if params is not None and not total < 1 + params.alpha / params.d:
        raise DomainError(
            f"1/r + 1/s = {total:g} violates 1/r + 1/s < "
            f"{1 + params.alpha / params.d:g}"
        )
    return 1 / (2 - total)


def thm3_bound(r: float, s: float, params: ProblemParams) -> BoundValue:
    """Young's-inequality constant for the truncated bilinear form."""
    value = Z_of_p(p_of_rs(r, s, params), params)
    return BoundValue(value, BoundKind.Z_THM3, notes=_notes(params))


def thm4_envelope_shape(
    r: float,
    s: float,
    params: ProblemParams,
    beta: float = 0.0,
    Q: SlowlyVarying = Q_ONE,
    c: float = 1.0,
) -> BoundValue:
    _require_pair(r, s, params)
    if not beta >= 0:
        raise DomainError(f"beta must be >= 0, got {beta}")
    if not c > 0:
        raise DomainError(f"envelope constant must be positive, got {c}")
    d, alpha = params.d, params.alpha
    e = 1 + beta - alpha / d
    value = c * alpha ** (-e) * Q(1 / alpha) / ((r - 1) * (s - 1)) ** e
    return BoundValue(value, BoundKind.THM4_ENVELOPE_SHAPE, c, _notes(params))
