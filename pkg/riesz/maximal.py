from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import integrate
from scipy.optimize import minimize_scalar

from riesz.errors import DivergenceError, DomainError
from riesz.kernel import riesz_potential
from riesz.quadrature import QuadratureSpec, integrate_radial
from riesz.radial import (
    RadialProfile,
    ball_mass,
    log_grid,
    lp_norm,
    maximize_over_radius,
)
from riesz.special import (
    ProblemParams,
    cap_fraction,
    conjugate_exponent,
    unit_ball_volume,
    unit_sphere_area,
)


logger = logging.getLogger(__name__)

# Sample radii (in units of the profile scale) for |Mf|_p.
STEIN_SAMPLES = 96
STEIN_SPAN = (1e-3, 1e3)
STEIN_GRID = 160


@dataclass(frozen=True)
class SteinEnvelope:
    """Known upper bounds for the Stein constant S(d), and the one in use.

    `S` is the value plugged into the maximal-function bounds; it defaults to
    the classical 2 * 5^d.

    """

    d: int
    classic_bound: float
    dim2_bound: Optional[float] = None
    sqrt_bound_constant: Optional[float] = None
    S: Optional[float] = None

    def __post_init__(self) -> None:
        if self.classic_bound != 2 * 5**self.d:
            raise DomainError(f"classic Stein bound must be 2*5^{self.d}")
        for bound in self.bounds:
            if bound < 1:
                raise DomainError(f"Stein constant bounds are >= 1, got {bound}")

    @classmethod
    def for_dimension(
        cls,
        d: int,
        sqrt_bound_constant: Optional[float] = None,
        S: Optional[float] = None,
    ) -> SteinEnvelope:
        return cls(
            d,
            2.0 * 5**d,
            2.0 if d == 2 else None,
            sqrt_bound_constant,
            S,
        )

    @property
    def sqrt_bound(self) -> Optional[float]:
        if self.sqrt_bound_constant is None:
            return None
        return self.sqrt_bound_constant * math.sqrt(self.d)

    @property
    def bounds(self) -> Tuple[float, ...]:
        found = (self.classic_bound, self.dim2_bound, self.sqrt_bound, self.S)
        return tuple(b for b in found if b is not None)

    @property
    def value(self) -> float:
        return self.S if self.S is not None else self.classic_bound

    @property
    def tightest(self) -> float:
        """Smallest of the proven bounds (the chosen S excluded)."""
        proven = (self.classic_bound, self.dim2_bound, self.sqrt_bound)
        return min(b for b in proven if b is not None)


@dataclass(frozen=True)
class HedbergSplit:
    delta: float
    near_part: float
    far_part: float

    def __post_init__(self) -> None:
        if not self.delta > 0:
            raise DomainError(f"delta must be positive, got {self.delta}")
        if self.near_part < 0 or self.far_part < 0:
            raise DomainError(f"negative split parts in {self}")

    @property
    def total(self) -> float:
        return self.near_part + self.far_part


def ball_average(
    profile: RadialProfile,
    params: ProblemParams,
    R: float,
    rho: float,
    quad: QuadratureSpec,
) -> float:
    """Mean of the profile over the ball of radius rho centred at |x| = R."""
    d = params.d
    volume = unit_ball_volume(d) * rho**d
    if R == 0:
        return ball_mass(profile, rho, params, quad) / volume
    if d == 1:

        def fn(r: float) -> float:
            count = (abs(R - r) <= rho) + (R + r <= rho)
            return count * profile(r) if count else 0.0

        omega = 1.0
    else:

        def fn(r: float) -> float:
            fraction = cap_fraction(R, r, rho, d)
            return fraction * r ** (d - 1) * profile(r) if fraction else 0.0

        omega = unit_sphere_area(d)
    lo = max(profile.inner_radius, R - rho)
    hi = min(profile.outer_radius, R + rho)
    integral = integrate_radial(
        fn,
        lo,
        hi,
        quad,
        points=(*profile.breakpoints, abs(R - rho), R),
        origin_power=d - 1 - profile.origin_exponent,
    )
    return omega * integral.value / volume


def _check_local(profile: RadialProfile, params: ProblemParams) -> None:
    if profile.inner_radius == 0 and profile.origin_exponent >= params.d:
        raise DivergenceError(
            f"{profile.describe()} is not locally integrable at the origin"
        )


@functools.lru_cache(maxsize=1024)
def maximal_radial(
    profile: RadialProfile,
    params: ProblemParams,
    R: float,
    search: QuadratureSpec,
    grid_size: int = 400,
) -> float:
    """Centred Hardy-Littlewood maximal function at |x| = R.

    A lower estimate: the sup over a log-spaced radius grid refined by a
    bounded scalar search around the best grid point.

    """
    if R < 0:
        raise DomainError(f"radius must be nonnegative, got {R}")
    if profile.is_zero:
        return 0.0
    _check_local(profile, params)
    scale = max(profile.scale, R)
    _, value = maximize_over_radius(
        lambda rho: ball_average(profile, params, R, rho, search),
        log_grid(scale, grid_size),
    )
    return value


def hedberg_near(delta: float, params: ProblemParams) -> float:
    """Coefficient of Mf(x) bounding the part of I f(x) within delta of x."""
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    d, alpha = params.d, params.alpha
    return unit_ball_volume(d) * (d / alpha) * delta**alpha


def _far_exponent(p: float, params: ProblemParams) -> Tuple[float, float]:
    """Return (s, (d - alpha) s - d) for the Holder exponent s = p'."""
    if not p > 1:
        raise DomainError(f"p must exceed 1, got {p}")
    if p >= params.critical_p:
        raise DivergenceError(
            f"far part diverges: p = {p} must be below d/alpha = {params.critical_p}"
        )
    s = conjugate_exponent(p)
    return s, (params.d - params.alpha) * s - params.d


def hedberg_far(p: float, delta: float, params: ProblemParams) -> float:
    """Coefficient of |f|_p bounding the part of I f(x) beyond delta."""
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    s, excess = _far_exponent(p, params)
    d = params.d
    tail = delta ** (d - (d - params.alpha) * s) / excess
    return unit_sphere_area(d) * tail ** (1 / s)


def hedberg_bound(
    profile: RadialProfile,
    p: float,
    params: ProblemParams,
    R: float,
    quad: QuadratureSpec,
) -> HedbergSplit:
    """Split I f(R) <= A(delta) Mf(R) + D(p, delta) |f|_p at the best delta."""
    s, excess = _far_exponent(p, params)
    if profile.is_zero:
        return HedbergSplit(1.0, 0.0, 0.0)
    mf = maximal_radial(profile, params, R, quad)
    norm = lp_norm(profile, p, params, quad).value
    alpha = params.alpha
    kappa = excess / s
    c1 = hedberg_near(1.0, params) * mf
    c2 = hedberg_far(p, 1.0, params) * norm
    delta = (kappa * c2 / (alpha * c1)) ** (1 / (alpha + kappa))
    if not (math.isfinite(delta) and delta > 0):
        logger.debug("closed-form delta degenerate; using bounded search")
        res = minimize_scalar(
            lambda t: c1 * math.exp(alpha * t) + c2 * math.exp(-kappa * t),
            bounds=(-50.0, 50.0),
            method="bounded",
        )
        delta = math.exp(res.x)
    return HedbergSplit(
        delta,
        hedberg_near(delta, params) * mf,
        hedberg_far(p, delta, params) * norm,
    )


def potential_dominated(
    profile: RadialProfile,
    p: float,
    params: ProblemParams,
    R: float,
    quad: QuadratureSpec,
) -> Tuple[float, HedbergSplit]:
    """Return the potential at R together with its Hedberg split."""
    return riesz_potential(profile, params, R, quad), hedberg_bound(
        profile, p, params, R, quad
    )


@functools.lru_cache(maxsize=64)
def maximal_samples(
    profile: RadialProfile, params: ProblemParams, quad: QuadratureSpec
) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    """Mf on a log-spaced radius grid; cached because every p reuses it."""
    _check_local(profile, params)
    lo, hi = STEIN_SPAN
    radii = np.geomspace(lo * profile.scale, hi * profile.scale, STEIN_SAMPLES)
    logger.info("sampling Mf of %s at %d radii", profile.describe(), len(radii))
    values = [
        maximal_radial(profile, params, float(R), quad, STEIN_GRID) for R in radii
    ]
    return tuple(float(r) for r in radii), tuple(values)


def stein_ratio_probe(
    profile: RadialProfile, p: float, params: ProblemParams, quad: QuadratureSpec
) -> float:
    """|Mf|_p (p - 1) / (p |f|_p), a lower estimate of the Stein constant.

    |Mf|_p is integrated from samples in ln R; the ball inside the first
    sample counts at the first sample's value and the tail beyond the last
    sample is dropped.

    """
    if not p > 1:
        raise DomainError(f"p must exceed 1, got {p}")
    if profile.is_zero:
        raise DomainError("Stein ratio undefined for the zero profile")
    d = params.d
    norm = lp_norm(profile, p, params, quad).value
    radii, values = maximal_samples(profile, params, quad)
    r = np.array(radii)
    mf = np.array(values) / norm
    body = unit_sphere_area(d) * integrate.trapezoid(mf**p * r**d, np.log(r))
    core = mf[0] ** p * unit_ball_volume(d) * r[0] ** d
    return float((body + core) ** (1 / p) * (p - 1) / p)
