from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import special

from riesz.errors import DomainError


@dataclass(frozen=True)
class ProblemParams:
    """Dimension d and order alpha of the kernel |x|^(alpha - d).

    0 < alpha < d must always hold.

    """

    d: int
    alpha: float

    def __post_init__(self) -> None:
        if self.d < 1:
            raise DomainError(f"dimension must be >= 1, got {self.d}")
        if not 0 < self.alpha < self.d:
            raise DomainError(f"alpha must lie in (0, {self.d}), got {self.alpha}")

    @property
    def critical_p(self) -> float:
        """Upper end d/alpha of the admissible p interval."""
        return self.d / self.alpha

    @property
    def diagonal_exponent(self) -> float:
        """The exponent 2d/(d + alpha) where the sharp constant is known."""
        return 2 * self.d / (self.d + self.alpha)

    @property
    def uses_omega0_convention(self) -> bool:
        return self.d == 1


@dataclass(frozen=True)
class GeometricConstants:
    ball_volume: float
    sphere_area: float
    sphere_area_clamped: float

    @classmethod
    def for_dimension(cls, d: int) -> GeometricConstants:
        area = unit_sphere_area(d)
        return cls(unit_ball_volume(d), area, max(1.0, area))


def log_gamma(x: float) -> float:
    """Return ln Gamma(x) for positive x."""
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    return float(special.gammaln(x))


def unit_ball_volume(d: int) -> float:
    """Return Omega(d) = pi^(d/2) / Gamma(1 + d/2)."""
    if d < 1:
        raise DomainError(f"ball volume needs d >= 1, got {d}")
    return math.exp(0.5 * d * math.log(math.pi) - log_gamma(1 + 0.5 * d))


def unit_sphere_area(d: int) -> float:
    """Return omega(d) = 2 pi^(d/2) / Gamma(d/2).

    S^0 = {-1, 1} carries counting measure, so omega(0) = 2.

    """
    if d < 0:
        raise DomainError(f"sphere area needs d >= 0, got {d}")
    if d == 0:
        return 2.0
    return 2.0 * math.exp(0.5 * d * math.log(math.pi) - log_gamma(0.5 * d))


def cap_fraction(R: float, r: float, rho: float, d: int) -> float:
    """Fraction of the sphere |y| = r lying within rho of R e_1 (d >= 2)."""
    if R == 0 or r == 0:
        return 1.0 if R + r <= rho else 0.0
    c0 = (R * R + r * r - rho * rho) / (2 * R * r)
    if c0 <= -1:
        return 1.0
    if c0 >= 1:
        return 0.0
    half = 0.5 * float(special.betainc(0.5 * (d - 1), 0.5, 1 - c0 * c0))
    return half if c0 >= 0 else 1.0 - half


def conjugate_exponent(p: float) -> float:
    if not p > 1:
        raise DomainError(f"conjugate exponent needs p > 1, got {p}")
    return p / (p - 1)


def q_of_p(p: float, params: ProblemParams) -> float:
    """Return q with 1/q = 1/p - alpha/d."""
    if not 1 < p < params.critical_p:
        raise DomainError(f"p must lie in (1, {params.critical_p}), got {p}")
    return p * params.d / (params.d - params.alpha * p)


def p_of_q(q: float, params: ProblemParams) -> float:
    lo = params.d / (params.d - params.alpha)
    if not q > lo:
        raise DomainError(f"q must exceed {lo}, got {q}")
    return params.d * q / (params.d + params.alpha * q)


def hls_pair_check(r: float, s: float, params: ProblemParams, eps: float) -> bool:
    """Return whether (r, s) lies in G_{alpha,d} up to eps."""
    if r <= 1 or s <= 1:
        return False
    return abs(1 / r + 1 / s - 1 - params.alpha / params.d) <= eps
