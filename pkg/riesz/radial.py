from __future__ import annotations

import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from riesz.errors import DivergenceError, DomainError, UnsupportedShapeError
from riesz.quadrature import Integrand, QuadratureSpec, integrate_radial
from riesz.special import ProblemParams, unit_ball_volume, unit_sphere_area


# Radii at which a new GenericCallable is sampled for negative values.
SAMPLE_RADII = (1e-3, 0.1, 0.5, 1.0, 2.0, 10.0, 1e3)

# Scan size and span (in units of the profile scale) for sup searches.
SCAN_POINTS = 400
SCAN_SPAN = (1e-4, 1e4)


class RadialProfile(ABC):
    """A nonnegative radial function f(|x|) on R^d.

    Besides point evaluation, every profile exposes the metadata quadrature
    relies on: f(r) ~ r^-origin_exponent near zero, f(r) ~ r^-tail_exponent
    at infinity (inf when compactly supported), the radii between which it
    can be nonzero, and the radii where it jumps.

    """

    @abstractmethod
    def __call__(self, r: float) -> float:
        ...

    @property
    def origin_exponent(self) -> float:
        return 0.0

    @property
    def tail_exponent(self) -> float:
        return math.inf

    @property
    def inner_radius(self) -> float:
        return 0.0

    @property
    def outer_radius(self) -> float:
        return math.inf

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return ()

    @property
    def nonincreasing(self) -> bool:
        return False

    @property
    def scale(self) -> float:
        """Characteristic radius, used to place search grids."""
        return 1.0

    @property
    def is_zero(self) -> bool:
        return False

    @abstractmethod
    def describe(self) -> str:
        ...

    def lp_violation(self, p: float, d: int) -> Optional[str]:
        """Return why this profile is not in L_p(R^d), or None if it is."""
        if self.is_zero:
            return None
        if self.inner_radius == 0 and not self.origin_exponent * p < d:
            return f"origin exponent {self.origin_exponent:g} * p must be < d = {d}"
        if math.isinf(self.outer_radius) and not self.tail_exponent * p > d:
            return f"tail exponent {self.tail_exponent:g} * p must be > d = {d}"
        return None


def _power(c: float, gamma: float, r: float) -> float:
    if r == 0.0:
        return c if gamma == 0 else math.inf
    return c * r ** (-gamma)


@dataclass(frozen=True)
class PowerOutside(RadialProfile):
    """c |x|^-gamma for |x| > R0, zero inside."""

    c: float
    gamma: float
    R0: float

    def __post_init__(self) -> None:
        if not (self.c > 0 and self.R0 > 0 and self.gamma >= 0):
            raise DomainError(f"invalid {self.describe()}")

    def __call__(self, r: float) -> float:
        return _power(self.c, self.gamma, r) if r > self.R0 else 0.0

    @property
    def tail_exponent(self) -> float:
        return self.gamma

    @property
    def inner_radius(self) -> float:
        return self.R0

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return (self.R0,)

    @property
    def scale(self) -> float:
        return self.R0

    def describe(self) -> str:
        return f"PowerOutside(c={self.c!r}, gamma={self.gamma!r}, R0={self.R0!r})"


@dataclass(frozen=True)
class PowerInside(RadialProfile):
    """c |x|^-gamma for |x| < R0, zero outside. gamma = 0 is an indicator."""

    c: float
    gamma: float
    R0: float

    def __post_init__(self) -> None:
        if not (self.c > 0 and self.R0 > 0 and self.gamma >= 0):
            raise DomainError(f"invalid {self.describe()}")

    def __call__(self, r: float) -> float:
        return _power(self.c, self.gamma, r) if r < self.R0 else 0.0

    @property
    def origin_exponent(self) -> float:
        return self.gamma

    @property
    def outer_radius(self) -> float:
        return self.R0

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return (self.R0,)

    @property
    def nonincreasing(self) -> bool:
        return True

    @property
    def scale(self) -> float:
        return self.R0

    def describe(self) -> str:
        return f"PowerInside(c={self.c!r}, gamma={self.gamma!r}, R0={self.R0!r})"


@dataclass(frozen=True)
class BumpTrial(RadialProfile):
    """(1 + |x|^2 / lambda^2)^-exponent."""

    lambda_scale: float
    exponent: float

    def __post_init__(self) -> None:
        if not (self.lambda_scale > 0 and self.exponent > 0):
            raise DomainError(f"invalid {self.describe()}")

    def __call__(self, r: float) -> float:
        return (1.0 + (r / self.lambda_scale) ** 2) ** (-self.exponent)

    @property
    def tail_exponent(self) -> float:
        return 2.0 * self.exponent

    @property
    def nonincreasing(self) -> bool:
        return True

    @property
    def scale(self) -> float:
        return self.lambda_scale

    def describe(self) -> str:
        return (
            f"BumpTrial(lambda_scale={self.lambda_scale!r}, "
            f"exponent={self.exponent!r})"
        )


@dataclass(frozen=True)
class GenericCallable(RadialProfile):
    """An arbitrary nonnegative evaluator with caller-supplied decay metadata.

    Construction samples the evaluator at SAMPLE_RADII only; a negative value
    met later, at a quadrature node say, raises DomainError on evaluation.

    """

    evaluator: Callable[[float], float]
    origin: float = 0.0
    tail: float = math.inf
    monotone: bool = False
    label: str = "generic"
    support: Tuple[float, float] = (0.0, math.inf)
    jumps: Tuple[float, ...] = ()

    def __post_init__(self) -> None:
        lo, hi = self.support
        for r in SAMPLE_RADII:
            if lo <= r <= hi and self.evaluator(r) < 0:
                raise DomainError(f"{self.label} is negative at r={r}")

    def __call__(self, r: float) -> float:
        lo, hi = self.support
        if not lo <= r <= hi:
            return 0.0
        value = float(self.evaluator(r))
        if value < 0:
            raise DomainError(f"{self.label} is negative at r={r}")
        return value

    @property
    def origin_exponent(self) -> float:
        return self.origin

    @property
    def tail_exponent(self) -> float:
        return self.tail

    @property
    def inner_radius(self) -> float:
        return self.support[0]

    @property
    def outer_radius(self) -> float:
        return self.support[1]

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(r for r in (*self.support, *self.jumps) if 0 < r < math.inf)

    @property
    def nonincreasing(self) -> bool:
        return self.monotone

    def describe(self) -> str:
        return f"GenericCallable(label={self.label!r})"


@dataclass(frozen=True)
class SumOf(RadialProfile):
    """Pointwise sum of profiles; the empty sum is the zero profile."""

    parts: Tuple[RadialProfile, ...] = field(default_factory=tuple)

    def __call__(self, r: float) -> float:
        return sum(part(r) for part in self.parts)

    @property
    def origin_exponent(self) -> float:
        near = [p.origin_exponent for p in self.parts if p.inner_radius == 0]
        return max(near, default=0.0)

    @property
    def tail_exponent(self) -> float:
        return min((p.tail_exponent for p in self.parts), default=math.inf)

    @property
    def inner_radius(self) -> float:
        return min((p.inner_radius for p in self.parts), default=0.0)

    @property
    def outer_radius(self) -> float:
        return max((p.outer_radius for p in self.parts), default=0.0)

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(sorted({b for p in self.parts for b in p.breakpoints}))

    @property
    def nonincreasing(self) -> bool:
        return all(p.nonincreasing for p in self.parts)

    @property
    def scale(self) -> float:
        return max((p.scale for p in self.parts), default=1.0)

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def describe(self) -> str:
        return "SumOf([" + ", ".join(p.describe() for p in self.parts) + "])"


def make_f0(params: ProblemParams) -> PowerOutside:
    return PowerOutside(1.0, float(params.d), 1.0)


def make_g0(params: ProblemParams) -> PowerInside:
    return PowerInside(1.0, params.alpha, 1.0)


def make_h(params: ProblemParams) -> SumOf:
    return SumOf((make_f0(params), make_g0(params)))


def make_bump(params: ProblemParams, lambda_scale: float = 1.0) -> BumpTrial:
    """The trial family (1 + |x|^2/lambda^2)^(-(d + alpha)/2)."""
    return BumpTrial(lambda_scale, 0.5 * (params.d + params.alpha))


def unit_ball_indicator() -> PowerInside:
    return PowerInside(1.0, 0.0, 1.0)


def truncated_kernel_profile(params: ProblemParams) -> PowerInside:
    """|x|^(alpha - d) restricted to the unit ball."""
    return PowerInside(1.0, params.d - params.alpha, 1.0)


def zero_profile() -> SumOf:
    return SumOf(())


_NAMED = {
    "f0": make_f0,
    "g0": make_g0,
    "h": make_h,
    "ball": lambda params: unit_ball_indicator(),
    "zero": lambda params: zero_profile(),
}

_POWER_RE = re.compile(
    r"^(PowerOutside|PowerInside)\(\s*c=([^,]+),\s*gamma=([^,]+),\s*R0=([^)]+)\)$"
)
_BUMP_RE = re.compile(r"^BumpTrial\(\s*lambda_scale=([^,]+),\s*exponent=([^)]+)\)$")
_SUM_RE = re.compile(r"^SumOf\(\[(.*)\]\)$")


def _split_top_level(text: str) -> List[str]:
    """Split on commas that are not nested inside brackets."""
    parts: List[str] = []
    depth = start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p for p in parts if p.strip()]


def profile_from_descriptor(text: str, params: ProblemParams) -> RadialProfile:
    """Parse a profile name or the describe() text of a profile.

    Names are `f0`, `g0`, `h`, `ball`, `zero` and `bump[:lambda]`. Every
    profile but GenericCallable reads back from its own describe().

    """
    text = text.strip()
    if text in _NAMED:
        return _NAMED[text](params)
    if text == "bump" or text.startswith("bump:"):
        _, _, lam = text.partition(":")
        try:
            return make_bump(params, float(lam) if lam else 1.0)
        except ValueError as e:
            raise DomainError(f"bad bump scale in {text!r}") from e
    try:
        match = _POWER_RE.match(text)
        if match is not None:
            kind, c, gamma, r0 = match.groups()
            cls = PowerOutside if kind == "PowerOutside" else PowerInside
            return cls(float(c), float(gamma), float(r0))
        match = _BUMP_RE.match(text)
        if match is not None:
            return BumpTrial(float(match.group(1)), float(match.group(2)))
    except ValueError as e:
        raise DomainError(f"bad number in profile descriptor {text!r}") from e
    match = _SUM_RE.match(text)
    if match is not None:
        parts = _split_top_level(match.group(1))
        return SumOf(tuple(profile_from_descriptor(p, params) for p in parts))
    raise DomainError(f"unknown profile descriptor {text!r}")


class NormMethod(Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class NormResult:
    value: float
    method: NormMethod
    est_error: float

    def __post_init__(self) -> None:
        if self.value < 0 or self.est_error < 0:
            raise DomainError(f"negative norm result {self}")


def lp_norm_closed(
    profile: RadialProfile, p: float, params: ProblemParams
) -> NormResult:
    """Closed-form L_p norm of a single power-law piece."""
    if not p > 0:
        raise DomainError(f"p must be positive, got {p}")
    if not isinstance(profile, (PowerOutside, PowerInside)):
        raise UnsupportedShapeError(f"no closed form for {profile.describe()}")
    d = params.d
    excess = profile.gamma * p - d
    if isinstance(profile, PowerOutside) and not excess > 0:
        raise DivergenceError(f"{profile.describe()} not in L_{p:g}: needs gamma*p > d")
    if isinstance(profile, PowerInside) and not excess < 0:
        raise DivergenceError(f"{profile.describe()} not in L_{p:g}: needs gamma*p < d")
    integral = (
        unit_sphere_area(d) * profile.c**p * profile.R0 ** (-excess) / abs(excess)
    )
    return NormResult(integral ** (1 / p), NormMethod.CLOSED_FORM, 0.0)


def _integrand_power(power: Optional[float], p: float, d: int) -> Optional[float]:
    """Power of |f|^p r^(d-1) given f ~ r^power; None when unknown or unbounded."""
    if power is None or not math.isfinite(power):
        return None
    return d - 1 + p * power


def radial_lp_norm(
    fn: Integrand,
    p: float,
    params: ProblemParams,
    quad: QuadratureSpec,
    lo: float = 0.0,
    hi: float = math.inf,
    points: Sequence[float] = (),
    origin_power: Optional[float] = None,
    tail_power: Optional[float] = None,
    scale: float = 1.0,
) -> NormResult:
    """(omega(d) int |fn(r)|^p r^(d-1) dr)^(1/p) for a radial fn.

    The powers describe fn itself; `scale` divides fn before raising it to
    the p-th power so large p cannot overflow.

    """
    d = params.d

    def integrand(r: float) -> float:
        return (abs(fn(r)) / scale) ** p * r ** (d - 1)

    integral = integrate_radial(
        integrand,
        lo,
        hi,
        quad,
        points,
        _integrand_power(origin_power, p, d),
        _integrand_power(tail_power, p, d),
    )
    omega = unit_sphere_area(d)
    value = (omega * integral.value) ** (1 / p)
    est = value * integral.error / (p * integral.value) if integral.value > 0 else 0.0
    return NormResult(scale * value, NormMethod.QUADRATURE, scale * est)


def lp_norm_numeric(
    profile: RadialProfile, p: float, params: ProblemParams, quad: QuadratureSpec
) -> NormResult:
    if not p > 0:
        raise DomainError(f"p must be positive, got {p}")
    violation = profile.lp_violation(p, params.d)
    if violation is not None:
        raise DivergenceError(f"{profile.describe()} not in L_{p:g}: {violation}")
    if profile.is_zero:
        return NormResult(0.0, NormMethod.QUADRATURE, 0.0)
    return radial_lp_norm(
        profile,
        p,
        params,
        quad,
        lo=profile.inner_radius,
        hi=profile.outer_radius,
        points=profile.breakpoints,
        origin_power=-profile.origin_exponent,
        tail_power=-profile.tail_exponent,
    )


def lp_norm(
    profile: RadialProfile, p: float, params: ProblemParams, quad: QuadratureSpec
) -> NormResult:
    """Closed form where one exists, quadrature otherwise."""
    if isinstance(profile, (PowerOutside, PowerInside)):
        return lp_norm_closed(profile, p, params)
    return lp_norm_numeric(profile, p, params, quad)


def ball_mass(
    profile: RadialProfile, R: float, params: ProblemParams, quad: QuadratureSpec
) -> float:
    """Integral of the profile over the centered ball of radius R."""
    d = params.d
    integral = integrate_radial(
        lambda r: profile(r) * r ** (d - 1),
        profile.inner_radius,
        min(R, profile.outer_radius),
        quad,
        profile.breakpoints,
        origin_power=d - 1 - profile.origin_exponent,
    )
    return unit_sphere_area(d) * integral.value


def log_grid(scale: float, n: int = SCAN_POINTS) -> np.ndarray:
    lo, hi = SCAN_SPAN
    return np.geomspace(lo * scale, hi * scale, n)


def maximize_over_radius(
    objective: Callable[[float], float], radii: np.ndarray
) -> Tuple[float, float]:
    """Scan `radii`, then refine around the best one; return (radius, value).

    The refinement is a bounded golden-section/Brent search in ln(radius).

    """
    values = [objective(float(r)) for r in radii]
    best = int(np.argmax(values))
    lo = math.log(radii[max(best - 1, 0)])
    hi = math.log(radii[min(best + 1, len(radii) - 1)])
    best_r, best_v = float(radii[best]), values[best]
    if hi > lo:
        res = minimize_scalar(
            lambda s: -objective(math.exp(s)),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-10},
        )
        if -res.fun > best_v:
            best_r, best_v = math.exp(res.x), -float(res.fun)
    return best_r, best_v


def weak_lq_norm(
    profile: RadialProfile, q: float, params: ProblemParams, quad: QuadratureSpec
) -> NormResult:
    """Weak L_q norm, optimised over centered balls.

    For a radially nonincreasing profile the centered ball of a given measure
    carries the largest integral, so the sup over sets reduces to a sup
    over radii.

    """
    if not q > 1:
        raise DomainError(f"weak norm needs q > 1, got {q}")
    if profile.is_zero:
        return NormResult(0.0, NormMethod.QUADRATURE, 0.0)
    if not profile.nonincreasing:
        raise UnsupportedShapeError(
            f"weak norm needs a nonincreasing profile, got {profile.describe()}"
        )
    d = params.d
    volume = unit_ball_volume(d)

    def objective(R: float) -> float:
        return (volume * R**d) ** (1 / q - 1) * ball_mass(profile, R, params, quad)

    _, value = maximize_over_radius(objective, log_grid(profile.scale))
    return NormResult(value, NormMethod.QUADRATURE, value * quad.rel_tol)
