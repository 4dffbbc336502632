from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable, List, Optional, Sequence

from scipy import integrate

from riesz.errors import AccuracyError, DivergenceError, DomainError


logger = logging.getLogger(__name__)

Integrand = Callable[[float], float]

# Log-substituted panels cover r in [a * e^-LOG_SPAN, a] (or [b, b * e^LOG_SPAN]).
LOG_SPAN = 230.0

# Panels wider than this ratio are integrated in the variable ln r.
LOG_PANEL_RATIO = 4.0

# Relative offset used to evaluate weight-divided integrands at a singular end.
ENDPOINT_GUARD = 1e-12


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for singular and improper radial integrals.

    `max_depth` bounds the number of adaptive subintervals per panel.
    `reject_tol` is the relative error estimate above which a result is
    refused with AccuracyError.

    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_depth: int = 200
    singularity_split: bool = True
    reject_tol: float = 1e-4

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_depth < 1:
            raise DomainError(f"max_depth must be >= 1, got {self.max_depth}")
        if not self.reject_tol > 0:
            raise DomainError("reject_tol must be positive")

    def coarsened(self, factor: float) -> QuadratureSpec:
        """Return looser tolerances for the outer level of a nested integral."""
        return replace(
            self,
            rel_tol=min(self.rel_tol * factor, self.reject_tol / 10),
            abs_tol=self.abs_tol * factor,
        )


@dataclass(frozen=True)
class Integral:
    value: float
    error: float

    def __add__(self, other: Integral) -> Integral:
        return Integral(self.value + other.value, self.error + other.error)


ZERO = Integral(0.0, 0.0)


def quad(fn: Integrand, a: float, b: float, spec: QuadratureSpec, **kw) -> Integral:
    """Run scipy's adaptive quadrature and vet the result."""
    out = integrate.quad(
        fn,
        a,
        b,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_depth,
        full_output=1,
        **kw,
    )
    value, error = float(out[0]), float(out[1])
    message = out[3] if len(out) > 3 else None
    if not math.isfinite(value):
        raise DivergenceError(f"integral over [{a}, {b}] is not finite")
    ceiling = max(spec.abs_tol, spec.reject_tol * abs(value))
    if message is not None:
        logger.debug("quad on [%g, %g]: %s (err %.3g)", a, b, message, error)
        if "divergent" in message and error > ceiling:
            raise DivergenceError(f"integral over [{a}, {b}] appears divergent")
    if error > ceiling:
        raise AccuracyError(
            f"quadrature error {error:.3g} above tolerance on [{a}, {b}]",
            estimate=value,
            error=error,
        )
    return Integral(value, error)


def integrate_origin(
    fn: Integrand, a: float, power: Optional[float], spec: QuadratureSpec
) -> Integral:
    """Integrate fn over (0, a] where fn(r) behaves like r^power near zero.

    A known power is factored out as an algebraic weight. An unknown one
    (logarithmic corrections) is handled in the variable t = ln(a / r).

    """
    if power is not None:
        if power <= -1:
            raise DivergenceError(
                f"integrand ~ r^{power:g} at the origin; needs exponent > -1"
            )
        guard = a * ENDPOINT_GUARD

        def weighted(r: float) -> float:
            r = max(r, guard)
            return fn(r) * r ** (-power)

        return quad(weighted, 0.0, a, spec, weight="alg", wvar=(power, 0.0))

    def logged(t: float) -> float:
        r = a * math.exp(-t)
        return fn(r) * r

    return quad(logged, 0.0, LOG_SPAN, spec)


def integrate_tail(
    fn: Integrand, b: float, power: Optional[float], spec: QuadratureSpec
) -> Integral:
    """Integrate fn over [b, inf) where fn(r) behaves like r^power at infinity.

    A known power is handled through r = b/u with an algebraic weight in u;
    an unknown one in the variable t = ln(r / b).

    """
    if power is not None:
        if power >= -1:
            raise DivergenceError(
                f"integrand ~ r^{power:g} at infinity; needs exponent < -1"
            )
        exponent = -power - 2.0

        def weighted(u: float) -> float:
            u = max(u, ENDPOINT_GUARD)
            r = b / u
            return fn(r) * b * u ** (power)

        return quad(weighted, 0.0, 1.0, spec, weight="alg", wvar=(exponent, 0.0))

    def logged(t: float) -> float:
        r = b * math.exp(t)
        return fn(r) * r

    return quad(logged, 0.0, LOG_SPAN, spec)


def integrate_panel(
    fn: Integrand, a: float, b: float, spec: QuadratureSpec
) -> Integral:
    """Integrate over a finite panel whose ends may carry integrable singularities."""
    if b <= a:
        return ZERO
    if a > 0 and b / a > LOG_PANEL_RATIO:
        return quad(
            lambda s: fn(math.exp(s)) * math.exp(s), math.log(a), math.log(b), spec
        )
    return quad(fn, a, b, spec)


def panel_edges(lo: float, hi: float, points: Iterable[float]) -> List[float]:
    """Return sorted distinct edges in [lo, hi], including lo and finite hi."""
    inner = {p for p in points if lo < p < hi and math.isfinite(p)}
    edges = sorted(inner | {lo})
    if math.isfinite(hi):
        edges.append(hi)
    return edges


def integrate_radial(
    fn: Integrand,
    lo: float,
    hi: float,
    spec: QuadratureSpec,
    points: Sequence[float] = (),
    origin_power: Optional[float] = None,
    tail_power: Optional[float] = None,
) -> Integral:
    """Integrate fn over [lo, hi] (hi may be inf), split at `points`.

    Singular points belong in `points`, so they only ever sit at panel ends.
    If lo == 0 the first panel is treated as an origin panel; if hi is
    infinite the last one is a tail panel.

    """
    if hi <= lo:
        return ZERO
    edges = panel_edges(lo, hi, points if spec.singularity_split else ())
    total = ZERO
    if lo == 0.0:
        first = edges[1] if len(edges) > 1 else 1.0
        cut = 0.5 * first
        total += integrate_origin(fn, cut, origin_power, spec)
        edges[0] = cut
    if math.isinf(hi):
        last = edges[-1]
        start = 2.0 * last if last > 0 else 1.0
        total += integrate_tail(fn, start, tail_power, spec)
        edges.append(start)
    for a, b in zip(edges, edges[1:]):
        total += integrate_panel(fn, a, b, spec)
    return total
