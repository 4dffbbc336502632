from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional, Tuple

from scipy import special

from riesz.errors import DivergenceError, DomainError
from riesz import quadrature
from riesz.quadrature import ENDPOINT_GUARD, QuadratureSpec, integrate_radial
from riesz.radial import NormResult, RadialProfile, radial_lp_norm
from riesz.special import ProblemParams, cap_fraction, log_gamma, unit_sphere_area


logger = logging.getLogger(__name__)

Weight = Callable[[float], float]

# Radii 10^k, k in this range, sampled to pick an overflow-safe norm scale.
SCALE_DECADES = range(-20, 21)


class KernelForm(Enum):
    PLAIN_LOG = "plain_log"
    SHIFTED_LOG = "shifted_log"


@dataclass(frozen=True)
class SlowlyVarying:
    """A positive continuous Q with Q(lz)/Q(z) -> 1, tagged for reports."""

    label: str
    fn: Callable[[float], float]

    def __call__(self, z: float) -> float:
        return self.fn(z)


Q_ONE = SlowlyVarying("one", lambda z: 1.0)

SLOWLY_VARYING: Dict[str, SlowlyVarying] = {
    "one": Q_ONE,
    "log": SlowlyVarying("log", lambda z: math.log(math.e + z)),
    "loglog": SlowlyVarying(
        "loglog", lambda z: math.log(math.e + math.log(math.e + z))
    ),
}


def slowly_varying(label: str) -> SlowlyVarying:
    try:
        return SLOWLY_VARYING[label]
    except KeyError:
        raise DomainError(f"unknown slowly varying function {label!r}") from None


@dataclass(frozen=True)
class GeneralizedKernelSpec:
    """Weight |log t|^beta Q(|log t|), or (1 + |log t|)^beta Q, on t^(alpha-d)."""

    alpha: float
    beta: float = 0.0
    slowly_varying: SlowlyVarying = Q_ONE
    form: KernelForm = KernelForm.PLAIN_LOG

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not self.beta >= 0:
            raise DomainError(f"beta must be >= 0, got {self.beta}")

    @property
    def is_plain(self) -> bool:
        return self.beta == 0 and self.slowly_varying.label == "one"

    def weight(self, t: float) -> float:
        z = abs(math.log(t))
        base = z if self.form == KernelForm.PLAIN_LOG else 1.0 + z
        return base**self.beta * self.slowly_varying(z)


def angular_kernel(
    R: float, r: float, params: ProblemParams, quad: QuadratureSpec
) -> float:
    """Integral over the unit sphere of |R e_1 - r w|^(alpha - d).

    For d >= 2 this is the Gegenbauer reduction
    omega(d) M^(alpha-d) 2F1((d-alpha)/2, 1 - alpha/2; d/2; (m/M)^2)
    with M = max(R, r), m = min(R, r).

    """
    d, alpha = params.d, params.alpha
    if R < 0 or r < 0:
        raise DomainError(f"radii must be nonnegative, got {R}, {r}")
    if R == r == 0:
        raise DomainError("angular kernel undefined at R = r = 0")
    if d == 1:
        if R == r:
            raise DivergenceError("two-point kernel is infinite at R = r")
        return abs(R - r) ** (alpha - 1) + (R + r) ** (alpha - 1)
    if R == r and alpha <= 1:
        raise DivergenceError(f"sphere kernel diverges at R = r for alpha = {alpha}")
    big, small = max(R, r), min(R, r)
    z = (small / big) ** 2
    value = float(special.hyp2f1(0.5 * (d - alpha), 1 - 0.5 * alpha, 0.5 * d, z))
    if not math.isfinite(value):
        logger.debug("hyp2f1 failed at z=%r; falling back to quadrature", z)
        return angular_kernel_quadrature(R, r, params, quad)
    return unit_sphere_area(d) * big ** (alpha - d) * value


def angular_kernel_quadrature(
    R: float, r: float, params: ProblemParams, quad: QuadratureSpec
) -> float:
    """The same sphere integral evaluated by quadrature in t = |R e_1 - r w|."""
    return shell_kernel(R, r, params, quad)


def shell_kernel(
    R: float,
    r: float,
    params: ProblemParams,
    spec: QuadratureSpec,
    weight: Optional[Weight] = None,
    cutoff: float = math.inf,
) -> float:
    """Sphere integral of w(t) t^(alpha - d) restricted to t <= cutoff.

    Here t = |R e_1 - r w| runs over [|R - r|, R + r]; substituting t for the
    polar angle leaves algebraic endpoint singularities that are passed to
    QUADPACK as weights, with the log zero crossing t = 1 split out. The
    integral is taken in the offset u = t - |R - r| so thin shells keep
    their relative accuracy.

    """
    d, alpha = params.d, params.alpha
    w = weight if weight is not None else (lambda t: 1.0)

    def g(t: float) -> float:
        return t ** (alpha - d) * w(t) if t <= cutoff else 0.0

    if R == 0 or r == 0:
        return unit_sphere_area(d) * g(R + r)
    if d == 1:
        if R == r:
            raise DivergenceError("two-point kernel is infinite at R = r")
        return g(abs(R - r)) + g(R + r)
    try:
        return _thick_shell(R, r, params, spec, w, cutoff, weight is not None)
    except (ZeroDivisionError, OverflowError) as e:  # pragma: no cover
        raise DivergenceError(f"sphere kernel at R={R}, r={r} failed: {e}") from e


def _thick_shell(
    R: float,
    r: float,
    params: ProblemParams,
    spec: QuadratureSpec,
    w: Weight,
    cutoff: float,
    split_at_one: bool,
) -> float:
    d, alpha = params.d, params.alpha
    big, small = max(R, r), min(R, r)
    if 2 * small <= big * ENDPOINT_GUARD:
        # The shell is a point at t = big up to the share cut off.
        share = cap_fraction(R, r, cutoff, d)
        return unit_sphere_area(d) * big ** (alpha - d) * w(big) * share
    m, span = big - small, 2 * small
    top = min(span, cutoff - m)
    if top <= 0:
        return 0.0
    if m == 0 and alpha <= 1:
        raise DivergenceError(f"sphere kernel diverges at R = r for alpha = {alpha}")
    half = 0.5 * (d - 3)
    left = half if m > 0 else alpha - 2
    prefactor = unit_sphere_area(d - 1) * (2 * R * r) ** (3 - d) / (R * r)
    guard = top * ENDPOINT_GUARD

    def core(u: float) -> float:
        u = max(u, guard)
        t = m + u
        value = w(t) * (2 * big + u) ** half
        if m > 0:
            value *= t ** (alpha - d + 1) * (2 * m + u) ** half
        return prefactor * value

    def segment(a: float, b: float) -> float:
        low = left if a == 0 else 0.0
        high = half if b == span else 0.0

        def fn(u: float) -> float:
            value = core(u)
            if a != 0:
                value *= u**left
            if b != span:
                value *= (span - u) ** half
            return value

        return quadrature.quad(fn, a, b, spec, weight="alg", wvar=(low, high)).value

    def piece(a: float, b: float) -> float:
        one = 1.0 - m
        if split_at_one and a < one < b:
            return segment(a, one) + segment(one, b)
        return segment(a, b)

    if top >= span:
        return piece(0.0, span)
    if span - top >= top:
        return piece(0.0, top)
    return piece(0.0, span) - piece(top, span)


def _check_potential(profile: RadialProfile, params: ProblemParams, R: float) -> None:
    if R < 0:
        raise DomainError(f"radius must be nonnegative, got {R}")
    if profile.is_zero:
        return
    limit = params.alpha if R == 0 else params.d
    if profile.inner_radius == 0 and profile.origin_exponent >= limit:
        raise DivergenceError(
            f"potential of {profile.describe()} diverges at R={R}: "
            f"origin exponent must be < {limit:g}"
        )
    if math.isinf(profile.outer_radius) and profile.tail_exponent <= params.alpha:
        raise DivergenceError(
            f"potential of {profile.describe()} diverges: "
            f"tail exponent must exceed alpha = {params.alpha:g}"
        )


def _finite(power: float) -> Optional[float]:
    return power if math.isfinite(power) else None


def riesz_potential(
    profile: RadialProfile, params: ProblemParams, R: float, quad: QuadratureSpec
) -> float:
    """I_alpha f at |x| = R, integrated radially against the sphere kernel."""
    _check_potential(profile, params, R)
    if profile.is_zero:
        return 0.0
    d, alpha = params.d, params.alpha
    omega = unit_sphere_area(d)
    if R == 0:

        def fn(r: float) -> float:
            return omega * r ** (alpha - 1) * profile(r)

        origin = alpha - 1 - profile.origin_exponent
    else:

        def fn(r: float) -> float:
            value = profile(r)
            if value == 0.0:
                return 0.0
            return r ** (d - 1) * value * angular_kernel(R, r, params, quad)

        origin = d - 1 - profile.origin_exponent
    return integrate_radial(
        fn,
        profile.inner_radius,
        profile.outer_radius,
        quad,
        points=(*profile.breakpoints, R),
        origin_power=origin,
        tail_power=_finite(alpha - 1 - profile.tail_exponent),
    ).value


def _shell_points(R: float, profile: RadialProfile) -> Tuple[float, ...]:
    """Radii where |x - y| = 1 enters or leaves the shell, plus jumps and R."""
    return (*profile.breakpoints, R, R - 1, 1 - R, R + 1)


def riesz_potential_truncated(
    profile: RadialProfile, params: ProblemParams, R: float, quad: QuadratureSpec
) -> float:
    """The potential with the kernel restricted to the unit ball |y| <= 1."""
    if R < 0:
        raise DomainError(f"radius must be nonnegative, got {R}")
    if profile.is_zero:
        return 0.0
    d, alpha = params.d, params.alpha
    limit = alpha if R == 0 else d
    if profile.inner_radius == 0 and profile.origin_exponent >= limit:
        raise DivergenceError(
            f"truncated potential of {profile.describe()} diverges at R={R}"
        )
    lo = max(profile.inner_radius, R - 1)
    hi = min(profile.outer_radius, R + 1)
    omega = unit_sphere_area(d)
    if R == 0:

        def fn(r: float) -> float:
            return omega * r ** (alpha - 1) * profile(r)

        origin = alpha - 1 - profile.origin_exponent
    else:

        def fn(r: float) -> float:
            value = profile(r)
            if value == 0.0 or r == R:
                return 0.0
            kernel = shell_kernel(R, r, params, quad, cutoff=1.0)
            return r ** (d - 1) * value * kernel

        origin = d - 1 - profile.origin_exponent
    return integrate_radial(
        fn, lo, hi, quad, _shell_points(R, profile), origin_power=origin
    ).value


def riesz_potential_generalized(
    profile: RadialProfile,
    kernel: GeneralizedKernelSpec,
    params: ProblemParams,
    R: float,
    quad: QuadratureSpec,
    via_shell: bool = False,
) -> float:
    """Potential with the log / slowly varying weight on the Riesz kernel.

    A plain kernel is handed to riesz_potential unless `via_shell` asks for
    the weighted shell quadrature regardless.

    """
    if kernel.alpha != params.alpha:
        raise DomainError(f"kernel alpha {kernel.alpha} != params alpha {params.alpha}")
    if kernel.is_plain and not via_shell:
        return riesz_potential(profile, params, R, quad)
    _check_potential(profile, params, R)
    if profile.is_zero:
        return 0.0
    d, alpha = params.d, params.alpha
    omega = unit_sphere_area(d)
    origin: Optional[float]
    if R == 0:

        def fn(r: float) -> float:
            return omega * r ** (alpha - 1) * kernel.weight(r) * profile(r)

        origin = alpha - 1 - profile.origin_exponent if kernel.is_plain else None
    else:

        def fn(r: float) -> float:
            value = profile(r)
            if value == 0.0 or r == R:
                return 0.0
            shell = shell_kernel(R, r, params, quad, weight=kernel.weight)
            return r ** (d - 1) * value * shell

        origin = d - 1 - profile.origin_exponent
    tail = alpha - 1 - profile.tail_exponent if kernel.is_plain else math.inf
    if kernel.is_plain:
        points: Tuple[float, ...] = (*profile.breakpoints, R)
    else:
        points = _shell_points(R, profile)
    return integrate_radial(
        fn,
        profile.inner_radius,
        profile.outer_radius,
        quad,
        points=points,
        origin_power=origin,
        tail_power=_finite(tail),
    ).value


def _potential_exponents(
    profile: RadialProfile, params: ProblemParams, truncated: bool = False
) -> Tuple[float, float]:
    """Leading powers of I_alpha f near zero and at infinity.

    The truncated kernel is integrable, so I^(G) f decays like f itself.

    """
    d, alpha = params.d, params.alpha
    near = 0.0
    if profile.inner_radius == 0:
        near = min(0.0, alpha - profile.origin_exponent)
    if truncated:
        return near, -profile.tail_exponent
    far = alpha - min(float(d), profile.tail_exponent)
    return near, far


def _check_pairing(
    f: RadialProfile,
    g: RadialProfile,
    params: ProblemParams,
    truncated: bool = False,
) -> None:
    d = params.d
    near, far = _potential_exponents(f, params, truncated)
    if g.inner_radius == 0 and d - 1 - g.origin_exponent + near <= -1:
        raise DivergenceError(
            f"pairing of {f.describe()} with {g.describe()} diverges at the origin"
        )
    if math.isinf(g.outer_radius) and d - 1 - g.tail_exponent + far >= -1:
        raise DivergenceError(
            f"pairing of {f.describe()} with {g.describe()} diverges at infinity"
        )


def _pairing(
    g: RadialProfile,
    potential: Callable[[float], float],
    params: ProblemParams,
    quad: QuadratureSpec,
    points: Tuple[float, ...],
) -> float:
    d = params.d
    outer = quad.coarsened(100.0)

    def fn(R: float) -> float:
        value = g(R)
        if value == 0.0:
            return 0.0
        return value * R ** (d - 1) * potential(R)

    integral = integrate_radial(
        fn, g.inner_radius, g.outer_radius, outer, points=(*g.breakpoints, *points)
    )
    return unit_sphere_area(d) * integral.value


def bilinear_functional(
    f: RadialProfile, g: RadialProfile, params: ProblemParams, quad: QuadratureSpec
) -> float:
    """B(f, g) = (I_alpha f, g)."""
    if f.is_zero or g.is_zero:
        return 0.0
    _check_pairing(f, g, params)
    return _pairing(
        g, lambda R: riesz_potential(f, params, R, quad), params, quad, f.breakpoints
    )


def bilinear_truncated(
    f: RadialProfile, g: RadialProfile, params: ProblemParams, quad: QuadratureSpec
) -> float:
    """B^(G)(f, g) = (I^(G)_alpha f, g); I^(G) f vanishes beyond supp f + 1."""
    if f.is_zero or g.is_zero:
        return 0.0
    _check_pairing(f, g, params, truncated=True)
    points = tuple(b + s for b in f.breakpoints for s in (-1.0, 0.0, 1.0) if b + s > 0)
    return _pairing(
        g,
        lambda R: riesz_potential_truncated(f, params, R, quad),
        params,
        quad,
        points + (1.0,),
    )


def _check_lq_membership(
    profile: RadialProfile, q: float, params: ProblemParams, plain: bool
) -> None:
    # Borderline exponents diverge for the plain kernel only.
    d = params.d
    near, far = _potential_exponents(profile, params)
    if q * near < -d or (plain and q * near == -d):
        raise DivergenceError(
            f"potential of {profile.describe()} not in L_{q:g} near the origin"
        )
    if q * far > -d or (plain and q * far == -d):
        raise DivergenceError(
            f"potential of {profile.describe()} not in L_{q:g}: "
            f"decays like |x|^{far:g}"
        )


def potential_lq_norm(
    profile: RadialProfile,
    q: float,
    params: ProblemParams,
    quad: QuadratureSpec,
    kernel: Optional[GeneralizedKernelSpec] = None,
) -> NormResult:
    """|I f|_q, or |I^(Q)_{alpha,beta} f|_q when a kernel is given."""
    if kernel is None:
        kernel = GeneralizedKernelSpec(params.alpha)
    if not profile.is_zero:
        _check_lq_membership(profile, q, params, kernel.is_plain)

    def potential(R: float) -> float:
        return riesz_potential_generalized(profile, kernel, params, R, quad)

    samples = [
        potential(10.0**k) * 10.0 ** (k * params.d / q) for k in SCALE_DECADES
    ]
    scale = max(samples)
    if not scale > 0:
        return radial_lp_norm(potential, q, params, quad, points=profile.breakpoints)
    points = profile.breakpoints if kernel.is_plain else _shell_points(0.0, profile)
    return radial_lp_norm(
        potential,
        q,
        params,
        quad.coarsened(100.0),
        points=tuple(p for p in points if p > 0),
        scale=scale,
    )


class Witness(Enum):
    U0 = "u0"
    V0 = "v0"


def witness_constant(which: Witness, params: ProblemParams) -> float:
    d, alpha = params.d, params.alpha
    if which == Witness.U0:
        return 4 * 5 ** (alpha - d) * unit_sphere_area(d)
    return 4 * math.pi / 3 * unit_sphere_area(d - 1) * 2.0 ** (-d)


def witness_potential_lower(which: Witness, params: ProblemParams, R: float) -> float:
    """Closed-form pointwise lower bounds for I f_0 (u0) and I g_0 (v0)."""
    d, alpha = params.d, params.alpha
    c = witness_constant(which, params)
    if which == Witness.U0:
        return c * R ** (alpha - d) * math.log(R) if R > 1 else 0.0
    if 0 < R < 1:
        return c * abs(math.log(R))
    return math.inf if R == 0 else 0.0


def witness_norm_lower(which: Witness, q: float, params: ProblemParams) -> float:
    """L_q norm of the witness lower bound, in closed form."""
    d, alpha = params.d, params.alpha
    c = witness_constant(which, params)
    omega = unit_sphere_area(d)
    gamma_root = math.exp(log_gamma(q + 1) / q)
    if which == Witness.U0:
        excess = q * (d - alpha) - d
        if not excess > 0:
            raise DivergenceError(
                f"u0 lower bound not in L_{q:g}: needs q(d-alpha) > d"
            )
        return c * omega ** (1 / q) * gamma_root / excess ** (1 + 1 / q)
    return c * omega ** (1 / q) * gamma_root * d ** (-1 - 1 / q)
