from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from riesz.bounds import (
    F_of_p,
    R_of,
    Z_of_p,
    lower_bound_eq10,
    sharp_constant_diag,
    thm1_bound_eq6,
    thm1_bound_eq7,
    thm3_bound,
    thm4_envelope_shape,
    upper_bound_eq4,
    upper_bound_eq4_surface,
)
from riesz.errors import AccuracyError, ConfigError, DivergenceError, DomainError
from riesz.kernel import (
    SLOWLY_VARYING,
    GeneralizedKernelSpec,
    KernelForm,
    Witness,
    bilinear_functional,
    bilinear_truncated,
    potential_lq_norm,
    riesz_potential,
    riesz_potential_generalized,
    slowly_varying,
    witness_norm_lower,
)
from riesz.maximal import SteinEnvelope, potential_dominated, stein_ratio_probe
from riesz.quadrature import QuadratureSpec
from riesz.radial import (
    RadialProfile,
    lp_norm,
    lp_norm_closed,
    lp_norm_numeric,
    make_f0,
    make_g0,
    make_h,
    profile_from_descriptor,
    truncated_kernel_profile,
)
from riesz.special import ProblemParams, conjugate_exponent, q_of_p


logger = logging.getLogger(__name__)

# Relative slack when both sides come from quadrature / one side is closed form.
QUAD_SLACK = 1e-3
CLOSED_SLACK = 1e-6

# Shell quadrature against the hypergeometric kernel on the same panels.
IDENTITY_SLACK = 1e-10

DEFAULT_GRID_SIZE = 16
NORM_P_GRID = (1.1, 1.5, 2.0, 3.0)
BUMP_SCALES = (0.25, 0.5, 1.0, 2.0, 4.0)
HEDBERG_P_GRID = (1.2, 1.5)
STEIN_P_GRID = (1.2, 1.5, 2.0, 4.0)

# Free constants the bounds leave unspecified, with their defaults.
FREE_CONSTANTS: Dict[str, Optional[float]] = {
    "c1d": 1.0,
    "thm4_c": 1.0,
    "stein_S": None,
    "stein_C1": None,
}


class Direction(Enum):
    LE = "computed_le_bound"
    GE = "computed_ge_bound"


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    DIVERGENT = "divergent"
    RECORDED_ONLY = "recorded_only"


def holds(computed: float, bound: float, direction: Direction, slack: float) -> bool:
    """Whether the directed inequality holds up to a relative slack."""
    if math.isnan(computed) or math.isnan(bound) or math.isinf(computed):
        return False
    margin = abs(bound) * slack
    if direction == Direction.LE:
        return computed <= bound + margin
    return computed >= bound - margin


@dataclass(frozen=True)
class CheckRecord:
    name: str
    inputs: Dict[str, Any]
    computed: float
    bound: float
    direction: Direction
    slack_used: float
    status: Status
    notes: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        passed = holds(self.computed, self.bound, self.direction, self.slack_used)
        if self.status == Status.PASS and not passed:
            raise ValueError(f"record {self.name} marked pass but fails")
        if self.status == Status.FAIL and passed:
            raise ValueError(f"record {self.name} marked fail but holds")

    def as_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "computed": self.computed,
            "bound": self.bound,
            "direction": self.direction.value,
            "slack_used": self.slack_used,
            "status": self.status.value,
            "notes": list(self.notes),
        }


def auto_grid(lo: float, hi: float, n: int = DEFAULT_GRID_SIZE) -> Tuple[float, ...]:
    """Points in (lo, hi) clustered geometrically toward both ends.

    The nearest points sit 5% of the width inside each end, the innermost
    40% inside; an odd n adds the midpoint.

    """
    if n < 2:
        raise ConfigError(f"grid needs at least 2 points, got {n}")
    if not hi > lo:
        raise ConfigError(f"empty interval ({lo}, {hi})")
    width = hi - lo
    offsets = np.geomspace(0.05, 0.4, n // 2) * width
    points = {lo + o for o in offsets} | {hi - o for o in offsets}
    if n % 2:
        points.add(lo + 0.5 * width)
    return tuple(sorted(float(p) for p in points))


def _pair_grid(params: ProblemParams, n: int = 5) -> Tuple[Tuple[float, float], ...]:
    """Diagonal pairs with 1/r + 1/s stepping through [1, 1 + alpha/d)."""
    step = params.alpha / params.d / n
    return tuple((2 / (1 + k * step),) * 2 for k in range(n))


@dataclass(frozen=True)
class SweepConfig:
    """Everything one run of the checks depends on.

    Grids left as None are generated; an explicitly empty grid is an error.

    """

    params: ProblemParams
    p_grid: Optional[Tuple[float, ...]] = None
    rs_grid: Optional[Tuple[Tuple[float, float], ...]] = None
    alpha_grid: Optional[Tuple[float, ...]] = None
    radii: Tuple[float, ...] = (0.1, 0.5, 0.9, 1.5, 3.0)
    dims: Tuple[int, ...] = (2, 3)
    profiles: Tuple[str, ...] = ()
    quad: QuadratureSpec = QuadratureSpec()
    output_path: Optional[str] = None
    fmt: str = "json"
    free_constants: Tuple[Tuple[str, float], ...] = ()
    beta: float = 1.0
    q_label: str = "one"
    form: KernelForm = KernelForm.PLAIN_LOG
    grid_size: int = DEFAULT_GRID_SIZE
    seed: int = 0

    def __post_init__(self) -> None:
        for name, grid in (
            ("p", self.p_grid),
            ("rs", self.rs_grid),
            ("alpha", self.alpha_grid),
        ):
            if grid is not None and not grid:
                raise ConfigError(f"{name} grid is empty")
        if not self.radii:
            raise ConfigError("radius grid is empty")
        if any(R < 0 for R in self.radii):
            raise ConfigError(f"radii must be nonnegative: {self.radii}")
        if self.fmt not in ("json", "csv"):
            raise ConfigError(f"unknown report format {self.fmt!r}")
        if not self.beta >= 0:
            raise ConfigError(f"beta must be >= 0, got {self.beta}")
        if self.q_label not in SLOWLY_VARYING:
            raise ConfigError(f"unknown slowly varying function {self.q_label!r}")
        for name, value in self.free_constants:
            if name not in FREE_CONSTANTS:
                raise ConfigError(f"unknown free constant {name!r}")
            if not value > 0:
                raise ConfigError(f"free constant {name} must be positive")
        if any(d < 1 for d in self.dims):
            raise ConfigError(f"dimensions must be >= 1: {self.dims}")

    def free_constant(self, name: str) -> Optional[float]:
        return dict(self.free_constants).get(name, FREE_CONSTANTS[name])

    @property
    def stein(self) -> SteinEnvelope:
        return SteinEnvelope.for_dimension(
            self.params.d, self.free_constant("stein_C1"), self.free_constant("stein_S")
        )

    def echo_constants(self) -> Dict[str, Optional[float]]:
        echoed = {name: self.free_constant(name) for name in FREE_CONSTANTS}
        echoed["stein_S"] = self.stein.value
        return echoed

    def open_p_grid(self) -> Tuple[float, ...]:
        top = self.params.critical_p
        grid = self.p_grid or auto_grid(1.0, top, self.grid_size)
        for p in grid:
            if not 1 < p < top:
                raise ConfigError(f"p = {p} outside the open interval (1, {top:g})")
        return grid

    def kernel(self, params: Optional[ProblemParams] = None) -> GeneralizedKernelSpec:
        params = params or self.params
        return GeneralizedKernelSpec(
            params.alpha, self.beta, slowly_varying(self.q_label), self.form
        )

    def profile_list(self, defaults: Sequence[str]) -> List[Tuple[str, RadialProfile]]:
        names = self.profiles or tuple(defaults)
        try:
            return [(n, profile_from_descriptor(n, self.params)) for n in names]
        except DomainError as e:
            raise ConfigError(str(e)) from e


class _Recorder:
    """Builds records for one check, echoing the shared inputs into each."""

    def __init__(self, cfg: SweepConfig, params: Optional[ProblemParams] = None):
        self.cfg = cfg
        self.params = params or cfg.params
        self.records: List[CheckRecord] = []

    def inputs(self, **extra: Any) -> Dict[str, Any]:
        return {
            "d": self.params.d,
            "alpha": self.params.alpha,
            "free_constants": self.cfg.echo_constants(),
            **extra,
        }

    def notes(self, *extra: str) -> Tuple[str, ...]:
        if self.params.uses_omega0_convention:
            return ("d=1 uses the omega(0)=2 convention", *extra)
        return extra

    def add(
        self,
        name: str,
        inputs: Dict[str, Any],
        computed: float,
        bound: float,
        direction: Direction,
        slack: float,
        recorded_only: bool = False,
        notes: Tuple[str, ...] = (),
    ) -> CheckRecord:
        if recorded_only:
            status = Status.RECORDED_ONLY
        elif holds(computed, bound, direction, slack):
            status = Status.PASS
        else:
            status = Status.FAIL
        record = CheckRecord(
            name, inputs, computed, bound, direction, slack, status, self.notes(*notes)
        )
        logger.info("%s %s: %s", name, _short(inputs), status.value)
        self.records.append(record)
        return record

    def guarded(
        self,
        name: str,
        inputs: Dict[str, Any],
        direction: Direction,
        slack: float,
        compute: Callable[[], Tuple[float, float]],
        recorded_only: bool = False,
        notes: Tuple[str, ...] = (),
    ) -> CheckRecord:
        """Record compute()'s (computed, bound); failures become records too."""
        try:
            computed, bound = compute()
        except DivergenceError as e:
            return self._failed(name, inputs, direction, slack, Status.DIVERGENT, e)
        except AccuracyError as e:
            return self._failed(name, inputs, direction, slack, Status.FAIL, e)
        except DomainError as e:
            return self._failed(
                name, inputs, direction, slack, Status.RECORDED_ONLY, e
            )
        return self.add(
            name, inputs, computed, bound, direction, slack, recorded_only, notes
        )

    def _failed(
        self,
        name: str,
        inputs: Dict[str, Any],
        direction: Direction,
        slack: float,
        status: Status,
        error: Exception,
    ) -> CheckRecord:
        computed = error.estimate if isinstance(error, AccuracyError) else math.inf
        kind = type(error).__name__
        record = CheckRecord(
            name,
            inputs,
            computed,
            math.nan,
            direction,
            slack,
            status,
            self.notes(f"{kind}: {error}"),
        )
        logger.warning("%s %s: %s (%s)", name, _short(inputs), status.value, error)
        self.records.append(record)
        return record

    def equality(
        self,
        name: str,
        inputs: Dict[str, Any],
        compute: Callable[[], Tuple[float, float]],
        slack: float,
    ) -> None:
        """Two <= records, one per side, for an equality within slack."""
        try:
            a, b = compute()
        except (DivergenceError, AccuracyError, DomainError) as e:
            for side in ("le", "ge"):
                self.guarded(
                    f"{name}[{side}]", inputs, Direction.LE, slack, _reraise(e)
                )
            return
        self.add(f"{name}[le]", inputs, a, b, Direction.LE, slack)
        self.add(f"{name}[ge]", inputs, b, a, Direction.LE, slack)


def _reraise(error: Exception) -> Callable[[], Tuple[float, float]]:
    def compute() -> Tuple[float, float]:
        raise error

    return compute


def _short(inputs: Dict[str, Any]) -> str:
    return ", ".join(f"{k}={v}" for k, v in inputs.items() if k != "free_constants")


def run_norm_validation(cfg: SweepConfig) -> List[CheckRecord]:
    """Closed-form against quadrature L_p norms of f_0 and g_0."""
    rec = _Recorder(cfg)
    grid = cfg.p_grid or NORM_P_GRID
    profiles = (("f0", make_f0(cfg.params)), ("g0", make_g0(cfg.params)))
    for name, profile in profiles:
        for p in grid:

            def compute(
                profile: RadialProfile = profile, p: float = p
            ) -> Tuple[float, float]:
                closed = lp_norm_closed(profile, p, cfg.params).value
                numeric = lp_norm_numeric(profile, p, cfg.params, cfg.quad).value
                return numeric, closed

            rec.equality(
                f"norm_{name}", rec.inputs(profile=name, p=p), compute, CLOSED_SLACK
            )
    return rec.records


def witness_ratio(
    p: float, params: ProblemParams, quad: QuadratureSpec
) -> Tuple[float, float, float]:
    """Return (|I h|_q, |h|_p, normalised ratio) for the witness h = f_0 + g_0."""
    h = make_h(params)
    q = q_of_p(p, params)
    h_norm = lp_norm(h, p, params, quad).value
    potential_norm = potential_lq_norm(h, q, params, quad).value
    factor = ((p - 1) * (params.critical_p - p)) ** (1 - params.alpha / params.d)
    return potential_norm, h_norm, potential_norm * factor / h_norm


def run_witness_sweep(cfg: SweepConfig) -> List[CheckRecord]:
    """Lower estimate through h = f_0 + g_0, plus the maximal-function upper bounds."""
    params = cfg.params
    rec = _Recorder(cfg)
    stein = cfg.stein
    for p in cfg.open_p_grid():
        q = q_of_p(p, params)
        inputs = rec.inputs(p=p, q=q)
        try:
            potential_norm, h_norm, ratio = witness_ratio(p, params, cfg.quad)
        except (DivergenceError, AccuracyError) as e:
            for name in ("witness_ge_F", "witness_ge_R"):
                rec.guarded(name, inputs, Direction.GE, QUAD_SLACK, _reraise(e))
            continue
        lower = (("witness_ge_F", F_of_p(p, params)), ("witness_ge_R", R_of(params)))
        for name, bound in lower:
            rec.add(name, inputs, ratio, bound, Direction.GE, QUAD_SLACK)
        half_sum = 0.5 * sum(
            witness_norm_lower(w, q, params) for w in (Witness.U0, Witness.V0)
        )
        rec.add(
            "witness_intermediate_sum",
            inputs,
            potential_norm,
            half_sum,
            Direction.GE,
            QUAD_SLACK,
            recorded_only=True,
        )
        operator_ratio = potential_norm / h_norm
        rec.add(
            "maximal_bound_eq7",
            inputs,
            operator_ratio,
            thm1_bound_eq7(p, params, stein).value,
            Direction.LE,
            QUAD_SLACK,
        )
        rec.add(
            "maximal_bound_eq6",
            inputs,
            operator_ratio,
            thm1_bound_eq6(p, params, stein).value,
            Direction.LE,
            QUAD_SLACK,
            recorded_only=True,
        )
        dual = conjugate_exponent(q)
        pair_inputs = rec.inputs(p=p, q=q, r=p, s=dual)
        rec.add(
            "witness_le_eq4_surface",
            pair_inputs,
            operator_ratio,
            upper_bound_eq4_surface(p, dual, params).value,
            Direction.LE,
            QUAD_SLACK,
        )
        rec.add(
            "witness_le_eq4",
            pair_inputs,
            operator_ratio,
            upper_bound_eq4(p, dual, params).value,
            Direction.LE,
            QUAD_SLACK,
            recorded_only=True,
        )
    return rec.records


def run_sharp_probe(cfg: SweepConfig) -> List[CheckRecord]:
    """B(f, f)/|f|_r^2 on the diagonal against the sharp constant."""
    params = cfg.params
    rec = _Recorder(cfg)
    r = params.diagonal_exponent
    sharp = sharp_constant_diag(params).value
    defaults = [f"bump:{lam:g}" for lam in BUMP_SCALES] + ["f0", "g0", "h"]
    best = 0.0
    for name, profile in cfg.profile_list(defaults):
        if profile.is_zero:
            logger.warning("skipping zero profile %s in sharp trials", name)
            continue

        def compute(profile: RadialProfile = profile) -> Tuple[float, float]:
            energy = bilinear_functional(profile, profile, params, cfg.quad)
            norm = lp_norm(profile, r, params, cfg.quad).value
            return energy / norm**2, sharp

        record = rec.guarded(
            "sharp_trial", rec.inputs(profile=name, r=r), Direction.LE, 1e-2, compute
        )
        if record.status in (Status.PASS, Status.FAIL):
            best = max(best, record.computed)
    if best > 0:
        rec.add(
            "sharp_attainment",
            rec.inputs(r=r),
            best,
            0.98 * sharp,
            Direction.GE,
            0.0,
            notes=(f"gap to sharp {sharp - best:.6g}",),
        )
    return rec.records


def _sandwich_alphas(cfg: SweepConfig, d: int) -> Tuple[float, ...]:
    if cfg.alpha_grid is not None:
        return cfg.alpha_grid
    return tuple(sorted(a for a in {0.25, 0.5, 1.0, d - 0.5} if 0 < a < d))


def run_sandwich_report(cfg: SweepConfig) -> List[CheckRecord]:
    """lower_eq10 <= sharp <= upper_eq4 at the diagonal pair, per (d, alpha)."""
    records: List[CheckRecord] = []
    for d in cfg.dims:
        for alpha in _sandwich_alphas(cfg, d):
            try:
                params = ProblemParams(d, alpha)
            except DomainError as e:
                raise ConfigError(str(e)) from e
            rec = _Recorder(cfg, params)
            r = params.diagonal_exponent
            inputs = rec.inputs(r=r, s=r)
            sharp = sharp_constant_diag(params).value
            lower = lower_bound_eq10(r, r, params)
            surface = upper_bound_eq4_surface(r, r, params).value
            printed = upper_bound_eq4(r, r, params).value
            rec.add(
                "sandwich_lower",
                inputs,
                lower.value,
                sharp,
                Direction.LE,
                CLOSED_SLACK,
                notes=(*lower.notes, f"margin {sharp - lower.value:.6g}"),
            )
            rec.add(
                "sandwich_upper",
                inputs,
                sharp,
                surface,
                Direction.LE,
                CLOSED_SLACK,
                notes=(f"margin {surface - sharp:.6g}",),
            )
            note = f"margin {printed - sharp:.6g}"
            if printed < sharp:
                note = "printed omega(d-1) factor falls below the sharp constant"
            rec.add(
                "sandwich_upper_printed",
                inputs,
                sharp,
                printed,
                Direction.LE,
                CLOSED_SLACK,
                recorded_only=True,
                notes=(note,),
            )
            records.extend(rec.records)
    return records


def run_truncated_check(cfg: SweepConfig) -> List[CheckRecord]:
    """Young's inequality for the truncated form, and the norm identity for Z."""
    params = cfg.params
    rec = _Recorder(cfg)
    kernel_profile = truncated_kernel_profile(params)
    top = params.d / (params.d - params.alpha)
    for p in (1.0, *auto_grid(1.0, top, 9)):

        def norms(p: float = p) -> Tuple[float, float]:
            numeric = lp_norm_numeric(kernel_profile, p, params, cfg.quad).value
            return numeric, Z_of_p(p, params)

        rec.equality("truncated_norm_identity", rec.inputs(p=p), norms, 1e-8)

    named = cfg.profile_list(["ball", "bump:1"])
    pairs = [(f, g) for i, f in enumerate(named) for g in named[i:]]
    energies: Dict[Tuple[str, str], float] = {}
    for r, s in cfg.rs_grid or _pair_grid(params):
        for (f_name, f), (g_name, g) in pairs:
            inputs = rec.inputs(r=r, s=s, f=f_name, g=g_name)

            def compute(
                f: RadialProfile = f,
                g: RadialProfile = g,
                key: Tuple[str, str] = (f_name, g_name),
                r: float = r,
                s: float = s,
            ) -> Tuple[float, float]:
                bound = thm3_bound(r, s, params).value
                if key not in energies:
                    energies[key] = bilinear_truncated(f, g, params, cfg.quad)
                norms = lp_norm(f, r, params, cfg.quad).value * lp_norm(
                    g, s, params, cfg.quad
                ).value
                return abs(energies[key]), bound * norms

            rec.guarded("truncated_young", inputs, Direction.LE, CLOSED_SLACK, compute)
    return rec.records


def generalized_envelope(
    p: float, params: ProblemParams, kernel: GeneralizedKernelSpec, quad: QuadratureSpec
) -> float:
    """|I^(Q) h|_q/|h|_p scaled by the powers and Q factors of the upper estimate."""
    h = make_h(params)
    q = q_of_p(p, params)
    d, alpha = params.d, params.alpha
    potential_norm = potential_lq_norm(h, q, params, quad, kernel).value
    h_norm = lp_norm(h, p, params, quad).value
    power = ((p - 1) * (params.critical_p - p)) ** (1 + kernel.beta - alpha / d)
    Q = kernel.slowly_varying
    return potential_norm / h_norm * power / (Q(1 / (q * (d - alpha) - d)) * Q(q))


def run_generalized_check(cfg: SweepConfig) -> List[CheckRecord]:
    """The beta = 0, Q = 1 identity, then envelopes for the weighted kernel."""
    params = cfg.params
    rec = _Recorder(cfg)
    plain = GeneralizedKernelSpec(params.alpha)
    h = make_h(params)
    for R in cfg.radii:
        if R == 0:
            continue

        def identity(R: float = R) -> Tuple[float, float]:
            return (
                riesz_potential_generalized(
                    h, plain, params, R, cfg.quad, via_shell=True
                ),
                riesz_potential(h, params, R, cfg.quad),
            )

        rec.equality(
            "generalized_identity", rec.inputs(R=R), identity, IDENTITY_SLACK
        )

    kernel = cfg.kernel()
    c = cfg.free_constant("thm4_c") or 1.0
    for p in cfg.open_p_grid():
        q = q_of_p(p, params)
        dual = conjugate_exponent(q)
        inputs = rec.inputs(
            p=p, q=q, beta=kernel.beta, Q=cfg.q_label, form=kernel.form.value
        )

        def compute(p: float = p, dual: float = dual) -> Tuple[float, float]:
            envelope = generalized_envelope(p, params, kernel, cfg.quad)
            shape = thm4_envelope_shape(
                p, dual, params, kernel.beta, kernel.slowly_varying, c
            )
            return envelope, shape.value

        rec.guarded(
            "generalized_envelope",
            inputs,
            Direction.LE,
            QUAD_SLACK,
            compute,
            recorded_only=True,
        )
    return rec.records


def run_maximal_check(cfg: SweepConfig) -> List[CheckRecord]:
    """Hedberg domination of the potential and the Stein envelope."""
    params = cfg.params
    rec = _Recorder(cfg)
    stein = cfg.stein
    hedberg_p = [p for p in HEDBERG_P_GRID if p < params.critical_p]
    for name, profile in cfg.profile_list(["g0", "bump:1"]):
        for p in hedberg_p:
            for R in cfg.radii:

                def domination(
                    profile: RadialProfile = profile, p: float = p, R: float = R
                ) -> Tuple[float, float]:
                    potential, split = potential_dominated(
                        profile, p, params, R, cfg.quad
                    )
                    return potential, split.total

                rec.guarded(
                    "hedberg_domination",
                    rec.inputs(profile=name, p=p, R=R),
                    Direction.LE,
                    CLOSED_SLACK,
                    domination,
                )
    for name, profile in cfg.profile_list(["ball", "g0", "bump:1"]):
        if profile.is_zero:
            logger.warning("skipping zero profile %s in Stein check", name)
            continue
        for p in STEIN_P_GRID:
            inputs = rec.inputs(profile=name, p=p)

            def stein_ratio(
                profile: RadialProfile = profile, p: float = p
            ) -> Tuple[float, float]:
                ratio = stein_ratio_probe(profile, p, params, cfg.quad)
                return ratio, stein.classic_bound

            record = rec.guarded(
                "stein_classic", inputs, Direction.LE, 0.0, stein_ratio
            )
            if record.status != Status.PASS and record.status != Status.FAIL:
                continue
            if stein.dim2_bound is not None:
                rec.add(
                    "stein_dim2",
                    inputs,
                    record.computed,
                    stein.dim2_bound,
                    Direction.LE,
                    QUAD_SLACK,
                )
    return rec.records


def run_conjecture_probe(cfg: SweepConfig) -> List[CheckRecord]:
    """alpha times the largest normalised witness ratio, tabulated over alpha."""
    d = cfg.params.d
    alphas = cfg.alpha_grid or tuple(0.25 * k for k in range(1, 4 * d))
    records: List[CheckRecord] = []
    for alpha in alphas:
        try:
            params = ProblemParams(d, alpha)
        except DomainError as e:
            raise ConfigError(str(e)) from e
        rec = _Recorder(cfg, params)
        exponent = 1 - alpha / d
        best = 0.0
        for p in auto_grid(1.0, params.critical_p, 8):
            try:
                best = max(best, witness_ratio(p, params, cfg.quad)[2])
            except (DivergenceError, AccuracyError) as e:
                logger.warning("conjecture probe skipped p=%g: %s", p, e)
        rec.add(
            "conjecture_probe",
            rec.inputs(exponent=exponent),
            alpha * best,
            math.nan,
            Direction.LE,
            0.0,
            recorded_only=True,
        )
        records.extend(rec.records)
    return records


CHECKS: Dict[str, Callable[[SweepConfig], List[CheckRecord]]] = {
    "norms": run_norm_validation,
    "witness": run_witness_sweep,
    "sharp": run_sharp_probe,
    "sandwich": run_sandwich_report,
    "truncated": run_truncated_check,
    "generalized": run_generalized_check,
    "maximal": run_maximal_check,
    "conjecture": run_conjecture_probe,
}


def run_all_checks(cfg: SweepConfig) -> List[CheckRecord]:
    records: List[CheckRecord] = []
    for name, check in CHECKS.items():
        logger.info("running %s", name)
        records.extend(check(cfg))
    return records


def summarize(records: Sequence[CheckRecord]) -> Dict[str, int]:
    counts = {status.value: 0 for status in Status}
    for record in records:
        counts[record.status.value] += 1
    return counts
