import math

import pytest

from riesz.errors import DivergenceError, DomainError, UnsupportedShapeError
from riesz.radial import (
    BumpTrial,
    GenericCallable,
    NormMethod,
    PowerInside,
    PowerOutside,
    RadialProfile,
    SumOf,
    ball_mass,
    lp_norm,
    lp_norm_closed,
    lp_norm_numeric,
    make_bump,
    make_f0,
    make_g0,
    make_h,
    profile_from_descriptor,
    unit_ball_indicator,
    weak_lq_norm,
    zero_profile,
)

from .factory import QUAD, params


class TestProfiles:
    def test_power_outside(self) -> None:
        f = PowerOutside(2.0, 1.5, 1.0)
        assert f(0.5) == 0.0
        assert f(1.0) == 0.0
        assert f(4.0) == pytest.approx(2.0 / 8.0)
        assert f.inner_radius == 1.0
        assert f.tail_exponent == 1.5

    def test_power_inside(self) -> None:
        g = PowerInside(1.0, 0.5, 2.0)
        assert g(1.0) == 1.0
        assert g(1.5) == pytest.approx(1.5**-0.5)
        assert g(2.0) == 0.0
        assert g.nonincreasing
        assert g.outer_radius == 2.0

    @pytest.mark.parametrize(
        "args", [(0.0, 1.0, 1.0), (1.0, -1.0, 1.0), (1.0, 1.0, 0.0)]
    )
    def test_invalid_power(self, args: tuple) -> None:
        with pytest.raises(DomainError):
            PowerInside(*args)
        with pytest.raises(DomainError):
            PowerOutside(*args)

    def test_named(self) -> None:
        p = params(2, 1.0)
        assert make_f0(p) == PowerOutside(1.0, 2.0, 1.0)
        assert make_g0(p) == PowerInside(1.0, 1.0, 1.0)
        h = make_h(p)
        assert h(0.5) == pytest.approx(2.0)
        assert h(2.0) == pytest.approx(0.25)
        assert make_bump(p).exponent == 1.5

    def test_sum(self) -> None:
        h = make_h(params(2, 1.0))
        assert h.origin_exponent == 1.0
        assert h.tail_exponent == 2.0
        assert h.breakpoints == (1.0,)
        assert not h.nonincreasing

    def test_zero(self) -> None:
        z = zero_profile()
        assert z.is_zero
        assert z(0.3) == 0.0
        assert z.lp_violation(1.0, 2) is None

    def test_generic_negative(self) -> None:
        with pytest.raises(DomainError):
            GenericCallable(lambda r: math.sin(r))

    def test_generic_support(self) -> None:
        f = GenericCallable(lambda r: 1.0, support=(1.0, 2.0))
        assert f(0.5) == 0.0
        assert f(1.5) == 1.0
        assert f.breakpoints == (1.0, 2.0)

    def test_generic_negative_between_samples(self) -> None:
        # Negative on (3, 4) only, which no construction-time sample hits.
        f = GenericCallable(lambda r: -1.0 if 3 < r < 4 else 1.0, label="dip")
        assert f(2.0) == 1.0
        with pytest.raises(DomainError, match="dip"):
            f(3.5)


class TestDescriptors:
    @pytest.mark.parametrize(
        "text", ["f0", "g0", "h", "ball", "zero", "bump", "bump:2.5"]
    )
    def test_named(self, text: str) -> None:
        profile_from_descriptor(text, params(3, 1.0))

    @pytest.mark.parametrize(
        "profile",
        [
            PowerOutside(2.0, 3.5, 0.5),
            PowerInside(1.0, 0.25, 3.0),
            BumpTrial(2.0, 1.5),
            BumpTrial(0.1, 1e-3),
            make_h(params(2, 1.0)),
            SumOf((make_h(params(2, 1.0)), BumpTrial(1.0, 1.5))),
            zero_profile(),
        ],
    )
    def test_round_trip(self, profile: RadialProfile) -> None:
        back = profile_from_descriptor(profile.describe(), params(2, 1.0))
        assert back == profile

    def test_generic_not_parsed(self) -> None:
        f = GenericCallable(lambda r: 1.0, label="flat")
        with pytest.raises(DomainError):
            profile_from_descriptor(f.describe(), params(2, 1.0))

    def test_bump_scale(self) -> None:
        bump = profile_from_descriptor("bump:2.5", params(3, 1.0))
        assert bump == BumpTrial(2.5, 2.0)

    @pytest.mark.parametrize(
        "text",
        [
            "nope",
            "bump:x",
            "PowerInside(c=1)",
            "BumpTrial(lambda_scale=x, exponent=1.0)",
            "BumpTrial(lambda_scale=-1.0, exponent=1.0)",
            "SumOf([ball, nope])",
        ],
    )
    def test_unknown(self, text: str) -> None:
        with pytest.raises(DomainError):
            profile_from_descriptor(text, params(2, 1.0))


class TestNorms:
    def test_f0_closed(self) -> None:
        # |f0|_p^p = omega(d) / (d (p - 1)) with d = 2, p = 2.
        result = lp_norm_closed(make_f0(params(2, 1.0)), 2.0, params(2, 1.0))
        assert result.value == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        assert result.method == NormMethod.CLOSED_FORM

    def test_g0_closed(self) -> None:
        result = lp_norm_closed(make_g0(params(2, 0.5)), 2.0, params(2, 0.5))
        assert result.value == pytest.approx(math.sqrt(2 * math.pi), rel=1e-14)

    @pytest.mark.parametrize("p", [1.0, 0.5])
    def test_f0_divergent(self, p: float) -> None:
        with pytest.raises(DivergenceError):
            lp_norm_closed(make_f0(params(2, 1.0)), p, params(2, 1.0))
        with pytest.raises(DivergenceError):
            lp_norm_numeric(make_f0(params(2, 1.0)), p, params(2, 1.0), QUAD)

    def test_g0_divergent(self) -> None:
        with pytest.raises(DivergenceError):
            lp_norm(make_g0(params(2, 1.0)), 2.0, params(2, 1.0), QUAD)

    def test_closed_shape_only(self) -> None:
        with pytest.raises(UnsupportedShapeError):
            lp_norm_closed(BumpTrial(1.0, 1.0), 2.0, params(1, 0.5))

    @pytest.mark.parametrize("d,alpha", [(1, 0.5), (2, 1.0), (3, 0.5)])
    @pytest.mark.parametrize("p", [1.1, 1.5, 3.0])
    def test_numeric_matches_closed(self, d: int, alpha: float, p: float) -> None:
        prm = params(d, alpha)
        for profile in (make_f0(prm), make_g0(prm)):
            if profile.lp_violation(p, d) is not None:
                continue
            closed = lp_norm_closed(profile, p, prm)
            numeric = lp_norm_numeric(profile, p, prm, QUAD)
            assert numeric.value == pytest.approx(closed.value, rel=1e-8)
            assert numeric.method == NormMethod.QUADRATURE

    def test_sum_disjoint_supports(self) -> None:
        # f0 and g0 live on disjoint sets, so the p-th powers add.
        prm = params(2, 0.5)
        f0 = lp_norm(make_f0(prm), 2.0, prm, QUAD).value
        g0 = lp_norm(make_g0(prm), 2.0, prm, QUAD).value
        h = lp_norm(make_h(prm), 2.0, prm, QUAD).value
        assert h == pytest.approx(math.sqrt(f0**2 + g0**2), rel=1e-8)

    def test_bump(self) -> None:
        result = lp_norm(BumpTrial(1.0, 1.0), 2.0, params(1, 0.5), QUAD)
        assert result.value == pytest.approx(math.sqrt(math.pi / 2), rel=1e-8)

    def test_zero(self) -> None:
        assert lp_norm(zero_profile(), 2.0, params(2, 1.0), QUAD).value == 0.0

    @pytest.mark.parametrize("p", [1.2, 1.5, 1.8])
    def test_h_triangle(self, p: float) -> None:
        prm = params(2, 1.0)
        f0 = lp_norm(make_f0(prm), p, prm, QUAD).value
        g0 = lp_norm(make_g0(prm), p, prm, QUAD).value
        assert lp_norm(make_h(prm), p, prm, QUAD).value <= f0 + g0

    @pytest.mark.parametrize("p", [1.5, 2.0])
    def test_homogeneous(self, p: float) -> None:
        prm = params(2, 1.0)
        once = lp_norm(PowerOutside(1.0, 3.0, 1.0), p, prm, QUAD).value
        twice = lp_norm(PowerOutside(2.0, 3.0, 1.0), p, prm, QUAD).value
        assert twice == pytest.approx(2 * once, rel=1e-12)


class TestBallMass:
    def test_ball(self) -> None:
        assert ball_mass(
            unit_ball_indicator(), 5.0, params(3, 1.0), QUAD
        ) == pytest.approx(4 * math.pi / 3, rel=1e-10)

    def test_partial(self) -> None:
        assert ball_mass(
            unit_ball_indicator(), 0.5, params(2, 1.0), QUAD
        ) == pytest.approx(math.pi / 4, rel=1e-10)


class TestWeakNorm:
    def test_ball(self) -> None:
        result = weak_lq_norm(unit_ball_indicator(), 2.0, params(2, 1.0), QUAD)
        assert result.value == pytest.approx(math.sqrt(math.pi), rel=1e-6)

    def test_not_monotone(self) -> None:
        with pytest.raises(UnsupportedShapeError):
            weak_lq_norm(make_h(params(2, 1.0)), 2.0, params(2, 1.0), QUAD)

    def test_zero(self) -> None:
        assert weak_lq_norm(SumOf(()), 2.0, params(2, 1.0), QUAD).value == 0.0

    def test_q_domain(self) -> None:
        with pytest.raises(DomainError):
            weak_lq_norm(unit_ball_indicator(), 1.0, params(2, 1.0), QUAD)

    def test_inverse_square_root(self) -> None:
        # (2R)^(-1/2) int_{-R}^{R} |x|^(-1/2) dx = 2 sqrt(2) for every R <= 1.
        result = weak_lq_norm(PowerInside(1.0, 0.5, 1.0), 2.0, params(1, 0.5), QUAD)
        assert result.value == pytest.approx(2 * math.sqrt(2), rel=1e-6)

    @pytest.mark.parametrize(
        "profile,q",
        [
            (unit_ball_indicator(), 2.0),
            (BumpTrial(1.0, 1.5), 2.0),
            (PowerInside(1.0, 1.0, 1.0), 1.5),
        ],
    )
    def test_below_strong(self, profile: RadialProfile, q: float) -> None:
        prm = params(2, 1.0)
        weak = weak_lq_norm(profile, q, prm, QUAD).value
        assert weak <= lp_norm(profile, q, prm, QUAD).value * (1 + 1e-6)
