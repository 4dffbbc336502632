import math

import numpy as np
import pytest

from riesz.bounds import (
    BoundKind,
    BoundValue,
    F_of_p,
    R_of,
    Z_of_p,
    constants_bundle,
    lower_bound_eq10,
    p_of_rs,
    sharp_constant_diag,
    thm1_bound_eq6,
    thm1_bound_eq7,
    thm3_bound,
    thm4_envelope_shape,
    upper_bound_eq4,
    upper_bound_eq4_surface,
    upper_bound_eq4a_shape,
)
from riesz.errors import DomainError
from riesz.kernel import slowly_varying
from riesz.maximal import SteinEnvelope
from riesz.radial import lp_norm_numeric, truncated_kernel_profile

from .factory import QUAD, params


def reference_sharp(d: int, alpha: float) -> float:
    return (
        math.pi ** ((d - alpha) / 2)
        * math.gamma(alpha / 2)
        / math.gamma((d + alpha) / 2)
        * (math.gamma(d) / math.gamma(d / 2)) ** (alpha / d)
    )


class TestBoundValue:
    @pytest.mark.parametrize("value", [0.0, -1.0, math.nan])
    def test_positive(self, value: float) -> None:
        with pytest.raises(DomainError):
            BoundValue(value, BoundKind.SHARP)

    def test_infinite(self) -> None:
        assert BoundValue(math.inf, BoundKind.SHARP).is_infinite


class TestConstants:
    def test_d2_alpha1(self) -> None:
        c = constants_bundle(params(2, 1.0))
        assert c.n == pytest.approx(math.pi, rel=1e-14)
        assert c.D == pytest.approx(math.pi / 60, rel=1e-12)
        assert c.C_alpha == pytest.approx(8 * math.pi / 5, rel=1e-14)
        assert c.A == pytest.approx(2 * math.pi / 9, rel=1e-14)
        assert c.m == 1.0
        assert c.a == pytest.approx(
            math.exp(1 / math.e) * 4 * math.pi**2, rel=1e-14
        )
        assert not c.omega0_convention

    def test_d1_convention(self) -> None:
        assert constants_bundle(params(1, 0.5)).omega0_convention


class TestSharp:
    @pytest.mark.parametrize(
        "d,alpha,expected",
        [(2, 1.0, 2 * math.sqrt(math.pi)), (3, 2.0, 2.29407)],
    )
    def test_known(self, d: int, alpha: float, expected: float) -> None:
        value = sharp_constant_diag(params(d, alpha)).value
        assert value == pytest.approx(expected, rel=1e-5)

    @pytest.mark.parametrize("d", [1, 2, 3, 5])
    @pytest.mark.parametrize("fraction", [0.1, 0.5, 0.9])
    def test_gamma_formula(self, d: int, fraction: float) -> None:
        alpha = fraction * d
        value = sharp_constant_diag(params(d, alpha)).value
        assert value == pytest.approx(reference_sharp(d, alpha), rel=1e-10)


class TestUpper:
    def test_example(self) -> None:
        value = upper_bound_eq4(4 / 3, 4 / 3, params(2, 1.0))
        assert value.value == pytest.approx(4.5, rel=1e-12)
        assert value.kind == BoundKind.UPPER_EQ4

    def test_symmetric(self) -> None:
        prm = params(2, 1.0)
        assert upper_bound_eq4(1.2, 1.5, prm).value == pytest.approx(
            upper_bound_eq4(1.5, 1.2, prm).value, rel=1e-14
        )

    def test_surface_ratio(self) -> None:
        prm = params(2, 1.0)
        ratio = (
            upper_bound_eq4_surface(4 / 3, 4 / 3, prm).value
            / upper_bound_eq4(4 / 3, 4 / 3, prm).value
        )
        assert ratio == pytest.approx(math.sqrt(math.pi), rel=1e-12)

    def test_printed_below_sharp(self) -> None:
        # The omega(d - 1) reading undercuts the best constant for small alpha.
        prm = params(2, 0.5)
        r = prm.diagonal_exponent
        assert upper_bound_eq4(r, r, prm).value < sharp_constant_diag(prm).value

    @pytest.mark.parametrize("pair", [(2.0, 2.0), (1.0, 2.0), (4 / 3, 1.2)])
    def test_outside_G(self, pair: tuple) -> None:
        with pytest.raises(DomainError):
            upper_bound_eq4(*pair, params(2, 1.0))

    def test_shape(self) -> None:
        prm = params(2, 1.0)
        assert upper_bound_eq4a_shape(4 / 3, 4 / 3, prm).value == pytest.approx(3.0)
        shape = upper_bound_eq4a_shape(4 / 3, 4 / 3, prm, c1d=2.0)
        assert shape.value == pytest.approx(6.0)
        assert shape.free_constant == 2.0
        with pytest.raises(DomainError):
            upper_bound_eq4a_shape(4 / 3, 4 / 3, prm, c1d=0.0)


class TestMaximalBounds:
    def test_eq7_example(self) -> None:
        stein = SteinEnvelope.for_dimension(2)
        value = thm1_bound_eq7(1.5, params(2, 1.0), stein)
        assert value.value == pytest.approx(1600 * math.pi, rel=1e-12)
        assert value.free_constant == 50.0

    def test_eq7_scales_with_S(self) -> None:
        prm = params(2, 1.0)
        base = thm1_bound_eq7(1.5, prm, SteinEnvelope.for_dimension(2)).value
        chosen = thm1_bound_eq7(1.5, prm, SteinEnvelope.for_dimension(2, S=5.0))
        assert chosen.value == pytest.approx(base / 10, rel=1e-12)

    def test_eq6_positive(self) -> None:
        value = thm1_bound_eq6(1.5, params(2, 1.0), SteinEnvelope.for_dimension(2))
        assert 0 < value.value < math.inf

    @pytest.mark.parametrize("p", [1.0, 2.0, 3.0])
    def test_p_domain(self, p: float) -> None:
        stein = SteinEnvelope.for_dimension(2)
        with pytest.raises(DomainError):
            thm1_bound_eq7(p, params(2, 1.0), stein)
        with pytest.raises(DomainError):
            thm1_bound_eq6(p, params(2, 1.0), stein)


class TestLower:
    def test_F_ends(self) -> None:
        prm = params(2, 1.0)
        c = constants_bundle(prm)
        assert F_of_p(1.0, prm) == pytest.approx(1 / 120, rel=1e-12)
        assert F_of_p(2.0, prm) == pytest.approx(c.A / (2 * c.a), rel=1e-12)

    @pytest.mark.parametrize("d,alpha", [(1, 0.5), (2, 1.0), (3, 0.5), (3, 2.5)])
    def test_F_positive(self, d: int, alpha: float) -> None:
        prm = params(d, alpha)
        for p in np.linspace(1.0, prm.critical_p, 100):
            assert F_of_p(float(p), prm) > 0

    def test_F_domain(self) -> None:
        with pytest.raises(DomainError):
            F_of_p(0.5, params(2, 1.0))
        with pytest.raises(DomainError):
            F_of_p(2.5, params(2, 1.0))

    @pytest.mark.parametrize("d,alpha", [(1, 0.5), (2, 1.0), (3, 2.0)])
    def test_R_is_infimum(self, d: int, alpha: float) -> None:
        prm = params(d, alpha)
        R = R_of(prm)
        assert R > 0
        for p in np.linspace(1.0, prm.critical_p, 37):
            assert R <= F_of_p(float(p), prm) * (1 + 1e-12)

    def test_eq10_example(self) -> None:
        prm = params(2, 1.0)
        value = lower_bound_eq10(4 / 3, 4 / 3, prm)
        assert value.value == pytest.approx(3 * R_of(prm), rel=1e-12)
        assert R_of(prm) <= 1 / 120

    @pytest.mark.parametrize("d", [2, 3])
    def test_sandwich(self, d: int) -> None:
        for alpha in (0.25, 0.5, 1.0, d - 0.5):
            prm = params(d, alpha)
            r = prm.diagonal_exponent
            lower = lower_bound_eq10(r, r, prm).value
            sharp = sharp_constant_diag(prm).value
            upper = upper_bound_eq4_surface(r, r, prm).value
            assert lower <= sharp <= upper


class TestTruncated:
    def test_Z_at_one(self) -> None:
        assert Z_of_p(1.0, params(2, 1.0)) == pytest.approx(2 * math.pi)

    @pytest.mark.parametrize("d,alpha", [(1, 0.5), (2, 1.0), (3, 2.0)])
    def test_Z_matches_quadrature(self, d: int, alpha: float) -> None:
        prm = params(d, alpha)
        top = d / (d - alpha)
        for p in (1.0, 0.5 * (1 + top), 1 + 0.9 * (top - 1)):
            numeric = lp_norm_numeric(truncated_kernel_profile(prm), p, prm, QUAD)
            assert Z_of_p(p, prm) == pytest.approx(numeric.value, rel=1e-8)

    def test_Z_domain(self) -> None:
        with pytest.raises(DomainError):
            Z_of_p(2.0, params(2, 1.0))

    def test_p_of_rs(self) -> None:
        assert p_of_rs(2.0, 2.0) == 1.0
        assert p_of_rs(1.5, 3.0) == pytest.approx(p_of_rs(3.0, 1.5))
        assert p_of_rs(1.5, 1.5, params(2, 1.0)) == pytest.approx(1.5)
        with pytest.raises(DomainError):
            p_of_rs(2.0, 4.0)
        with pytest.raises(DomainError):
            p_of_rs(0.5, 2.0)
        with pytest.raises(DomainError):
            p_of_rs(1.2, 1.2, params(2, 1.0))

    def test_thm3(self) -> None:
        prm = params(2, 1.0)
        bound = thm3_bound(2.0, 2.0, prm)
        assert bound.value == pytest.approx(2 * math.pi)
        assert bound.kind == BoundKind.Z_THM3


class TestEnvelope:
    def test_beta_zero(self) -> None:
        value = thm4_envelope_shape(4 / 3, 4 / 3, params(2, 1.0))
        assert value.value == pytest.approx(3.0, rel=1e-12)

    def test_beta_step(self) -> None:
        prm = params(2, 1.0)
        one = thm4_envelope_shape(4 / 3, 4 / 3, prm, beta=1.0).value
        two = thm4_envelope_shape(4 / 3, 4 / 3, prm, beta=2.0).value
        assert two / one == pytest.approx(9.0, rel=1e-12)

    def test_slowly_varying(self) -> None:
        value = thm4_envelope_shape(
            4 / 3, 4 / 3, params(2, 1.0), beta=1.0, Q=slowly_varying("log")
        )
        assert value.value == pytest.approx(27.0 * math.log(math.e + 1), rel=1e-12)

    def test_invalid(self) -> None:
        with pytest.raises(DomainError):
            thm4_envelope_shape(4 / 3, 4 / 3, params(2, 1.0), beta=-1.0)
        with pytest.raises(DomainError):
            thm4_envelope_shape(4 / 3, 4 / 3, params(2, 1.0), c=0.0)
