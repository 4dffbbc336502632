import math

import pytest

from riesz.errors import DomainError
from riesz.special import (
    GeometricConstants,
    ProblemParams,
    cap_fraction,
    conjugate_exponent,
    hls_pair_check,
    log_gamma,
    p_of_q,
    q_of_p,
    unit_ball_volume,
    unit_sphere_area,
)

from .factory import params


class TestProblemParams:
    @pytest.mark.parametrize("d,alpha", [(2, 2.0), (2, 0.0), (1, 1.5), (0, 0.5)])
    def test_invalid(self, d: int, alpha: float) -> None:
        with pytest.raises(DomainError):
            ProblemParams(d, alpha)

    def test_derived(self) -> None:
        p = params(2, 1.0)
        assert p.critical_p == 2.0
        assert p.diagonal_exponent == pytest.approx(4 / 3)
        assert not p.uses_omega0_convention
        assert params(1, 0.5).uses_omega0_convention


class TestGeometry:
    @pytest.mark.parametrize(
        "d,volume,area",
        [
            (1, 2.0, 2.0),
            (2, math.pi, 2 * math.pi),
            (3, 4 * math.pi / 3, 4 * math.pi),
            (4, math.pi**2 / 2, 2 * math.pi**2),
        ],
    )
    def test_ball_and_sphere(self, d: int, volume: float, area: float) -> None:
        assert unit_ball_volume(d) == pytest.approx(volume, rel=1e-14)
        assert unit_sphere_area(d) == pytest.approx(area, rel=1e-14)

    def test_zero_sphere(self) -> None:
        assert unit_sphere_area(0) == 2.0

    def test_bad_dimension(self) -> None:
        with pytest.raises(DomainError):
            unit_sphere_area(-1)
        with pytest.raises(DomainError):
            unit_ball_volume(0)

    def test_constants(self) -> None:
        c = GeometricConstants.for_dimension(3)
        assert c.sphere_area == pytest.approx(4 * math.pi)
        assert c.sphere_area_clamped == c.sphere_area
        assert GeometricConstants.for_dimension(1).sphere_area_clamped == 2.0


class TestGamma:
    def test_half(self) -> None:
        assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)

    @pytest.mark.parametrize("x", [0.0, -1.0])
    def test_nonpositive(self, x: float) -> None:
        with pytest.raises(DomainError):
            log_gamma(x)


class TestExponents:
    def test_q_of_p(self) -> None:
        assert q_of_p(1.5, params(2, 1.0)) == pytest.approx(6.0)

    def test_p_of_q_inverts(self) -> None:
        p = params(3, 0.7)
        assert p_of_q(q_of_p(1.9, p), p) == pytest.approx(1.9, rel=1e-14)

    @pytest.mark.parametrize("p", [1.0, 2.0, 2.5])
    def test_q_of_p_domain(self, p: float) -> None:
        with pytest.raises(DomainError):
            q_of_p(p, params(2, 1.0))

    def test_p_of_q_domain(self) -> None:
        with pytest.raises(DomainError):
            p_of_q(2.0, params(2, 1.0))

    def test_conjugate(self) -> None:
        assert conjugate_exponent(3.0) == pytest.approx(1.5)
        with pytest.raises(DomainError):
            conjugate_exponent(1.0)

    @pytest.mark.parametrize(
        "r,s,expected",
        [
            (4 / 3, 4 / 3, True),
            (1.2, 1.5, True),
            (2.0, 2.0, False),
            (1.0, 2.0, False),
        ],
    )
    def test_pair_check(self, r: float, s: float, expected: bool) -> None:
        assert hls_pair_check(r, s, params(2, 1.0), 1e-12) is expected


class TestCapFraction:
    # In d = 3 a cap at angle arccos(c0) covers (1 - c0) / 2 of the sphere.
    @pytest.mark.parametrize("rho,expected", [(1.0, 0.25), (1.5, 0.5625)])
    def test_archimedes(self, rho: float, expected: float) -> None:
        assert cap_fraction(1.0, 1.0, rho, 3) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize(
        "R,r,rho,expected",
        [(0.0, 0.5, 1.0, 1.0), (0.0, 0.5, 0.2, 0.0), (1.0, 1.0, 3.0, 1.0)],
    )
    def test_whole_or_nothing(
        self, R: float, r: float, rho: float, expected: float
    ) -> None:
        assert cap_fraction(R, r, rho, 2) == expected
