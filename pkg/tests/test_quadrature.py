import math

import pytest

from riesz.errors import AccuracyError, DivergenceError, DomainError
from riesz.quadrature import (
    Integral,
    QuadratureSpec,
    integrate_origin,
    integrate_radial,
    integrate_tail,
    panel_edges,
    quad,
)

from .factory import QUAD


class TestSpec:
    def test_invalid(self) -> None:
        with pytest.raises(DomainError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(DomainError):
            QuadratureSpec(max_depth=0)

    def test_coarsened(self) -> None:
        spec = QuadratureSpec(rel_tol=1e-10, reject_tol=1e-4).coarsened(100.0)
        assert spec.rel_tol == pytest.approx(1e-8)
        coarse = QuadratureSpec(rel_tol=1e-6).coarsened(100.0)
        assert coarse.rel_tol == pytest.approx(1e-5)

    def test_integral_sum(self) -> None:
        assert Integral(1.0, 0.1) + Integral(2.0, 0.2) == Integral(3.0, 0.1 + 0.2)


class TestEndpoints:
    def test_origin_power(self) -> None:
        result = integrate_origin(lambda r: r**-0.5, 1.0, -0.5, QUAD)
        assert result.value == pytest.approx(2.0, rel=1e-10)

    def test_origin_log(self) -> None:
        result = integrate_origin(lambda r: -math.log(r), 1.0, None, QUAD)
        assert result.value == pytest.approx(1.0, rel=1e-10)

    def test_tail_power(self) -> None:
        result = integrate_tail(lambda r: r**-2, 1.0, -2.0, QUAD)
        assert result.value == pytest.approx(1.0, rel=1e-10)

    def test_tail_log(self) -> None:
        result = integrate_tail(lambda r: math.exp(-r), 1.0, None, QUAD)
        assert result.value == pytest.approx(math.exp(-1.0), rel=1e-10)

    def test_origin_divergent(self) -> None:
        with pytest.raises(DivergenceError):
            integrate_origin(lambda r: 1 / r, 1.0, -1.0, QUAD)

    def test_tail_divergent(self) -> None:
        with pytest.raises(DivergenceError):
            integrate_tail(lambda r: 1 / r, 1.0, -1.0, QUAD)


class TestRadial:
    def test_edges(self) -> None:
        assert panel_edges(0.0, math.inf, [2.0, 1.0, 1.0, -1.0, math.inf]) == [
            0.0,
            1.0,
            2.0,
        ]
        assert panel_edges(0.5, 3.0, [1.0, 4.0]) == [0.5, 1.0, 3.0]

    def test_half_line(self) -> None:
        result = integrate_radial(
            lambda r: 1 / (1 + r * r),
            0.0,
            math.inf,
            QUAD,
            points=(1.0,),
            origin_power=0.0,
            tail_power=-2.0,
        )
        assert result.value == pytest.approx(math.pi / 2, rel=1e-10)

    def test_wide_panel(self) -> None:
        result = integrate_radial(lambda r: 1 / r, 1e-3, 1e3, QUAD)
        assert result.value == pytest.approx(2 * math.log(1e3), rel=1e-10)

    def test_empty(self) -> None:
        assert integrate_radial(lambda r: 1.0, 2.0, 1.0, QUAD).value == 0.0

    def test_accuracy_rejected(self) -> None:
        spec = QuadratureSpec(max_depth=1)
        with pytest.raises(AccuracyError) as info:
            quad(lambda x: math.sin(1 / x), 1e-3, 1.0, spec)
        assert info.value.error > 0
