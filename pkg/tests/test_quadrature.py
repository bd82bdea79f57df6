import math

import numpy as np
import pytest

from hhrect.expr import parse
from hhrect.quadrature import (QuadratureSpec, Rectangle, integrate_1d,
                               integrate_2d, kernel_integral)

UNIT = Rectangle(0.0, 1.0, 0.0, 1.0)


class TestRectangle:
    def test_area(self):
        assert Rectangle(-1.0, 2.0, 0.0, 3.0).area() == 9.0

    @pytest.mark.parametrize("corners", [(1, 1, 0, 1), (0, 1, 2, 2),
                                         (1, 0, 0, 1)])
    def test_degenerate_rejected(self, corners):
        with pytest.raises(ValueError):
            Rectangle(*corners)


class TestSpec:
    def test_defaults(self):
        spec = QuadratureSpec()
        assert (spec.panels_1d, spec.panels_2d_per_axis,
                spec.nodes_per_panel) == (64, 64, 8)

    def test_rejects_zero_counts(self):
        with pytest.raises(ValueError):
            QuadratureSpec(panels_1d=0)


class TestIntegrate1D:
    def test_quadratic(self):
        assert integrate_1d(lambda x: x * x, 0.0, 1.0) == pytest.approx(
            1.0 / 3.0, abs=1e-14)

    def test_constant(self):
        assert integrate_1d(lambda x: np.ones_like(x), 2.0, 5.0) == \
            pytest.approx(3.0, abs=1e-13)

    def test_scalar_only_callable(self):
        # non-vectorizable callables fall back to per-node evaluation
        assert integrate_1d(lambda x: float(x) ** 2 if np.isscalar(x) or x.ndim == 0 else [float(v) ** 2 for v in x],  # noqa: E501
                            0.0, 1.0) == pytest.approx(1.0 / 3.0, abs=1e-13)

    def test_exponential(self):
        got = integrate_1d(np.exp, 0.0, 1.0)
        assert got == pytest.approx(math.e - 1.0, abs=1e-12)

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            integrate_1d(np.exp, 1.0, 0.0)


class TestIntegrate2D:
    def test_bilinear(self):
        assert integrate_2d(parse("x*y"), UNIT) == pytest.approx(0.25, abs=1e-13)

    def test_constant(self):
        rect = Rectangle(-1.0, 2.0, 0.0, 3.0)
        assert integrate_2d(parse("1"), rect) == pytest.approx(9.0, abs=1e-11)

    def test_sum_of_squares(self):
        assert integrate_2d(parse("x^2+y^2"), UNIT) == pytest.approx(
            2.0 / 3.0, abs=1e-13)

    def test_polynomial_exactness_degree_15(self):
        # one 8-node panel per axis integrates degree <= 15 exactly
        spec = QuadratureSpec(panels_1d=1, panels_2d_per_axis=1,
                              nodes_per_panel=8)
        f = parse("x^15*y^15 + x^7*y^12")
        exact = (1.0 / 16.0) * (1.0 / 16.0) + (1.0 / 8.0) * (1.0 / 13.0)
        assert integrate_2d(f, UNIT, spec) == pytest.approx(
            exact, rel=1e-12)

    def test_refinement_consistency(self):
        f = parse("exp(x+y)*sin(x)")
        base = integrate_2d(f, UNIT)
        fine = integrate_2d(f, UNIT, QuadratureSpec(panels_2d_per_axis=128))
        assert abs(base - fine) < 1e-10

    def test_determinism(self):
        f = parse("exp(x)*cos(3*y)")
        rect = Rectangle(-1.0, 2.0, 0.0, 3.0)
        first = integrate_2d(f, rect)
        for _ in range(3):
            assert integrate_2d(f, rect) == first


class TestKernelIntegral:
    def test_bilinear_vanishes(self):
        assert kernel_integral(parse("x*y"), UNIT) == pytest.approx(0.0, abs=1e-14)

    def test_affine_vanishes(self):
        assert kernel_integral(parse("x+2*y+3"), UNIT) == pytest.approx(
            0.0, abs=1e-14)

    def test_quartic_closed_form(self):
        # f = x^2*y^2 on the unit square: kernel integral is 1/9
        assert kernel_integral(parse("x^2*y^2"), UNIT) == pytest.approx(
            1.0 / 9.0, rel=1e-12)

    def test_determinism(self):
        f = parse("exp(x+y)")
        rect = Rectangle(-1.0, 2.0, 0.0, 3.0)
        assert kernel_integral(f, rect) == kernel_integral(f, rect)
