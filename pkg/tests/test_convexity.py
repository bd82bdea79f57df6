import math

import numpy as np
import pytest

from hhrect.convexity import (Chain1D, check_coordinated_convexity,
                              check_hypothesis, check_partial_convexity,
                              hh_chain_1d)
from hhrect.expr import parse
from hhrect.quadrature import Rectangle

UNIT = Rectangle(0.0, 1.0, 0.0, 1.0)
PI_SQUARE = Rectangle(0.0, math.pi, 0.0, math.pi)


def _recheck_coordinated(f, ce) -> float:
    """Independently re-evaluate a reported counterexample's violation."""
    t, s = ce["t"], ce["s"]
    lhs = f.eval(t * ce["x"] + (1 - t) * ce["y"],
                 s * ce["u"] + (1 - s) * ce["v"])
    rhs = (t * s * f.eval(ce["x"], ce["u"])
           + s * (1 - t) * f.eval(ce["y"], ce["u"])
           + t * (1 - s) * f.eval(ce["x"], ce["v"])
           + (1 - t) * (1 - s) * f.eval(ce["y"], ce["v"]))
    return lhs - rhs


class TestCoordinatedConvexity:
    @pytest.mark.parametrize("source", ["x^2+y^2", "x*y", "x^2*y^2",
                                        "exp(x+y)"])
    def test_convex_corpus_passes(self, source):
        verdict = check_coordinated_convexity(parse(source), UNIT)
        assert verdict.passed
        assert verdict.counterexample is None
        assert verdict.samples_tested >= 10_000

    def test_concave_fails_with_counterexample(self):
        f = parse("-(x^2)-y^2")
        verdict = check_coordinated_convexity(f, UNIT)
        assert not verdict.passed
        assert verdict.counterexample is not None
        assert _recheck_coordinated(f, verdict.counterexample) > 1e-10

    def test_sine_sum_fails(self):
        f = parse("sin(x)+sin(y)")
        verdict = check_coordinated_convexity(f, PI_SQUARE)
        assert not verdict.passed
        assert _recheck_coordinated(f, verdict.counterexample) > 1e-10

    def test_seed_determinism(self):
        f = parse("sin(x)+sin(y)")
        a = check_coordinated_convexity(f, PI_SQUARE, seed=123)
        b = check_coordinated_convexity(f, PI_SQUARE, seed=123)
        assert a == b

    def test_fully_convex_never_fails(self):
        # convex implies co-ordinated convex
        for source in ["x^2+y^2", "exp(x)+exp(y)", "(x+2*y)^2",
                       "x^2-x*y+y^2"]:
            assert check_coordinated_convexity(parse(source), UNIT).passed


class TestPartialConvexity:
    def test_bilinear_passes(self):
        assert check_partial_convexity(parse("x*y"), UNIT).passed

    def test_quartic_passes(self):
        assert check_partial_convexity(parse("x^2*y^2"), UNIT).passed

    def test_sine_sum_fails(self):
        verdict = check_partial_convexity(parse("sin(x)+sin(y)"), PI_SQUARE)
        assert not verdict.passed
        ce = verdict.counterexample
        f = parse("sin(x)+sin(y)")
        if ce["fixed_axis"] == "y":
            g = lambda w: f.eval(w, ce["level"])
        else:
            g = lambda w: f.eval(ce["level"], w)
        lam = ce["lambda"]
        gap = g(lam * ce["p"] + (1 - lam) * ce["q"]) \
            - (lam * g(ce["p"]) + (1 - lam) * g(ce["q"]))
        assert gap > 1e-10


class TestHypothesis:
    def test_bilinear_any_q(self):
        for q in (1.0, 2.0, 5.0):
            assert check_hypothesis(parse("x*y"), UNIT, q=q,
                                    n_samples=2000).passed

    def test_quartic_q1_and_q2(self):
        f = parse("x^2*y^2")
        assert check_hypothesis(f, UNIT, q=1.0, n_samples=2000).passed
        assert check_hypothesis(f, UNIT, q=2.0, n_samples=2000).passed

    def test_rejects_q_below_one(self):
        with pytest.raises(ValueError):
            check_hypothesis(parse("x*y"), UNIT, q=0.5)


class TestChain1D:
    def test_square(self):
        chain = hh_chain_1d(lambda x: x * x, 0.0, 1.0)
        assert chain.left == pytest.approx(0.25)
        assert chain.mid == pytest.approx(1.0 / 3.0, abs=1e-13)
        assert chain.right == pytest.approx(0.5)
        assert chain.holds()

    def test_affine_all_equal(self):
        chain = hh_chain_1d(lambda x: 2 * x + 1, 0.0, 3.0)
        assert chain.left == pytest.approx(chain.mid, abs=1e-12)
        assert chain.mid == pytest.approx(chain.right, abs=1e-12)

    def test_exponential(self):
        chain = hh_chain_1d(np.exp, 0.0, 1.0)
        assert chain == Chain1D(pytest.approx(math.exp(0.5)),
                                pytest.approx(math.e - 1.0),
                                pytest.approx(0.5 * (1.0 + math.e)))
        assert chain.holds()
