"""Sampling-based convexity checkers.

None of these prove convexity; a pass means "no violation found" over a
seeded deterministic sample.  A fail always carries a concrete
counterexample that re-evaluates to a genuine violation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .expr import Expression
from .quadrature import QuadratureSpec, Rectangle, integrate_1d

DEFAULT_TOLERANCE = 1e-10
_MIDPOINT_LATTICE = 17


@dataclass(frozen=True)
class ConvexityVerdict:
    passed: bool
    samples_tested: int
    worst_violation: float  # max of lhs - rhs; negative when comfortably convex
    counterexample: dict | None = None


def _verdict(lhs: np.ndarray, rhs: np.ndarray, tolerance: float,
             describe: Callable[[int], dict]) -> ConvexityVerdict:
    gaps = lhs - rhs
    worst = int(np.argmax(gaps))
    worst_violation = float(gaps[worst])
    passed = worst_violation <= tolerance
    counterexample = None if passed else describe(worst)
    return ConvexityVerdict(passed, int(gaps.size), worst_violation,
                            counterexample)


def _coordinated_check(field: Callable[[np.ndarray, np.ndarray], np.ndarray],
                       rect: Rectangle, n_samples: int, seed: int,
                       tolerance: float) -> ConvexityVerdict:
    """Core sampler for the co-ordinated convexity inequality.

    Tests f(t*x + (1-t)*y, s*u + (1-s)*v) against
    t*s*f(x,u) + s*(1-t)*f(y,u) + t*(1-s)*f(x,v) + (1-t)*(1-s)*f(y,v)
    for points (x,y), (u,v) in the rectangle, exactly in this mixed-argument
    form.  Random tuples are augmented with a deterministic midpoint lattice
    (t = s = 1/2, each lattice point paired with itself), the cheapest
    witnesses in practice.
    """
    rng = np.random.default_rng(seed)
    t = rng.uniform(0.0, 1.0, n_samples)
    s = rng.uniform(0.0, 1.0, n_samples)
    x = rng.uniform(rect.a, rect.b, n_samples)
    y = rng.uniform(rect.c, rect.d, n_samples)
    u = rng.uniform(rect.a, rect.b, n_samples)
    v = rng.uniform(rect.c, rect.d, n_samples)

    gx, gy = np.meshgrid(np.linspace(rect.a, rect.b, _MIDPOINT_LATTICE),
                         np.linspace(rect.c, rect.d, _MIDPOINT_LATTICE),
                         indexing="ij")
    lat = gx.size
    t = np.concatenate([t, np.full(lat, 0.5)])
    s = np.concatenate([s, np.full(lat, 0.5)])
    x = np.concatenate([x, gx.ravel()])
    y = np.concatenate([y, gy.ravel()])
    u = np.concatenate([u, gx.ravel()])
    v = np.concatenate([v, gy.ravel()])

    lhs = field(t * x + (1.0 - t) * y, s * u + (1.0 - s) * v)
    rhs = (t * s * field(x, u) + s * (1.0 - t) * field(y, u)
           + t * (1.0 - s) * field(x, v) + (1.0 - t) * (1.0 - s) * field(y, v))

    def describe(i: int) -> dict:
        return {"t": float(t[i]), "s": float(s[i]),
                "x": float(x[i]), "y": float(y[i]),
                "u": float(u[i]), "v": float(v[i]),
                "lhs": float(lhs[i]), "rhs": float(rhs[i])}

    return _verdict(lhs, rhs, tolerance, describe)


def check_coordinated_convexity(f: Expression, rect: Rectangle,
                                n_samples: int = 10_000, seed: int = 42,
                                tolerance: float = DEFAULT_TOLERANCE
                                ) -> ConvexityVerdict:
    return _coordinated_check(lambda px, py: f.eval(px, py), rect,
                              n_samples, seed, tolerance)


def check_partial_convexity(f: Expression, rect: Rectangle,
                            n_lines: int = 16, n_samples: int = 2000,
                            seed: int = 42,
                            tolerance: float = DEFAULT_TOLERANCE
                            ) -> ConvexityVerdict:
    """Random 3-point secant tests on horizontal and vertical slices."""
    rng = np.random.default_rng(seed)
    worst = ConvexityVerdict(True, 0, -np.inf)
    total = 0
    for axis, levels, lo, hi in (
            ("y", np.linspace(rect.c, rect.d, n_lines), rect.a, rect.b),
            ("x", np.linspace(rect.a, rect.b, n_lines), rect.c, rect.d)):
        for level in levels:
            p = rng.uniform(lo, hi, n_samples)
            q = rng.uniform(lo, hi, n_samples)
            lam = rng.uniform(0.0, 1.0, n_samples)
            if axis == "y":
                g = lambda w: f.eval(w, float(level))
            else:
                g = lambda w: f.eval(float(level), w)
            lhs = g(lam * p + (1.0 - lam) * q)
            rhs = lam * g(p) + (1.0 - lam) * g(q)

            def describe(i: int, axis=axis, level=level, p=p, q=q, lam=lam,
                         lhs=lhs, rhs=rhs) -> dict:
                return {"fixed_axis": axis, "level": float(level),
                        "p": float(p[i]), "q": float(q[i]),
                        "lambda": float(lam[i]),
                        "lhs": float(lhs[i]), "rhs": float(rhs[i])}

            verdict = _verdict(lhs, rhs, tolerance, describe)
            total += verdict.samples_tested
            if verdict.worst_violation > worst.worst_violation:
                worst = verdict
    return ConvexityVerdict(worst.passed, total, worst.worst_violation,
                            worst.counterexample)


def check_hypothesis(f: Expression, rect: Rectangle, q: float = 1.0,
                     n_samples: int = 10_000, seed: int = 42,
                     tolerance: float = DEFAULT_TOLERANCE) -> ConvexityVerdict:
    """Co-ordinated convexity of the derived field |f_xy|^q."""
    if q < 1.0:
        raise ValueError(f"need q >= 1, got {q}")

    def field(px, py):
        fxy = f.partials(px, py)[3]
        return np.abs(fxy) ** q

    return _coordinated_check(field, rect, n_samples, seed, tolerance)


class Chain1D(NamedTuple):
    left: float   # g at the midpoint
    mid: float    # mean of g over the interval
    right: float  # endpoint average

    def holds(self, slack: float = 1e-9) -> bool:
        tol = slack * (1.0 + abs(self.right))
        return self.left <= self.mid + tol and self.mid <= self.right + tol


def hh_chain_1d(g: Callable, lo: float, hi: float,
                spec: QuadratureSpec = QuadratureSpec()) -> Chain1D:
    """midpoint value, integral mean, endpoint average of g on [lo, hi]."""
    mean = integrate_1d(g, lo, hi, spec) / (hi - lo)
    return Chain1D(float(g(0.5 * (lo + hi))), mean,
                   0.5 * (float(g(lo)) + float(g(hi))))
