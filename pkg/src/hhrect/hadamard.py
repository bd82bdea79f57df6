"""The five-link inequality chain, the corner/integral identity, and the
three corner-derivative error bounds for functions on a rectangle.

Quantity names follow the chain order: L1 center value, L2 midline-mean
average, L3 double-integral mean, L4 edge-mean average, L5 corner average.
The identity says

    corner_avg + integral_mean - A
      = area/4 * int int (1-2t)(1-2s) d2f/dtds dt ds

with A twice the edge-mean average, and the bounds cap the left side by
corner means of |f_xy| (plain, Holder with exponent p, and power mean).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .expr import Expression
from .quadrature import QuadratureSpec, Rectangle, integrate_1d, kernel_integral, integrate_2d

DEFAULT_SLACK = 1e-9


@dataclass(frozen=True)
class LinkVerdict:
    name: str
    lhs: float
    rhs: float
    passed: bool
    slack: float


@dataclass(frozen=True)
class ChainReport:
    L1: float
    L2: float
    L3: float
    L4: float
    L5: float
    holds: tuple[LinkVerdict, ...]

    @property
    def all_hold(self) -> bool:
        return all(v.passed for v in self.holds)

    def values(self) -> tuple[float, float, float, float, float]:
        return (self.L1, self.L2, self.L3, self.L4, self.L5)


@dataclass(frozen=True)
class HolderPair:
    p: float
    q: float
    bound22: float
    bound23: float
    remark_holds: bool  # power-mean bound never exceeds the Holder bound


@dataclass(frozen=True)
class BoundReport:
    lhs_abs: float
    bound21: float
    corner_derivatives: tuple[float, float, float, float]
    holder: tuple[HolderPair, ...] = ()
    bound21_valid: bool = True
    hypothesis_ok: bool | None = None  # None = not checked
    violations: tuple[str, ...] = field(default=())


def corner_values(f: Expression, rect: Rectangle) -> tuple[float, ...]:
    """f at (a,c), (a,d), (b,c), (b,d)."""
    return (f.eval(rect.a, rect.c), f.eval(rect.a, rect.d),
            f.eval(rect.b, rect.c), f.eval(rect.b, rect.d))


def corner_average(f: Expression, rect: Rectangle) -> float:
    return math.fsum(corner_values(f, rect)) / 4.0


def center_value(f: Expression, rect: Rectangle) -> float:
    return f.eval(*rect.center())


def _edge_means(f: Expression, rect: Rectangle,
                spec: QuadratureSpec) -> tuple[float, float, float, float]:
    """Means of f along (bottom, top, left, right) edges."""
    wx = rect.b - rect.a
    wy = rect.d - rect.c
    bottom = integrate_1d(lambda x: f.eval(x, rect.c), rect.a, rect.b, spec) / wx
    top = integrate_1d(lambda x: f.eval(x, rect.d), rect.a, rect.b, spec) / wx
    left = integrate_1d(lambda y: f.eval(rect.a, y), rect.c, rect.d, spec) / wy
    right = integrate_1d(lambda y: f.eval(rect.b, y), rect.c, rect.d, spec) / wy
    return bottom, top, left, right


def midline_term(f: Expression, rect: Rectangle,
                 spec: QuadratureSpec = QuadratureSpec()) -> float:
    cx, cy = rect.center()
    horiz = integrate_1d(lambda x: f.eval(x, cy), rect.a, rect.b, spec)
    vert = integrate_1d(lambda y: f.eval(cx, y), rect.c, rect.d, spec)
    return 0.5 * (horiz / (rect.b - rect.a) + vert / (rect.d - rect.c))


def integral_mean(f: Expression, rect: Rectangle,
                  spec: QuadratureSpec = QuadratureSpec()) -> float:
    return integrate_2d(f, rect, spec) / rect.area()


def edge_mean_term(f: Expression, rect: Rectangle,
                   spec: QuadratureSpec = QuadratureSpec()) -> float:
    return 0.25 * math.fsum(_edge_means(f, rect, spec))


def functional_A(f: Expression, rect: Rectangle,
                 spec: QuadratureSpec = QuadratureSpec()) -> float:
    bottom, top, left, right = _edge_means(f, rect, spec)
    return 0.5 * ((bottom + top) + (left + right))


def chain(f: Expression, rect: Rectangle,
          spec: QuadratureSpec = QuadratureSpec(),
          slack: float = DEFAULT_SLACK) -> ChainReport:
    """Compute the five chain quantities and check each link."""
    values = (center_value(f, rect),
              midline_term(f, rect, spec),
              integral_mean(f, rect, spec),
              edge_mean_term(f, rect, spec),
              corner_average(f, rect))
    tol = slack * (1.0 + abs(values[4]))
    names = ("L1<=L2", "L2<=L3", "L3<=L4", "L4<=L5")
    verdicts = tuple(
        LinkVerdict(name, lo, hi, lo <= hi + tol, tol)
        for name, lo, hi in zip(names, values[:-1], values[1:]))
    return ChainReport(*values, holds=verdicts)


def identity_lhs(f: Expression, rect: Rectangle,
                 spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Signed value: corner average + integral mean - A."""
    return (corner_average(f, rect) + integral_mean(f, rect, spec)
            - functional_A(f, rect, spec))


def identity_rhs(f: Expression, rect: Rectangle,
                 spec: QuadratureSpec = QuadratureSpec()) -> float:
    """The kernel-integral side: area/4 times the signed kernel integral."""
    return 0.25 * rect.area() * kernel_integral(f, rect, spec)


def corner_mixed_partials(f: Expression,
                          rect: Rectangle) -> tuple[float, float, float, float]:
    """|f_xy| at the four corners, by exact dual-number differentiation."""
    return tuple(abs(f.mixed_partial(x, y))
                 for x in (rect.a, rect.b) for y in (rect.c, rect.d))


def bound_thm21(f: Expression, rect: Rectangle) -> float:
    """area/16 times the arithmetic corner mean of |f_xy|."""
    corners = corner_mixed_partials(f, rect)
    return rect.area() / 16.0 * (math.fsum(corners) / 4.0)


def _corner_power_mean(corners: tuple[float, ...], q: float) -> float:
    return (math.fsum(v ** q for v in corners) / 4.0) ** (1.0 / q)


def holder_coefficient(p: float) -> float:
    """1/(p+1)^(2/p), the Holder-bound prefactor; lies in (1/4, 1) for p>1."""
    return 1.0 / (p + 1.0) ** (2.0 / p)


def bound_thm22(f: Expression, rect: Rectangle, p: float) -> float:
    """Holder-based bound: area/(4 (p+1)^(2/p)) * corner q-mean of |f_xy|."""
    if p <= 1.0:
        raise ValueError(f"Holder exponent must satisfy p > 1, got {p}")
    q = p / (p - 1.0)
    corners = corner_mixed_partials(f, rect)
    return rect.area() / 4.0 * holder_coefficient(p) * _corner_power_mean(corners, q)


def bound_thm23(f: Expression, rect: Rectangle, q: float) -> float:
    """Power-mean bound: area/16 * corner q-mean of |f_xy|, q >= 1."""
    if q < 1.0:
        raise ValueError(f"power-mean exponent must satisfy q >= 1, got {q}")
    corners = corner_mixed_partials(f, rect)
    return rect.area() / 16.0 * _corner_power_mean(corners, q)


def verify_bounds(f: Expression, rect: Rectangle,
                  spec: QuadratureSpec = QuadratureSpec(),
                  p_list: tuple[float, ...] = (2.0,),
                  check_hypothesis: bool = False,
                  n_samples: int = 2000,
                  seed: int = 42,
                  tol: float = 1e-10) -> BoundReport:
    """Evaluate |identity lhs| against all three bounds.

    For each p in p_list the conjugate q = p/(p-1) is used for both the
    Holder bound and the power-mean bound, and the power-mean bound must
    not exceed the Holder one (strictly, when the corner mean is nonzero).
    Hypothesis checking (coordinate convexity of |f_xy|) is advisory: bounds
    are still reported when it fails, flagged unguaranteed.
    """
    lhs_abs = abs(identity_lhs(f, rect, spec))
    b21 = bound_thm21(f, rect)
    corners = corner_mixed_partials(f, rect)
    violations: list[str] = []
    bound21_valid = lhs_abs <= b21 + tol
    if not bound21_valid:
        violations.append(f"lhs {lhs_abs!r} exceeds plain bound {b21!r}")
    pairs = []
    for p in p_list:
        q = p / (p - 1.0)
        b22 = bound_thm22(f, rect, p)
        b23 = bound_thm23(f, rect, q)
        remark = b23 <= b22 + tol
        if not remark:
            violations.append(
                f"power-mean bound {b23!r} exceeds Holder bound {b22!r} at p={p}")
        if lhs_abs > b22 + tol:
            violations.append(f"lhs {lhs_abs!r} exceeds Holder bound at p={p}")
        if lhs_abs > b23 + tol:
            violations.append(f"lhs {lhs_abs!r} exceeds power-mean bound at q={q}")
        pairs.append(HolderPair(p, q, b22, b23, remark))
    hypothesis_ok = None
    if check_hypothesis:
        from .convexity import check_hypothesis as _check_hyp
        hypothesis_ok = _check_hyp(f, rect, q=1.0, n_samples=n_samples,
                                   seed=seed).passed
    return BoundReport(lhs_abs=lhs_abs, bound21=b21,
                       corner_derivatives=corners, holder=tuple(pairs),
                       bound21_valid=bound21_valid,
                       hypothesis_ok=hypothesis_ok,
                       violations=tuple(violations))
