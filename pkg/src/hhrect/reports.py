"""Report builders: one function per command, shared by HTTP and CLI."""

from __future__ import annotations

from dataclasses import asdict
from datetime import datetime, timezone

from . import __version__, convexity, cubature, hadamard
from .expr import parse
from .schemas import (BoundsRequest, ChainRequest, ConvexityRequest,
                      IdentityRequest, IntegrateRequest, Meta, Report,
                      SweepPRequest, Verdict)


def _meta() -> Meta:
    return Meta(version=__version__,
                timestamp=datetime.now(timezone.utc).isoformat())


def _report(command, request, results, verdicts) -> Report:
    return Report(command=command, config=request.model_dump(),
                  results=results, verdicts=verdicts, meta=_meta())


def run_chain(req: ChainRequest) -> Report:
    f = parse(req.function)
    report = hadamard.chain(f, req.rect.to_rectangle(),
                            req.quadrature.to_spec(), req.slack)
    verdicts = [Verdict(name=v.name, passed=v.passed, lhs=v.lhs, rhs=v.rhs,
                        slack=v.slack) for v in report.holds]
    results = {"L1": report.L1, "L2": report.L2, "L3": report.L3,
               "L4": report.L4, "L5": report.L5}
    return _report("chain", req, results, verdicts)


def run_identity(req: IdentityRequest) -> Report:
    f = parse(req.function)
    rect = req.rect.to_rectangle()
    spec = req.quadrature.to_spec()
    lhs = hadamard.identity_lhs(f, rect, spec)
    rhs = hadamard.identity_rhs(f, rect, spec)
    gap = abs(lhs - rhs)
    tol = req.tolerance * (1.0 + abs(lhs))
    verdicts = [Verdict(name="identity", passed=gap <= tol, lhs=gap, rhs=tol,
                        slack=req.tolerance)]
    return _report("identity", req,
                   {"lhs": lhs, "rhs": rhs, "abs_difference": gap}, verdicts)


def run_bounds(req: BoundsRequest) -> Report:
    f = parse(req.function)
    rect = req.rect.to_rectangle()
    report = hadamard.verify_bounds(
        f, rect, req.quadrature.to_spec(), tuple(req.p_list),
        check_hypothesis=req.check_hypothesis, n_samples=req.samples,
        seed=req.seed)
    tol = 1e-10
    verdicts = [Verdict(name="lhs<=bound21", passed=report.bound21_valid,
                        lhs=report.lhs_abs, rhs=report.bound21, slack=tol)]
    for pair in report.holder:
        verdicts.append(Verdict(name=f"lhs<=bound22[p={pair.p:g}]",
                                passed=report.lhs_abs <= pair.bound22 + tol,
                                lhs=report.lhs_abs, rhs=pair.bound22,
                                slack=tol))
        verdicts.append(Verdict(name=f"lhs<=bound23[q={pair.q:g}]",
                                passed=report.lhs_abs <= pair.bound23 + tol,
                                lhs=report.lhs_abs, rhs=pair.bound23,
                                slack=tol))
        verdicts.append(Verdict(name=f"bound23<=bound22[p={pair.p:g}]",
                                passed=pair.remark_holds,
                                lhs=pair.bound23, rhs=pair.bound22, slack=tol))
    if report.hypothesis_ok is not None:
        verdicts.append(Verdict(name="hypothesis[q=1]",
                                passed=report.hypothesis_ok,
                                lhs=0.0, rhs=0.0, slack=0.0))
    results = {
        "lhs_abs": report.lhs_abs,
        "bound21": report.bound21,
        "corner_derivatives": list(report.corner_derivatives),
        "holder": [asdict(pair) for pair in report.holder],
        "hypothesis_ok": report.hypothesis_ok,
        "violations": list(report.violations),
    }
    return _report("bounds", req, results, verdicts)


def run_convexity(req: ConvexityRequest) -> Report:
    f = parse(req.function)
    rect = req.rect.to_rectangle()
    if req.kind == "coordinated":
        verdict = convexity.check_coordinated_convexity(
            f, rect, req.samples, req.seed)
    elif req.kind == "partial":
        verdict = convexity.check_partial_convexity(
            f, rect, req.lines, req.samples, req.seed)
    else:
        verdict = convexity.check_hypothesis(
            f, rect, req.q, req.samples, req.seed)
    verdicts = [Verdict(name=f"convexity[{req.kind}]", passed=verdict.passed,
                        lhs=verdict.worst_violation, rhs=0.0,
                        slack=convexity.DEFAULT_TOLERANCE)]
    results = {"passed": verdict.passed,
               "samples_tested": verdict.samples_tested,
               "worst_violation": verdict.worst_violation,
               "counterexample": verdict.counterexample}
    return _report("convexity", req, results, verdicts)


def run_integrate(req: IntegrateRequest) -> Report:
    f = parse(req.function)
    rect = req.rect.to_rectangle()
    spec = req.quadrature.to_spec()
    verdicts: list[Verdict] = []
    if req.levels is not None:
        rows = cubature.convergence_table(f, rect, req.levels, spec)
        for row in rows:
            verdicts.append(Verdict(
                name=f"true_error<=certificate[m={row.m}]",
                passed=row.true_error <= row.error_bound + 1e-9,
                lhs=row.true_error, rhs=row.error_bound, slack=1e-9))
        results = {"table": [asdict(row) for row in rows]}
        return _report("integrate", req, results, verdicts)
    result = cubature.composite_integrate(
        f, rect, req.m, req.n, spec,
        check_hypothesis=req.check_hypothesis,
        samples_per_tile=req.samples_per_tile, seed=req.seed)
    if req.check_hypothesis:
        verdicts.append(Verdict(name="hypothesis[per-tile,q=1]",
                                passed=result.hypothesis_checked,
                                lhs=0.0, rhs=0.0, slack=0.0))
    results = asdict(result)
    return _report("integrate", req, results, verdicts)


def run_sweep_p(req: SweepPRequest) -> Report:
    f = parse(req.function)
    rect = req.rect.to_rectangle()
    rows = []
    verdicts = []
    tol = 1e-12
    for p in req.p_grid:
        q = p / (p - 1.0)
        coeff = hadamard.holder_coefficient(p)
        b22 = hadamard.bound_thm22(f, rect, p)
        b23 = hadamard.bound_thm23(f, rect, q)
        ratio = b23 / b22 if b22 > 0 else 1.0
        rows.append({"p": p, "q": q, "coefficient": coeff,
                     "bound22": b22, "bound23": b23, "ratio": ratio})
        verdicts.append(Verdict(name=f"coefficient-in-(1/4,1)[p={p:g}]",
                                passed=0.25 < coeff < 1.0,
                                lhs=coeff, rhs=1.0, slack=0.0))
        verdicts.append(Verdict(name=f"bound23<=bound22[p={p:g}]",
                                passed=b23 <= b22 + tol,
                                lhs=b23, rhs=b22, slack=tol))
    return _report("sweep-p", req, {"rows": rows}, verdicts)
