"""Exact identity suites for the classical and exceptional Laguerre families."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .algebra import Polynomial
from .darboux import (
    Classification,
    classify,
    covariance_constant,
    factorize,
    gauge_constraint_check,
    intertwine_check,
    riccati_check,
    shape_invariance_check,
    sl_data,
)
from .diffop import DiffOperator
from .laguerre import (
    SeedFamily,
    SeedSpec,
    identity_suite,
    laguerre_operator,
    lowering_operator,
    raising_operator,
    seed,
)
from .quasirational import QuasiRational, proportionality_constant
from .xlaguerre import (
    Variant,
    XFamily,
    a_type1,
    a_type2,
    b_type1,
    b_type2,
    eta,
    ground_state_factorization,
    x_build_by_darboux,
    x_lowering,
    x_operator,
    x_polynomial,
    x_raising,
    x_weight,
    xi,
)

DEFAULT_K = {
    "classical": [Fraction(1, 2), Fraction(1), Fraction(7, 3), Fraction(4)],
    "type1": [Fraction(1, 2), Fraction(1), Fraction(7, 3), Fraction(4)],
}


@dataclass(frozen=True)
class CheckResult:
    identity: str
    params: dict
    passed: bool


@dataclass
class SuiteReport:
    results: list[CheckResult] = field(default_factory=list)

    def record(self, identity: str, passed: bool, **params) -> None:
        clean = {k: str(v) for k, v in params.items()}
        self.results.append(CheckResult(identity, clean, bool(passed)))

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        first = self.failures[0] if self.failures else None
        return {
            "checked": len(self.results),
            "failed": len(self.failures),
            "first_failure": None if first is None else {"identity": first.identity, "params": first.params},
            "results": [{"identity": r.identity, "params": r.params, "pass": r.passed} for r in self.results],
        }


def _safe(fn: Callable[[], bool]) -> bool:
    try:
        return bool(fn())
    except (ArithmeticError, ValueError):
        return False


def verify_classical(ks: Iterable, nmax: int, *, inject_fault: bool = False) -> SuiteReport:
    report = SuiteReport()
    ks = [Fraction(k) for k in ks]
    for k in ks:
        ident = identity_suite(k, min(nmax, 30), inject_fault=inject_fault)
        for name in ("recurrence", "derivative", "contiguity", "eigen", "leading"):
            bad = [n for (nm, n, _) in ident.failures if nm == name]
            report.record(f"laguerre.{name}", not bad, k=k, nmax=nmax)
        for fam in SeedFamily:
            for m in range(0, 3):
                try:
                    phi, lam = seed(SeedSpec(fam, k, m))
                except ValueError:
                    continue
                op = laguerre_operator(k)
                report.record("seed.riccati", riccati_check(op, phi.log_derivative(), lam), family=fam.name, k=k, m=m)
                report.record(
                    "seed.intertwining",
                    _safe(lambda: intertwine_check(factorize(op, phi, None, lam))),
                    family=fam.name, k=k, m=m,
                )
        f = factorize(laguerre_operator(k), QuasiRational(0, 0, 1), 1, 0)
        report.record(
            "classical.state_deleting",
            classify(f, Polynomial.constant(1)) is Classification.STATE_DELETING,
            k=k,
        )
    lam = Fraction(-1) if inject_fault else Fraction(1)
    report.record(
        "classical.shape_invariance",
        shape_invariance_check(
            laguerre_operator,
            lambda k: k + 1,
            lambda k: lam,
            lambda k: factorize(laguerre_operator(k), QuasiRational(0, 0, 1), 1, 0),
            ks,
        ),
        ks=",".join(map(str, ks)),
    )
    for k in ks:
        ok = raising_operator(k) @ lowering_operator() == laguerre_operator(k)
        ok = ok and lowering_operator() @ raising_operator(k) + 1 == laguerre_operator(k + 1)
        report.record("classical.factorization_pair", ok, k=k)
        report.record(
            "classical.gauge_constraint",
            gauge_constraint_check(Polynomial.x(), Polynomial((k + 1, -1)), Polynomial((k + 2, -1)), 1),
            k=k,
        )
    return report


def verify_exceptional(
    variant: Variant,
    ks: Iterable,
    ms: Iterable[int],
    nmax_offset: int = 8,
    *,
    inject_fault: bool = False,
) -> SuiteReport:
    """Exact checks for X_m families; n runs over [m, m + nmax_offset]."""
    report = SuiteReport()
    sign = 1 if inject_fault else -1
    for m in ms:
        for k in ks:
            k = Fraction(k)
            fam = XFamily(variant, k, m)
            up = fam.shifted(1)
            op = x_operator(fam)
            params = dict(variant=variant.value, k=k, m=m)
            for n in range(m, m + nmax_offset + 1):
                xn = x_polynomial(fam, n)
                report.record("x.eigen", op.apply_polynomial(xn) == xn.scale(m - n), n=n, **params)
                report.record("x.degree", xn.degree == n, n=n, **params)
                report.record("x.darboux_construction", x_build_by_darboux(fam, n) == xn, n=n, **params)
            lo, ra = x_lowering(fam), x_raising(fam)
            report.record("ladder.BA", ra @ lo == op, **params)
            report.record("ladder.AB", lo @ ra + 1 == x_operator(up), **params)
            for n in range(m, m + min(nmax_offset, 6) + 1):
                if n > m:
                    lowered = lo.apply_polynomial(x_polynomial(fam, n))
                    report.record("ladder.lowering", lowered == x_polynomial(up, n - 1).scale(sign), n=n, **params)
                raised = ra.apply_polynomial(x_polynomial(up, n))
                report.record("ladder.raising", raised == x_polynomial(fam, n + 1).scale(n + 1 - m), n=n, **params)
            report.record("ladder.ground_state", lo.apply_polynomial(x_polynomial(fam, m)).is_zero(), **params)
            report.record(
                "ladder.gauge_constraint",
                gauge_constraint_check(Polynomial.x(), op.coeff(1), x_operator(up).coeff(1), lo.leading),
                **params,
            )
            report.record(
                "ladder.shape_invariance",
                shape_invariance_check(
                    lambda kk: x_operator(XFamily(variant, kk, m)),
                    lambda kk: kk + 1,
                    lambda kk: 1,
                    lambda kk: ground_state_factorization(XFamily(variant, kk, m)),
                    [k],
                ),
                **params,
            )
            report.record("isospectral.bracket", _bracket(variant, k, m), **params)
            report.record("covariance", _covariance(variant, k, m) is not None, **params)
            w_sl = sl_data(op).W
            report.record(
                "weight.sl_data",
                proportionality_constant(w_sl, x_weight(fam)) is not None and sl_data(op).positive,
                **params,
            )
    return report


def _bracket(variant: Variant, k: Fraction, m: int) -> bool:
    if variant is Variant.TYPE_I:
        lk = laguerre_operator(k)
        ok = b_type1(k, m) @ a_type1(k, m) + (k + m + 1) == lk
        return ok and a_type1(k - 1, m) @ b_type1(k - 1, m) + (k + m) == x_operator(XFamily(variant, k, m))
    ok = b_type2(k, m) @ a_type2(k, m) + (k - m) == laguerre_operator(k)
    return ok and a_type2(k + 1, m) @ b_type2(k + 1, m) + (k + 1 - m) == x_operator(XFamily(variant, k, m))


def _covariance(variant: Variant, k: Fraction, m: int) -> Fraction | None:
    d = DiffOperator.d()
    if variant is Variant.TYPE_I:
        return covariance_constant(d, QuasiRational(0, 1, xi(k, m)), QuasiRational(0, 1, xi(k + 1, m)))
    return covariance_constant(d, QuasiRational(-k, 0, eta(k, m)), QuasiRational(-k - 1, 0, eta(k + 1, m)))


def default_ks(variant: str, m_max: int) -> list[Fraction]:
    if variant == "type2":
        return [m_max + Fraction(1, 2), Fraction(m_max + 2)]
    return DEFAULT_K[variant]

